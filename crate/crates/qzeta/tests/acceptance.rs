//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits nonzero if any failed.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use qzeta::parse_poly;
use qzeta_core::carlitz::{beta, genfun_check, verify_chi, verify_hurwitz, verify_theorem};
use qzeta_core::dirichlet::{characters, DirichletCharacter};
use qzeta_core::roots::{beta_root_survey, find_roots, DEFAULT_TOL, SOLVE_TOL};
use qzeta_core::zeta::{
    apply_delta, apply_geometric, apply_series, carlitz_test_poly, check_commute, check_distribution,
    euler_product_apply, numeric_apply, Backend, OperatorKind, OperatorSpec,
};
use qzeta_core::{CycRat, Field, Poly, Rat};

const BETA_TABLE_LIMIT: Duration = Duration::from_secs(1);
const THEOREM_LIMIT: Duration = Duration::from_secs(30);
const SURVEY_LIMIT: Duration = Duration::from_secs(120);
const THEOREM_SERIES_ORDER: usize = 60;
const EULER_ORDER: usize = 40;
const CHECK_SERIES_ORDER: usize = 40;
const POLE_CIRCLE_TOL: f64 = 1e-8;
const NUMERIC_TOL: f64 = 1e-10;
const NUMERIC_EPS: f64 = 1e-14;
const ROOT_RESIDUAL_TOL: f64 = 1e-8;
const CONJUGATE_TOL: f64 = 1e-8;
const CIRCLE_HIT_TOL: f64 = 1e-6;

type Outcome = Result<String, String>;

fn r(s: &str) -> Rat {
    s.parse().unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn beta_table_reproduction() -> Outcome {
    let expected: [(&str, &[u64]); 5] = [
        ("1", &[]),
        ("-1", &[2]),
        ("q", &[2, 3]),
        ("q*(1-q)", &[2, 3, 4]),
        ("q*(q^4-q^3-2*q^2-q+1)", &[2, 3, 4, 5]),
    ];
    let start = Instant::now();
    for (k, (num, den)) in expected.iter().enumerate() {
        let out = Command::new(env!("CARGO_BIN_EXE_qzeta"))
            .args(["carlitz", "beta", "--n", &k.to_string(), "--factored"])
            .output()
            .map_err(err)?;
        ensure(out.status.success(), || format!("k={k}: exit {:?}", out.status.code()))?;
        let json: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(err)?;
        let got_num = parse_poly(json["num"].as_str().ok_or("missing num")?).map_err(err)?;
        let got_den: Vec<u64> = json["den_cyclotomic"]
            .as_array()
            .ok_or("missing den_cyclotomic")?
            .iter()
            .map(|v| v.as_u64().unwrap_or(0))
            .collect();
        ensure(json["n"] == k as u64, || format!("k={k}: n field {}", json["n"]))?;
        ensure(got_num == parse_poly(num).unwrap(), || format!("k={k}: numerator {}", json["num"]))?;
        ensure(got_den == *den, || format!("k={k}: denominator {got_den:?}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < BETA_TABLE_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("k=0..4 exact, {elapsed:.2?}"))
}

fn theorem() -> Outcome {
    let start = Instant::now();
    for n in 2..=15 {
        for (backend, order) in [
            (Backend::Delta, 0),
            (Backend::Geometric, 0),
            (Backend::Series, THEOREM_SERIES_ORDER),
        ] {
            let rep = verify_theorem(n, backend, order).map_err(err)?;
            ensure(rep.pass(), || format!("n={n} {backend}"))?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < THEOREM_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("n=2..15, delta+geometric exact, series to order {THEOREM_SERIES_ORDER}, {elapsed:.2?}"))
}

/// Bernoulli numbers by the Akiyama-Tanigawa algorithm (gives `B_1 = +1/2`).
fn akiyama_tanigawa(n_max: usize) -> Vec<Rat> {
    let mut row: Vec<Rat> = Vec::new();
    let mut out = Vec::new();
    for m in 0..=n_max {
        row.push(Rat::from(m as i64 + 1).recip().unwrap());
        for j in (1..=m).rev() {
            let diff = &row[j - 1] - &row[j];
            row[j - 1] = &Rat::from(j as i64) * &diff;
        }
        out.push(row[0].clone());
    }
    out
}

fn values_at_one() -> Outcome {
    let mut oracle = akiyama_tanigawa(30);
    oracle[1] = -&oracle[1];
    for (n, b) in oracle.iter().enumerate() {
        let got = beta(n as u64).value.eval(&Rat::one()).map_err(err)?;
        ensure(&got == b, || format!("n={n}: {got} != {b}"))?;
    }
    Ok(format!("n=0..30, B_30 = {}", oracle[30]))
}

fn functional_equation() -> Outcome {
    let rep = genfun_check(12);
    ensure(rep.pass(), || {
        let bad: Vec<usize> = (0..rep.differences.len()).filter(|&i| !rep.differences[i].is_zero()).collect();
        format!("nonzero coefficients at t^{bad:?}")
    })?;
    Ok(format!("{} coefficients zero", rep.differences.len()))
}

fn commutation() -> Outcome {
    let mut checks = 0;
    for m in 1..=6 {
        for n in 1..=6 {
            for s in [0, -1, -2, -3] {
                let rep = check_commute(m, n, s, 5).map_err(err)?;
                ensure(rep.pass(), || format!("m={m} n={n} s={s}"))?;
                checks += rep.rows.len();
            }
        }
    }
    Ok(format!("{checks} cases"))
}

fn euler_product() -> Outcome {
    let q = Poly::x();
    for s in [0, -1, -2] {
        let lhs = euler_product_apply(s, &q, EULER_ORDER as u64, EULER_ORDER).map_err(err)?;
        let rhs = apply_series::<Rat>(&OperatorSpec::riemann(s), &q, EULER_ORDER).map_err(err)?;
        ensure(lhs.agrees_with(&rhs), || format!("s={s}"))?;
    }
    Ok(format!("s=0,-1,-2 through q^{EULER_ORDER}"))
}

fn distribution() -> Outcome {
    let mut checks = 0;
    for n in [2, 3, 4] {
        for x in ["1", "1/2", "1/3"] {
            for s in [0, -1, -2] {
                for k in [1, 2] {
                    let rep = check_distribution(n, &r(x), s, k).map_err(err)?;
                    ensure(rep.pass, || format!("N={n} x={x} s={s} r={k}"))?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} cases"))
}

fn hurwitz_relation() -> Outcome {
    let xs = ["1", "1/2", "1/3", "2/3", "3/4"];
    for x in xs {
        let x = r(x);
        for n in 1..=8 {
            for backend in [Backend::Geometric, Backend::Delta] {
                let rep = verify_hurwitz(n, &x, backend, 0).map_err(err)?;
                ensure(rep.pass(), || format!("n={n} x={x} {backend}"))?;
            }
        }
        let zero = verify_hurwitz(0, &x, Backend::Geometric, 0).map_err(err)?;
        ensure(zero.skipped(), || format!("n=0 x={x} not reported as outside exact mode"))?;
    }
    Ok(format!("n=1..8 over {} values of x, n=0 outside exact mode", xs.len()))
}

fn chi_cases<F: Field>(chi: &DirichletCharacter) -> Result<(), String> {
    for n in 1..=6 {
        for backend in [Backend::Geometric, Backend::Delta] {
            let rep = verify_chi::<F>(chi, n, backend, 0).map_err(err)?;
            ensure(rep.pass(), || format!("N={} index={} n={n} {backend}", chi.modulus(), chi.index()))?;
        }
        let rep = verify_chi::<F>(chi, n, Backend::Series, CHECK_SERIES_ORDER).map_err(err)?;
        ensure(rep.pass(), || format!("N={} index={} n={n} series", chi.modulus(), chi.index()))?;
    }
    Ok(())
}

fn chi_relation() -> Outcome {
    let (mut real, mut complex) = (0, 0);
    for modulus in [3, 4, 5, 8] {
        for chi in characters(modulus).map_err(err)?.iter().filter(|c| !c.is_trivial()) {
            if chi.is_real() {
                chi_cases::<Rat>(chi)?;
                real += 1;
            } else {
                chi_cases::<CycRat>(chi)?;
                complex += 1;
            }
        }
    }
    ensure(complex > 0, || "no complex character covered".into())?;
    Ok(format!("{real} real and {complex} complex characters, n=1..6"))
}

fn rationality() -> Outcome {
    let chi = characters(4)
        .map_err(err)?
        .into_iter()
        .find(|c| !c.is_trivial())
        .ok_or("no non-trivial character mod 4")?;
    let mut worst: f64 = 0.0;
    for i in [0, -1, -2, -3] {
        for k in 1..=4 {
            let spec = OperatorSpec::dirichlet(chi.clone(), i);
            let f = apply_delta::<Rat>(&spec, &Poly::monomial(Rat::one(), k)).map_err(err)?.value;
            let g = f.num().gcd(f.den()).map_err(err)?;
            ensure(g.is_constant(), || format!("i={i} r={k}: not reduced"))?;
            ensure(f.eval(&Rat::zero()).map_err(err)?.is_zero(), || format!("i={i} r={k}: nonzero at q=0"))?;
            if f.den().is_constant() {
                continue;
            }
            for root in find_roots(f.den(), SOLVE_TOL).map_err(err)? {
                let off = (root.z.norm() - 1.0).abs();
                worst = worst.max(off);
                ensure(off <= POLE_CIRCLE_TOL, || format!("i={i} r={k}: pole {} off the circle by {off:e}", root.z))?;
            }
        }
    }
    Ok(format!("i=0..-3, r=1..4, max pole distance from |q|=1 {worst:.1e}"))
}

fn numeric_mode() -> Outcome {
    let mut worst: f64 = 0.0;
    for q0 in ["3/10", "1/2"] {
        let q0 = r(q0);
        for s in [0, -1, -2] {
            for n in [2, 3] {
                let p = carlitz_test_poly(n);
                let exact = apply_geometric::<Rat>(&OperatorSpec::riemann(s), &p)
                    .map_err(err)?
                    .value
                    .eval(&q0)
                    .map_err(err)?
                    .to_f64();
                let approx = numeric_apply(
                    &OperatorKind::Riemann,
                    Complex64::new(s as f64, 0.0),
                    Complex64::new(q0.to_f64(), 0.0),
                    &p,
                    NUMERIC_EPS,
                )
                .map_err(err)?
                .value;
                let dev = (approx - Complex64::new(exact, 0.0)).norm();
                worst = worst.max(dev);
                ensure(dev <= NUMERIC_TOL, || format!("q0={q0} s={s} n={n}: deviation {dev:e}"))?;
            }
        }
    }
    Ok(format!("max deviation {worst:.1e}"))
}

fn root_survey() -> Outcome {
    let start = Instant::now();
    let reports = beta_root_survey(30, DEFAULT_TOL).map_err(err)?;
    let elapsed = start.elapsed();
    for rep in &reports {
        let c = &rep.counts;
        println!(
            "      n={:>2} degree={:>3} real_positive={:>2} on_unit_circle={:>3} complex_off_circle={:>3} other_real={}",
            rep.n, rep.degree, c.real_positive, c.on_unit_circle, c.complex_pairs_off_circle, c.other_real
        );
    }
    for rep in &reports {
        let n = rep.n;
        ensure(rep.max_residual() <= ROOT_RESIDUAL_TOL, || format!("n={n}: residual {:e}", rep.max_residual()))?;
        ensure(rep.conjugate_closed(CONJUGATE_TOL), || format!("n={n}: not conjugate-closed"))?;
        if n >= 3 {
            let d = rep.min_circle_distance().unwrap_or(f64::INFINITY);
            ensure(d <= CIRCLE_HIT_TOL, || format!("n={n}: nearest root {d:e} from the unit circle"))?;
        }
    }
    ensure(elapsed < SURVEY_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("n=2..30, {elapsed:.2?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("beta table reproduction", beta_table_reproduction),
        ("Bernoulli-Carlitz identity, three backends", theorem),
        ("values at q=1 are Bernoulli numbers", values_at_one),
        ("generating function equation", functional_equation),
        ("Frobenius commutation", commutation),
        ("Euler product", euler_product),
        ("distribution relation", distribution),
        ("Hurwitz relation", hurwitz_relation),
        ("character relation", chi_relation),
        ("rationality, poles on the unit circle", rationality),
        ("numeric mode against exact values", numeric_mode),
        ("root survey", root_survey),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
