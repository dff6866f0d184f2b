use proptest::prelude::*;
use qzeta_core::dirichlet::DirichletCharacter;
use qzeta_core::series::series_from_ratfunc;
use qzeta_core::zeta::{apply_delta, apply_geometric, apply_series, check_commute, OperatorSpec};
use qzeta_core::{Poly, Rat, RatFunc};

fn input_poly() -> impl Strategy<Value = Poly<Rat>> {
    prop::collection::vec(-5i64..=5, 1..5).prop_map(|cs| {
        let mut all = vec![0];
        all.extend(cs);
        Poly::from_i64s(&all)
    })
}

fn hurwitz_x() -> impl Strategy<Value = Rat> {
    (1i64..=5, 1i64..=4).prop_map(|(a, b)| format!("{a}/{b}").parse().unwrap())
}

/// Coefficients of `sum_{n>=1} [n]^m q^(n r)` through `q^order`, with `[n]^m`
/// expanded by repeated multiplication.
fn riemann_monomial_oracle(m: u32, r: usize, order: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); order + 1];
    let mut n = 1;
    while n * r <= order {
        let qn: Vec<Rat> = vec![Rat::one(); n];
        let mut pw = vec![Rat::one()];
        for _ in 0..m {
            let mut next = vec![Rat::zero(); pw.len() + qn.len() - 1];
            for (i, a) in pw.iter().enumerate() {
                for (j, b) in qn.iter().enumerate() {
                    next[i + j] = &next[i + j] + &(a * b);
                }
            }
            pw = next;
        }
        for (k, c) in pw.iter().enumerate() {
            if n * r + k <= order {
                out[n * r + k] = &out[n * r + k] + c;
            }
        }
        n += 1;
    }
    out
}

#[test]
fn riemann_against_direct_expansion() {
    for m in 0..=3u32 {
        for r in 1..=3usize {
            let f = apply_geometric::<Rat>(&OperatorSpec::riemann(-(m as i64)), &Poly::monomial(Rat::one(), r))
                .unwrap()
                .value;
            let got = series_from_ratfunc(&f, 1, 30).unwrap();
            assert_eq!(got.coeffs(), riemann_monomial_oracle(m, r, 30).as_slice(), "m={m} r={r}");
        }
    }
}

#[test]
fn riemann_at_zero_on_q() {
    // sum_n q^n = q/(1-q)
    let f = apply_delta::<Rat>(&OperatorSpec::riemann(0), &Poly::x()).unwrap().value;
    assert_eq!(f, RatFunc::new(Poly::from_i64s(&[0, 1]), Poly::from_i64s(&[1, -1])).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn backends_agree(p in input_poly(), m in 0i64..=3) {
        let spec = OperatorSpec::riemann(-m);
        let g = apply_geometric::<Rat>(&spec, &p).unwrap().value;
        let d = apply_delta::<Rat>(&spec, &p).unwrap().value;
        prop_assert_eq!(&g, &d);
        let s = apply_series::<Rat>(&spec, &p, 24).unwrap();
        prop_assert!(series_from_ratfunc(&g, 1, 24).unwrap().agrees_with(&s));
    }

    #[test]
    fn hurwitz_backends_agree(p in input_poly(), m in 0i64..=2, x in hurwitz_x()) {
        let spec = OperatorSpec::hurwitz(x, -m).unwrap();
        let g = apply_geometric::<Rat>(&spec, &p).unwrap();
        let d = apply_delta::<Rat>(&spec, &p).unwrap();
        prop_assert_eq!(g.branch, d.branch);
        prop_assert_eq!(&g.value, &d.value);
        let s = apply_series::<Rat>(&spec, &p, 20).unwrap();
        prop_assert!(series_from_ratfunc(&g.value, g.branch, 20).unwrap().agrees_with(&s));
    }

    #[test]
    fn operators_are_linear(p in input_poly(), q in input_poly(), a in -4i64..=4, m in 0i64..=3, idx in 1u64..4) {
        let a = Rat::from(a);
        let combo = &p.scale(&a) + &q;
        for spec in [OperatorSpec::riemann(-m), OperatorSpec::dirichlet(DirichletCharacter::new(8, idx).unwrap(), -m)] {
            let lhs = apply_geometric::<Rat>(&spec, &combo).unwrap().value;
            let fp = apply_geometric::<Rat>(&spec, &p).unwrap().value;
            let fq = apply_geometric::<Rat>(&spec, &q).unwrap().value;
            prop_assert_eq!(lhs, &fp.scale(&a) + &fq);
        }
    }

    #[test]
    fn frobenius_terms_commute(m in 1u64..=9, n in 1u64..=9, s in -4i64..=0) {
        prop_assert!(check_commute(m, n, s, 3).unwrap().pass());
    }
}
