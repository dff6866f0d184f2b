use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use qzeta_core::carlitz::{
    beta, beta_chi, beta_poly, genfun_check, verify_chi, verify_hurwitz, verify_theorem, BetaFraction, VerifyReport,
};
use qzeta_core::dirichlet::{characters, DirichletCharacter};
use qzeta_core::roots::{beta_root_survey, chi_root_survey, RootReport, DEFAULT_TOL};
use qzeta_core::series::TruncSeries;
use qzeta_core::zeta::{
    apply_delta, apply_geometric, apply_series, check_commute, check_distribution, euler_product_apply,
    numeric_apply, Backend, OperatorKind, OperatorSpec,
};
use qzeta_core::{CycRat, Field, Poly, Rat, RatFunc};

use crate::parse::{parse_operator_poly, ParseError};

#[derive(Parser, Debug)]
#[command(name = "qzeta", version, about = "Exact q-deformed zeta operators and Bernoulli-Carlitz fractions")]
pub struct Cli {
    /// Output format. CSV is available for `roots survey` and `dirichlet list`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Delta,
    Geometric,
    Series,
    All,
}

impl Method {
    fn backends(self) -> Vec<Backend> {
        match self {
            Method::Delta => vec![Backend::Delta],
            Method::Geometric => vec![Backend::Geometric],
            Method::Series => vec![Backend::Series],
            Method::All => vec![Backend::Geometric, Backend::Delta, Backend::Series],
        }
    }

    fn single(self) -> Result<Backend, CliError> {
        match self.backends()[..] {
            [b] => Ok(b),
            _ => Err(CliError::Usage("this command needs a single --method".into())),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Bernoulli-Carlitz fractions
    #[command(subcommand)]
    Carlitz(CarlitzCmd),
    /// Hurwitz operators and q-Bernoulli polynomials
    #[command(subcommand)]
    Hurwitz(HurwitzCmd),
    /// Dirichlet characters and their Bernoulli fractions
    #[command(subcommand)]
    Dirichlet(DirichletCmd),
    /// Operator application
    #[command(subcommand)]
    Zeta(ZetaCmd),
    /// Operator identities
    #[command(subcommand)]
    Lemma(LemmaCmd),
    /// Roots of Bernoulli-Carlitz numerators
    #[command(subcommand)]
    Roots(RootsCmd),
}

#[derive(Subcommand, Debug)]
pub enum CarlitzCmd {
    /// beta_n, or beta_0..beta_max-n
    Beta {
        #[arg(long, conflicts_with = "max_n", required_unless_present = "max_n")]
        n: Option<u64>,
        #[arg(long)]
        max_n: Option<u64>,
        /// Print the denominator as a list of cyclotomic indices
        #[arg(long)]
        factored: bool,
    },
    /// beta_n = zeta_q(1-n)(q - (n+1) q^2)
    VerifyTheorem {
        #[arg(long, default_value_t = 2)]
        min_n: u64,
        #[arg(long, default_value_t = 15)]
        max_n: u64,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        /// Truncation order of the series backend
        #[arg(long, default_value_t = 60)]
        order: usize,
    },
    /// Generating-function identity through t^order
    GenfunCheck {
        #[arg(long, default_value_t = 12)]
        order: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum HurwitzCmd {
    /// beta_n(x) as a function of q^(1/b)
    Beta {
        #[arg(long)]
        n: u64,
        /// Positive rational `a/b`
        #[arg(long)]
        x: Rat,
    },
    /// beta_n(x) = zeta_q(1-n, x)(q - (n+1) q^2)
    Verify {
        #[arg(long)]
        x: Rat,
        #[arg(long, default_value_t = 1)]
        min_n: u64,
        #[arg(long, default_value_t = 8)]
        max_n: u64,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        #[arg(long, default_value_t = 40)]
        order: usize,
    },
    /// Distribution relation over the shifts (x + j)/N
    DistributionCheck {
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        x: Rat,
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',', default_values_t = [0, -1, -2])]
        s: Vec<i64>,
        #[arg(long, value_delimiter = ',', default_values_t = [1, 2])]
        r: Vec<u64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum DirichletCmd {
    /// All characters modulo N
    List {
        #[arg(long)]
        modulus: u64,
    },
    /// beta_{chi,n}
    BetaChi {
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        index: u64,
        #[arg(long)]
        n: u64,
    },
    /// beta_{chi,n} = L_q(chi, 1-n)(q - (n+1) q^2); every non-trivial character without --index
    Verify {
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        index: Option<u64>,
        #[arg(long, default_value_t = 1)]
        min_n: u64,
        #[arg(long, default_value_t = 6)]
        max_n: u64,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        #[arg(long, default_value_t = 40)]
        order: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct OperatorArgs {
    #[arg(long, value_enum, default_value_t = OperatorName::Riemann)]
    pub operator: OperatorName,
    /// Hurwitz parameter
    #[arg(long)]
    pub x: Option<Rat>,
    /// Character modulus
    #[arg(long)]
    pub modulus: Option<u64>,
    /// Character index
    #[arg(long)]
    pub index: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OperatorName {
    Riemann,
    Hurwitz,
    Dirichlet,
}

#[derive(Subcommand, Debug)]
pub enum ZetaCmd {
    /// Exact value of an operator at s <= 0 on a polynomial
    Apply {
        #[command(flatten)]
        op: OperatorArgs,
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
        #[arg(long, default_value = "q")]
        poly: String,
        #[arg(long, value_enum, default_value_t = Method::Geometric)]
        method: Method,
        #[arg(long, default_value_t = 40)]
        order: usize,
    },
    /// Euler product against direct summation
    EulerCheck {
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
        #[arg(long, default_value = "q")]
        poly: String,
        #[arg(long)]
        prime_bound: Option<u64>,
        #[arg(long, default_value_t = 40)]
        order: usize,
    },
    /// Floating-point value at complex s and |q0| < 1
    Numeric {
        #[command(flatten)]
        op: OperatorArgs,
        /// Complex number such as `-1`, `0.5+2i`
        #[arg(long, allow_hyphen_values = true)]
        s: Complex64,
        #[arg(long, allow_hyphen_values = true)]
        q0: Complex64,
        #[arg(long, default_value = "q")]
        poly: String,
        #[arg(long, default_value_t = 1e-12)]
        eps: f64,
    },
}

#[derive(Subcommand, Debug)]
pub enum LemmaCmd {
    /// (F_m/[m]^s)(F_n/[n]^s) = F_mn/[mn]^s on q^r
    CommuteCheck {
        #[arg(long, default_value_t = 6)]
        max_m: u64,
        #[arg(long, default_value_t = 6)]
        max_n: u64,
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',', default_values_t = [0, -1, -2, -3])]
        s: Vec<i64>,
        #[arg(long, default_value_t = 5)]
        r_max: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum RootsCmd {
    /// Roots of the numerators of beta_2..beta_max-n (or beta_{chi,1..max-n} for a real character)
    Survey {
        #[arg(long, default_value_t = 30)]
        max_n: u64,
        /// Tolerance for the unit-circle and realness tests
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, requires = "index")]
        modulus: Option<u64>,
        #[arg(long, requires = "modulus")]
        index: Option<u64>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] qzeta_core::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// One output item in its JSON and text forms.
pub struct Record {
    pub json: Value,
    pub text: String,
}

#[derive(Default)]
pub struct Report {
    pub records: Vec<Record>,
    /// Set by verification commands.
    pub verdict: Option<bool>,
    pub csv: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
}

impl Report {
    fn push(&mut self, json: Value, text: String) {
        self.records.push(Record { json, text });
    }

    /// Appends a summary of `pass` flags and sets the verdict.
    fn conclude(&mut self, passes: &[bool]) {
        let failed = passes.iter().filter(|p| !**p).count();
        let ok = failed == 0;
        let text = if ok {
            format!("all {} checks passed", passes.len())
        } else {
            format!("{failed} of {} checks failed", passes.len())
        };
        self.push(json!({"checks": passes.len(), "failed": failed, "pass": ok}), text);
        self.verdict = Some(ok);
    }
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Runs a parsed command, writing results to `out` and errors to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli).and_then(|report| emit(cli.format, &report, out).map(|_| report)) {
        Ok(report) => match report.verdict {
            Some(false) => EXIT_FAIL,
            _ => EXIT_PASS,
        },
        Err(e) => {
            let _ = match cli.format {
                Format::Json => writeln!(out, "{}", json!({"error": e.to_string()})),
                _ => writeln!(err, "error: {e}"),
            };
            EXIT_ERROR
        }
    }
}

fn emit(format: Format, report: &Report, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Json => {
            for r in &report.records {
                writeln!(out, "{}", r.json)?;
            }
        }
        Format::Text => {
            for r in &report.records {
                writeln!(out, "{}", r.text)?;
            }
        }
        Format::Csv => {
            let (header, rows) = report.csv.as_ref().expect("validated");
            let mut w = csv::Writer::from_writer(out);
            w.write_record(header).map_err(|e| CliError::Usage(e.to_string()))?;
            for row in rows {
                w.write_record(row).map_err(|e| CliError::Usage(e.to_string()))?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn supports_csv(cmd: &Command) -> bool {
    matches!(cmd, Command::Roots(_) | Command::Dirichlet(DirichletCmd::List { .. }))
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    if cli.format == Format::Csv && !supports_csv(&cli.command) {
        return Err(CliError::Usage("--format csv is only available for `roots survey` and `dirichlet list`".into()));
    }
    match &cli.command {
        Command::Carlitz(c) => carlitz(c),
        Command::Hurwitz(c) => hurwitz(c),
        Command::Dirichlet(c) => dirichlet(c),
        Command::Zeta(c) => zeta(c),
        Command::Lemma(c) => lemma(c),
        Command::Roots(c) => roots(c),
    }
}

fn poly_str<F: Field>(p: &Poly<F>, var: &str) -> String {
    p.to_string_in(var)
}

/// `q`, or `q^(1/b)` written as `v` when `b > 1`.
fn var_name(branch: u64) -> &'static str {
    if branch == 1 {
        "q"
    } else {
        "v"
    }
}

fn variable_json(branch: u64) -> Value {
    if branch == 1 {
        json!("q")
    } else {
        json!(format!("v = q^(1/{branch})"))
    }
}

fn fraction_text<F: Field>(f: &RatFunc<F>, var: &str) -> String {
    if f.den().is_one() {
        poly_str(f.num(), var)
    } else {
        format!("({}) / ({})", poly_str(f.num(), var), poly_str(f.den(), var))
    }
}

fn cyclotomic_list(f: &qzeta_core::arith::CycloProduct) -> Vec<u64> {
    f.iter().flat_map(|(k, e)| std::iter::repeat_n(k, e as usize)).collect()
}

pub fn beta_record(b: &BetaFraction, factored: bool) -> Record {
    let num = poly_str(b.numerator(), "q");
    if factored {
        let ks = cyclotomic_list(&b.den_factors);
        let den: Vec<String> = ks.iter().map(|k| format!("Phi_{k}")).collect();
        let text = if den.is_empty() {
            format!("beta_{} = {num}", b.n)
        } else {
            format!("beta_{} = ({num}) / ({})", b.n, den.join(" "))
        };
        Record {
            json: json!({"n": b.n, "num": num, "den_cyclotomic": ks}),
            text,
        }
    } else {
        Record {
            json: json!({"n": b.n, "num": num, "den": poly_str(b.value.den(), "q")}),
            text: format!("beta_{} = {}", b.n, fraction_text(&b.value, "q")),
        }
    }
}

fn verify_record<F: Field>(rep: &VerifyReport<F>, extra: Value) -> (Record, bool) {
    let status = if rep.skipped() {
        "outside_exact_mode"
    } else if rep.pass() {
        "pass"
    } else {
        "fail"
    };
    let mut json = json!({"n": rep.n, "method": rep.backend.to_string(), "branch": rep.branch});
    if let (Value::Object(m), Value::Object(e)) = (&mut json, extra) {
        m.extend(e);
    }
    json["status"] = json!(status);
    let text = format!("n={} {}: {status}", rep.n, rep.backend);
    (Record { json, text }, status != "fail")
}

fn carlitz(cmd: &CarlitzCmd) -> Result<Report, CliError> {
    let mut report = Report::default();
    match *cmd {
        CarlitzCmd::Beta { n, max_n, factored } => {
            let range = match (n, max_n) {
                (Some(n), _) => n..=n,
                (None, Some(m)) => 0..=m,
                (None, None) => unreachable!("clap requires one"),
            };
            for k in range {
                report.records.push(beta_record(&beta(k), factored));
            }
        }
        CarlitzCmd::VerifyTheorem {
            min_n,
            max_n,
            method,
            order,
        } => {
            if min_n < 2 || min_n > max_n {
                return Err(CliError::Usage("need 2 <= min-n <= max-n".into()));
            }
            let mut passes = Vec::new();
            for n in min_n..=max_n {
                for backend in method.backends() {
                    let rep = verify_theorem(n, backend, order)?;
                    let (rec, ok) = verify_record(&rep, json!({}));
                    report.records.push(rec);
                    passes.push(ok);
                }
            }
            report.conclude(&passes);
        }
        CarlitzCmd::GenfunCheck { order } => {
            let rep = genfun_check(order);
            let nonzero: Vec<usize> = (0..rep.differences.len())
                .filter(|&i| !rep.differences[i].is_zero())
                .collect();
            report.push(
                json!({"order": order, "nonzero_coefficients": nonzero}),
                format!("order {order}: {} nonzero coefficients", nonzero.len()),
            );
            report.conclude(&[rep.pass()]);
        }
    }
    Ok(report)
}

fn check_x(x: &Rat) -> Result<(), CliError> {
    if !x.is_positive() {
        return Err(CliError::Usage("--x must be a positive rational".into()));
    }
    Ok(())
}

fn hurwitz(cmd: &HurwitzCmd) -> Result<Report, CliError> {
    let mut report = Report::default();
    match cmd {
        HurwitzCmd::Beta { n, x } => {
            check_x(x)?;
            let b = beta_poly(*n, x)?;
            let var = var_name(b.branch);
            report.push(
                json!({
                    "n": n,
                    "x": x.to_string(),
                    "variable": variable_json(b.branch),
                    "num": poly_str(b.value.num(), var),
                    "den_cyclotomic": cyclotomic_list(&b.den_factors),
                }),
                format!("beta_{n}({x}) = {}", fraction_text(&b.value, var)),
            );
        }
        HurwitzCmd::Verify {
            x,
            min_n,
            max_n,
            method,
            order,
        } => {
            check_x(x)?;
            if min_n > max_n {
                return Err(CliError::Usage("need min-n <= max-n".into()));
            }
            let mut passes = Vec::new();
            for n in *min_n..=*max_n {
                for backend in method.backends() {
                    let rep = verify_hurwitz(n, x, backend, *order)?;
                    let (rec, ok) = verify_record(&rep, json!({"x": x.to_string()}));
                    report.records.push(rec);
                    passes.push(ok);
                }
            }
            report.conclude(&passes);
        }
        HurwitzCmd::DistributionCheck { modulus, x, s, r } => {
            check_x(x)?;
            let mut passes = Vec::new();
            for &si in s {
                for &ri in r {
                    let rep = check_distribution(*modulus, x, si, ri)?;
                    report.push(
                        json!({"modulus": modulus, "x": x.to_string(), "s": si, "r": ri, "pass": rep.pass}),
                        format!("N={modulus} x={x} s={si} r={ri}: {}", pass_word(rep.pass)),
                    );
                    passes.push(rep.pass);
                }
            }
            report.conclude(&passes);
        }
    }
    Ok(report)
}

fn pass_word(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn character(modulus: u64, index: u64) -> Result<DirichletCharacter, CliError> {
    Ok(DirichletCharacter::new(modulus, index)?)
}

fn beta_chi_record<F: Field>(chi: &DirichletCharacter, n: u64) -> Result<Record, CliError> {
    let b = beta_chi::<F>(chi, n)?;
    Ok(Record {
        json: json!({
            "modulus": chi.modulus(),
            "index": chi.index(),
            "n": n,
            "num": poly_str(b.value.num(), "q"),
            "den": poly_str(b.value.den(), "q"),
        }),
        text: format!("beta_{{chi,{n}}} = {}", fraction_text(&b.value, "q")),
    })
}

fn verify_chi_record<F: Field>(
    chi: &DirichletCharacter,
    n: u64,
    backend: Backend,
    order: usize,
) -> Result<(Record, bool), CliError> {
    let rep = verify_chi::<F>(chi, n, backend, order)?;
    let (mut rec, ok) = verify_record(&rep, json!({"modulus": chi.modulus(), "index": chi.index()}));
    rec.text = format!("chi=({},{}) {}", chi.modulus(), chi.index(), rec.text);
    Ok((rec, ok))
}

fn dirichlet(cmd: &DirichletCmd) -> Result<Report, CliError> {
    let mut report = Report::default();
    match *cmd {
        DirichletCmd::List { modulus } => {
            let mut rows = Vec::new();
            for chi in characters(modulus)? {
                let values: Vec<String> = chi.values().iter().map(CycRat::to_string).collect();
                report.push(
                    json!({
                        "modulus": modulus,
                        "index": chi.index(),
                        "order": chi.order(),
                        "real": chi.is_real(),
                        "primitive": chi.is_primitive(),
                        "conductor": chi.conductor(),
                        "values": values,
                    }),
                    format!(
                        "index {}: order {}, conductor {}, values [{}]",
                        chi.index(),
                        chi.order(),
                        chi.conductor(),
                        values.join(", ")
                    ),
                );
                rows.push(vec![
                    modulus.to_string(),
                    chi.index().to_string(),
                    chi.order().to_string(),
                    chi.is_real().to_string(),
                    chi.is_primitive().to_string(),
                    chi.conductor().to_string(),
                    values.join(";"),
                ]);
            }
            report.csv = Some((
                vec!["modulus", "index", "order", "real", "primitive", "conductor", "values"],
                rows,
            ));
        }
        DirichletCmd::BetaChi { modulus, index, n } => {
            let chi = character(modulus, index)?;
            let rec = if chi.is_real() {
                beta_chi_record::<Rat>(&chi, n)?
            } else {
                beta_chi_record::<CycRat>(&chi, n)?
            };
            report.records.push(rec);
        }
        DirichletCmd::Verify {
            modulus,
            index,
            min_n,
            max_n,
            method,
            order,
        } => {
            let chis = match index {
                Some(i) => vec![character(modulus, i)?],
                None => characters(modulus)?.into_iter().filter(|c| !c.is_trivial()).collect(),
            };
            if min_n > max_n {
                return Err(CliError::Usage("need min-n <= max-n".into()));
            }
            let mut passes = Vec::new();
            for chi in &chis {
                for n in min_n..=max_n {
                    for backend in method.backends() {
                        let (rec, ok) = if chi.is_real() {
                            verify_chi_record::<Rat>(chi, n, backend, order)?
                        } else {
                            verify_chi_record::<CycRat>(chi, n, backend, order)?
                        };
                        report.records.push(rec);
                        passes.push(ok);
                    }
                }
            }
            report.conclude(&passes);
        }
    }
    Ok(report)
}

fn operator_kind(op: &OperatorArgs) -> Result<OperatorKind, CliError> {
    match op.operator {
        OperatorName::Riemann => Ok(OperatorKind::Riemann),
        OperatorName::Hurwitz => {
            let x = op
                .x
                .clone()
                .ok_or_else(|| CliError::Usage("--operator hurwitz needs --x".into()))?;
            check_x(&x)?;
            Ok(OperatorKind::Hurwitz(x))
        }
        OperatorName::Dirichlet => match (op.modulus, op.index) {
            (Some(m), Some(i)) => Ok(OperatorKind::DirichletL(character(m, i)?)),
            _ => Err(CliError::Usage("--operator dirichlet needs --modulus and --index".into())),
        },
    }
}

fn series_json<F: Field>(s: &TruncSeries<F>) -> Value {
    json!({
        "order": s.order(),
        "coefficients": s.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

fn apply_record<F: Field>(spec: &OperatorSpec, p: &Poly<Rat>, backend: Backend, order: usize) -> Result<Record, CliError> {
    let branch = spec.branch();
    let var = var_name(branch);
    let mut json = json!({
        "operator": spec.kind.to_string(),
        "s": spec.s,
        "poly": poly_str(p, "q"),
        "method": backend.to_string(),
        "variable": variable_json(branch),
    });
    let text = match backend {
        Backend::Series => {
            let s = apply_series::<F>(spec, p, order)?;
            json["series"] = series_json(&s);
            let terms: Vec<String> = s
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| format!("({c})*{var}^{k}"))
                .collect();
            format!("{} + O({var}^{})", terms.join(" + "), s.order() + 1)
        }
        _ => {
            let value = match backend {
                Backend::Delta => apply_delta::<F>(spec, p)?.value,
                _ => apply_geometric::<F>(spec, p)?.value,
            };
            json["num"] = json!(poly_str(value.num(), var));
            json["den"] = json!(poly_str(value.den(), var));
            fraction_text(&value, var)
        }
    };
    Ok(Record { json, text })
}

fn zeta(cmd: &ZetaCmd) -> Result<Report, CliError> {
    let mut report = Report::default();
    match cmd {
        ZetaCmd::Apply {
            op,
            s,
            poly,
            method,
            order,
        } => {
            let kind = operator_kind(op)?;
            let backend = method.single()?;
            let p = parse_operator_poly(poly)?;
            let spec = OperatorSpec::new(kind, *s)?;
            let real = match &spec.kind {
                OperatorKind::DirichletL(chi) => chi.is_real(),
                _ => true,
            };
            let rec = if real {
                apply_record::<Rat>(&spec, &p, backend, *order)?
            } else {
                apply_record::<CycRat>(&spec, &p, backend, *order)?
            };
            report.records.push(rec);
        }
        ZetaCmd::EulerCheck {
            s,
            poly,
            prime_bound,
            order,
        } => {
            let p = parse_operator_poly(poly)?;
            let bound = prime_bound.unwrap_or(*order as u64);
            let euler = euler_product_apply(*s, &p, bound, *order)?;
            let direct = apply_series::<Rat>(&OperatorSpec::riemann(*s), &p, *order)?;
            let ok = euler.agrees_with(&direct);
            report.push(
                json!({"s": s, "poly": poly_str(&p, "q"), "prime_bound": bound, "order": order, "pass": ok}),
                format!("s={s} prime-bound={bound} order={order}: {}", pass_word(ok)),
            );
            report.conclude(&[ok]);
        }
        ZetaCmd::Numeric { op, s, q0, poly, eps } => {
            let kind = operator_kind(op)?;
            let p = parse_operator_poly(poly)?;
            let v = numeric_apply(&kind, *s, *q0, &p, *eps)?;
            report.push(
                json!({
                    "operator": kind.to_string(),
                    "s": {"re": s.re, "im": s.im},
                    "q0": {"re": q0.re, "im": q0.im},
                    "poly": poly_str(&p, "q"),
                    "value": {"re": v.value.re, "im": v.value.im},
                    "terms": v.terms,
                    "tail_bound": v.tail_bound,
                }),
                format!("{} (terms {}, tail bound {:e})", v.value, v.terms, v.tail_bound),
            );
        }
    }
    Ok(report)
}

fn lemma(cmd: &LemmaCmd) -> Result<Report, CliError> {
    let mut report = Report::default();
    let LemmaCmd::CommuteCheck { max_m, max_n, s, r_max } = cmd;
    let mut passes = Vec::new();
    for &si in s {
        for m in 1..=*max_m {
            for n in 1..=*max_n {
                let rep = check_commute(m, n, si, *r_max)?;
                let ok = rep.pass();
                report.push(
                    json!({"m": m, "n": n, "s": si, "r_max": r_max, "pass": ok}),
                    format!("m={m} n={n} s={si}: {}", pass_word(ok)),
                );
                passes.push(ok);
            }
        }
    }
    report.conclude(&passes);
    Ok(report)
}

pub fn root_report_json(r: &RootReport) -> Value {
    json!({
        "n": r.n,
        "character": r.character.map(|(m, i)| json!({"modulus": m, "index": i})),
        "degree": r.degree,
        "counts": {
            "real_positive": r.counts.real_positive,
            "on_unit_circle": r.counts.on_unit_circle,
            "complex_pairs_off_circle": r.counts.complex_pairs_off_circle,
            "other_real": r.counts.other_real,
        },
        "tol_circle": r.tol_circle,
        "tol_real": r.tol_real,
        "max_residual": r.max_residual(),
        "roots": r.roots.iter().map(|z| json!({
            "re": z.z.re,
            "im": z.z.im,
            "abs": z.z.norm(),
            "class": z.class.as_str(),
            "residual": z.residual,
        })).collect::<Vec<_>>(),
    })
}

fn roots(cmd: &RootsCmd) -> Result<Report, CliError> {
    let RootsCmd::Survey {
        max_n,
        tol,
        modulus,
        index,
    } = *cmd;
    let reports = match (modulus, index) {
        (Some(m), Some(i)) => chi_root_survey(&character(m, i)?, max_n, tol)?,
        _ => beta_root_survey(max_n, tol)?,
    };
    let mut report = Report::default();
    let mut rows = Vec::new();
    for r in &reports {
        let c = r.counts;
        report.push(
            root_report_json(r),
            format!(
                "n={} degree={} real_positive={} on_unit_circle={} complex_off_circle={} other_real={} max_residual={:.1e}",
                r.n, r.degree, c.real_positive, c.on_unit_circle, c.complex_pairs_off_circle, c.other_real, r.max_residual()
            ),
        );
        for z in &r.roots {
            rows.push(vec![
                r.n.to_string(),
                format!("{:?}", z.z.re),
                format!("{:?}", z.z.im),
                format!("{:?}", z.z.norm()),
                z.class.as_str().to_string(),
                format!("{:e}", z.residual),
            ]);
        }
    }
    report.csv = Some((vec!["n", "re", "im", "abs", "class", "residual"], rows));
    Ok(report)
}
