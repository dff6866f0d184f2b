use num_complex::Complex64;

use super::{check_input, OperatorKind};
use crate::arith::{Field, Poly, Rat};
use crate::error::{domain, Error, Result};
use crate::series::positive_ratio;

const MAX_TERMS: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericValue {
    pub value: Complex64,
    /// Number of terms summed.
    pub terms: u64,
    /// Bound on the omitted tail.
    pub tail_bound: f64,
}

/// `sum_e c_e P(q0^e) [e]^(-s)` in floating point, for any complex `s`.
///
/// Powers use the principal logarithm. Summation stops once the tail bound
/// `B C rho^e / (1 - rho)` drops below `eps`, where `rho = |q0|`, `C` is the
/// sum of `|p_r|` and `B` bounds `|[e]^(-s)|` over `|[e]|` in
/// `[(1 - rho)/|1 - q0|, 2/|1 - q0|]`.
pub fn numeric_apply(kind: &OperatorKind, s: Complex64, q0: Complex64, p: &Poly<Rat>, eps: f64) -> Result<NumericValue> {
    check_input(p)?;
    if !(eps > 0.0) {
        return Err(domain("eps must be positive"));
    }
    let rho = q0.norm();
    if !(rho < 1.0) {
        return Err(domain("numeric mode requires |q0| < 1"));
    }
    let coeffs: alloc::vec::Vec<(f64, f64)> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(r, c)| (r as f64, c.to_f64()))
        .collect();
    if coeffs.is_empty() || rho == 0.0 {
        return Ok(NumericValue {
            value: Complex64::new(0.0, 0.0),
            terms: 0,
            tail_bound: 0.0,
        });
    }
    let c_sum: f64 = coeffs.iter().map(|(_, c)| c.abs()).sum();
    let gap = (Complex64::new(1.0, 0.0) - q0).norm();
    let lo = ((1.0 - rho) / gap).ln().abs();
    let hi = (2.0 / gap).ln().abs();
    let b = (s.re.abs() * lo.max(hi) + s.im.abs() * core::f64::consts::PI).exp();
    let scale = b * c_sum / (1.0 - rho);
    if !scale.is_finite() {
        return Err(Error::NoConvergence("tail bound is not finite for these parameters".into()));
    }

    // exponents e = offset + k, with weights
    let (offset, weight): (f64, alloc::boxed::Box<dyn Fn(u64) -> Complex64>) = match kind {
        OperatorKind::Riemann => (1.0, alloc::boxed::Box::new(|_| Complex64::new(1.0, 0.0))),
        OperatorKind::Hurwitz(x) => {
            positive_ratio(x)?;
            (x.to_f64(), alloc::boxed::Box::new(|_| Complex64::new(1.0, 0.0)))
        }
        OperatorKind::DirichletL(chi) => {
            let chi = chi.clone();
            (
                1.0,
                alloc::boxed::Box::new(move |k| {
                    chi.value(k + 1).to_complex().expect("cyclotomic values embed in C")
                }),
            )
        }
    };
    let log_q0 = q0.ln();
    let one = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    let mut k = 0u64;
    loop {
        let e = offset + k as f64;
        let tail = scale * rho.powf(e);
        if e >= 1.0 && tail < eps {
            return Ok(NumericValue {
                value: sum,
                terms: k,
                tail_bound: tail,
            });
        }
        if k >= MAX_TERMS {
            return Err(Error::NoConvergence(alloc::format!(
                "tail bound {tail:e} still above eps after {k} terms"
            )));
        }
        let c = weight(k);
        if c.norm() != 0.0 {
            let qe = (log_q0 * e).exp();
            let qint = (qe - one) / (q0 - one);
            let pval = coeffs
                .iter()
                .fold(Complex64::new(0.0, 0.0), |acc, &(r, pr)| acc + (log_q0 * (e * r)).exp() * pr);
            let term = c * pval * (-s * qint.ln()).exp();
            // Kahan summation
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn examples() {
        let x = Poly::from_i64s(&[0, 1]);
        let v = numeric_apply(&OperatorKind::Riemann, c(0.0), c(0.5), &x, 1e-14).unwrap();
        assert!((v.value - c(1.0)).norm() < 1e-12);
        let v = numeric_apply(&OperatorKind::Riemann, c(-1.0), c(0.5), &x, 1e-14).unwrap();
        assert!((v.value - c(4.0 / 3.0)).norm() < 1e-12);
        assert!(numeric_apply(&OperatorKind::Riemann, c(0.0), c(1.0), &x, 1e-10).is_err());
        assert!(numeric_apply(&OperatorKind::Riemann, c(0.0), c(0.5), &Poly::from_i64s(&[1, 1]), 1e-10).is_err());
    }
}
