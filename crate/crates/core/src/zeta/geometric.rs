use alloc::collections::BTreeMap;
use alloc::vec;

use super::{check_input, monomials, ApplyResult, Backend, OperatorKind, OperatorSpec};
use crate::arith::ntheory::binomial;
use crate::arith::{CycloProduct, Field, Poly, Rat, RatFunc};
use crate::error::Result;
use crate::series::positive_ratio;

/// `sum_e c_e q^(e t) = numerator(t) / (1 - v^(period t))` in `v = q^(1/b)`.
struct Generating<F> {
    period: u64,
    weights: Poly<F>,
}

impl<F: Field> Generating<F> {
    fn new(kind: &OperatorKind) -> Result<Self> {
        Ok(match kind {
            OperatorKind::Riemann => Generating {
                period: 1,
                weights: Poly::x(),
            },
            OperatorKind::Hurwitz(x) => {
                let (a, b) = positive_ratio(x)?;
                Generating {
                    period: b,
                    weights: Poly::monomial(F::one(), a as usize),
                }
            }
            OperatorKind::DirichletL(chi) => {
                let n = chi.modulus();
                let mut w = vec![F::zero(); n as usize + 1];
                for (a, slot) in w.iter_mut().enumerate().skip(1) {
                    *slot = chi.value_in(a as u64)?;
                }
                Generating {
                    period: n,
                    weights: Poly::new(w),
                }
            }
        })
    }

    /// Numerator at exponent `t`: `weights(v^t)`.
    fn numerator(&self, t: u64) -> Poly<F> {
        self.weights.substitute_power(t as usize)
    }
}

/// Closed form at `s = -m`:
/// `sum_e c_e [e]^m q^(e r) = (q-1)^(-m) sum_j C(m,j) (-1)^(m-j) G(j + r)`
/// where `G(t) = sum_e c_e q^(e t)` is a geometric series.
pub fn apply_geometric<F: Field>(spec: &OperatorSpec, p: &Poly<Rat>) -> Result<ApplyResult<F>> {
    let m = spec.exact_power()?;
    check_input(p)?;
    let branch = spec.branch();
    let done = |value| ApplyResult {
        value,
        branch,
        backend: Backend::Geometric,
    };
    if p.is_zero() {
        return Ok(done(RatFunc::zero()));
    }
    let gen = Generating::<F>::new(&spec.kind)?;

    // weight of G(t) in the sum, collected over all monomials of P
    let mut weights: BTreeMap<u64, F> = BTreeMap::new();
    for (r, pr) in monomials::<F>(p) {
        for j in 0..=m {
            let mut c = F::from_rat(Rat::from_integer(binomial(u64::from(m), u64::from(j))));
            if (m - j) % 2 == 1 {
                c = c.neg_ref();
            }
            let slot = weights.entry(r + u64::from(j)).or_insert_with(F::zero);
            *slot = slot.add_ref(&c.mul_ref(&pr));
        }
    }

    let mut common = CycloProduct::new();
    for &t in weights.keys() {
        common = common.lcm(&CycloProduct::x_pow_minus_one(gen.period * t));
    }
    let mut num = Poly::zero();
    for (&t, w) in &weights {
        if w.is_zero() {
            continue;
        }
        let own = CycloProduct::x_pow_minus_one(gen.period * t);
        let cofactor: Poly<F> = common.quotient(&own).expect("lcm is a multiple").expand();
        // 1/(1 - y) = -1/(y - 1)
        num = &num - &(&gen.numerator(t) * &cofactor).scale(w);
    }
    let mut den = common;
    for _ in 0..m {
        den = den.mul(&CycloProduct::x_pow_minus_one(branch));
    }
    Ok(done(RatFunc::from_cyclotomic_den(num, &den)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::cyclotomic;

    fn p(cs: &[i64]) -> Poly<Rat> {
        Poly::from_i64s(cs)
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFunc<Rat> {
        RatFunc::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn examples() {
        let r = apply_geometric::<Rat>(&OperatorSpec::riemann(0), &p(&[0, 1])).unwrap();
        assert_eq!(r.value, rf(&[0, 1], &[1, -1]));
        let r = apply_geometric::<Rat>(&OperatorSpec::riemann(-1), &p(&[0, 1, -3])).unwrap();
        let den = &cyclotomic::<Rat>(2).unwrap() * &cyclotomic(3).unwrap();
        assert_eq!(r.value, RatFunc::new(p(&[0, 1]), den).unwrap());
        let r = apply_geometric::<Rat>(&OperatorSpec::riemann(-1), &p(&[0, 1])).unwrap();
        assert_eq!(r.value, rf(&[0, 1], &[1, -1, -1, 1]));
        assert!(apply_geometric::<Rat>(&OperatorSpec::riemann(-3), &Poly::zero()).unwrap().value.is_zero());
        assert!(apply_geometric::<Rat>(&OperatorSpec::riemann(0), &p(&[1, 1])).is_err());
        assert!(apply_geometric::<Rat>(&OperatorSpec::riemann(1), &p(&[0, 1])).is_err());
    }

    #[test]
    fn hurwitz_half() {
        // sum_{k>=0} q^{k+1/2} = v/(1 - v^2)
        let spec = OperatorSpec::hurwitz("1/2".parse().unwrap(), 0).unwrap();
        let r = apply_geometric::<Rat>(&spec, &p(&[0, 1])).unwrap();
        assert_eq!(r.branch, 2);
        assert_eq!(r.value, rf(&[0, 1], &[1, 0, -1]));
    }
}
