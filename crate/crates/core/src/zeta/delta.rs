use super::{check_input, monomials, ApplyResult, Backend, OperatorKind, OperatorSpec};
use crate::arith::{CycRat, Field, Poly, Rat, RatFunc};
use crate::error::Result;
use crate::series::{positive_ratio, BiRatFunc};

/// `f(r) = sum_e c_e q^(e r)` as a function of `w = q^(r/b)`.
pub fn base_function<F: Field>(kind: &OperatorKind) -> Result<BiRatFunc<F>> {
    match kind {
        OperatorKind::Riemann => Ok(BiRatFunc::riemann()),
        OperatorKind::Hurwitz(x) => {
            let (a, b) = positive_ratio(x)?;
            BiRatFunc::hurwitz(a, b)
        }
        OperatorKind::DirichletL(chi) => {
            let values: alloc::vec::Vec<CycRat> = chi.values().to_vec();
            BiRatFunc::periodic(&values)
        }
    }
}

/// Each application of the q-difference operator multiplies the `e`-th
/// term of `f` by `[e]`, so `Delta^m f` evaluated at `r` is the operator
/// at `s = -m` applied to `q^r`.
pub fn apply_delta<F: Field>(spec: &OperatorSpec, p: &Poly<Rat>) -> Result<ApplyResult<F>> {
    let m = spec.exact_power()?;
    check_input(p)?;
    let branch = spec.branch();
    let mut value = RatFunc::zero();
    if !p.is_zero() {
        let mut f = base_function::<F>(&spec.kind)?;
        for _ in 0..m {
            f = f.delta();
        }
        for (r, pr) in monomials::<F>(p) {
            value = &value + &f.eval(r)?.scale(&pr);
        }
    }
    Ok(ApplyResult {
        value,
        branch,
        backend: Backend::Delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::apply_geometric;

    fn p(cs: &[i64]) -> Poly<Rat> {
        Poly::from_i64s(cs)
    }

    #[test]
    fn examples() {
        let r = apply_delta::<Rat>(&OperatorSpec::riemann(-1), &p(&[0, 1])).unwrap();
        assert_eq!(r.value, RatFunc::new(p(&[0, 1]), p(&[1, -1, -1, 1])).unwrap());
        let r = apply_delta::<Rat>(&OperatorSpec::riemann(0), &p(&[0, 0, 1])).unwrap();
        assert_eq!(r.value, RatFunc::new(p(&[0, 0, 1]), p(&[1, 0, -1])).unwrap());
    }

    #[test]
    fn agrees_with_geometric() {
        let kinds = [
            OperatorKind::Riemann,
            OperatorKind::Hurwitz("1/3".parse().unwrap()),
            OperatorKind::Hurwitz("5/2".parse().unwrap()),
        ];
        for kind in kinds {
            for s in [0, -1, -2, -3] {
                let spec = OperatorSpec::new(kind.clone(), s).unwrap();
                let poly = p(&[0, 2, 0, -1]);
                let a = apply_delta::<Rat>(&spec, &poly).unwrap();
                let b = apply_geometric::<Rat>(&spec, &poly).unwrap();
                assert_eq!(a.value, b.value, "{kind} s = {s}");
            }
        }
    }
}
