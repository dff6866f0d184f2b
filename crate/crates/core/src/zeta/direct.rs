use super::{check_input, monomials, OperatorKind, OperatorSpec};
use crate::arith::{Field, Poly, Rat, RatFunc};
use crate::error::{domain, Result};
use crate::series::{positive_ratio, series_from_ratfunc, TruncSeries};

/// Direct summation through `v^order`, `v = q^(1/b)`.
///
/// The term with exponent `e` has `v`-valuation at least `b e`, so only
/// finitely many terms contribute and the truncation is exact.
pub fn apply_series<F: Field>(spec: &OperatorSpec, p: &Poly<Rat>, order: usize) -> Result<TruncSeries<F>> {
    let m = spec.exact_power()?;
    check_input(p)?;
    if order == 0 {
        return Err(domain("series order must be >= 1"));
    }
    let b = spec.branch();
    // (v-exponent of e, weight c_e)
    let mut terms: alloc::vec::Vec<(u64, F)> = alloc::vec::Vec::new();
    match &spec.kind {
        OperatorKind::Riemann => {
            terms.extend((1..=order as u64).map(|n| (n, F::one())));
        }
        OperatorKind::Hurwitz(x) => {
            let (a, _) = positive_ratio(x)?;
            terms.extend((0..).map(|k| k * b + a).take_while(|&e| e <= order as u64).map(|e| (e, F::one())));
        }
        OperatorKind::DirichletL(chi) => {
            for n in 1..=order as u64 {
                let c: F = chi.value_in(n)?;
                if !c.is_zero() {
                    terms.push((n, c));
                }
            }
        }
    }
    let mut acc = TruncSeries::zero(b, order);
    let mono: alloc::vec::Vec<(u64, F)> = monomials::<F>(p).collect();
    for (e, c) in terms {
        let e_us = e as usize;
        // F_e(P) = sum_r p_r v^(e r)
        let mut image = alloc::vec![F::zero(); order + 1];
        for (r, pr) in &mono {
            let k = e_us * *r as usize;
            if k <= order {
                image[k] = image[k].add_ref(&pr.mul_ref(&c));
            }
        }
        if image.iter().all(F::is_zero) {
            continue;
        }
        let image = TruncSeries::new(b, order, image);
        let rest = order - e_us;
        let qint = RatFunc::new(Poly::x_pow_minus_one(e_us), Poly::x_pow_minus_one(b as usize))?;
        let qint = series_from_ratfunc(&qint, b, rest)?.pow(m);
        // pad back to full order; entries past `rest` only meet zero coefficients of `image`
        let qint = TruncSeries::new(b, order, qint.coeffs().to_vec());
        acc = acc.add(&image.mul(&qint));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &TruncSeries<Rat>) -> alloc::vec::Vec<i64> {
        s.coeffs().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn examples() {
        let x = Poly::from_i64s(&[0, 1]);
        let s = apply_series::<Rat>(&OperatorSpec::riemann(0), &x, 5).unwrap();
        assert_eq!(ints(&s), [0, 1, 1, 1, 1, 1]);
        let s = apply_series::<Rat>(&OperatorSpec::riemann(-1), &x, 4).unwrap();
        assert_eq!(ints(&s), [0, 1, 1, 2, 2]);
        let spec = OperatorSpec::hurwitz("1/2".parse().unwrap(), 0).unwrap();
        let s = apply_series::<Rat>(&spec, &x, 5).unwrap();
        assert_eq!(s.branch(), 2);
        assert_eq!(ints(&s), [0, 1, 0, 1, 0, 1]);
    }
}
