use super::{check_input, OperatorSpec};
use crate::arith::ntheory::is_prime;
use crate::arith::{Poly, Rat};
use crate::error::Result;
use crate::series::{quantum_int_poly, TruncSeries};

/// `prod_{p <= prime_bound} (1 - F_p/[p]^s)^(-1)` applied to `P`, through `q^order`.
///
/// Each factor is expanded as `sum_e F_(p^e)/[p^e]^s`; powers with
/// `p^e > order` cannot reach the truncation order and are dropped.
pub fn euler_product_apply(s: i64, p: &Poly<Rat>, prime_bound: u64, order: usize) -> Result<TruncSeries<Rat>> {
    let m = OperatorSpec::riemann(s).exact_power()?;
    check_input(p)?;
    let mut acc = TruncSeries::from_q_poly(p, 1, order);
    let top = prime_bound.min(order as u64);
    for prime in (2..=top).filter(|&k| is_prime(k)) {
        let mut next = acc.clone();
        let mut pe = prime;
        while pe <= order as u64 {
            let weight = TruncSeries::from_q_poly(&quantum_int_poly::<Rat>(pe).pow(m), 1, order);
            let image = acc.frobenius(&Rat::from(pe as i64))?;
            next = next.add(&weight.mul(&image));
            pe *= prime;
        }
        acc = next;
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
        assert_eq!(ints(&euler_product_apply(0, &x, 1, 4).unwrap()), [0, 1, 0, 0, 0]);
        let smooth = euler_product_apply(0, &x, 3, 10).unwrap();
        assert_eq!(ints(&smooth), [0, 1, 1, 1, 1, 0, 1, 0, 1, 1, 0]);
        assert_eq!(ints(&euler_product_apply(0, &x, 7, 7).unwrap()), [0, 1, 1, 1, 1, 1, 1, 1]);
    }
}
