use super::{beta_table, compare, Evidence, VerifyReport};
use crate::arith::ntheory::binomial;
use crate::arith::{CycloProduct, Poly, Rat, RatFunc};
use crate::error::Result;
use crate::series::positive_ratio;
use crate::zeta::{carlitz_test_poly, Backend, OperatorSpec};

/// `beta_n(x)` as a rational function of `v = q^(1/branch)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BetaPolynomial {
    pub n: u64,
    pub x: Rat,
    pub branch: u64,
    pub value: RatFunc<Rat>,
    /// `value.den()` factored into cyclotomic polynomials in `v`.
    pub den_factors: CycloProduct,
}

/// `beta_n(x) = sum_i C(n,i) q^(x i) [x]^(n-i) beta_i` for `x = a/b > 0`.
pub fn beta_poly(n: u64, x: &Rat) -> Result<BetaPolynomial> {
    let (a, b) = positive_ratio(x)?;
    let (a_us, b_us) = (a as usize, b as usize);
    let betas = beta_table(n);
    let common = betas.iter().fold(CycloProduct::new(), |acc, bt| acc.lcm(&bt.den_factors));
    // [x] = (v^a - 1)/(v^b - 1); everything goes over (v^b - 1)^n common(v^b)
    let va = Poly::<Rat>::x_pow_minus_one(a_us);
    let vb = Poly::<Rat>::x_pow_minus_one(b_us);
    let mut num = Poly::zero();
    for (i, bt) in betas.iter().enumerate() {
        let i64_ = i as u64;
        let cof: Poly<Rat> = common.quotient(&bt.den_factors).expect("lcm").expand();
        let inner = (bt.numerator() * &cof).substitute_power(b_us);
        let weight = &(&va.pow((n - i64_) as u32) * &vb.pow(i as u32)) * &inner;
        let c = Rat::from_integer(binomial(n, i64_));
        num = &num + &weight.shift(a_us * i).scale(&c);
    }
    let mut den = common.substitute_power(b);
    for _ in 0..n {
        den = den.mul(&CycloProduct::x_pow_minus_one(b));
    }
    let (num, rest) = den.reduce(&num);
    let value = RatFunc::from_coprime(num, rest.expand());
    Ok(BetaPolynomial {
        n,
        x: x.clone(),
        branch: b,
        value,
        den_factors: rest,
    })
}

/// `q^x beta_n(x) = zeta_q(1 - n, x)(q - (n+1) q^2)`.
///
/// For `n = 0` the operator is at `s = 1` and the report says so instead
/// of comparing.
pub fn verify_hurwitz(n: u64, x: &Rat, backend: Backend, order: usize) -> Result<VerifyReport<Rat>> {
    let bp = beta_poly(n, x)?;
    if n == 0 {
        return Ok(VerifyReport {
            n,
            backend,
            branch: bp.branch,
            evidence: Evidence::OutsideExactMode,
        });
    }
    let (a, _) = positive_ratio(x)?;
    let lhs = &RatFunc::from_poly(Poly::monomial(Rat::one(), a as usize)) * &bp.value;
    let spec = OperatorSpec::hurwitz(x.clone(), 1 - n as i64)?;
    compare(n, lhs, &spec, &carlitz_test_poly(n), backend, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::{apply_geometric, OperatorKind};

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    #[test]
    fn low_degree() {
        for x in ["1", "1/2", "2/3"] {
            let x = r(x);
            assert_eq!(beta_poly(0, &x).unwrap().value, RatFunc::one());
            // beta_1(x) = [x] - q^x/(q+1)
            let (a, b) = positive_ratio(&x).unwrap();
            let (a, b) = (a as usize, b as usize);
            let qx = RatFunc::new(Poly::x_pow_minus_one(a), Poly::x_pow_minus_one(b)).unwrap();
            let den = &Poly::monomial(Rat::one(), b) + &Poly::one();
            let expect = &qx - &RatFunc::new(Poly::monomial(Rat::one(), a), den).unwrap();
            assert_eq!(beta_poly(1, &x).unwrap().value, expect);
        }
    }

    #[test]
    fn hurwitz_at_one_is_riemann() {
        // sum_{k>=0} [k+1]^m q^((k+1)r) = sum_{k>=1} [k]^m q^(kr)
        for s in [0, -1, -2, -3] {
            for r in 1..=3usize {
                let p = Poly::monomial(Rat::one(), r);
                let h = apply_geometric::<Rat>(&OperatorSpec::new(OperatorKind::Hurwitz(Rat::one()), s).unwrap(), &p).unwrap();
                let z = apply_geometric::<Rat>(&OperatorSpec::riemann(s), &p).unwrap();
                assert_eq!(h.value, z.value);
            }
        }
    }

    #[test]
    fn hurwitz_relation_small() {
        for x in ["1", "1/2", "1/3", "3/4"] {
            for n in 1..=4 {
                for backend in [Backend::Geometric, Backend::Delta, Backend::Series] {
                    assert!(verify_hurwitz(n, &r(x), backend, 24).unwrap().pass(), "x = {x}, n = {n}, {backend}");
                }
            }
        }
        assert!(verify_hurwitz(0, &Rat::one(), Backend::Geometric, 8).unwrap().skipped());
    }
}
