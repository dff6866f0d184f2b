use super::{beta_poly, compare, Evidence, VerifyReport};
use crate::arith::ntheory::gcd;
use crate::arith::{CycloProduct, Field, Poly, Rat, RatFunc};
use crate::dirichlet::DirichletCharacter;
use crate::error::{Error, Result};
use crate::series::quantum_int_poly;
use crate::zeta::{carlitz_test_poly, Backend, OperatorSpec};

#[derive(Clone, Debug, PartialEq)]
pub struct BetaChi<F> {
    pub modulus: u64,
    pub index: u64,
    pub n: u64,
    pub value: RatFunc<F>,
}

fn require_nontrivial(chi: &DirichletCharacter) -> Result<()> {
    if chi.is_trivial() {
        Err(Error::Unsupported("character analogues are defined for non-trivial characters".into()))
    } else {
        Ok(())
    }
}

/// `beta_(chi,n) = sum_j chi(j) (F_N/[N]^(1-n)) (q^(j/N) beta_n(j/N))`.
///
/// `q^(j/N) beta_n(j/N)` lives on branch `N`, where `F_N` maps `v` to `q`,
/// so the same rational function is read as a function of `q`.
pub fn beta_chi<F: Field>(chi: &DirichletCharacter, n: u64) -> Result<BetaChi<F>> {
    require_nontrivial(chi)?;
    let big_n = chi.modulus();
    let mut parts = alloc::vec::Vec::new();
    let mut common = CycloProduct::new();
    for j in (1..big_n).filter(|&j| gcd(j, big_n) == 1) {
        let c: F = chi.value_in(j)?;
        let x = Rat::new((j as i64).into(), (big_n as i64).into())?;
        let bp = beta_poly(n, &x)?;
        debug_assert_eq!(bp.branch, big_n);
        common = common.lcm(&bp.den_factors);
        parts.push((c, bp.value.num().shift(j as usize), bp.den_factors));
    }
    let mut num = Poly::<F>::zero();
    for (c, part, den) in parts {
        let cof: Poly<Rat> = common.quotient(&den).expect("lcm").expand();
        let term = (&part * &cof).map(|a| F::from_rat(a.clone()));
        num = &num + &term.scale(&c);
    }
    if n >= 1 {
        num = &num * &quantum_int_poly::<F>(big_n).pow(n as u32 - 1);
    } else {
        let qn = CycloProduct::x_pow_minus_one(big_n).quotient(&CycloProduct::single(1)).expect("Phi_1 divides");
        common = common.mul(&qn);
    }
    Ok(BetaChi {
        modulus: big_n,
        index: chi.index(),
        n,
        value: RatFunc::from_cyclotomic_den(num, &common)?,
    })
}

/// `beta_(chi,n) = L_q(chi, 1 - n)(q - (n+1) q^2)`; `n = 0` is outside exact mode.
pub fn verify_chi<F: Field>(chi: &DirichletCharacter, n: u64, backend: Backend, order: usize) -> Result<VerifyReport<F>> {
    require_nontrivial(chi)?;
    if n == 0 {
        return Ok(VerifyReport {
            n,
            backend,
            branch: 1,
            evidence: Evidence::OutsideExactMode,
        });
    }
    let lhs = beta_chi::<F>(chi, n)?.value;
    let spec = OperatorSpec::dirichlet(chi.clone(), 1 - n as i64);
    compare(n, lhs, &spec, &carlitz_test_poly(n), backend, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::CycRat;
    use crate::dirichlet::{characters, DirichletCharacter};

    #[test]
    fn mod_four_weight_zero() {
        // (q - q^3)/[4]
        let chi = DirichletCharacter::new(4, 1).unwrap();
        let b = beta_chi::<Rat>(&chi, 0).unwrap();
        let expect = RatFunc::new(Poly::from_i64s(&[0, 1, 0, -1]), Poly::from_i64s(&[1, 1, 1, 1])).unwrap();
        assert_eq!(b.value, expect);
        assert!(beta_chi::<Rat>(&DirichletCharacter::new(4, 0).unwrap(), 1).is_err());
    }

    #[test]
    fn real_and_complex_characters() {
        for chi in characters(3).unwrap().into_iter().skip(1) {
            for n in 1..=3 {
                assert!(verify_chi::<Rat>(&chi, n, Backend::Geometric, 20).unwrap().pass());
            }
        }
        let complex: alloc::vec::Vec<_> = characters(5).unwrap().into_iter().filter(|c| c.order() == 4).collect();
        assert_eq!(complex.len(), 2);
        for chi in complex {
            assert!(beta_chi::<Rat>(&chi, 1).is_err());
            for n in 1..=2 {
                for backend in [Backend::Geometric, Backend::Delta, Backend::Series] {
                    assert!(verify_chi::<CycRat>(&chi, n, backend, 20).unwrap().pass(), "n = {n}, {backend}");
                }
            }
        }
    }
}
