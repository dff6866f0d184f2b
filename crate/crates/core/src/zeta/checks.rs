use alloc::vec::Vec;

use super::{apply_geometric, OperatorKind, OperatorSpec};
use crate::arith::{Field, Poly, Rat, RatFunc};
use crate::dirichlet::DirichletCharacter;
use crate::error::{domain, Error, Result};
use crate::series::{quantum_int_poly, PuiseuxFn};

#[derive(Clone, Debug, PartialEq)]
pub struct CommuteReport {
    pub m: u64,
    pub n: u64,
    pub s: i64,
    /// `(r, holds)` for `r = 1..=r_max`.
    pub rows: Vec<(u64, bool)>,
}

impl CommuteReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|&(_, ok)| ok)
    }
}

/// `(F_a/[a]^s) f = [a]^k f(q^a)` with `k = -s`.
fn single(a: u64, k: u32, f: &RatFunc<Rat>) -> RatFunc<Rat> {
    let weight = RatFunc::from_poly(quantum_int_poly::<Rat>(a).pow(k));
    &weight * &f.substitute_power(a as usize)
}

/// Checks `(F_m/[m]^s)(F_n/[n]^s) q^r = (F_mn/[mn]^s) q^r`, in both orders.
pub fn check_commute(m: u64, n: u64, s: i64, r_max: u64) -> Result<CommuteReport> {
    if m == 0 || n == 0 {
        return Err(domain("m and n must be >= 1"));
    }
    let k = OperatorSpec::riemann(s).exact_power()?;
    let rows = (1..=r_max)
        .map(|r| {
            let qr = RatFunc::from_poly(Poly::monomial(Rat::one(), r as usize));
            let both = single(m * n, k, &qr);
            let mn = single(m, k, &single(n, k, &qr));
            let nm = single(n, k, &single(m, k, &qr));
            (r, mn == both && nm == both)
        })
        .collect();
    Ok(CommuteReport { m, n, s, rows })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistributionReport {
    pub n: u64,
    pub x: Rat,
    pub s: i64,
    pub r: u64,
    pub lhs: PuiseuxFn<Rat>,
    pub rhs: PuiseuxFn<Rat>,
    pub pass: bool,
}

/// `(F_N/[N]^s) g` for `g` on any branch; `F_N` scales `v`-exponents by `N`.
fn frobenius_weighted<F: Field>(n: u64, k: u32, g: &PuiseuxFn<F>) -> Result<PuiseuxFn<F>> {
    let weight = PuiseuxFn::in_q(RatFunc::from_poly(quantum_int_poly::<F>(n).pow(k)));
    Ok(weight.mul(&g.frobenius(&Rat::from(n as i64))?))
}

fn hurwitz_at(x: &Rat, s: i64, r: u64) -> Result<PuiseuxFn<Rat>> {
    let spec = OperatorSpec::hurwitz(x.clone(), s)?;
    let res = apply_geometric::<Rat>(&spec, &Poly::monomial(Rat::one(), r as usize))?;
    Ok(PuiseuxFn::new(res.branch, res.value).simplify_branch())
}

/// Checks `sum_{0<=j<N} (F_N/[N]^s) zeta_q(s, (x+j)/N) q^r = zeta_q(s, x) q^r`.
pub fn check_distribution(n: u64, x: &Rat, s: i64, r: u64) -> Result<DistributionReport> {
    if n == 0 || r == 0 {
        return Err(domain("N and r must be >= 1"));
    }
    let k = OperatorSpec::riemann(s).exact_power()?;
    let big_n = Rat::from(n as i64);
    let mut lhs = PuiseuxFn::in_q(RatFunc::zero());
    for j in 0..n {
        let y = &(x + &Rat::from(j as i64)) / &big_n;
        lhs = lhs.add(&frobenius_weighted(n, k, &hurwitz_at(&y, s, r)?)?);
    }
    let rhs = hurwitz_at(x, s, r)?;
    let pass = lhs.same_as(&rhs);
    Ok(DistributionReport {
        n,
        x: x.clone(),
        s,
        r,
        lhs,
        rhs,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LDecompositionReport<F> {
    pub s: i64,
    pub r: u64,
    pub lhs: RatFunc<F>,
    pub rhs: RatFunc<F>,
    pub pass: bool,
}

/// Checks `L_q(chi, s) q^r = sum_{0<j<N} chi(j) (F_N/[N]^s) zeta_q(s, j/N) q^r`.
pub fn check_l_decomposition<F: Field>(chi: &DirichletCharacter, s: i64, r: u64) -> Result<LDecompositionReport<F>> {
    if chi.is_trivial() {
        return Err(Error::Unsupported("the decomposition is checked for non-trivial characters".into()));
    }
    let k = OperatorSpec::riemann(s).exact_power()?;
    let n = chi.modulus();
    let mut acc = PuiseuxFn::in_q(RatFunc::<F>::zero());
    for j in 1..n {
        let c: F = chi.value_in(j)?;
        if c.is_zero() {
            continue;
        }
        let inner = hurwitz_at(&Rat::new((j as i64).into(), (n as i64).into())?, s, r)?;
        let inner = PuiseuxFn::new(inner.branch, inner.value.map(|a| F::from_rat(a.clone()))?);
        let term = frobenius_weighted(n, k, &inner)?;
        acc = acc.add(&PuiseuxFn::new(term.branch, term.value.scale(&c)));
    }
    if acc.branch != 1 {
        return Err(domain("decomposition did not land on integral powers of q"));
    }
    let spec = OperatorSpec::new(OperatorKind::DirichletL(chi.clone()), s)?;
    let lhs = apply_geometric::<F>(&spec, &Poly::monomial(Rat::one(), r as usize))?.value;
    let pass = lhs == acc.value;
    Ok(LDecompositionReport {
        s,
        r,
        lhs,
        rhs: acc.value,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::characters;

    #[test]
    fn commute_examples() {
        assert!(check_commute(1, 1, -3, 4).unwrap().pass());
        assert!(check_commute(2, 3, -1, 1).unwrap().pass());
        assert!(check_commute(3, 2, -1, 1).unwrap().pass());
    }

    #[test]
    fn distribution_examples() {
        let one = Rat::one();
        let rep = check_distribution(2, &one, 0, 1).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.rhs.value, RatFunc::new(Poly::from_i64s(&[0, 1]), Poly::from_i64s(&[1, -1])).unwrap());
        assert!(check_distribution(1, &"2/3".parse().unwrap(), -2, 2).unwrap().pass);
        assert!(check_distribution(3, &"1/2".parse().unwrap(), -2, 1).unwrap().pass);
    }

    #[test]
    fn l_decomposition_small() {
        for chi in characters(4).unwrap().into_iter().skip(1) {
            for s in [0, -1] {
                assert!(check_l_decomposition::<Rat>(&chi, s, 1).unwrap().pass);
            }
        }
    }
}
