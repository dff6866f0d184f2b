use crate::arith::ntheory::{gcd, lcm};
use crate::arith::{Field, Poly, Rat, RatFunc};
use crate::error::{domain, Result};

use super::trunc::positive_ratio;

/// A rational function of `v = q^(1/branch)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxFn<F> {
    pub branch: u64,
    pub value: RatFunc<F>,
}

impl<F: Field> PuiseuxFn<F> {
    pub fn new(branch: u64, value: RatFunc<F>) -> Self {
        assert!(branch >= 1, "branch must be >= 1");
        PuiseuxFn { branch, value }
    }

    /// An ordinary rational function of `q`.
    pub fn in_q(value: RatFunc<F>) -> Self {
        Self::new(1, value)
    }

    /// `q^x` for a non-negative rational `x`, on the smallest branch.
    pub fn q_power(x: &Rat) -> Result<Self> {
        if x.is_zero() {
            return Ok(Self::in_q(RatFunc::one()));
        }
        let (a, b) = positive_ratio(x)?;
        Ok(Self::new(b, RatFunc::from_poly(Poly::monomial(F::one(), a as usize))))
    }

    /// Same function on a multiple of the current branch.
    pub fn rebase(&self, branch: u64) -> Result<Self> {
        if branch % self.branch != 0 {
            return Err(domain("target branch must be a multiple of the current branch"));
        }
        let f = (branch / self.branch) as usize;
        Ok(Self::new(branch, self.value.substitute_power(f)))
    }

    /// Smallest branch on which the function is expressible.
    pub fn simplify_branch(&self) -> Self {
        let mut g = self.branch;
        for p in [self.value.num(), self.value.den()] {
            for (k, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    g = gcd(g, k as u64);
                }
            }
        }
        if g <= 1 {
            return self.clone();
        }
        let g = g as usize;
        let squeeze = |p: &Poly<F>| Poly::new(p.coeffs().iter().step_by(g).cloned().collect());
        Self::new(
            self.branch / g as u64,
            RatFunc::from_coprime(squeeze(self.value.num()), squeeze(self.value.den())),
        )
    }

    fn aligned(&self, other: &Self) -> (RatFunc<F>, RatFunc<F>, u64) {
        let b = lcm(self.branch, other.branch);
        (
            self.rebase(b).expect("multiple").value,
            other.rebase(b).expect("multiple").value,
            b,
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let (x, y, b) = self.aligned(other);
        Self::new(b, &x + &y).simplify_branch()
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (x, y, b) = self.aligned(other);
        Self::new(b, &x - &y).simplify_branch()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (x, y, b) = self.aligned(other);
        Self::new(b, &x * &y).simplify_branch()
    }

    /// `F_n f = f(q^n)` for a positive rational `n`.
    pub fn frobenius(&self, n: &Rat) -> Result<Self> {
        let (c, d) = positive_ratio(n)?;
        Ok(Self::new(self.branch * d, self.value.substitute_power(c as usize)).simplify_branch())
    }

    /// Equality as functions of `q`.
    pub fn same_as(&self, other: &Self) -> bool {
        let (x, y, _) = self.aligned(other);
        x == y
    }
}

/// The quantum number `[index] = (q^index - 1)/(q - 1)` for a positive
/// rational index, as a reduced rational function on `branch`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumInt<F> {
    pub index: Rat,
    pub branch: u64,
    pub value: RatFunc<F>,
}

/// `[index]` on branch `b`; `b * index` must be an integer.
pub fn quantum_int<F: Field>(index: &Rat, branch: u64) -> Result<QuantumInt<F>> {
    if branch == 0 {
        return Err(domain("branch must be >= 1"));
    }
    if !index.is_positive() {
        return Err(domain("quantum integer index must be positive"));
    }
    let scaled = index * &Rat::from(branch as i64);
    if !scaled.is_integer() {
        return Err(domain("index is not representable on this branch"));
    }
    let c = scaled
        .to_i64()
        .ok_or_else(|| domain("index too large"))? as usize;
    let b = branch as usize;
    let value = RatFunc::new(Poly::x_pow_minus_one(c), Poly::x_pow_minus_one(b))?;
    Ok(QuantumInt {
        index: index.clone(),
        branch,
        value,
    })
}

/// `[n]` for a positive integer, as a polynomial in `q`.
pub fn quantum_int_poly<F: Field>(n: u64) -> Poly<F> {
    Poly::new(alloc::vec![F::one(); n as usize])
}
