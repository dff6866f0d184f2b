use alloc::vec;
use alloc::vec::Vec;

use crate::arith::ntheory::{gcd, lcm};
use crate::arith::{Field, Poly, Rat, RatFunc};
use crate::error::{domain, Error, Result};

/// Truncated Puiseux series in `v = q^(1/branch)`, known through `v^order`.
///
/// `coeffs[k]` is the coefficient of `v^k`; the vector always has
/// `order + 1` entries. Binary operations rebase both operands to the lcm
/// of their branches and keep the smaller precision.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<F> {
    branch: u64,
    order: usize,
    coeffs: Vec<F>,
}

impl<F: Field> TruncSeries<F> {
    pub fn new(branch: u64, order: usize, mut coeffs: Vec<F>) -> Self {
        assert!(branch >= 1, "branch must be >= 1");
        coeffs.resize(order + 1, F::zero());
        TruncSeries {
            branch,
            order,
            coeffs,
        }
    }

    pub fn zero(branch: u64, order: usize) -> Self {
        Self::new(branch, order, Vec::new())
    }

    /// A polynomial in `v`, truncated.
    pub fn from_poly(p: &Poly<F>, branch: u64, order: usize) -> Self {
        Self::new(
            branch,
            order,
            p.coeffs().iter().take(order + 1).cloned().collect(),
        )
    }

    /// A polynomial in `q`, placed on the given branch.
    pub fn from_q_poly(p: &Poly<F>, branch: u64, order: usize) -> Self {
        let mut s = Self::zero(branch, order);
        for (k, c) in p.coeffs().iter().enumerate() {
            let e = k * branch as usize;
            if e <= order {
                s.coeffs[e] = c.clone();
            }
        }
        s
    }

    pub fn branch(&self) -> u64 {
        self.branch
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn has_constant_term(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    /// Rejects series outside the operator domain `q C[[q]]`.
    pub fn require_no_constant_term(&self) -> Result<()> {
        if self.has_constant_term() {
            Err(domain("series has a constant term; operators act on series without one"))
        } else {
            Ok(())
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Self::new(self.branch, order, self.coeffs[..=order].to_vec())
    }

    /// Same series on branch `branch`, which must be a multiple of the
    /// current one.
    pub fn rebase(&self, branch: u64) -> Result<Self> {
        if branch % self.branch != 0 {
            return Err(domain("target branch must be a multiple of the current branch"));
        }
        let f = (branch / self.branch) as usize;
        if f == 1 {
            return Ok(self.clone());
        }
        let order = f * (self.order + 1) - 1;
        let mut coeffs = vec![F::zero(); order + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * f] = c.clone();
        }
        Ok(TruncSeries {
            branch,
            order,
            coeffs,
        })
    }

    /// Smallest branch on which the series (and its precision) is expressible.
    pub fn simplify_branch(&self) -> Self {
        let mut g = gcd(self.branch, self.order as u64 + 1);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                g = gcd(g, k as u64);
            }
        }
        if g <= 1 {
            return self.clone();
        }
        let g = g as usize;
        TruncSeries {
            branch: self.branch / g as u64,
            order: (self.order + 1) / g - 1,
            coeffs: self.coeffs.iter().step_by(g).cloned().collect(),
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let b = lcm(self.branch, other.branch);
        let x = self.rebase(b).expect("lcm is a multiple");
        let y = other.rebase(b).expect("lcm is a multiple");
        let order = x.order.min(y.order);
        (x.truncate(order), y.truncate(order))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (x, y) = self.aligned(other);
        let coeffs = x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| a.add_ref(b)).collect();
        TruncSeries { coeffs, ..x }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (x, y) = self.aligned(other);
        let coeffs = x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| a.sub_ref(b)).collect();
        TruncSeries { coeffs, ..x }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (x, y) = self.aligned(other);
        let n = x.order + 1;
        let mut coeffs = vec![F::zero(); n];
        for (i, a) in x.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        TruncSeries { coeffs, ..x }
    }

    pub fn scale(&self, c: &F) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a.mul_ref(c)).collect(),
            ..self.clone()
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::from_poly(&Poly::one(), self.branch, self.order);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `F_n`: substitutes `q -> q^n` for a positive rational `n`.
    ///
    /// For `n = c/d` the result lives on branch `branch * d` (then simplified)
    /// and is valid through the largest order the input determines.
    pub fn frobenius(&self, n: &Rat) -> Result<Self> {
        let (c, d) = positive_ratio(n)?;
        // v = q^(1/b) maps to q^(c/(b d)) = u^c with u = q^(1/(b d)).
        let c = c as usize;
        let order = c * (self.order + 1) - 1;
        let mut coeffs = vec![F::zero(); order + 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            coeffs[k * c] = a.clone();
        }
        Ok(TruncSeries {
            branch: self.branch * d,
            order,
            coeffs,
        }
        .simplify_branch())
    }

    /// Equality on the common precision (after rebasing to a common branch).
    pub fn agrees_with(&self, other: &Self) -> bool {
        let (x, y) = self.aligned(other);
        x.coeffs == y.coeffs
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> TruncSeries<G> {
        TruncSeries {
            branch: self.branch,
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

/// Splits a positive rational into `(numerator, denominator)`.
pub(crate) fn positive_ratio(n: &Rat) -> Result<(u64, u64)> {
    use num_traits::ToPrimitive;
    if !n.is_positive() {
        return Err(domain("Frobenius index must be positive"));
    }
    let c = n.numer().to_u64().ok_or_else(|| domain("index too large"))?;
    let d = n.denom().to_u64().ok_or_else(|| domain("index too large"))?;
    Ok((c, d))
}

/// Power-series expansion of `f` in its variable through degree `order`,
/// placed on `branch` (the variable of `f` is taken to be `v`).
pub fn series_from_ratfunc<F: Field>(f: &RatFunc<F>, branch: u64, order: usize) -> Result<TruncSeries<F>> {
    let den = f.den();
    let d0 = den.coeff(0);
    let inv = d0
        .inverse()
        .ok_or_else(|| Error::Pole(alloc::string::String::from("0 (denominator vanishes at the origin)")))?;
    let num = f.num();
    let mut out: Vec<F> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = num.coeff(k);
        for (j, dj) in den.coeffs().iter().enumerate().skip(1) {
            if j > k {
                break;
            }
            if !dj.is_zero() {
                acc = acc.sub_ref(&dj.mul_ref(&out[k - j]));
            }
        }
        out.push(acc.mul_ref(&inv));
    }
    Ok(TruncSeries::new(branch, order, out))
}
