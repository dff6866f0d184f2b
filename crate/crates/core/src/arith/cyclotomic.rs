//! Cyclotomic polynomials and products of them.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use spin::RwLock;

use super::field::Field;
use super::ntheory::divisors;
use super::poly::Poly;
use super::rat::Rat;
use crate::error::{domain, Result};

static CACHE: RwLock<BTreeMap<u64, Arc<Vec<BigInt>>>> = RwLock::new(BTreeMap::new());

/// Exact quotient of `a` by the monic integer polynomial `b`, if the
/// remainder vanishes.
pub(crate) fn div_monic_int(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    if a.len() <= db {
        return a.iter().all(Zero::is_zero).then(Vec::new);
    }
    let mut rem = a.to_vec();
    let mut quot = alloc::vec![BigInt::zero(); a.len() - db];
    for i in (0..quot.len()).rev() {
        let c = core::mem::take(&mut rem[i + db]);
        if c.is_zero() {
            continue;
        }
        for j in 0..db {
            rem[i + j] -= &c * &b[j];
        }
        quot[i] = c;
    }
    rem[..db].iter().all(Zero::is_zero).then_some(quot)
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, lowest first.
///
/// Computed from `x^n - 1 = prod_{d | n} Phi_d(x)` by dividing out the
/// proper divisors, and cached behind a read-write lock.
pub fn cyclotomic_coeffs(n: u64) -> Result<Arc<Vec<BigInt>>> {
    if n == 0 {
        return Err(domain("cyclotomic polynomial index must be >= 1"));
    }
    if let Some(c) = CACHE.read().get(&n) {
        return Ok(c.clone());
    }
    let mut acc = alloc::vec![BigInt::zero(); n as usize + 1];
    acc[0] = -BigInt::one();
    acc[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_coeffs(d)?;
        acc = div_monic_int(&acc, &phi_d).expect("Phi_d divides x^n - 1");
    }
    let acc = Arc::new(acc);
    CACHE.write().entry(n).or_insert_with(|| acc.clone());
    Ok(acc)
}

/// `Phi_n` as a polynomial over `F`.
pub fn cyclotomic<F: Field>(n: u64) -> Result<Poly<F>> {
    Ok(Poly::new(
        cyclotomic_coeffs(n)?
            .iter()
            .map(|c| F::from_rat(Rat::from_integer(c.clone())))
            .collect(),
    ))
}

/// A product `prod_k Phi_k^{e_k}`, stored as index -> multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycloProduct {
    exps: BTreeMap<u64, u32>,
}

impl CycloProduct {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(k: u64) -> Self {
        let mut p = Self::new();
        p.push(k, 1);
        p
    }

    /// `x^n - 1 = prod_{d | n} Phi_d`.
    pub fn x_pow_minus_one(n: u64) -> Self {
        let mut p = Self::new();
        for d in divisors(n) {
            p.push(d, 1);
        }
        p
    }

    pub fn push(&mut self, k: u64, e: u32) {
        if e > 0 {
            *self.exps.entry(k).or_insert(0) += e;
        }
    }

    pub fn multiplicity(&self, k: u64) -> u32 {
        self.exps.get(&k).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.exps.iter().map(|(&k, &e)| (k, e))
    }

    /// Indices repeated by multiplicity, increasing.
    pub fn indices(&self) -> Vec<u64> {
        self.iter()
            .flat_map(|(k, e)| core::iter::repeat_n(k, e as usize))
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, e) in other.iter() {
            out.push(k, e);
        }
        out
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, e) in other.iter() {
            let slot = out.exps.entry(k).or_insert(0);
            *slot = (*slot).max(e);
        }
        out
    }

    /// `self / other` if `other` divides `self`.
    pub fn quotient(&self, other: &Self) -> Option<Self> {
        let mut out = self.clone();
        for (k, e) in other.iter() {
            let slot = out.exps.get_mut(&k)?;
            if *slot < e {
                return None;
            }
            *slot -= e;
            if *slot == 0 {
                out.exps.remove(&k);
            }
        }
        Some(out)
    }

    /// The product with `x` replaced by `x^b`, using
    /// `Phi_k(x^b) = prod { Phi_e : e | kb, e / gcd(e, b) = k }`.
    pub fn substitute_power(&self, b: u64) -> Self {
        let mut out = Self::new();
        for (k, mult) in self.iter() {
            for e in divisors(k * b) {
                if e / super::ntheory::gcd(e, b) == k {
                    out.push(e, mult);
                }
            }
        }
        out
    }

    pub fn degree(&self) -> u64 {
        self.iter()
            .map(|(k, e)| super::ntheory::euler_phi(k) * u64::from(e))
            .sum()
    }

    pub fn expand<F: Field>(&self) -> Poly<F> {
        Poly::new(
            self.expand_int()
                .into_iter()
                .map(|c| F::from_rat(Rat::from_integer(c)))
                .collect(),
        )
    }

    /// Integer coefficients of the expanded product, lowest first.
    pub(crate) fn expand_int(&self) -> Vec<BigInt> {
        let mut acc = BigIntPoly::one();
        for (k, e) in self.iter() {
            let phi = cyclotomic_coeffs(k).expect("index >= 1");
            for _ in 0..e {
                acc = acc.mul_int(&phi);
            }
        }
        acc.0
    }

    /// [`CycloProduct::reduce`] for integer polynomials.
    pub(crate) fn reduce_int(&self, num: Vec<BigInt>) -> (Vec<BigInt>, CycloProduct) {
        let mut num = num;
        let mut rest = CycloProduct::new();
        for (k, e) in self.iter() {
            let phi = cyclotomic_coeffs(k).expect("index >= 1");
            let mut left = e;
            while left > 0 && num.iter().any(|c| !c.is_zero()) {
                match div_monic_int(&num, &phi) {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            rest.push(k, left);
        }
        (num, rest)
    }

    /// Cancels every `Phi_k` of `self` that divides `num`, returning the
    /// reduced numerator and the remaining product. When all `Phi_k` are
    /// irreducible over the coefficient field the result is in lowest terms.
    pub fn reduce<F: Field>(&self, num: &Poly<F>) -> (Poly<F>, CycloProduct) {
        let mut num = num.clone();
        let mut rest = CycloProduct::new();
        if num.is_zero() {
            return (num, rest);
        }
        for (k, e) in self.iter() {
            let phi: Poly<F> = cyclotomic(k).expect("index >= 1");
            let mut left = e;
            while left > 0 {
                match num.div_exact(&phi) {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            rest.push(k, left);
        }
        (num, rest)
    }
}

/// Product of two integer polynomials.
pub(crate) fn mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    BigIntPoly(a.to_vec()).mul_int(b).0
}

struct BigIntPoly(Vec<BigInt>);

impl BigIntPoly {
    fn one() -> BigIntPoly {
        BigIntPoly(alloc::vec![BigInt::one()])
    }

    fn mul_int(&self, other: &[BigInt]) -> BigIntPoly {
        let mut out = alloc::vec![BigInt::zero(); self.0.len() + other.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        BigIntPoly(out)
    }
}
