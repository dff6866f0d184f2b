use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::Field;
use super::rat::Rat;
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients lowest degree first.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is
/// the empty vector and `coeffs().last()` is the leading coefficient.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

fn trim<F: Field>(v: &mut Vec<F>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        trim(&mut coeffs);
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: F, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| F::from_i64(c)).collect())
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[0] = F::from_i64(-1);
        coeffs[n] = coeffs[n].add_ref(&F::one());
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Drops the factor `x^k`; the low coefficients must be zero.
    pub fn unshift(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        Poly {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc.mul_ref(x).add_ref(c))
    }

    /// `f(x^k)`.
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k > 0, "substitute_power needs k >= 1");
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Poly { coeffs }
    }

    /// `f(c x)`.
    pub fn scale_variable(&self, c: &F) -> Self {
        let mut pw = F::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.mul_ref(&pw));
            pw = pw.mul_ref(c);
        }
        Self::new(out)
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => {
                let inv = l.inverse().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dl = divisor.lead().ok_or(Error::DivisionByZero)?;
        let inv = dl.inverse().ok_or(Error::DivisionByZero)?;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![F::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].mul_ref(&inv);
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].sub_ref(&c.mul_ref(d));
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Quotient if `divisor` divides `self` exactly.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    /// Common conductor of the coefficients (`1` for rational polynomials).
    pub fn conductor(&self) -> Result<u64> {
        self.coeffs
            .iter()
            .try_fold(1u64, |acc, c| merge_conductor(acc, c.conductor()))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        merge_conductor(self.conductor()?, other.conductor()?)?;
        Ok(Poly {
            coeffs: F::poly_gcd(&self.coeffs, &other.coeffs),
        })
    }

    /// Extended Euclid: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
            t0 = core::mem::replace(&mut t1, t);
        }
        match r0.lead().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = l.inverse().expect("nonzero");
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Human-readable form in the variable `var`, highest degree first,
    /// e.g. `q^3 - 2*q + 1/2`.
    pub fn to_string_in(&self, var: &str) -> String {
        let mut out = String::new();
        if self.is_zero() {
            out.push('0');
            return out;
        }
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut body = String::new();
            let _ = write!(body, "{}", c);
            let (neg, mag) = match body.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-']) => (true, String::from(rest)),
                _ => (false, body),
            };
            let compound = mag.contains(['+', '-', ' ']);
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = if compound {
                alloc::format!("({})", mag)
            } else {
                mag
            };
            match i {
                0 => out.push_str(&mag),
                _ => {
                    if mag != "1" {
                        out.push_str(&mag);
                        out.push('*');
                    }
                    out.push_str(var);
                    if i > 1 {
                        let _ = write!(out, "^{}", i);
                    }
                }
            }
        }
        out
    }
}

pub(crate) fn merge_conductor(a: u64, b: u64) -> Result<u64> {
    match (a, b) {
        (1, m) | (m, 1) => Ok(m),
        (m, n) if m == n => Ok(m),
        (m, n) => Err(Error::MixedFields(m, n)),
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("q"))
    }
}

impl<F: Field> Add<&Poly<F>> for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c = c.add_ref(s);
        }
        Poly::new(coeffs)
    }
}

impl<F: Field> Sub<&Poly<F>> for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.sub_ref(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.neg_ref(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(coeffs)
    }
}

impl<F: Field> Mul<&Poly<F>> for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        Poly::new(coeffs)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect(),
        }
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr<Poly<F>> for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: Poly<F>) -> Poly<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

fn monic_vec<F: Field>(v: &[F]) -> Vec<F> {
    Poly::new(v.to_vec()).monic().into_coeffs()
}

pub(crate) fn euclid_gcd<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let mut a = Poly::new(a.to_vec());
    let mut b = Poly::new(b.to_vec()).monic();
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b).expect("nonzero divisor");
        a = b;
        b = r.monic();
    }
    a.monic().into_coeffs()
}

/// Clears denominators and removes the integer content.
pub(crate) fn primitive_integer_part(v: &[Rat]) -> Vec<BigInt> {
    let den = v
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    primitive(ints)
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if v.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    v
}

/// Pseudo-remainder of `a` by `b` over the integers.
fn pseudo_rem(mut a: Vec<BigInt>, b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    while a.len() > db {
        let top = a.len() - 1;
        let la = a[top].clone();
        if !la.is_zero() {
            let shift = top - db;
            for c in a.iter_mut() {
                *c *= lb;
            }
            for (j, bj) in b.iter().enumerate() {
                a[shift + j] -= &la * bj;
            }
        }
        a.pop();
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
    }
    a
}

/// Monic gcd over the rationals via the primitive pseudo-remainder sequence.
pub(crate) fn rational_prs_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() {
        return monic_vec(b);
    }
    if b.is_empty() {
        return monic_vec(a);
    }
    let mut x = primitive_integer_part(a);
    let mut y = primitive_integer_part(b);
    if x.len() < y.len() {
        core::mem::swap(&mut x, &mut y);
    }
    loop {
        if y.len() == 1 {
            return vec![Rat::one()];
        }
        let r = primitive(pseudo_rem(x, &y));
        if r.is_empty() {
            let lead = Rat::from_integer(y[y.len() - 1].clone());
            return y
                .into_iter()
                .map(|c| &Rat::from_integer(c) / &lead)
                .collect();
        }
        x = y;
        y = r;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(cs: &[i64]) -> Poly<Rat> {
        Poly::from_i64s(cs)
    }

    #[test]
    fn gcd_examples() {
        // gcd(q^2 - 1, q - 1) = q - 1
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        // gcd(q^3 - 1, q^2 - 1) = q - 1
        assert_eq!(p(&[-1, 0, 0, 1]).gcd(&p(&[-1, 0, 1])).unwrap(), p(&[-1, 1]));
        // gcd(p, 0) = monic(p)
        assert_eq!(p(&[2, 4]).gcd(&Poly::zero()).unwrap(), p(&[2, 4]).monic());
        assert!(Poly::<Rat>::zero().gcd(&Poly::zero()).unwrap().is_zero());
        assert_eq!(p(&[1, 1]).gcd(&p(&[-1, 1])).unwrap(), Poly::one());
    }

    #[test]
    fn prs_matches_euclid() {
        let a = &(&p(&[1, -3, 0, 2]) * &p(&[5, 0, 7])) * &p(&[-2, 1]);
        let b = &(&p(&[1, -3, 0, 2]) * &p(&[-2, 1])) * &p(&[1, 1, 1, 1]);
        let prs = Poly::new(rational_prs_gcd(a.coeffs(), b.coeffs()));
        let euc = Poly::new(euclid_gcd(a.coeffs(), b.coeffs()));
        assert_eq!(prs, euc);
        assert_eq!(prs, (&p(&[1, -3, 0, 2]) * &p(&[-2, 1])).monic());
    }

    #[test]
    fn division() {
        let (q, r) = p(&[-1, 0, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
        assert!(p(&[1, 1]).div_rem(&Poly::zero()).is_err());
        assert_eq!(p(&[0, 1, 0, 1]).substitute_power(2), p(&[0, 0, 1, 0, 0, 0, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[0, 1, -3]).to_string(), "-3*q^2 + q");
        assert_eq!(p(&[1, -1, -2, -1, 1]).to_string(), "q^4 - q^3 - 2*q^2 - q + 1");
        assert_eq!(p(&[-1]).to_string(), "-1");
        assert_eq!(Poly::<Rat>::zero().to_string(), "0");
    }
}
