use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use super::cyclotomic::cyclotomic_coeffs;
use super::field::Field;
use super::ntheory::euler_phi;
use super::poly::{merge_conductor, Poly};
use super::rat::Rat;
use crate::error::{Error, Result};

/// Element of the cyclotomic field `Q(zeta_m)`.
///
/// Stored as coordinates on the power basis `1, z, ..., z^(phi(m)-1)` with
/// `z = zeta_m`, reduced modulo `Phi_m(z)`. Elements that happen to be
/// rational are always stored with `m = 1`, so equality is structural and
/// rationals combine with any conductor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycRat {
    m: u64,
    coords: Vec<Rat>,
}

impl CycRat {
    pub fn from_rat(r: Rat) -> Self {
        CycRat {
            m: 1,
            coords: vec![r],
        }
    }

    /// Element with the given coordinates in `Q(zeta_m)`.
    pub fn from_coords(m: u64, coords: Vec<Rat>) -> Result<Self> {
        if m == 0 {
            return Err(crate::error::domain("conductor must be >= 1"));
        }
        let phi = euler_phi(m) as usize;
        if coords.len() != phi {
            return Err(crate::error::domain(format!(
                "Q(zeta_{m}) has dimension {phi}, got {} coordinates",
                coords.len()
            )));
        }
        Ok(CycRat { m, coords }.canonical())
    }

    /// `zeta_m^k`.
    pub fn root_of_unity(m: u64, k: u64) -> Self {
        assert!(m > 0, "conductor must be >= 1");
        let k = (k % m) as usize;
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = Rat::one();
        Self::reduce(m, v)
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn as_rational(&self) -> Option<Rat> {
        (self.m == 1).then(|| self.coords[0].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.m == 1 && self.coords[0].is_zero()
    }

    /// Reduces a polynomial in `z` modulo `Phi_m(z)`.
    fn reduce(m: u64, mut v: Vec<Rat>) -> Self {
        let phi = cyclotomic_coeffs(m).expect("m >= 1");
        let d = phi.len() - 1;
        for top in (d..v.len()).rev() {
            let c = core::mem::take(&mut v[top]);
            if c.is_zero() {
                continue;
            }
            for (j, pj) in phi[..d].iter().enumerate() {
                if num_traits::Zero::is_zero(pj) {
                    continue;
                }
                let idx = top - d + j;
                v[idx] = &v[idx] - &(&c * &Rat::from_integer(pj.clone()));
            }
        }
        v.resize(d, Rat::zero());
        CycRat { m, coords: v }.canonical()
    }

    fn canonical(mut self) -> Self {
        if self.m != 1 && self.coords.iter().skip(1).all(Rat::is_zero) {
            let c = core::mem::take(&mut self.coords[0]);
            return CycRat::from_rat(c);
        }
        if self.coords.is_empty() {
            self.coords.push(Rat::zero());
        }
        self
    }

    fn common_conductor(&self, other: &Self) -> u64 {
        merge_conductor(self.m, other.m).unwrap_or_else(|_| {
            panic!(
                "cannot combine elements of Q(zeta_{}) and Q(zeta_{})",
                self.m, other.m
            )
        })
    }

    /// Coordinates padded to `phi(m)` for a target conductor `m`.
    fn coords_in(&self, m: u64) -> Vec<Rat> {
        let mut v = self.coords.clone();
        v.resize(euler_phi(m) as usize, Rat::zero());
        v
    }

    /// Multiplicative inverse via the extended gcd with `Phi_m`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.m == 1 {
            return Ok(CycRat::from_rat(self.coords[0].recip()?));
        }
        let e = Poly::new(self.coords.clone());
        let phi: Poly<Rat> = super::cyclotomic::cyclotomic(self.m)?;
        let (g, s, _) = e.xgcd(&phi);
        debug_assert!(g.is_one(), "Phi_m is irreducible");
        Ok(Self::reduce(self.m, s.into_coeffs()))
    }
}

impl fmt::Display for CycRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            return write!(f, "{}", self.coords[0]);
        }
        let p = Poly::new(self.coords.clone());
        f.write_str(&p.to_string_in(&format!("z{}", self.m)))
    }
}

impl fmt::Debug for CycRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Field for CycRat {
    fn zero() -> Self {
        CycRat::from_rat(Rat::zero())
    }
    fn one() -> Self {
        CycRat::from_rat(Rat::one())
    }
    fn is_zero(&self) -> bool {
        CycRat::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        let m = self.common_conductor(rhs);
        let (a, b) = (self.coords_in(m), rhs.coords_in(m));
        CycRat {
            m,
            coords: a.iter().zip(&b).map(|(x, y)| x + y).collect(),
        }
        .canonical()
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.m == 1 || rhs.m == 1 {
            let (r, other) = if self.m == 1 { (self, rhs) } else { (rhs, self) };
            let c = &r.coords[0];
            if c.is_zero() {
                return Self::zero();
            }
            return CycRat {
                m: other.m,
                coords: other.coords.iter().map(|x| x * c).collect(),
            };
        }
        let m = self.common_conductor(rhs);
        let mut prod = vec![Rat::zero(); self.coords.len() + rhs.coords.len() - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] = &prod[i + j] + &(a * b);
                }
            }
        }
        Self::reduce(m, prod)
    }
    fn neg_ref(&self) -> Self {
        CycRat {
            m: self.m,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn from_rat(r: Rat) -> Self {
        CycRat::from_rat(r)
    }
    fn from_cyc(c: &CycRat) -> Option<Self> {
        Some(c.clone())
    }
    fn conductor(&self) -> u64 {
        self.m
    }
    fn to_complex(&self) -> Option<Complex64> {
        let step = 2.0 * core::f64::consts::PI / self.m as f64;
        Some(
            self.coords
                .iter()
                .enumerate()
                .map(|(k, c)| Complex64::from_polar(c.to_f64(), step * k as f64))
                .sum(),
        )
    }
    fn to_rat(&self) -> Option<Rat> {
        self.as_rational()
    }
}
