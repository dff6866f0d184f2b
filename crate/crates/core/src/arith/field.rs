use core::fmt;

use num_complex::Complex64;

use super::cyc::CycRat;
use super::rat::Rat;

/// Coefficient field of a [`Poly`](super::Poly).
///
/// Arithmetic is by reference because every implementor owns heap data.
/// `conductor` tags which cyclotomic field an element was built in; `1`
/// means plain rationals, which mix freely with every other conductor.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// `None` for zero.
    fn inverse(&self) -> Option<Self>;
    fn from_rat(r: Rat) -> Self;
    /// Embeds a cyclotomic number, or `None` if it does not lie in this field.
    fn from_cyc(c: &CycRat) -> Option<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_rat(Rat::from(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn conductor(&self) -> u64 {
        1
    }

    /// Complex value under the embedding `zeta_m -> exp(2 pi i / m)`.
    fn to_complex(&self) -> Option<Complex64> {
        None
    }

    /// Rational value, if this element is rational.
    fn to_rat(&self) -> Option<Rat> {
        None
    }

    /// Monic gcd of two coefficient vectors (lowest degree first, trimmed).
    /// The default runs the Euclidean algorithm with monic remainders.
    fn poly_gcd(a: &[Self], b: &[Self]) -> alloc::vec::Vec<Self> {
        super::poly::euclid_gcd(a, b)
    }
}

impl Field for Rat {
    fn zero() -> Self {
        Rat::zero()
    }
    fn one() -> Self {
        Rat::one()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Rat::is_one(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        self.recip().ok()
    }
    fn from_rat(r: Rat) -> Self {
        r
    }
    fn from_cyc(c: &CycRat) -> Option<Self> {
        c.as_rational()
    }
    fn to_complex(&self) -> Option<Complex64> {
        Some(Complex64::new(self.to_f64(), 0.0))
    }
    fn to_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }
    fn poly_gcd(a: &[Self], b: &[Self]) -> alloc::vec::Vec<Self> {
        super::poly::rational_prs_gcd(a, b)
    }
}
