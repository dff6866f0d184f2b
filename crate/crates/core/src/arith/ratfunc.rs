use alloc::format;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use super::cyclotomic::CycloProduct;
use super::field::Field;
use super::ntheory::euler_phi;
use super::poly::Poly;
use super::rat::Rat;
use super::CycRat;
use crate::error::{Error, Result};

/// Rational function `num/den` in lowest terms with a monic denominator.
///
/// Two values are equal iff their canonical parts are equal, which for
/// reduced fractions coincides with `num1*den2 == num2*den1`.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    /// Canonical form of `num/den`.
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        if den.is_constant() {
            let inv = den.coeffs()[0].inverse().ok_or(Error::DivisionByZero)?;
            return Ok(RatFunc {
                num: num.scale(&inv),
                den: Poly::one(),
            });
        }
        let g = num.gcd(&den)?;
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        Ok(Self::from_coprime(num, den))
    }

    /// Assumes `gcd(num, den) = 1` and only rescales the denominator.
    pub(crate) fn from_coprime(num: Poly<F>, den: Poly<F>) -> Self {
        let lead = den.lead().expect("nonzero denominator").clone();
        if lead.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lead.inverse().expect("nonzero leading coefficient");
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    /// `num / prod Phi_k^{e_k}` in lowest terms, using trial division by the
    /// cyclotomic factors. A general gcd is only run when some `Phi_k` can
    /// split over the coefficient field.
    pub fn from_cyclotomic_den(num: Poly<F>, den: &CycloProduct) -> Result<Self> {
        let (num, rest) = den.reduce(&num);
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let m = num.conductor()?;
        let mut num = num;
        let mut den = Poly::one();
        for (k, e) in rest.iter() {
            let part: Poly<F> = CycloProduct::single(k).expand::<F>().pow(e);
            if euler_phi(super::ntheory::lcm(k, m)) == euler_phi(k) * euler_phi(m) {
                den = &den * &part;
                continue;
            }
            // Phi_k may split; distinct Phi_k are coprime, so the gcd with
            // each power separately gives the full common factor
            let g = num.gcd(&part)?;
            num = num.div_exact(&g).expect("gcd divides");
            den = &den * &part.div_exact(&g).expect("gcd divides");
        }
        Ok(Self::from_coprime(num, den))
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    /// The variable.
    pub fn x() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn into_parts(self) -> (Poly<F>, Poly<F>) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RatFunc {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Value at `x`. Because the fraction is reduced, a vanishing
    /// denominator is a genuine pole.
    pub fn eval(&self, x: &F) -> Result<F> {
        let d = self.den.eval(x);
        match d.inverse() {
            Some(inv) => Ok(self.num.eval(x).mul_ref(&inv)),
            None => Err(Error::Pole(format!("{x}"))),
        }
    }

    /// `f(x^k)`, the Frobenius substitution for integral `k >= 1`.
    pub fn substitute_power(&self, k: usize) -> Self {
        RatFunc {
            num: self.num.substitute_power(k),
            den: self.den.substitute_power(k),
        }
    }

    /// `f(c x)` for nonzero `c`.
    pub fn scale_variable(&self, c: &F) -> Self {
        Self::from_coprime(self.num.scale_variable(c), self.den.scale_variable(c))
    }

    /// Cross-multiplication test, independent of normalisation.
    pub fn cross_eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Result<RatFunc<G>> {
        RatFunc::new(self.num.map(&f), self.den.map(&f))
    }

    pub fn to_string_in(&self, var: &str) -> alloc::string::String {
        if self.den.is_one() {
            self.num.to_string_in(var)
        } else {
            format!("({})/({})", self.num.to_string_in(var), self.den.to_string_in(var))
        }
    }
}

/// Value of `num/den` at `x`, distinguishing a removable common zero from a
/// pole of the reduced fraction.
pub fn eval_fraction<F: Field>(num: &Poly<F>, den: &Poly<F>, x: &F) -> Result<F> {
    RatFunc::new(num.clone(), den.clone())?.eval(x)
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("q"))
    }
}

impl<F: Field> Add<&RatFunc<F>> for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn add(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero den");
        }
        let g = self.den.gcd(&rhs.den).expect("compatible fields");
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFunc::from_coprime(num, &self.den * &rhs.den);
        }
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = rhs.den.div_exact(&g).expect("gcd divides");
        let t = &(&self.num * &d1) + &(&rhs.num * &b1);
        if t.is_zero() {
            return RatFunc::zero();
        }
        let h = t.gcd(&g).expect("compatible fields");
        let (t, g) = if h.is_one() {
            (t, g)
        } else {
            (t.div_exact(&h).expect("divides"), g.div_exact(&h).expect("divides"))
        };
        RatFunc::from_coprime(t, &(&b1 * &d1) * &g)
    }
}

impl<F: Field> Neg for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<F: Field> Sub<&RatFunc<F>> for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn sub(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Mul<&RatFunc<F>> for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn mul(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        let cancel = |n: &Poly<F>, d: &Poly<F>| -> (Poly<F>, Poly<F>) {
            if d.is_one() || n.is_constant() {
                return (n.clone(), d.clone());
            }
            let g = n.gcd(d).expect("compatible fields");
            if g.is_one() {
                (n.clone(), d.clone())
            } else {
                (n.div_exact(&g).expect("divides"), d.div_exact(&g).expect("divides"))
            }
        };
        let (a, d) = cancel(&self.num, &rhs.den);
        let (c, b) = cancel(&rhs.num, &self.den);
        RatFunc::from_coprime(&a * &c, &b * &d)
    }
}

impl<F: Field> Div<&RatFunc<F>> for &RatFunc<F> {
    type Output = RatFunc<F>;
    /// Panics when dividing by zero; see [`RatFunc::checked_div`].
    fn div(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr<RatFunc<F>> for RatFunc<F> {
            type Output = RatFunc<F>;
            fn $m(self, rhs: RatFunc<F>) -> RatFunc<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);
by_value!(Div, div);

impl<F: Field> Field for RatFunc<F> {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
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
        self.inv().ok()
    }
    fn from_rat(r: Rat) -> Self {
        RatFunc::constant(F::from_rat(r))
    }
    fn from_cyc(c: &CycRat) -> Option<Self> {
        F::from_cyc(c).map(RatFunc::constant)
    }
    fn conductor(&self) -> u64 {
        self.num
            .conductor()
            .and_then(|a| super::poly::merge_conductor(a, self.den.conductor()?))
            .unwrap_or(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> Poly<Rat> {
        Poly::from_i64s(cs)
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFunc<Rat> {
        RatFunc::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(rf(&[-1, 0, 1], &[1, 1]), RatFunc::from_poly(p(&[-1, 1])));
        let r = rf(&[-1, 1], &[-1, 0, 1]);
        assert_eq!((r.num().clone(), r.den().clone()), (p(&[1]), p(&[1, 1])));
        assert_eq!(rf(&[0, 2], &[2]), RatFunc::from_poly(p(&[0, 1])));
        assert_eq!(RatFunc::new(p(&[1]), Poly::zero()), Err(Error::DivisionByZero));
        // -q/(1-q) has monic denominator q - 1
        let r = rf(&[0, -1], &[1, -1]);
        assert_eq!(r.den(), &p(&[-1, 1]));
        assert_eq!(r.num(), &p(&[0, 1]));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(rf(&[-1], &[1, 1]).eval(&Rat::one()).unwrap(), "-1/2".parse().unwrap());
        assert_eq!(RatFunc::<Rat>::x().eval(&Rat::zero()).unwrap(), Rat::zero());
        assert!(matches!(rf(&[1], &[-1, 1]).eval(&Rat::one()), Err(Error::Pole(_))));
        // (q - 1)/(q^2 - 1) has a removable zero at 1
        assert_eq!(eval_fraction(&p(&[-1, 1]), &p(&[-1, 0, 1]), &Rat::one()).unwrap(), "1/2".parse().unwrap());
        assert!(eval_fraction(&p(&[1]), &p(&[-1, 0, 1]), &Rat::one()).is_err());
    }

    #[test]
    fn cyclotomic_den_constructor() {
        // q(q^2 - 1)/(q^6 - 1) = q/(Phi_3 Phi_6)
        let r = RatFunc::from_cyclotomic_den(p(&[0, -1, 0, 1]), &CycloProduct::x_pow_minus_one(6)).unwrap();
        let direct = rf(&[0, -1, 0, 1], &[-1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(r, direct);
    }

    fn small_poly() -> impl Strategy<Value = Poly<Rat>> {
        proptest::collection::vec(-4i64..5, 1..5).prop_map(|v| p(&v))
    }

    fn small_rf() -> impl Strategy<Value = RatFunc<Rat>> {
        (small_poly(), small_poly())
            .prop_filter("nonzero den", |(_, d)| !d.is_zero())
            .prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
    }

    fn is_canonical(f: &RatFunc<Rat>) -> bool {
        f.den().lead().is_some_and(|l| l.is_one()) && f.num().gcd(f.den()).unwrap().is_one()
            || f.is_zero() && f.den().is_one()
    }

    proptest! {
        #[test]
        fn arithmetic_identities(f in small_rf(), g in small_rf()) {
            let s = &f + &g;
            prop_assert!(is_canonical(&s));
            prop_assert_eq!(&s - &g, f.clone());
            let m = &f * &g;
            prop_assert!(is_canonical(&m));
            if !g.is_zero() {
                prop_assert_eq!(&m / &g, f.clone());
            }
            prop_assert_eq!(s.cross_eq(&(&g + &f)), true);
        }

        #[test]
        fn normalize_idempotent(f in small_rf()) {
            let again = RatFunc::new(f.num().clone(), f.den().clone()).unwrap();
            prop_assert_eq!(again, f);
        }
    }
}
