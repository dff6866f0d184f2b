//! Rational functions of `q` and `q^r`, and the q-difference operator.
//!
//! A function of the integer variable `r` is stored as a rational function
//! of `w = v^r`, where `v = q^(1/branch)`. Shifting `r -> r + 1` is the
//! substitution `w -> v w`, so `delta f = (f(r+1) - f(r))/(q - 1)` stays
//! inside the representation.
//!
//! The value is `N(v, w) / (S(v) prod P_{d,j}(w)^e)` with `N` a polynomial
//! in both variables, `S` a product of cyclotomic polynomials in `v`, and
//! `P_{d,j}(w) = Phi_d(v^j w)`. Every function built from `sum_n c_n q^{nr}`
//! with periodic `c_n` has this shape, the shift sends `P_{d,j}(v w)` to
//! `P_{d,j+1}(w)`, and `P_{d,j}(0) = Phi_d(0) = +-1`, so exact division by
//! `P_{d,j}` never leaves `F[v][w]`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::ntheory::divisors;
use crate::arith::{cyclotomic, CycRat, CycloProduct, Field, Poly, RatFunc};
use crate::error::{domain, Error, Result};

/// Key of the factor `Phi_d(v^shift w)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShiftFactor {
    pub d: u64,
    pub shift: u64,
}

/// Polynomial in `w` with coefficients in `F[v]`, lowest power of `w` first.
type BiPoly<F> = Vec<Poly<F>>;

fn trim<F: Field>(mut p: BiPoly<F>) -> BiPoly<F> {
    while p.last().is_some_and(Poly::is_zero) {
        p.pop();
    }
    p
}

fn bi_add<F: Field>(a: &BiPoly<F>, b: &BiPoly<F>, subtract: bool) -> BiPoly<F> {
    let n = a.len().max(b.len());
    let zero = Poly::zero();
    trim(
        (0..n)
            .map(|k| {
                let x = a.get(k).unwrap_or(&zero);
                let y = b.get(k).unwrap_or(&zero);
                if subtract {
                    x - y
                } else {
                    x + y
                }
            })
            .collect(),
    )
}

fn bi_mul<F: Field>(a: &BiPoly<F>, b: &BiPoly<F>) -> BiPoly<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Poly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    trim(out)
}

fn bi_scale<F: Field>(a: &BiPoly<F>, c: &Poly<F>) -> BiPoly<F> {
    trim(a.iter().map(|x| x * c).collect())
}

/// `a / b` when `b(0)` is a nonzero constant and the division is exact.
fn bi_div_exact<F: Field>(a: &BiPoly<F>, b: &BiPoly<F>) -> Option<BiPoly<F>> {
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let inv = b[0].coeffs().first()?.inverse()?;
    debug_assert!(b[0].is_constant());
    let n = a.len() - b.len() + 1;
    let mut rem = a.clone();
    let mut quot = vec![Poly::zero(); n];
    for k in 0..n {
        let c = rem[k].scale(&inv);
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] = &rem[k + i] - &(&c * bi);
        }
        quot[k] = c;
    }
    rem.iter().all(Poly::is_zero).then(|| trim(quot))
}

/// `Phi_d(v^j w)` as a polynomial in `w` over `F[v]`.
fn factor_poly<F: Field>(key: ShiftFactor) -> BiPoly<F> {
    let phi: Poly<F> = cyclotomic(key.d).expect("d >= 1");
    phi.coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| Poly::monomial(c.clone(), i * key.shift as usize))
        .collect()
}

fn den_product<F: Field>(den: &BTreeMap<ShiftFactor, u32>) -> BiPoly<F> {
    den.iter().fold(vec![Poly::one()], |acc, (&k, &e)| {
        (0..e).fold(acc, |acc, _| bi_mul(&acc, &factor_poly(k)))
    })
}

/// `N(v, w) / (S(v) prod Phi_d(v^j w)^e)`.
#[derive(Clone, Debug)]
pub struct BiRatFunc<F> {
    branch: u64,
    num: BiPoly<F>,
    scalar: CycloProduct,
    den: BTreeMap<ShiftFactor, u32>,
}

impl<F: Field> BiRatFunc<F> {
    pub fn zero(branch: u64) -> Self {
        BiRatFunc {
            branch,
            num: Vec::new(),
            scalar: CycloProduct::new(),
            den: BTreeMap::new(),
        }
    }

    /// `w^k`, i.e. `q^{k r / branch}`.
    pub fn w_pow(branch: u64, k: usize) -> Self {
        let mut num = vec![Poly::zero(); k + 1];
        num[k] = Poly::one();
        BiRatFunc {
            num,
            ..Self::zero(branch)
        }
    }

    /// `num(w) / (1 - w^period)` with constant coefficients.
    pub fn over_one_minus_w_pow(branch: u64, num: &Poly<F>, period: u64) -> Result<Self> {
        if period == 0 {
            return Err(domain("period must be >= 1"));
        }
        // 1 - w^N = -prod_{d | N} Phi_d(w)
        let den = divisors(period)
            .into_iter()
            .map(|d| (ShiftFactor { d, shift: 0 }, 1))
            .collect();
        let num = trim(num.coeffs().iter().map(|c| Poly::constant(c.neg_ref())).collect());
        Ok(BiRatFunc {
            num,
            den,
            ..Self::zero(branch)
        }
        .canonical())
    }

    /// `sum_{n >= 1} q^{n r} = w/(1 - w)` on branch 1.
    pub fn riemann() -> Self {
        Self::over_one_minus_w_pow(1, &Poly::x(), 1).expect("valid")
    }

    /// `sum_{k >= 0} q^{(k + a/b) r} = w^a/(1 - w^b)` on branch `b`.
    pub fn hurwitz(a: u64, b: u64) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(domain("Hurwitz parameter must be positive"));
        }
        Self::over_one_minus_w_pow(b, &Poly::monomial(F::one(), a as usize), b)
    }

    /// `sum_{n >= 1} c(n) q^{n r}` for a sequence of period `N`, given
    /// `values[a] = c(a)` for `a = 0..N` (index 0 stands for `N`).
    pub fn periodic(values: &[CycRat]) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(domain("period must be >= 1"));
        }
        let mut coeffs = vec![F::zero(); n + 1];
        for (a, c) in coeffs.iter_mut().enumerate().skip(1) {
            *c = F::from_cyc(&values[a % n])
                .ok_or_else(|| domain("character value outside the coefficient field"))?;
        }
        Self::over_one_minus_w_pow(1, &Poly::new(coeffs), n as u64)
    }

    pub fn branch(&self) -> u64 {
        self.branch
    }

    /// Coefficients of `N` in `w`, each a polynomial in `v`.
    pub fn numerator(&self) -> &[Poly<F>] {
        &self.num
    }

    /// `S(v)`.
    pub fn scalar_denominator(&self) -> &CycloProduct {
        &self.scalar
    }

    pub fn denominator_factors(&self) -> impl Iterator<Item = (ShiftFactor, u32)> + '_ {
        self.den.iter().map(|(&k, &e)| (k, e))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Cancels common factors of numerator and denominator.
    fn canonical(mut self) -> Self {
        if self.num.is_empty() {
            self.scalar = CycloProduct::new();
            self.den.clear();
            return self;
        }
        let mut scalar = CycloProduct::new();
        for (d, e) in self.scalar.iter() {
            let phi: Poly<F> = cyclotomic(d).expect("d >= 1");
            let mut left = e;
            while left > 0 {
                let divided: Option<BiPoly<F>> = self.num.iter().map(|c| c.div_exact(&phi)).collect();
                match divided {
                    Some(q) => {
                        self.num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            scalar.push(d, left);
        }
        self.scalar = scalar;
        let keys: Vec<ShiftFactor> = self.den.keys().copied().collect();
        for key in keys {
            let fp = factor_poly::<F>(key);
            let e = self.den.get_mut(&key).expect("present");
            while *e > 0 {
                match bi_div_exact(&self.num, &fp) {
                    Some(q) => {
                        self.num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
            if *e == 0 {
                self.den.remove(&key);
            }
        }
        self
    }

    fn cofactor(&self, target: &BTreeMap<ShiftFactor, u32>, scalar: &CycloProduct) -> BiPoly<F> {
        let mut extra = BTreeMap::new();
        for (&k, &e) in target {
            let have = self.den.get(&k).copied().unwrap_or(0);
            if e > have {
                extra.insert(k, e - have);
            }
        }
        let s: Poly<F> = scalar.quotient(&self.scalar).expect("lcm").expand();
        bi_scale(&den_product(&extra), &s)
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        assert_eq!(self.branch, other.branch, "branch mismatch");
        let mut lcm = self.den.clone();
        for (&k, &e) in &other.den {
            let slot = lcm.entry(k).or_insert(0);
            *slot = (*slot).max(e);
        }
        let scalar = self.scalar.lcm(&other.scalar);
        let a = bi_mul(&self.num, &self.cofactor(&lcm, &scalar));
        let b = bi_mul(&other.num, &other.cofactor(&lcm, &scalar));
        BiRatFunc {
            branch: self.branch,
            num: bi_add(&a, &b, subtract),
            scalar,
            den: lcm,
        }
        .canonical()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    /// Multiplication by a polynomial in `v`.
    pub fn scale(&self, c: &Poly<F>) -> Self {
        BiRatFunc {
            num: bi_scale(&self.num, c),
            ..self.clone()
        }
        .canonical()
    }

    /// `f(r + 1)`, i.e. `w -> v w`.
    pub fn shift(&self) -> Self {
        let num = self.num.iter().enumerate().map(|(k, c)| c.shift(k)).collect();
        let den = self
            .den
            .iter()
            .map(|(&k, &e)| {
                (
                    ShiftFactor {
                        d: k.d,
                        shift: k.shift + 1,
                    },
                    e,
                )
            })
            .collect();
        BiRatFunc {
            branch: self.branch,
            num,
            scalar: self.scalar.clone(),
            den,
        }
    }

    /// The q-difference operator `(f(r+1) - f(r))/(q - 1)`, `q - 1 = v^b - 1`.
    pub fn delta(&self) -> Self {
        let mut diff = self.shift().sub(self);
        if diff.is_zero() {
            return diff;
        }
        diff.scalar = diff.scalar.mul(&CycloProduct::x_pow_minus_one(self.branch));
        diff.canonical()
    }

    /// Value at an integer `r`, i.e. `w = v^r`, as a rational function of `v`.
    pub fn eval(&self, r: u64) -> Result<RatFunc<F>> {
        let mut num: Poly<F> = Poly::zero();
        for (k, c) in self.num.iter().enumerate() {
            num = &num + &c.shift(k * r as usize);
        }
        let mut den = self.scalar.clone();
        for (&k, &e) in &self.den {
            match k.shift + r {
                0 if k.d == 1 => {
                    return Err(Error::Pole(alloc::format!("w = q^({r}/{})", self.branch)));
                }
                0 => {
                    // Phi_d(1) is a nonzero integer for d > 1
                    let phi: Poly<F> = cyclotomic(k.d)?;
                    let inv = phi.eval(&F::one()).inverse().expect("nonzero");
                    for _ in 0..e {
                        num = num.scale(&inv);
                    }
                }
                t => {
                    let factor = CycloProduct::single(k.d).substitute_power(t);
                    for _ in 0..e {
                        den = den.mul(&factor);
                    }
                }
            }
        }
        RatFunc::from_cyclotomic_den(num, &den)
    }

    /// Equality as rational functions (cross-multiplied).
    pub fn same_as(&self, other: &Self) -> bool {
        let lhs = bi_scale(&bi_mul(&self.num, &den_product(&other.den)), &other.scalar.expand());
        let rhs = bi_scale(&bi_mul(&other.num, &den_product(&self.den)), &self.scalar.expand());
        self.branch == other.branch && lhs == rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rat;
    use crate::series::quantum::quantum_int_poly;

    fn p(cs: &[i64]) -> Poly<Rat> {
        Poly::from_i64s(cs)
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFunc<Rat> {
        RatFunc::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn delta_eigen_relation() {
        for n in 1..=10usize {
            let f = BiRatFunc::<Rat>::w_pow(1, n);
            let expect = f.scale(&quantum_int_poly(n as u64));
            assert!(f.delta().same_as(&expect), "n = {n}");
        }
        assert!(BiRatFunc::<Rat>::w_pow(1, 1).delta().same_as(&BiRatFunc::w_pow(1, 1)));
        assert!(BiRatFunc::<Rat>::w_pow(1, 2).delta().same_as(&BiRatFunc::w_pow(1, 2).scale(&p(&[1, 1]))));
    }

    #[test]
    fn delta_of_geometric() {
        // delta(w/(1-w)) = w/((1-w)(1-qw))
        let d = BiRatFunc::<Rat>::riemann().delta();
        let keys: Vec<_> = d.denominator_factors().map(|(k, _)| (k.d, k.shift)).collect();
        assert_eq!(keys, [(1, 0), (1, 1)]);
        assert!(d.scalar_denominator().is_one());
        assert_eq!(d.eval(1).unwrap(), rf(&[0, 1], &[1, -1, -1, 1]));
        assert_eq!(BiRatFunc::<Rat>::riemann().eval(1).unwrap(), rf(&[0, 1], &[1, -1]));
        assert_eq!(BiRatFunc::<Rat>::w_pow(1, 1).eval(3).unwrap(), RatFunc::from_poly(Poly::monomial(Rat::one(), 3)));
        assert!(matches!(BiRatFunc::<Rat>::riemann().eval(0), Err(Error::Pole(_))));
    }

    #[test]
    fn periodic_cancels() {
        // (w - w^3)/(1 - w^4) = w/(1 + w^2)
        let vals = [0i64, 1, 0, -1].map(|c| CycRat::from_rat(Rat::from(c)));
        let f = BiRatFunc::<Rat>::periodic(&vals).unwrap();
        let keys: Vec<_> = f.denominator_factors().map(|(k, _)| k.d).collect();
        assert_eq!(keys, [4]);
        assert_eq!(f.eval(1).unwrap(), rf(&[0, 1], &[1, 0, 1]));
    }

    #[test]
    fn hurwitz_branch() {
        // sum_k q^{(k + 1/2) r} at r = 1: v/(1 - v^2); one delta multiplies term k by [k + 1/2]
        let f = BiRatFunc::<Rat>::hurwitz(1, 2).unwrap();
        assert_eq!(f.eval(1).unwrap(), rf(&[0, 1], &[1, 0, -1]));
        // the factor v - 1 of q - 1 cancels
        let g = f.delta();
        assert_eq!(g.scalar_denominator().indices(), [2]);
        let den = &(&p(&[1, 0, 0, 0, -1]) * &p(&[1, 0, -1])) * &p(&[1, 1]);
        assert_eq!(g.eval(1).unwrap(), RatFunc::new(p(&[0, 1, 0, 0, 1]), den).unwrap());
    }
}
