//! Polynomial roots in double-double precision and their classification
//! relative to the unit circle and the positive real axis.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{FromPrimitive, ToPrimitive};

use crate::arith::ntheory::gcd;
use crate::arith::{cyclotomic, CycloProduct, Poly, Rat};
use crate::carlitz::{beta, beta_chi};
use crate::dirichlet::DirichletCharacter;
use crate::error::{domain, Error, Result};

/// Default classification tolerance.
pub const DEFAULT_TOL: f64 = 1e-6;

/// Convergence threshold on Aberth updates, relative to `max(1, |z|)`.
pub const SOLVE_TOL: f64 = 1e-22;

const MAX_ITER: usize = 1000;

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, libm::fma(a, b, -p))
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    fn new(hi: f64) -> Self {
        Dd { hi, lo: 0.0 }
    }

    fn from_bigint(n: &BigInt) -> Self {
        let hi = n.to_f64().unwrap_or(f64::NAN);
        let rest = BigInt::from_f64(hi).map(|h| n - h);
        let lo = rest.and_then(|r| r.to_f64()).unwrap_or(0.0);
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    fn from_rat(x: &Rat) -> Self {
        let num = Self::from_bigint(x.numer());
        if x.denom() == &BigInt::from(1) {
            num
        } else {
            num / Self::from_bigint(x.denom())
        }
    }

    fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        let y = Dd::new(libm::sqrt(self.hi));
        y + (self - y * y) / (y * Dd::new(2.0))
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + -b
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::new(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::new(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
struct Cdd {
    re: Dd,
    im: Dd,
}

impl Cdd {
    const ZERO: Cdd = Cdd {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };

    fn from_c64(z: Complex64) -> Self {
        Cdd {
            re: Dd::new(z.re),
            im: Dd::new(z.im),
        }
    }

    fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.hi + self.re.lo, self.im.hi + self.im.lo)
    }

    fn norm_sqr(self) -> Dd {
        self.re * self.re + self.im * self.im
    }

    fn abs(self) -> Dd {
        self.norm_sqr().sqrt()
    }

    /// Scaling by a power of two is exact.
    fn scale_pow2(self, e: i32) -> Cdd {
        let f = Dd::new(libm::ldexp(1.0, e));
        Cdd {
            re: self.re * f,
            im: self.im * f,
        }
    }

    fn recip(self) -> Cdd {
        let m = self.re.hi.abs().max(self.im.hi.abs());
        if m == 0.0 || !m.is_finite() {
            return Cdd {
                re: Dd::new(f64::NAN),
                im: Dd::ZERO,
            };
        }
        let (_, e) = libm::frexp(m);
        let t = self.scale_pow2(-e);
        let d = t.norm_sqr();
        Cdd {
            re: t.re / d,
            im: -t.im / d,
        }
        .scale_pow2(-e)
    }
}

impl Add for Cdd {
    type Output = Cdd;
    fn add(self, b: Cdd) -> Cdd {
        Cdd {
            re: self.re + b.re,
            im: self.im + b.im,
        }
    }
}

impl Sub for Cdd {
    type Output = Cdd;
    fn sub(self, b: Cdd) -> Cdd {
        Cdd {
            re: self.re - b.re,
            im: self.im - b.im,
        }
    }
}

impl Mul for Cdd {
    type Output = Cdd;
    fn mul(self, b: Cdd) -> Cdd {
        Cdd {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}

impl Div for Cdd {
    type Output = Cdd;
    fn div(self, b: Cdd) -> Cdd {
        self * b.recip()
    }
}

/// `p(z)` and `p'(z)` by Horner's rule.
fn horner(coeffs: &[Dd], z: Cdd) -> (Cdd, Cdd) {
    let mut p = Cdd::ZERO;
    let mut dp = Cdd::ZERO;
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + Cdd { re: c, im: Dd::ZERO };
    }
    (p, dp)
}

/// Unit roundoff of double-double arithmetic, with some slack.
const DD_EPS: f64 = 1e-31;

/// `sum |c_k| t^k`.
fn abs_horner(coeffs: &[Dd], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c.hi.abs())
}

/// `p(z)/p'(z)` and whether `|p(z)|` is within rounding error of zero.
/// Outside the unit disc this uses the reversed polynomial
/// `r(y) = y^n p(1/y)`: `p'/p = y (n - y r'(y)/r(y))`.
fn newton_ratio(coeffs: &[Dd], reversed: &[Dd], z: Cdd) -> (Cdd, bool) {
    let n = coeffs.len() - 1;
    let floor = 4.0 * (n + 1) as f64 * DD_EPS;
    let abs = z.abs().hi;
    if abs <= 1.0 {
        let (v, dv) = horner(coeffs, z);
        return (v / dv, v.abs().hi <= floor * abs_horner(coeffs, abs));
    }
    let y = z.recip();
    let (r, dr) = horner(reversed, y);
    let small = r.abs().hi <= floor * abs_horner(reversed, 1.0 / abs);
    let deg = Cdd {
        re: Dd::new(n as f64),
        im: Dd::ZERO,
    };
    ((y * (deg - y * (dr / r))).recip(), small)
}

/// `|p(z)| / (max|c_i| max(1, |z|)^deg)`, evaluated in double-double.
pub fn relative_residual(p: &Poly<Rat>, z: Complex64) -> f64 {
    let coeffs: Vec<Dd> = p.coeffs().iter().map(Dd::from_rat).collect();
    let scale = coeffs.iter().map(|c| c.abs().hi).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    let (v, _) = horner(&coeffs, Cdd::from_c64(z));
    let deg = coeffs.len().saturating_sub(1) as i32;
    v.abs().hi / (scale * libm::pow(z.norm().max(1.0), f64::from(deg)))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FoundRoot {
    pub z: Complex64,
    /// Relative residual, see [`relative_residual`].
    pub residual: f64,
}

/// All complex roots of `p` with multiplicity.
///
/// Zero roots are removed exactly first; the rest come from Aberth iteration
/// in double-double arithmetic, started on a slightly rotated circle, and
/// freeze each root once its update is below `tol * max(1, |z|)` or `|p(z)|`
/// is within the rounding error of its evaluation.
pub fn find_roots(p: &Poly<Rat>, tol: f64) -> Result<Vec<FoundRoot>> {
    let deg = p.degree().ok_or_else(|| domain("the zero polynomial has no finite root set"))?;
    if deg == 0 {
        return Err(domain("degree must be >= 1"));
    }
    let val = p.valuation().expect("nonzero");
    let mut out = vec![
        FoundRoot {
            z: Complex64::new(0.0, 0.0),
            residual: 0.0,
        };
        val
    ];
    let reduced = p.unshift(val);
    for z in aberth(&reduced, tol)? {
        out.push(FoundRoot {
            z,
            residual: relative_residual(p, z),
        });
    }
    sort_roots(&mut out);
    Ok(out)
}

fn sort_roots(roots: &mut [FoundRoot]) {
    roots.sort_by(|a, b| {
        a.z.arg()
            .total_cmp(&b.z.arg())
            .then(a.z.norm().total_cmp(&b.z.norm()))
    });
}

/// Fraction bits of the fixed-point evaluator.
const FIX_BITS: i32 = 256;

fn to_fixed(x: Dd) -> BigInt {
    let part = |t: f64| BigInt::from_f64(libm::ldexp(t, FIX_BITS)).unwrap_or_default();
    part(x.hi) + part(x.lo)
}

fn from_fixed(v: &BigInt) -> Dd {
    let d = Dd::from_bigint(v);
    Dd {
        hi: libm::ldexp(d.hi, -FIX_BITS),
        lo: libm::ldexp(d.lo, -FIX_BITS),
    }
}

/// `p(z)` and `p'(z)` for integer coefficients in fixed point with
/// `FIX_BITS` fraction bits. The rounding error is absolute, about
/// `deg^2 2^-FIX_BITS` for `|z| <= 1`, whatever the size of the coefficients.
fn horner_fixed(coeffs: &[BigInt], z: Cdd) -> (Cdd, Cdd) {
    let (zr, zi) = (to_fixed(z.re), to_fixed(z.im));
    let mul = |ar: &BigInt, ai: &BigInt| -> (BigInt, BigInt) {
        ((ar * &zr - ai * &zi) >> FIX_BITS, (ar * &zi + ai * &zr) >> FIX_BITS)
    };
    let zero = BigInt::from(0);
    let (mut pr, mut pi) = (zero.clone(), zero.clone());
    let (mut dr, mut di) = (zero.clone(), zero);
    for c in coeffs.iter().rev() {
        let (tr, ti) = mul(&dr, &di);
        dr = tr + &pr;
        di = ti + &pi;
        let (tr, ti) = mul(&pr, &pi);
        pr = tr + (c << FIX_BITS);
        pi = ti;
    }
    let c = |re: &BigInt, im: &BigInt| Cdd {
        re: from_fixed(re),
        im: from_fixed(im),
    };
    (c(&pr, &pi), c(&dr, &di))
}

fn ratio_fixed(coeffs: &[BigInt], reversed: &[BigInt], z: Cdd) -> (Cdd, bool) {
    let n = coeffs.len() - 1;
    let floor = libm::ldexp(4.0 * ((n + 1) * (n + 1)) as f64, -FIX_BITS);
    if z.abs().hi <= 1.0 {
        let (v, dv) = horner_fixed(coeffs, z);
        return (v / dv, v.abs().hi <= floor);
    }
    let y = z.recip();
    let (r, dr) = horner_fixed(reversed, y);
    let deg = Cdd {
        re: Dd::new(n as f64),
        im: Dd::ZERO,
    };
    ((y * (deg - y * (dr / r))).recip(), r.abs().hi <= floor)
}

/// Outcome of a failed run of sweeps: roots still moving, largest update.
struct Unconverged(usize, f64);

/// Aberth sweeps with `ratio(z) = (p(z)/p'(z), |p(z)| at rounding level)`.
fn sweeps(z: &mut [Cdd], tol: f64, max_iter: usize, ratio: impl Fn(Cdd) -> (Cdd, bool)) -> core::result::Result<(), Unconverged> {
    let n = z.len();
    let one = Cdd {
        re: Dd::new(1.0),
        im: Dd::ZERO,
    };
    // a root is frozen once its update is below tol or p(z) is rounding noise
    let mut frozen = vec![false; n];
    let mut worst = f64::INFINITY;
    let mut nudges = 0;
    for _ in 0..max_iter {
        worst = 0.0;
        for i in 0..n {
            if frozen[i] {
                continue;
            }
            let (r, at_floor) = ratio(z[i]);
            if at_floor {
                frozen[i] = true;
                continue;
            }
            let mut s = Cdd::ZERO;
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    s = s + (z[i] - zj).recip();
                }
            }
            let w = r / (one - r * s);
            let step = w.abs().hi / (z[i] - w).abs().hi.max(1.0);
            if !step.is_finite() {
                // degenerate point (p' = 0 or a collision): nudge off it
                let nudge = Cdd::from_c64(Complex64::new(1.0 + 1e-7, 1e-7));
                z[i] = z[i] * nudge + Cdd::from_c64(Complex64::new(1e-9, 0.0));
                worst = f64::INFINITY;
                nudges += 1;
                if nudges > 10 * n {
                    return Err(Unconverged(n, worst));
                }
                continue;
            }
            z[i] = z[i] - w;
            frozen[i] = step < tol;
            worst = worst.max(step);
        }
        if frozen.iter().all(|&f| f) {
            return Ok(());
        }
    }
    Err(Unconverged(frozen.iter().filter(|f| !**f).count(), worst))
}

/// Primitive integer multiple of `p`.
fn integer_coeffs(p: &Poly<Rat>) -> Vec<BigInt> {
    let l = p.coeffs().iter().fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
    p.coeffs().iter().map(|c| c.numer() * (&l / c.denom())).collect()
}

fn aberth(p: &Poly<Rat>, tol: f64) -> Result<Vec<Complex64>> {
    let n = p.degree().unwrap_or(0);
    if n == 0 {
        return Ok(Vec::new());
    }
    let coeffs: Vec<Dd> = p.coeffs().iter().map(Dd::from_rat).collect();
    let reversed: Vec<Dd> = coeffs.iter().rev().copied().collect();
    if n == 1 {
        return Ok(vec![Complex64::new((-(coeffs[0] / coeffs[1])).hi, 0.0)]);
    }
    // geometric mean of the root moduli
    let radius = libm::pow((coeffs[0].hi / coeffs[n].hi).abs(), 1.0 / n as f64);
    let mut z: Vec<Cdd> = (0..n)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / n as f64 + 0.4;
            Cdd::from_c64(Complex64::from_polar(radius, t))
        })
        .collect();
    // double-double evaluation gets close; cancellation in p(z) limits it when
    // the coefficients are large, so the fixed-point evaluator finishes
    let _ = sweeps(&mut z, tol, MAX_ITER, |w| newton_ratio(&coeffs, &reversed, w));
    let ints = integer_coeffs(p);
    let ints_rev: Vec<BigInt> = ints.iter().rev().cloned().collect();
    match sweeps(&mut z, tol, MAX_ITER, |w| ratio_fixed(&ints, &ints_rev, w)) {
        Ok(()) => Ok(z.into_iter().map(Cdd::to_c64).collect()),
        Err(Unconverged(open, worst)) => Err(Error::NoConvergence(format!(
            "Aberth iteration for degree {n}: {open} roots still moving, largest relative update {worst:e} after {MAX_ITER} sweeps"
        ))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootClass {
    RealPositive,
    OnUnitCircle,
    ComplexOffCircle,
    OtherReal,
}

impl RootClass {
    pub fn as_str(self) -> &'static str {
        match self {
            RootClass::RealPositive => "real_positive",
            RootClass::OnUnitCircle => "on_unit_circle",
            RootClass::ComplexOffCircle => "complex_off_circle",
            RootClass::OtherReal => "other_real",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RootCounts {
    pub real_positive: usize,
    pub on_unit_circle: usize,
    /// Number of roots, not of pairs.
    pub complex_pairs_off_circle: usize,
    pub other_real: usize,
}

impl RootCounts {
    pub fn total(&self) -> usize {
        self.real_positive + self.on_unit_circle + self.complex_pairs_off_circle + self.other_real
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassifiedRoot {
    pub z: Complex64,
    pub residual: f64,
    pub class: RootClass,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootReport {
    pub n: u64,
    /// `(modulus, index)` for character numerators.
    pub character: Option<(u64, u64)>,
    pub degree: usize,
    pub roots: Vec<ClassifiedRoot>,
    pub counts: RootCounts,
    pub tol_circle: f64,
    pub tol_real: f64,
}

impl RootReport {
    pub fn max_residual(&self) -> f64 {
        self.roots.iter().map(|r| r.residual).fold(0.0, f64::max)
    }

    /// True iff the roots can be paired with their conjugates within `tol`.
    pub fn conjugate_closed(&self, tol: f64) -> bool {
        let mut used = vec![false; self.roots.len()];
        for r in &self.roots {
            let target = r.z.conj();
            let best = self
                .roots
                .iter()
                .enumerate()
                .filter(|(j, _)| !used[*j])
                .map(|(j, s)| (j, (s.z - target).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1));
            match best {
                Some((j, d)) if d <= tol * r.z.norm().max(1.0) => used[j] = true,
                _ => return false,
            }
        }
        true
    }

    pub fn min_circle_distance(&self) -> Option<f64> {
        self.roots
            .iter()
            .map(|r| (r.z.norm() - 1.0).abs())
            .min_by(f64::total_cmp)
    }
}

/// Counts roots on the unit circle first, then real ones by sign.
pub fn classify_roots(roots: &[FoundRoot], tol_circle: f64, tol_real: f64) -> RootReport {
    let mut counts = RootCounts::default();
    let roots: Vec<ClassifiedRoot> = roots
        .iter()
        .map(|r| {
            let class = if (r.z.norm() - 1.0).abs() <= tol_circle {
                counts.on_unit_circle += 1;
                RootClass::OnUnitCircle
            } else if r.z.im.abs() <= tol_real {
                if r.z.re > 0.0 {
                    counts.real_positive += 1;
                    RootClass::RealPositive
                } else {
                    counts.other_real += 1;
                    RootClass::OtherReal
                }
            } else {
                counts.complex_pairs_off_circle += 1;
                RootClass::ComplexOffCircle
            };
            ClassifiedRoot {
                z: r.z,
                residual: r.residual,
                class,
            }
        })
        .collect();
    RootReport {
        n: 0,
        character: None,
        degree: roots.len(),
        roots,
        counts,
        tol_circle,
        tol_real,
    }
}

fn phi_sieve(n: u64) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=n).collect();
    for i in 2..=n as usize {
        if phi[i] == i as u64 {
            for j in (i..=n as usize).step_by(i) {
                phi[j] -= phi[j] / i as u64;
            }
        }
    }
    phi
}

/// Splits `p` (with `p(0) != 0`) into `prod Phi_k^{e_k}` times a cofactor.
pub fn strip_cyclotomic(p: &Poly<Rat>) -> (CycloProduct, Poly<Rat>) {
    let mut rest = p.clone();
    let mut found = CycloProduct::new();
    let deg = p.degree().unwrap_or(0) as u64;
    if deg == 0 {
        return (found, rest);
    }
    let scale: f64 = p.coeffs().iter().map(|c| c.to_f64().abs()).sum();
    // phi(k) >= sqrt(k/2), so phi(k) <= deg forces k <= 2 deg^2
    let phis = phi_sieve(2 * deg * deg);
    for k in 1..=2 * deg * deg {
        if phis[k as usize] > rest.degree().unwrap_or(0) as u64 {
            continue;
        }
        // float prefilter at a primitive k-th root of unity; exact division decides
        let z = Complex64::from_polar(1.0, 2.0 * PI / k as f64);
        let v = rest
            .coeffs()
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_f64());
        if v.norm() > 1e-6 * scale {
            continue;
        }
        let phi_k: Poly<Rat> = cyclotomic(k).expect("k >= 1");
        while let Some(q) = rest.div_exact(&phi_k) {
            rest = q;
            found.push(k, 1);
        }
    }
    (found, rest)
}

fn roots_of_unity(k: u64) -> impl Iterator<Item = Complex64> {
    (1..=k)
        .filter(move |&j| gcd(j, k) == 1)
        .map(move |j| {
            let z = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / k as f64);
            // exact zeros for the real and imaginary axes
            let snap = |t: f64| if t.abs() < 1e-15 { 0.0 } else { t };
            Complex64::new(snap(z.re), snap(z.im))
        })
}

/// Roots of `p / q^val`: cyclotomic factors are split off exactly and their
/// roots reported as exact roots of unity; the cofactor is solved numerically.
pub fn analyse_numerator(p: &Poly<Rat>, tol: f64) -> Result<RootReport> {
    if p.is_zero() {
        return Ok(classify_roots(&[], tol, tol));
    }
    let p = p.unshift(p.valuation().expect("nonzero"));
    let (cyc, rest) = strip_cyclotomic(&p);
    let mut roots = Vec::with_capacity(p.degree().unwrap_or(0));
    for (k, e) in cyc.iter() {
        for _ in 0..e {
            roots.extend(roots_of_unity(k).map(|z| FoundRoot {
                z,
                residual: relative_residual(&p, z),
            }));
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        for r in find_roots(&rest, SOLVE_TOL)? {
            roots.push(FoundRoot {
                z: r.z,
                residual: relative_residual(&p, r.z),
            });
        }
    }
    sort_roots(&mut roots);
    Ok(classify_roots(&roots, tol, tol))
}

/// Root reports for the numerators of `beta_2, ..., beta_{n_max}`.
pub fn beta_root_survey(n_max: u64, tol: f64) -> Result<Vec<RootReport>> {
    if n_max < 2 {
        return Err(domain("n_max must be >= 2"));
    }
    (2..=n_max)
        .map(|n| {
            let mut report = analyse_numerator(beta(n).numerator(), tol)?;
            report.n = n;
            Ok(report)
        })
        .collect()
}

/// Root reports for the numerators of `beta_{chi,1}, ..., beta_{chi,n_max}`, `chi` real.
pub fn chi_root_survey(chi: &DirichletCharacter, n_max: u64, tol: f64) -> Result<Vec<RootReport>> {
    if !chi.is_real() {
        return Err(domain("root surveys need a real character"));
    }
    (1..=n_max)
        .map(|n| {
            let b = beta_chi::<Rat>(chi, n)?;
            let mut report = analyse_numerator(b.value.num(), tol)?;
            report.n = n;
            report.character = Some((chi.modulus(), chi.index()));
            Ok(report)
        })
        .collect()
}
