//! The operators `zeta_q(s)`, `zeta_q(s, x)` and `L_q(chi, s)`.
//!
//! Each operator is `sum_e c_e F_e / [e]^s` over exponents `e` (the integers
//! `n >= 1`, or `k + x` for `k >= 0` in the Hurwitz case) with weights `c_e`
//! (`1`, or `chi(n)`). At `s = -m <= 0` the image of a polynomial without
//! constant term is a rational function of `q^(1/b)`, computed here by three
//! independent backends:
//!
//! * geometric: binomial expansion of `[e]^m` and summation of geometric series;
//! * delta: `m` applications of the q-difference operator to `sum_e c_e q^(e r)`;
//! * series: direct truncated summation.
//!
//! A floating-point evaluator handles general complex `s`.

mod checks;
mod delta;
mod direct;
mod euler;
mod geometric;
mod numeric;

use core::fmt;

use crate::arith::{Field, Poly, Rat, RatFunc};
use crate::dirichlet::DirichletCharacter;
use crate::error::{domain, Error, Result};
use crate::series::positive_ratio;

pub use checks::{
    check_commute, check_distribution, check_l_decomposition, CommuteReport, DistributionReport,
    LDecompositionReport,
};
pub use delta::{apply_delta, base_function};
pub use direct::apply_series;
pub use euler::euler_product_apply;
pub use geometric::apply_geometric;
pub use numeric::{numeric_apply, NumericValue};

#[derive(Clone, Debug, PartialEq)]
pub enum OperatorKind {
    Riemann,
    /// `x > 0` rational.
    Hurwitz(Rat),
    DirichletL(DirichletCharacter),
}

impl OperatorKind {
    /// `v = q^(1/branch)` is the variable results are expressed in.
    pub fn branch(&self) -> u64 {
        match self {
            OperatorKind::Hurwitz(x) => positive_ratio(x).map(|(_, b)| b).unwrap_or(1),
            _ => 1,
        }
    }

    fn validate(&self) -> Result<()> {
        if let OperatorKind::Hurwitz(x) = self {
            if !x.is_positive() {
                return Err(domain("Hurwitz parameter x must be a positive rational"));
            }
        }
        Ok(())
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorKind::Riemann => f.write_str("riemann"),
            OperatorKind::Hurwitz(x) => write!(f, "hurwitz(x={x})"),
            OperatorKind::DirichletL(chi) => {
                write!(f, "dirichlet(N={}, index={})", chi.modulus(), chi.index())
            }
        }
    }
}

/// An operator at an integer `s`. Exact backends require `s <= 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorSpec {
    pub kind: OperatorKind,
    pub s: i64,
}

impl OperatorSpec {
    pub fn new(kind: OperatorKind, s: i64) -> Result<Self> {
        kind.validate()?;
        Ok(OperatorSpec { kind, s })
    }

    pub fn riemann(s: i64) -> Self {
        OperatorSpec {
            kind: OperatorKind::Riemann,
            s,
        }
    }

    pub fn hurwitz(x: Rat, s: i64) -> Result<Self> {
        Self::new(OperatorKind::Hurwitz(x), s)
    }

    pub fn dirichlet(chi: DirichletCharacter, s: i64) -> Self {
        OperatorSpec {
            kind: OperatorKind::DirichletL(chi),
            s,
        }
    }

    pub fn branch(&self) -> u64 {
        self.kind.branch()
    }

    /// `m = -s`, the power of `[e]` each term is multiplied by.
    pub fn exact_power(&self) -> Result<u32> {
        if self.s > 0 {
            return Err(Error::Unsupported(alloc::format!(
                "s = {} > 0 has no exact rational value; use numeric mode",
                self.s
            )));
        }
        u32::try_from(-self.s).map_err(|_| domain("s is too negative"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    Delta,
    Geometric,
    Series,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Delta => "delta",
            Backend::Geometric => "geometric",
            Backend::Series => "series",
        })
    }
}

impl core::str::FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta" => Ok(Backend::Delta),
            "geometric" => Ok(Backend::Geometric),
            "series" => Ok(Backend::Series),
            _ => Err(domain(alloc::format!("unknown method `{s}`"))),
        }
    }
}

/// Exact operator value, a rational function of `v = q^(1/branch)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ApplyResult<F> {
    pub value: RatFunc<F>,
    pub branch: u64,
    pub backend: Backend,
}

/// Operator input: a polynomial in `q` with `P(0) = 0`.
pub(crate) fn check_input(p: &Poly<Rat>) -> Result<()> {
    if !p.coeff(0).is_zero() {
        return Err(domain(
            "polynomial has a constant term; the operators act on series without constant term",
        ));
    }
    Ok(())
}

/// Nonzero `(r, p_r)` pairs of `P`.
pub(crate) fn monomials<F: Field>(p: &Poly<Rat>) -> impl Iterator<Item = (u64, F)> + '_ {
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(r, c)| (r as u64, F::from_rat(c.clone())))
}

/// `q - (n+1) q^2`, the polynomial in the Bernoulli-Carlitz identities.
pub fn carlitz_test_poly(n: u64) -> Poly<Rat> {
    Poly::new(alloc::vec![Rat::zero(), Rat::one(), -Rat::from(n as i64 + 1)])
}
