//! Bernoulli-Carlitz fractions and their Hurwitz and character analogues.
//!
//! `beta_0 = 1` and, for `n >= 1`,
//! `(q^(n+1) - 1) beta_n = [n = 1] - q sum_{i<n} C(n,i) q^i beta_i`.
//! Denominators are products of cyclotomic polynomials and are kept in
//! factored form, so reduction is trial division by `Phi_k`.

mod character;
mod hurwitz;

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use spin::Mutex;

use crate::arith::cyclotomic::mul_int;
use crate::arith::ntheory::binomial_rows;
use crate::arith::{CycloProduct, Field, Poly, Rat, RatFunc};
use crate::error::{domain, Result};
use crate::series::{series_from_ratfunc, TruncSeries};
use crate::zeta::{apply_delta, apply_geometric, apply_series, carlitz_test_poly, Backend, OperatorSpec};

pub use character::{beta_chi, verify_chi, BetaChi};
pub use hurwitz::{beta_poly, verify_hurwitz, BetaPolynomial};

#[derive(Clone, Debug, PartialEq)]
pub struct BetaFraction {
    pub n: u64,
    pub value: RatFunc<Rat>,
    /// `value.den()` as a product of cyclotomic polynomials.
    pub den_factors: CycloProduct,
}

impl BetaFraction {
    pub fn numerator(&self) -> &Poly<Rat> {
        self.value.num()
    }
}

/// Memo entry: the public value plus its integer numerator.
struct Entry {
    beta: Arc<BetaFraction>,
    num: Vec<BigInt>,
}

static TABLE: Mutex<Vec<Entry>> = Mutex::new(Vec::new());

fn entry(num: Vec<BigInt>, den_factors: CycloProduct, n: usize) -> Entry {
    let value = RatFunc::from_coprime(
        Poly::new(num.iter().cloned().map(Rat::from_integer).collect()),
        den_factors.expand(),
    );
    Entry {
        beta: Arc::new(BetaFraction {
            n: n as u64,
            value,
            den_factors,
        }),
        num,
    }
}

// Numerators stay integral: each step combines integral numerators with
// integer cofactors and divides exactly by monic integer polynomials.
fn extend_table(table: &mut Vec<Entry>, n: usize) {
    if table.is_empty() {
        table.push(entry(alloc::vec![BigInt::from(1)], CycloProduct::new(), 0));
    }
    if table.len() > n {
        return;
    }
    let rows = binomial_rows(n);
    for k in table.len()..=n {
        let common = table
            .iter()
            .fold(CycloProduct::new(), |acc, e| acc.lcm(&e.beta.den_factors));
        let mut num = if k == 1 { common.expand_int() } else { Vec::new() };
        for (i, e) in table.iter().enumerate() {
            let cof = common.quotient(&e.beta.den_factors).expect("lcm").expand_int();
            let term = mul_int(&e.num, &cof);
            // - C(k,i) q^(i+1) term
            if num.len() < term.len() + i + 1 {
                num.resize(term.len() + i + 1, BigInt::from(0));
            }
            for (j, c) in term.iter().enumerate() {
                num[j + i + 1] -= &rows[k][i] * c;
            }
        }
        while num.last().is_some_and(|c| c == &BigInt::from(0)) {
            num.pop();
        }
        let den = common.mul(&CycloProduct::x_pow_minus_one(k as u64 + 1));
        let (num, rest) = den.reduce_int(num);
        table.push(entry(num, rest, k));
    }
}

/// `beta_n`, memoised.
pub fn beta(n: u64) -> BetaFraction {
    let mut table = TABLE.lock();
    extend_table(&mut table, n as usize);
    (*table[n as usize].beta).clone()
}

/// `beta_0, ..., beta_n`.
pub fn beta_table(n: u64) -> Vec<BetaFraction> {
    let mut table = TABLE.lock();
    extend_table(&mut table, n as usize);
    table[..=n as usize].iter().map(|e| (*e.beta).clone()).collect()
}

/// Classical Bernoulli numbers from `sum_{i<=n} C(n+1, i) B_i = 0`, `B_1 = -1/2`.
pub fn bernoulli_numbers(n: u64) -> Vec<Rat> {
    let rows = binomial_rows(n as usize + 1);
    let mut out: Vec<Rat> = Vec::with_capacity(n as usize + 1);
    out.push(Rat::one());
    for k in 1..=n as usize {
        let s = out
            .iter()
            .enumerate()
            .fold(Rat::zero(), |acc, (i, b)| &acc + &(&Rat::from_integer(rows[k + 1][i].clone()) * b));
        out.push(&(-&s) * &Rat::from(k as i64 + 1).recip().expect("nonzero"));
    }
    out
}

pub fn bernoulli_number(n: u64) -> Rat {
    bernoulli_numbers(n).pop().expect("nonempty")
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenfunReport {
    /// Coefficients of `t^n/n!` in `B(t) - q e^t B(qt) - 1 + q + t`.
    pub differences: Vec<RatFunc<Rat>>,
}

impl GenfunReport {
    pub fn pass(&self) -> bool {
        self.differences.iter().all(RatFunc::is_zero)
    }
}

/// Product of two exponential generating series, `c_n = sum_k C(n,k) a_k b_(n-k)`.
fn egf_mul(a: &[RatFunc<Rat>], b: &[RatFunc<Rat>]) -> Vec<RatFunc<Rat>> {
    let n = a.len().min(b.len());
    let rows = binomial_rows(n.saturating_sub(1));
    (0..n)
        .map(|k| {
            (0..=k).fold(RatFunc::zero(), |acc, i| {
                let c = RatFunc::constant(Rat::from_integer(rows[k][i].clone()));
                &acc + &(&c * &(&a[i] * &b[k - i]))
            })
        })
        .collect()
}

/// Checks `B(t) = q e^t B(qt) + 1 - q - t` through `t^order`.
pub fn genfun_check(order: u64) -> GenfunReport {
    let betas = beta_table(order);
    let lhs: Vec<RatFunc<Rat>> = betas.iter().map(|b| b.value.clone()).collect();
    let exp_t = alloc::vec![RatFunc::one(); lhs.len()];
    // B(qt): coefficient of t^n/n! is q^n beta_n
    let scaled: Vec<RatFunc<Rat>> = lhs
        .iter()
        .enumerate()
        .map(|(n, b)| b * &RatFunc::from_poly(Poly::monomial(Rat::one(), n)))
        .collect();
    let q = RatFunc::<Rat>::x();
    let mut rhs: Vec<RatFunc<Rat>> = egf_mul(&exp_t, &scaled).iter().map(|c| &q * c).collect();
    rhs[0] = &(&rhs[0] + &RatFunc::one()) - &q;
    if rhs.len() > 1 {
        rhs[1] = &rhs[1] - &RatFunc::one();
    }
    GenfunReport {
        differences: lhs.iter().zip(&rhs).map(|(l, r)| l - r).collect(),
    }
}

/// How one side of an identity compares with the other.
#[derive(Clone, Debug, PartialEq)]
pub enum Evidence<F> {
    Exact { lhs: RatFunc<F>, rhs: RatFunc<F> },
    Series { lhs: TruncSeries<F>, rhs: TruncSeries<F> },
    /// `s = 1 - n > 0`: no exact rational value exists.
    OutsideExactMode,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport<F> {
    pub n: u64,
    pub backend: Backend,
    /// Both sides are functions of `q^(1/branch)`.
    pub branch: u64,
    pub evidence: Evidence<F>,
}

impl<F: Field> VerifyReport<F> {
    pub fn pass(&self) -> bool {
        match &self.evidence {
            Evidence::Exact { lhs, rhs } => lhs == rhs,
            Evidence::Series { lhs, rhs } => lhs.agrees_with(rhs),
            Evidence::OutsideExactMode => false,
        }
    }

    pub fn skipped(&self) -> bool {
        self.evidence == Evidence::OutsideExactMode
    }
}

/// Applies `spec` to `P` with the chosen backend and compares with `lhs`.
pub(crate) fn compare<F: Field>(
    n: u64,
    lhs: RatFunc<F>,
    spec: &OperatorSpec,
    p: &Poly<Rat>,
    backend: Backend,
    order: usize,
) -> Result<VerifyReport<F>> {
    let branch = spec.branch();
    let evidence = match backend {
        Backend::Geometric => Evidence::Exact {
            lhs,
            rhs: apply_geometric(spec, p)?.value,
        },
        Backend::Delta => Evidence::Exact {
            lhs,
            rhs: apply_delta(spec, p)?.value,
        },
        Backend::Series => Evidence::Series {
            lhs: series_from_ratfunc(&lhs, branch, order)?,
            rhs: apply_series(spec, p, order)?,
        },
    };
    Ok(VerifyReport {
        n,
        backend,
        branch,
        evidence,
    })
}

/// `beta_n = zeta_q(1 - n)(q - (n+1) q^2)` for `n >= 2`.
///
/// `order` is the truncation used by the series backend.
pub fn verify_theorem(n: u64, backend: Backend, order: usize) -> Result<VerifyReport<Rat>> {
    if n < 2 {
        return Err(domain("the identity holds for n >= 2"));
    }
    let spec = OperatorSpec::riemann(1 - n as i64);
    compare(n, beta(n).value, &spec, &carlitz_test_poly(n), backend, order)
}
