//! Truncated Puiseux series, quantum integers, Frobenius substitutions and
//! the q-difference operator on functions of `q^r`.

mod bivariate;
mod quantum;
mod trunc;

pub use bivariate::{BiRatFunc, ShiftFactor};
pub use quantum::{quantum_int, quantum_int_poly, PuiseuxFn, QuantumInt};
pub use trunc::{series_from_ratfunc, TruncSeries};
pub(crate) use trunc::positive_ratio;
