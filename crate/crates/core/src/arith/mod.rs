//! Exact scalar, polynomial, rational-function and cyclotomic-field arithmetic.

mod cyc;
pub mod cyclotomic;
mod field;
pub mod ntheory;
mod poly;
mod rat;
mod ratfunc;

pub use cyc::CycRat;
pub use cyclotomic::{cyclotomic, CycloProduct};
pub use field::Field;
pub use poly::Poly;
pub use rat::{ParseRatError, Rat};
pub use ratfunc::{eval_fraction, RatFunc};
