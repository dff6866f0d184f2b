//! Exact arithmetic for q-deformed Dirichlet series operators.
//!
//! The operators `zeta_q(a, s) = sum_n a_n F_n / [n]^s` act on formal power
//! series in `q` without constant term, where `[n] = (q^n - 1)/(q - 1)` is the
//! quantum integer and `F_n f = f(q^n)` is the formal Frobenius substitution.
//! At non-positive integer `s` every such operator sends a polynomial to a
//! rational function of `q`; this crate computes those values exactly with
//! three independent backends and uses them to check the Bernoulli-Carlitz
//! identities, their Hurwitz and Dirichlet-character analogues, the Euler
//! product and the commutation rule `F_m/[m]^s . F_n/[n]^s = F_mn/[mn]^s`.
//!
//! The crate is `no_std` (it needs `alloc`). IO, the command line and file
//! formats live in the `qzeta` crate.
//!
//! Module map:
//!
//! * [`arith`] - rationals, cyclotomic fields, dense polynomials, rational functions
//! * [`series`] - truncated Puiseux series, quantum integers, Frobenius, the q-difference operator
//! * [`zeta`] - operator application (geometric, delta and series backends), Euler product, checks
//! * [`carlitz`] - Bernoulli-Carlitz fractions, q-Bernoulli polynomials, character analogues
//! * [`dirichlet`] - unit groups and Dirichlet characters with cyclotomic values
//! * [`roots`] - double-double Aberth iteration and root classification
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod carlitz;
pub mod dirichlet;
mod error;
pub mod roots;
pub mod series;
pub mod zeta;

pub use arith::{CycRat, Field, Poly, Rat, RatFunc};
pub use error::{Error, Result};
