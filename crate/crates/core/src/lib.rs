//! Exact symbolic engine for additive functional equations
//!
//! ```text
//! sum_i  s_i * f_i(x^p_i) * g_i(x)^q_i = 0
//! ```
//!
//! The unknown additive functions are written as combinations of the
//! generators `m_j(d^k(x))`: an exponential `m_j` (field homomorphism) applied
//! to the `k`-th power of a single derivation `d`. Distinct generators are
//! algebraically independent, so an identity holds exactly when every
//! coefficient of the expanded left-hand side vanishes.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the equation DSL
//! and the command line live in the companion `adeq` crate.
//!
//! Module map:
//!
//! * [`sympoly`] - sparse polynomials over generators with coefficients that
//!   are polynomials in named unknowns over the rationals.
//! * [`expansion`] - `d^k(x^p)` by multiset compositions, by derivation
//!   partitions, and by iterated Leibniz rule.
//! * [`equation`] - equation specs, ansatz families, expansion of left-hand
//!   sides, constraint extraction, homogenization and symmetrization.
//! * [`analysis`] - two-term classification, the two-exponential family,
//!   falling-factorial/Vandermonde certificates, order scans and corollary
//!   specializations.
//! * [`field`] - the rational function field `Q(t)` with `d/dt` and
//!   substitution endomorphisms, used as an independent concrete oracle.
#![no_std]
#![warn(rust_2018_idioms)]

extern crate alloc;

pub mod analysis;
pub mod equation;
mod error;
pub mod expansion;
pub mod field;
pub mod rat;
pub mod sympoly;

pub use error::{Error, Result};
pub use rat::Q;
