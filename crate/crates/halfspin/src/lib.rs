//! Exact-arithmetic verification of the combinatorial identities that govern
//! Faber-type intersection numbers.
//!
//! Everything in this crate computes over arbitrary-precision rationals; no
//! floating point is used anywhere, so every comparison is an exact equality.
//! The crate is organised in four layers:
//!
//! * [`exact`] — rational scalars and the special functions they feed:
//!   factorials, odd double factorials (extended to negative arguments),
//!   binomial coefficients, the half-integer polynomial family `Q_m`,
//!   Bernoulli numbers and the genus constant `C_g`.
//! * [`combinatorics`] — set partitions in restricted-growth order, integer
//!   compositions, and the block-profile census that collapses partitions
//!   with identical `(entry sum, block size)` profiles.
//! * [`correlators`] — bullet correlator systems: symmetric rational-valued
//!   maps on index tuples, closed under the string equation, with pluggable
//!   initial values and an optional single-value perturbation.
//! * [`identities`] — the evaluators (`E`, `P`, `R`, `A`, the `P_{n,t}`
//!   splitting, generating polynomials in `x`) and the checks that compare
//!   them, plus simplex scans that drive the checks across every integer
//!   point of `a_1 + … + a_n = 2g - 3 + n`.
//!
//! [`sampling`] provides the deterministic seeded point generator used by the
//! randomised off-simplex suites, so library tests and the companion CLI see
//! the same sample streams for the same seed.
//!
//! The crate is `no_std` (with `alloc`); all I/O, parallelism and report
//! formatting live in the companion CLI crate.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod combinatorics;
pub mod correlators;
mod error;
pub mod exact;
pub mod identities;
pub mod sampling;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
