//! Weighted Chebyshev polynomials on the unit circle for the weight `|z - 1|^s`.
//!
//! The crate computes the circle-constrained minimiser through an interval
//! reduction to Jacobi-type weights on `[-1, 1]`, derives the free minimiser
//! from it by differentiation, and ships an independent direct minimax solver
//! to cross-check the pipeline. It also contains numerical checks for
//! Erdős–Lax type (in)equalities for fractional powers of polynomials and
//! zero-distribution statistics.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
mod fraction;
mod linalg;
mod optimize;

pub mod circle;
pub mod erdos_lax;
pub mod oracle;
pub mod polynomial;
pub mod remez;
pub mod weighted_fn;
pub mod zeros;

pub use error::{Error, Result};
pub use fraction::{rational_approximation, Fraction};
pub use num_complex::Complex64 as Complex;
