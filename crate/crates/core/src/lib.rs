//! Exact computational harmonic analysis on the dyadic group.
//!
//! The crate is organised bottom-up:
//!
//! * [`index`]: binary-expansion characteristics of indices, block runs and
//!   the endpoint sets `A_s` generated by index families.
//! * [`field`]: functions on the dyadic group at finite resolution, exact
//!   Walsh-Hadamard analysis, translation, convolution and quasi-norms.
//! * [`kernels`]: Dirichlet and Fejer kernels, partial sums, Fejer means and
//!   exhaustive verification of kernel identities and pointwise bounds.
//! * [`hardy`]: p-atoms, finite dyadic martingales, maximal functions and the
//!   counterexample martingale built from a family with unbounded `|A_s|`.
//! * [`maxop`]: index families, restricted maximal operators of Fejer means,
//!   the atom statistic and the boundedness / blow-up experiments.
//!
//! Values are exact rationals throughout; floating point only appears where
//! a fractional power has to be taken.

pub mod constants;
mod error;
pub mod field;
pub mod hardy;
pub mod index;
pub mod kernels;
pub mod maxop;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rational;
