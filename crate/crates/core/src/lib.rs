//! Factoring integer polynomials through their real roots.
//!
//! The roots of a square-free monic polynomial are found numerically and
//! grouped into real linear and quadratic factors. A factor over the
//! integers has integral trace, so the fractional parts of the roots (and of
//! the pair sums of complex roots) selected by it add up to an integer. The
//! [`recombine`] backends enumerate those subsets; [`verify`] turns them into
//! exact factors.

pub mod parallel;
pub mod polynomial;
pub mod recombine;
pub mod rootfinder;
pub mod verify;

pub use polynomial::IntPolynomial;
pub use recombine::{Backend, CandidateSet, RhoVector};
pub use rootfinder::{Precision, ToleranceConfig};
pub use verify::{factor, FactorError, FactorOptions, FactorizationResult};
