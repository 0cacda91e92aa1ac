//! Submodularity on the boolean hypercube {0,1}^n.
//!
//! The crate covers the local picture (violated squares, the randomized
//! square tester, square-by-square repair), explicit hard instances built
//! from lattices, and the global picture: exact extendability of partial
//! functions through a rational LP, path certificates of non-extendability,
//! and brute-force distance oracles.
//!
//! All algorithms are generic over an exact [`Scalar`]; [`Rational`] and the
//! aliases below are the defaults used by the CLI and file formats.

pub mod constructions;
pub mod error;
pub mod extendability;
pub mod format;
pub mod functions;
pub mod hypercube;
pub mod repair;
pub mod scalar;
pub mod tester;

pub use error::{Error, Result};
pub use functions::{Census, PartialFunction, TotalFunction};
pub use hypercube::{all_squares, dominates, edge_precedes, Direction, Edge, Point, Square};
pub use scalar::{Field, Scalar};

/// Arbitrary-precision rational, the default value type.
pub type Rational = num_rational::BigRational;

pub type Function = TotalFunction<Rational>;
pub type Partial = PartialFunction<Rational>;
pub type Certificate = extendability::PathCertificate;
pub type Feasibility = extendability::FeasibilityResult<Rational>;
