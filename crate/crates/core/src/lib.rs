//! Exact-arithmetic engine for oriented link diagrams: skein-theoretic
//! invariants, coherent band-surgery distance obstructions, and minimal
//! pathway search over a certificate graph.
//!
//! The crate is organised around a small set of value types:
//!
//! - [`LinkDiagram`] — an oriented planar diagram given by a PD code,
//! - [`LaurentPoly`] — Laurent polynomials with half-integer exponents,
//!   generic over the coefficient scalar,
//! - [`CycloValue`] / [`QuadValue`] — exact cyclotomic and quadratic field
//!   elements used for the fixed-point evaluations of the Jones and Q
//!   polynomials,
//! - [`Atlas`] — the shipped table of named links, certified distance-one
//!   pairs, and expected distances.
//!
//! All types are immutable values after construction and safe to share
//! across threads.

pub mod atlas;
pub mod bracket;
pub mod braid;
pub mod bundle;
pub mod cyclo;
pub mod diagram;
pub mod error;
pub mod name;
pub mod obstruct;
pub mod pathway;
pub mod poly;
pub mod qpoly;
pub mod quad;
pub mod recomb;
pub mod scalar;
pub mod seifert;
pub mod skein;

pub use cyclo::CycloValue;
pub use diagram::{Crossing, LinkDiagram};
pub use error::{AtlasError, DiagramError, EvalError, InvariantError};
pub use name::{ComponentSequence, LinkName};
pub use poly::LaurentPoly;
pub use quad::QuadValue;
pub use scalar::Scalar;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Integer-coefficient Laurent polynomial: the concrete scalar used by the
/// skein invariants.
pub type IntPoly = LaurentPoly<BigInt>;

/// Rational-coefficient Laurent polynomial, used by intermediate
/// eliminations that need exact division.
pub type RatPoly = LaurentPoly<BigRational>;
