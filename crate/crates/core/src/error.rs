//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed PD code: {0}")]
    MalformedPd(String),
    #[error("arc {0} is used {1} times, expected exactly 2")]
    InconsistentArcs(u32, usize),
    #[error("arcs do not close into oriented cycles")]
    OpenStrand,
    #[error("component index {0} out of range (diagram has {1} components)")]
    BadComponentIndex(usize, usize),
    #[error("linking number requires two distinct components")]
    SameComponent,
    #[error("arc {0} not present in diagram")]
    BadArc(u32),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("negative exponent of a non-invertible value")]
    NonInvertible,
    #[error("polynomial has half-integer exponents")]
    HalfIntegerExponent,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("diagram has {0} crossings, beyond the {1}-crossing envelope")]
    TooLarge(usize, usize),
    #[error("skein recursion exceeded its depth bound")]
    NonConvergentUnknotting,
    #[error("braid conversion failed: {0}")]
    BraidConversion(String),
    #[error("factorisation search beyond the exhaustive envelope (degree {0}, modulus {1})")]
    SearchBudgetExceeded(i64, u64),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NameError {
    #[error("malformed link name: {0}")]
    MalformedName(String),
}

#[derive(Debug, Error)]
pub enum AtlasError {
    #[error("malformed atlas data at {file}:{line}: {msg}")]
    Malformed { file: String, line: usize, msg: String },
    #[error("convention violation for {name}: {msg}")]
    ConventionViolation { name: String, msg: String },
    #[error("unknown link name: {0}")]
    UnknownName(String),
    #[error("{0}")]
    Name(#[from] NameError),
    #[error("{0}")]
    Diagram(#[from] DiagramError),
    #[error("{0}")]
    Invariant(#[from] InvariantError),
    #[error("io error reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathwayError {
    #[error("certificate joins links whose component counts differ by {0}, expected 1")]
    ParityViolation(i64),
    #[error("no pathway within {0} steps")]
    NoPathWithin(usize),
}
