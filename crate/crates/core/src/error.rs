//! Error type shared by all modules, with stable codes for the CLI.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty word")]
    WordEmpty,
    #[error("word uses only one letter; monodromy is not Anosov")]
    WordNotMixed,
    #[error("two-bridge word needs at least two syllables")]
    TooFewSyllables,
    #[error("matrix has |trace| <= 2; no Anosov monodromy")]
    NotAnosov,
    #[error("matrix determinant is not 1")]
    NotUnimodular,
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("pleating vector has wrong length: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("argument {0} outside the admissible range")]
    OutOfRange(f64),
    #[error("angle sum deviates from pi by {0}")]
    AngleSum(f64),
    #[error("angle structure touches the polytope boundary")]
    Boundary,
    #[error("tetrahedron degenerate: nonpositive angle or coincident vertices")]
    Degenerate,
    #[error("no interior starting point exists for this input")]
    Infeasible,
    #[error("solver did not converge within {iterations} iterations (gradient norm {grad_norm:.3e})")]
    NotConverged { iterations: usize, grad_norm: f64 },
    #[error("fixed-point iteration does not contract for these parameters")]
    NoContraction,
}

impl Error {
    /// Stable machine-readable code, reported by the CLI on failure.
    pub fn code(&self) -> &'static str {
        match self {
            Error::WordEmpty => "EWordEmpty",
            Error::WordNotMixed => "EWordNotMixed",
            Error::TooFewSyllables => "ETooFewSyllables",
            Error::NotAnosov => "ENotAnosov",
            Error::NotUnimodular => "ENotUnimodular",
            Error::Syntax(_) => "ESyntax",
            Error::DimensionMismatch { .. } => "EDimensionMismatch",
            Error::OutOfRange(_) => "EOutOfRange",
            Error::AngleSum(_) => "EAngleSum",
            Error::Boundary => "EBoundary",
            Error::Degenerate => "EDegenerate",
            Error::Infeasible => "EInfeasible",
            Error::NotConverged { .. } => "ENotConverged",
            Error::NoContraction => "ENoContraction",
        }
    }
}
