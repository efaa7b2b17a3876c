//! Error types shared across the crate.

use thiserror::Error;

/// A string that does not denote a rational number.
#[derive(Debug, Clone, Error)]
#[error("cannot parse `{text}` as a rational number (expected `a` or `a/b` with b != 0)")]
pub struct ParseRationalError {
    pub text: String,
}

/// Rejected variable-table construction or extension.
#[derive(Debug, Clone, Error)]
pub enum TableError {
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("empty coordinate list")]
    NoCoordinates,
}

/// Failures of the Hamiltonian analysis itself (as opposed to bad input text).
#[derive(Debug, Clone, Error)]
pub enum AnalysisError {
    /// The normal form of the Legendre transform still depends on a velocity.
    /// Happens when the velocity Hessian does not have constant rank, e.g.
    /// for a pure cubic kinetic term.
    #[error(
        "velocity elimination failed: `{remainder}` still contains `{variable}`; \
         the velocity Hessian of this Lagrangian does not have constant rank"
    )]
    VelocityEliminationFailed { variable: String, remainder: String },

    /// The monomial order handed to an elimination step does not actually
    /// eliminate the requested variables.
    #[error("monomial order is not an elimination order for {{{variables}}}")]
    NotEliminationOrder { variables: String },

    /// Completion ran past its safety cap without reaching a fixpoint.
    #[error("constraint completion exceeded the iteration cap of {limit} passes")]
    IterationLimitExceeded { limit: usize },

    /// Lagrangian mentions variables it must not (momenta, multipliers).
    #[error("Lagrangian contains the {kind} variable `{variable}`")]
    ForeignVariableInLagrangian { kind: String, variable: String },
}

/// Problem-file or expression syntax error with the source position.
#[derive(Debug, Clone, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub message: String,
    pub line: usize,
    pub column: usize,
}

impl ParseError {
    pub fn new(message: impl Into<String>, line: usize, column: usize) -> Self {
        ParseError {
            message: message.into(),
            line,
            column,
        }
    }
}
