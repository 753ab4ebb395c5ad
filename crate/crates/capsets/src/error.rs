//! Error type shared by every module of the crate.

use num_bigint::BigUint;
use thiserror::Error;

/// Errors reported by constructors, builders and materialising operations.
///
/// Verifiers do not use this type for negative verdicts: a failed
/// verification is a *result* (carrying a witness), not an error. `Error`
/// is reserved for misuse of an operation (mismatched dimensions, malformed
/// input, exceeded budgets and the like).
#[derive(Debug, Error)]
pub enum Error {
    /// Two vectors or sets that must share a dimension do not.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A character outside {0, 1, 2} appeared where a trit was expected.
    #[error("invalid digit {digit:?}: expected '0', '1' or '2'")]
    InvalidDigit { digit: char },

    /// A line-oriented input file could not be parsed.
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A parameter was outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Materialising this result would exceed the element budget.
    ///
    /// The exact element count is always reported; nothing is silently
    /// truncated.
    #[error("element budget exceeded: result has {count} elements, budget is {budget}")]
    BudgetExceeded { count: BigUint, budget: u64 },

    /// An operation requiring an admissible input was given one that is not.
    #[error("input set is not admissible: {0}")]
    NotAdmissible(String),

    /// An operation requiring a recursively admissible input was given a
    /// set that fails that (stronger) property.
    #[error("input set is not recursively admissible: {0}")]
    NotRecursivelyAdmissible(String),

    /// An exhaustive search finished without finding the object it was
    /// asked to construct.
    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    /// A decoded SAT model failed re-verification. This indicates a bug in
    /// the encoder (or a model for a different instance), never a property
    /// of the mathematical object.
    #[error("decoded model failed verification ({0}); this indicates an encoder bug or a mismatched model")]
    EncoderBug(String),

    /// A solver model or assignment did not cover the required variables.
    #[error("incomplete assignment: variable {var} is unassigned")]
    IncompleteAssignment { var: usize },

    /// A constraint profile was requested for an instance it cannot apply to.
    #[error("profile {profile} is incompatible with instance ({m},{w}): {why}")]
    ProfileIncompatible {
        profile: String,
        m: usize,
        w: usize,
        why: String,
    },

    /// A build plan failed validation.
    #[error("invalid plan: {0}")]
    InvalidPlan(String),

    /// Underlying I/O failure while reading or writing files.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
