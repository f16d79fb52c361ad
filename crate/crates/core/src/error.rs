use alloc::string::String;

/// Errors raised by costs, projections and solvers.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A vector did not have the dimension the operation expects.
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch {
        /// Dimension required by the operation.
        expected: usize,
        /// Dimension that was supplied.
        found: usize,
    },
    /// A NaN or infinite value reached a place that requires finite numbers.
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    /// A point lies outside the domain of a cost.
    #[error("{cost}: point outside the domain ({reason})")]
    Domain {
        /// Name of the cost.
        cost: &'static str,
        /// What went wrong.
        reason: &'static str,
    },
    /// The cost has no subgradient at the requested point.
    #[error("{cost}: no subgradient at this point")]
    NotDifferentiable {
        /// Name of the cost.
        cost: &'static str,
    },
    /// A constructor or operation received an invalid parameter.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// The operation is not defined for this input class.
    #[error("unsupported operation: {0}")]
    Unsupported(&'static str),
    /// An inner numerical routine failed to converge.
    #[error("numerical failure: {0}")]
    Numerical(String),
    /// The solver configuration is inconsistent with the problem.
    #[error("configuration error: {0}")]
    Configuration(String),
}

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
