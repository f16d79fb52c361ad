//! Minimization by alternating projections in the lifted space.
//!
//! All solvers record every projection in the returned trace, starting with
//! the lifted start point `(w0, f(w0))`. `max_iterations` caps the number of
//! projection steps after it.

mod fallback;
mod hyperplane;
mod pocs;

pub use fallback::{bounce_between, fallback_two_hyperplanes, FallbackOutcome};
pub use hyperplane::{solve_constrained, solve_nonconvex, solve_supporting_hyperplane};
pub use pocs::solve_pocs_epigraph;

use alloc::vec::Vec;
use core::fmt;

use crate::{CostFunction, Error, IterationRecord, LiftedVector, SetLabel};

/// Consecutive non-improving cycles after which the non-convex mode stops.
pub const NONCONVEX_STALL_CYCLES: usize = 10;

/// A solver failure, with the trace recorded up to that point.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveError {
    /// What went wrong.
    pub error: Error,
    /// Partial trace.
    pub trace: Vec<IterationRecord>,
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (after {} trace records)", self.error, self.trace.len())
    }
}

impl core::error::Error for SolveError {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        Some(&self.error)
    }
}

impl From<Error> for SolveError {
    fn from(error: Error) -> Self {
        Self { error, trace: Vec::new() }
    }
}

/// Trace under construction, with the projection-step budget.
pub(crate) struct Tracer {
    records: Vec<IterationRecord>,
    budget: usize,
}

impl Tracer {
    pub(crate) fn new(budget: usize, start: LiftedVector, cost: f64) -> Self {
        let records = alloc::vec![IterationRecord { index: 0, point: start, set: SetLabel::Epigraph, cost_value: cost }];
        Self { records, budget }
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.records.len() > self.budget
    }

    /// Appends a record unless the budget is spent; returns whether it was
    /// appended.
    pub(crate) fn push(&mut self, point: LiftedVector, set: SetLabel, cost_value: f64) -> bool {
        if self.exhausted() {
            return false;
        }
        let index = self.records.len();
        self.records.push(IterationRecord { index, point, set, cost_value });
        true
    }

    pub(crate) fn len(&self) -> usize {
        self.records.len()
    }

    pub(crate) fn fail(self, error: Error) -> SolveError {
        SolveError { error, trace: self.records }
    }

    /// Like [`fail`](Self::fail) but usable inside `map_err` on a borrow.
    pub(crate) fn fail_clone(&self, error: Error) -> SolveError {
        SolveError { error, trace: self.records.clone() }
    }

    pub(crate) fn into_records(self) -> Vec<IterationRecord> {
        self.records
    }
}

pub(crate) fn check_start(f: &dyn CostFunction, w0: &[f64]) -> Result<(), SolveError> {
    crate::check_dim(f, w0)?;
    if !crate::linalg::all_finite(w0) {
        return Err(Error::NonFinite("initial point").into());
    }
    Ok(())
}

pub(crate) fn alpha_violation(value: f64, alpha: f64) -> Error {
    Error::Configuration(alloc::format!(
        "observed cost {value} below the level-set height alpha = {alpha}; alpha must bound the cost from below"
    ))
}
