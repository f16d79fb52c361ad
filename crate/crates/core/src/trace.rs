use alloc::vec::Vec;
use core::fmt;

use crate::LiftedVector;

/// Which set produced a trace point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetLabel {
    /// Projection onto the level set `{y <= alpha}`.
    LevelSet,
    /// A point of the epigraph (projection onto it, or a lift to the graph).
    Epigraph,
    /// Projection onto a supporting or tangent hyperplane.
    Hyperplane,
    /// Projection onto the `k`-th constraint set (1-based).
    Constraint(usize),
}

impl SetLabel {
    /// Parses the text form produced by `Display`.
    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "level_set" => Some(Self::LevelSet),
            "epigraph" => Some(Self::Epigraph),
            "hyperplane" => Some(Self::Hyperplane),
            other => other
                .strip_prefix("constraint_")
                .and_then(|k| k.parse().ok())
                .filter(|&k: &usize| k >= 1)
                .map(Self::Constraint),
        }
    }
}

impl fmt::Display for SetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::LevelSet => f.write_str("level_set"),
            Self::Epigraph => f.write_str("epigraph"),
            Self::Hyperplane => f.write_str("hyperplane"),
            Self::Constraint(k) => write!(f, "constraint_{k}"),
        }
    }
}

/// One projection step.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    /// Position in the trace, starting at 0 for the start point.
    pub index: usize,
    /// The lifted point after the step.
    pub point: LiftedVector,
    /// Set the point was projected onto.
    pub set: SetLabel,
    /// Cost at the point's base.
    pub cost_value: f64,
}

/// Why a solver stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Termination {
    /// The base vector moved less than the step tolerance over a cycle.
    Converged,
    /// The projection-step budget ran out.
    IterationCap,
    /// The iterates settled into a repeating pattern without converging.
    StalledLimitCycle,
    /// An iterate left the cost's domain, or no usable hyperplane existed.
    DomainError,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Converged => "converged",
            Self::IterationCap => "iteration_cap",
            Self::StalledLimitCycle => "stalled_limit_cycle",
            Self::DomainError => "domain_error",
        })
    }
}

/// Outcome of a solve.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    /// Returned minimizer `w*`.
    pub minimizer: Vec<f64>,
    /// `f(w*)`, evaluated afresh at exit.
    pub min_value: f64,
    /// Stopping reason.
    pub termination: Termination,
    /// The level-set height in force at exit.
    pub alpha: f64,
    /// Every projection step, start point first.
    pub trace: Vec<IterationRecord>,
    /// Trace indices at which a two-hyperplane fallback ran out of bounces
    /// without finding a lower cost.
    pub exhausted_fallbacks: Vec<usize>,
}

impl SolveResult {
    /// Number of projection steps taken (trace records after the start).
    pub fn iterations(&self) -> usize {
        self.trace.len().saturating_sub(1)
    }
}
