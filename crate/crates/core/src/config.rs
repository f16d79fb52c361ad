use alloc::format;

use crate::{CostFunction, Error, Result};

/// Knobs shared by all solvers.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Relaxation of hyperplane projections, strictly inside `(0, 2)`.
    /// `1.0` is the orthogonal projection.
    pub lambda: f64,
    /// The run has converged once the base vector moves less than this over
    /// one full cycle.
    pub step_tolerance: f64,
    /// Cap on projection steps, i.e. on trace records after the start point.
    pub max_iterations: usize,
    /// Height of the level set. `None` picks the cost's lower bound, or `0`
    /// when the cost does not declare one.
    pub alpha: Option<f64>,
    /// Constrained mode: amount added to `alpha` after every cycle that
    /// fails to lower the cost. `0` disables enlargement.
    pub alpha_growth: f64,
    /// Cap on projections inside one two-hyperplane fallback episode.
    pub fallback_max_bounces: usize,
    /// Tolerance handed to the iterative epigraph projection.
    pub projection_tolerance: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            lambda: 1.0,
            step_tolerance: 1e-10,
            max_iterations: 100_000,
            alpha: None,
            alpha_growth: 0.0,
            fallback_max_bounces: 50,
            projection_tolerance: 1e-13,
        }
    }
}

impl SolverConfig {
    /// Checks the numeric ranges of every field.
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 0.0 && self.lambda < 2.0) {
            return Err(Error::Configuration(format!("lambda must lie in (0, 2), got {}", self.lambda)));
        }
        if !(self.step_tolerance > 0.0 && self.step_tolerance.is_finite()) {
            return Err(Error::Configuration(format!(
                "step_tolerance must be positive, got {}",
                self.step_tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::Configuration("max_iterations must be at least 1".into()));
        }
        if let Some(alpha) = self.alpha {
            if !alpha.is_finite() {
                return Err(Error::Configuration("alpha must be finite".into()));
            }
        }
        if !(self.alpha_growth >= 0.0 && self.alpha_growth.is_finite()) {
            return Err(Error::Configuration(format!(
                "alpha_growth must be nonnegative, got {}",
                self.alpha_growth
            )));
        }
        if self.fallback_max_bounces == 0 {
            return Err(Error::Configuration("fallback_max_bounces must be at least 1".into()));
        }
        if !(self.projection_tolerance > 0.0 && self.projection_tolerance.is_finite()) {
            return Err(Error::Configuration("projection_tolerance must be positive".into()));
        }
        Ok(())
    }

    /// The level-set height used for `cost`.
    pub fn resolve_alpha(&self, cost: &dyn CostFunction) -> f64 {
        self.alpha.or_else(|| cost.lower_bound()).unwrap_or(0.0)
    }

    /// Copy with a different `lambda`.
    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    /// Copy with an explicit `alpha`.
    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = Some(alpha);
        self
    }
}
