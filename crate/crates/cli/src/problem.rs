//! Turning a spec into costs, constraints and a solver call.

use std::time::{Duration, Instant};

use liftpocs::costs::{Entropic, FilteredVariation, FirFilter, L2Squared, PowerCost, Shifted, TotalVariation, L1};
use liftpocs::oracle::grid_oracle;
use liftpocs::projection::ConstraintSet;
use liftpocs::solver::{solve_constrained, solve_nonconvex, solve_pocs_epigraph, solve_supporting_hyperplane, SolveError};
use liftpocs::{CostFunction, SolveResult, SolverConfig};

use crate::spec::{ConstraintSpec, CostName, CostSpec, ProblemSpec, SolverKind};
use crate::CliError;

/// Feasibility slack for constraint-restricted oracle searches.
const ORACLE_FEASIBILITY_SLACK: f64 = 1e-12;

pub fn build_cost(spec: &CostSpec) -> liftpocs::Result<Box<dyn CostFunction>> {
    let n = spec.dim;
    let center = || spec.center.clone().unwrap_or_else(|| vec![0.0; n]);
    let cost: Box<dyn CostFunction> = match spec.name {
        CostName::L1 => Box::new(L1::new(n)?),
        CostName::L2sq => Box::new(L2Squared::new(center())?),
        CostName::Tv => Box::new(TotalVariation::new(n)?),
        CostName::Fv => {
            let taps = spec.taps.clone().unwrap_or_default();
            Box::new(FilteredVariation::new(n, FirFilter::new(taps)?)?)
        }
        CostName::Entropy => Box::new(Entropic::new(n)?),
        CostName::Lp => Box::new(PowerCost::new(spec.p.unwrap_or(f64::NAN), center())?),
    };
    if spec.offset != 0.0 {
        return Ok(Box::new(Shifted::new(cost, spec.offset)?));
    }
    Ok(cost)
}

pub fn build_constraint(spec: &ConstraintSpec) -> liftpocs::Result<ConstraintSet> {
    match spec {
        ConstraintSpec::Box { lower, upper } => ConstraintSet::boxed(lower.clone(), upper.clone()),
        ConstraintSpec::Ball { center, radius } => ConstraintSet::ball(center.clone(), *radius),
        ConstraintSpec::Halfspace { normal, offset } => ConstraintSet::halfspace(normal.clone(), *offset),
        ConstraintSpec::Hyperplane { normal, offset } => ConstraintSet::hyperplane(normal.clone(), *offset),
    }
}

/// Solver settings from the spec's `[config]` table, over the defaults.
pub fn build_config(spec: &ProblemSpec) -> SolverConfig {
    let c = &spec.config;
    let d = SolverConfig::default();
    SolverConfig {
        lambda: c.lambda.unwrap_or(d.lambda),
        step_tolerance: c.step_tolerance.unwrap_or(d.step_tolerance),
        max_iterations: c.max_iterations.unwrap_or(d.max_iterations),
        alpha: c.alpha.or(d.alpha),
        alpha_growth: c.alpha_growth.unwrap_or(d.alpha_growth),
        fallback_max_bounces: c.fallback_max_bounces.unwrap_or(d.fallback_max_bounces),
        projection_tolerance: d.projection_tolerance,
    }
}

/// A spec with its cost, constraints and config built.
pub struct Problem {
    pub spec: ProblemSpec,
    pub cost: Box<dyn CostFunction>,
    pub constraints: Vec<ConstraintSet>,
    pub config: SolverConfig,
}

impl Problem {
    pub fn build(spec: ProblemSpec) -> Result<Self, CliError> {
        spec.validate()?;
        let cost = build_cost(&spec.cost)?;
        let constraints = spec.constraints.iter().map(build_constraint).collect::<liftpocs::Result<Vec<_>>>()?;
        let config = build_config(&spec);
        config.validate()?;
        Ok(Self { spec, cost, constraints, config })
    }

    pub fn solve(&self) -> Result<SolveResult, SolveError> {
        let f = self.cost.as_ref();
        let w0 = &self.spec.initial_point;
        match self.spec.solver {
            SolverKind::Epigraph => solve_pocs_epigraph(f, w0, &self.config),
            SolverKind::Hyperplane => solve_supporting_hyperplane(f, w0, &self.config),
            SolverKind::Constrained => solve_constrained(f, &self.constraints, w0, &self.config),
            SolverKind::Nonconvex => solve_nonconvex(f, w0, &self.config),
        }
    }

    /// Grid-oracle minimum over the spec's `[oracle]` box, restricted to the
    /// constraint sets when there are any.
    pub fn oracle(&self) -> Option<liftpocs::Result<(Vec<f64>, f64)>> {
        let o = self.spec.oracle.as_ref()?;
        let bounds = o.bounds(self.spec.cost.dim)?;
        let restricted = Restricted { inner: self.cost.as_ref(), constraints: &self.constraints };
        Some(grid_oracle(&restricted, &bounds, o.points_per_axis))
    }
}

/// The cost with every infeasible point treated as outside its domain.
struct Restricted<'a> {
    inner: &'a dyn CostFunction,
    constraints: &'a [ConstraintSet],
}

impl CostFunction for Restricted<'_> {
    fn name(&self) -> &'static str {
        self.inner.name()
    }
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn eval(&self, w: &[f64]) -> liftpocs::Result<f64> {
        for c in self.constraints {
            if !c.contains(w, ORACLE_FEASIBILITY_SLACK)? {
                return Err(liftpocs::Error::Domain { cost: "restricted", reason: "infeasible point" });
            }
        }
        self.inner.eval(w)
    }
    fn subgradient(&self, w: &[f64]) -> liftpocs::Result<Vec<f64>> {
        self.inner.subgradient(w)
    }
    fn is_convex(&self) -> bool {
        self.inner.is_convex()
    }
    fn lower_bound(&self) -> Option<f64> {
        self.inner.lower_bound()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleCheck {
    pub argmin: Vec<f64>,
    pub value: f64,
    pub gap: f64,
    pub tolerance: f64,
}

impl OracleCheck {
    pub fn passed(&self) -> bool {
        self.gap <= self.tolerance
    }
}

/// Everything `run` reports about one solve.
pub struct RunReport {
    pub name: String,
    pub solver: SolverKind,
    pub dim: usize,
    pub outcome: Result<SolveResult, SolveError>,
    pub oracle: Option<Result<OracleCheck, liftpocs::Error>>,
    pub elapsed: Duration,
}

impl RunReport {
    /// 0 converged; 2 stalled or capped; 1 for errors, domain errors and a
    /// failed oracle comparison.
    pub fn exit_code(&self) -> i32 {
        use liftpocs::Termination::*;
        if matches!(&self.oracle, Some(Err(_))) || matches!(&self.oracle, Some(Ok(c)) if !c.passed()) {
            return 1;
        }
        match &self.outcome {
            Ok(r) => match r.termination {
                Converged => 0,
                StalledLimitCycle | IterationCap => 2,
                DomainError => 1,
            },
            Err(_) => 1,
        }
    }

    pub fn trace(&self) -> &[liftpocs::IterationRecord] {
        match &self.outcome {
            Ok(r) => &r.trace,
            Err(e) => &e.trace,
        }
    }

    pub fn write_summary(&self, out: &mut dyn std::io::Write) -> std::io::Result<()> {
        writeln!(out, "problem: {}", self.name)?;
        writeln!(out, "solver: {}", self.solver)?;
        match &self.outcome {
            Ok(r) => {
                writeln!(out, "termination: {}", r.termination)?;
                writeln!(out, "iterations: {}", r.iterations())?;
                writeln!(out, "minimizer: [{}]", join(&r.minimizer))?;
                writeln!(out, "min_value: {:.16e}", r.min_value)?;
                writeln!(out, "alpha: {:.16e}", r.alpha)?;
                if !r.exhausted_fallbacks.is_empty() {
                    let idx: Vec<String> = r.exhausted_fallbacks.iter().map(|i| i.to_string()).collect();
                    writeln!(out, "exhausted_fallbacks: [{}]", idx.join(", "))?;
                }
            }
            Err(e) => {
                writeln!(out, "termination: error")?;
                writeln!(out, "error: {}", e.error)?;
                writeln!(out, "partial_trace_records: {}", e.trace.len())?;
            }
        }
        match &self.oracle {
            Some(Ok(c)) => {
                writeln!(out, "oracle_minimizer: [{}]", join(&c.argmin))?;
                writeln!(out, "oracle_value: {:.16e}", c.value)?;
                writeln!(out, "oracle_gap: {:.3e}", c.gap)?;
                writeln!(out, "oracle: {} (tolerance {:.1e})", if c.passed() { "pass" } else { "fail" }, c.tolerance)?;
            }
            Some(Err(e)) => writeln!(out, "oracle: error: {e}")?,
            None => {}
        }
        writeln!(out, "wall_time_s: {:.6}", self.elapsed.as_secs_f64())
    }
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.16e}")).collect::<Vec<_>>().join(", ")
}

/// Builds and solves `spec`; compares against the oracle when `with_oracle`.
pub fn execute(spec: ProblemSpec, with_oracle: bool) -> Result<RunReport, CliError> {
    let problem = Problem::build(spec)?;
    if with_oracle && problem.spec.oracle.is_none() {
        return Err(CliError::NoOracle(problem.spec.name.clone()));
    }
    let start = Instant::now();
    let outcome = problem.solve();
    let elapsed = start.elapsed();
    let oracle = if with_oracle {
        problem.oracle().map(|res| {
            res.map(|(argmin, value)| {
                let solver_value = outcome.as_ref().map(|r| r.min_value).unwrap_or(f64::NAN);
                let gap = (solver_value - value).abs();
                let gap = if gap.is_nan() { f64::INFINITY } else { gap };
                let tolerance = problem.spec.oracle.as_ref().map(|o| o.tolerance).unwrap_or_default();
                OracleCheck { argmin, value, gap, tolerance }
            })
        })
    } else {
        None
    };
    Ok(RunReport {
        name: problem.spec.name.clone(),
        solver: problem.spec.solver,
        dim: problem.spec.cost.dim,
        outcome,
        oracle,
        elapsed,
    })
}
