use alloc::vec::Vec;

use super::fallback::{fallback_with_alpha, plane_at};
use super::{alpha_violation, check_start, SolveError, Tracer, NONCONVEX_STALL_CYCLES};
use crate::linalg;
use crate::projection::{project_hyperplane, ConstraintSet};
use crate::{CostFunction, Error, LiftedVector, SetLabel, SolveResult, SolverConfig, Termination};

#[derive(Clone, Copy)]
enum Mode<'c> {
    Convex,
    NonConvex,
    Constrained(&'c [ConstraintSet]),
}

/// Supporting-hyperplane POCS.
///
/// One cycle, from the accepted graph point `(w, f(w))`:
///
/// 1. drop to the level set: `(w, alpha)`;
/// 2. project that point onto the supporting plane at `(w, f(w))` with
///    relaxation `cfg.lambda`, giving a new base `w'`;
/// 3. lift `w'` to the graph.
///
/// If `f(w')` is not strictly below `f(w)` a two-hyperplane fallback runs
/// between the planes at `w` and `w'`; when it finds nothing lower and
/// `f(w')` matches `f(w)` up to a few ulps, the run continues from `w'`. The run stops when the base moves
/// less than `step_tolerance` in a cycle (converged), when two base points
/// keep alternating or a fallback finds nothing lower (stalled), or when the
/// step budget is spent.
///
/// Where a convex cost has no subgradient the horizontal plane through the
/// graph point is used instead.
pub fn solve_supporting_hyperplane(
    f: &dyn CostFunction,
    w0: &[f64],
    cfg: &SolverConfig,
) -> Result<SolveResult, SolveError> {
    run(f, w0, cfg, Mode::Convex)
}

/// The supporting-hyperplane schedule for costs that need not be convex.
///
/// Tangent planes replace supporting planes and no support inequality is
/// assumed. Besides the usual stopping rules, the run also stops (as
/// stalled) once the cost has failed to improve on its best value for
/// [`NONCONVEX_STALL_CYCLES`] consecutive cycles. A point without a
/// subgradient ends the run with [`Termination::DomainError`].
pub fn solve_nonconvex(f: &dyn CostFunction, w0: &[f64], cfg: &SolverConfig) -> Result<SolveResult, SolveError> {
    run(f, w0, cfg, Mode::NonConvex)
}

/// Supporting-hyperplane cycles interleaved with projections of the base
/// onto each constraint set in turn.
///
/// There is no descent check, since reaching the feasible set may raise the
/// cost. Instead, every cycle whose cost does not drop raises `alpha` by
/// `cfg.alpha_growth`, enlarging the level set until it meets the epigraph
/// over the feasible region. The returned minimizer is a cycle-end base and
/// therefore lies in the last constraint set; with several constraints it
/// lies in all of them up to the convergence tolerance.
pub fn solve_constrained(
    f: &dyn CostFunction,
    constraints: &[ConstraintSet],
    w0: &[f64],
    cfg: &SolverConfig,
) -> Result<SolveResult, SolveError> {
    if constraints.is_empty() {
        return Err(Error::InvalidParameter("constrained solve needs at least one constraint set".into()).into());
    }
    for c in constraints {
        if c.dim() != f.dim() {
            return Err(Error::DimensionMismatch { expected: f.dim(), found: c.dim() }.into());
        }
    }
    run(f, w0, cfg, Mode::Constrained(constraints))
}

/// Cost rise, in ulps of the current cost, still read as a tie.
const TIE_ULPS: f64 = 4.0;

/// Slack used when deciding whether a base counts as feasible.
const FEASIBILITY_SLACK: f64 = 1e-8;

struct Best {
    point: Option<LiftedVector>,
}

impl Best {
    fn offer(&mut self, p: &LiftedVector) {
        if self.point.as_ref().is_none_or(|b| p.height() < b.height()) {
            self.point = Some(p.clone());
        }
    }
}

fn feasible(constraints: &[ConstraintSet], w: &[f64]) -> bool {
    constraints.iter().all(|c| c.contains(w, FEASIBILITY_SLACK).unwrap_or(false))
}

fn run(f: &dyn CostFunction, w0: &[f64], cfg: &SolverConfig, mode: Mode<'_>) -> Result<SolveResult, SolveError> {
    cfg.validate()?;
    check_start(f, w0)?;
    if matches!(mode, Mode::Convex | Mode::Constrained(_)) && !f.is_convex() {
        return Err(Error::Unsupported("supporting hyperplanes need a convex cost; use the non-convex solver").into());
    }
    let constraints: &[ConstraintSet] = match mode {
        Mode::Constrained(c) => c,
        _ => &[],
    };
    let initial_alpha = cfg.resolve_alpha(f);
    let mut alpha = initial_alpha;

    let f0 = f.eval(w0)?;
    if f0 < initial_alpha {
        return Err(alpha_violation(f0, initial_alpha).into());
    }
    let mut graph = LiftedVector::new(w0.to_vec(), f0)?;
    let mut tracer = Tracer::new(cfg.max_iterations, graph.clone(), f0);
    let mut best = Best { point: None };
    if feasible(constraints, w0) {
        best.offer(&graph);
    }
    let mut exhausted_fallbacks = Vec::new();
    let mut recent_bases: Vec<Vec<f64>> = Vec::new();
    let mut stalled_cycles = 0usize;

    let termination = 'outer: loop {
        let cost = graph.height();
        let low = graph.with_height(alpha).map_err(|e| tracer.fail_clone(e))?;
        if !tracer.push(low.clone(), SetLabel::LevelSet, cost) {
            break Termination::IterationCap;
        }

        let plane = match plane_at(f, graph.base()) {
            Ok(p) => p,
            Err(Error::NotDifferentiable { .. } | Error::Domain { .. }) => break Termination::DomainError,
            Err(e) => return Err(tracer.fail(e)),
        };
        let projected = match project_hyperplane(&low, &plane, cfg.lambda) {
            Ok(p) => p,
            Err(e) => return Err(tracer.fail(e)),
        };
        let projected_cost = match f.eval(projected.base()) {
            Ok(v) => v,
            Err(Error::Domain { .. }) => break Termination::DomainError,
            Err(e) => return Err(tracer.fail(e)),
        };
        if !tracer.push(projected.clone(), SetLabel::Hyperplane, projected_cost) {
            break Termination::IterationCap;
        }

        let mut base = projected.base().to_vec();
        for (k, c) in constraints.iter().enumerate() {
            base = c.project(&base).map_err(|e| tracer.fail_clone(e))?;
            let value = match f.eval(&base) {
                Ok(v) => v,
                Err(Error::Domain { .. }) => break 'outer Termination::DomainError,
                Err(e) => return Err(tracer.fail(e)),
            };
            let point = LiftedVector::new(base.clone(), projected.height()).map_err(|e| tracer.fail_clone(e))?;
            if !tracer.push(point, SetLabel::Constraint(k + 1), value) {
                break 'outer Termination::IterationCap;
            }
        }

        let next_cost = match f.eval(&base) {
            Ok(v) => v,
            Err(Error::Domain { .. }) => break Termination::DomainError,
            Err(e) => return Err(tracer.fail(e)),
        };
        if next_cost < initial_alpha {
            return Err(tracer.fail(alpha_violation(next_cost, initial_alpha)));
        }
        let mut next = LiftedVector::new(base, next_cost).map_err(|e| tracer.fail_clone(e))?;
        if !tracer.push(next.clone(), SetLabel::Epigraph, next_cost) {
            break Termination::IterationCap;
        }

        let movement = linalg::distance(next.base(), graph.base());
        if movement < cfg.step_tolerance {
            graph = next;
            break Termination::Converged;
        }

        match mode {
            Mode::Constrained(_) => {
                if next_cost >= cost {
                    alpha += cfg.alpha_growth;
                }
            }
            Mode::Convex | Mode::NonConvex => {
                if next_cost >= cost {
                    let outcome = match fallback_with_alpha(f, &graph, &next, cfg, alpha) {
                        Ok(o) => o,
                        Err(Error::NotDifferentiable { .. } | Error::Domain { .. }) => {
                            break Termination::DomainError
                        }
                        Err(e) => return Err(tracer.fail(e)),
                    };
                    for (point, label, value) in outcome.records {
                        if !tracer.push(point, label, value) {
                            break 'outer Termination::IterationCap;
                        }
                    }
                    if outcome.improved {
                        next = outcome.point;
                    } else {
                        exhausted_fallbacks.push(tracer.len() - 1);
                        // A rise within rounding of the cost is not an ascent.
                        if next_cost > cost + TIE_ULPS * f64::EPSILON * cost.abs() {
                            break Termination::StalledLimitCycle;
                        }
                    }
                }
            }
        }

        let improved_best = best.point.as_ref().is_none_or(|b| next.height() < b.height());
        if feasible(constraints, next.base()) {
            best.offer(&next);
        }
        graph = next;

        recent_bases.push(graph.base().to_vec());
        if recent_bases.len() > 4 {
            recent_bases.remove(0);
        }
        if is_two_cycle(&recent_bases, cfg.step_tolerance) {
            break Termination::StalledLimitCycle;
        }

        if let Mode::NonConvex = mode {
            stalled_cycles = if improved_best { 0 } else { stalled_cycles + 1 };
            if stalled_cycles >= NONCONVEX_STALL_CYCLES {
                break Termination::StalledLimitCycle;
            }
        }
        if tracer.exhausted() {
            break Termination::IterationCap;
        }
    };

    let chosen = match termination {
        Termination::Converged => graph,
        _ => best.point.unwrap_or(graph),
    };
    let minimizer = chosen.base().to_vec();
    let min_value = match f.eval(&minimizer) {
        Ok(v) => v,
        Err(e) => return Err(tracer.fail(e)),
    };
    Ok(SolveResult {
        minimizer,
        min_value,
        termination,
        alpha,
        trace: tracer.into_records(),
        exhausted_fallbacks,
    })
}

/// Two distinct base points alternating over the last four cycles.
fn is_two_cycle(bases: &[Vec<f64>], tol: f64) -> bool {
    if bases.len() < 4 {
        return false;
    }
    let d = |i: usize, j: usize| linalg::distance(&bases[i], &bases[j]);
    d(3, 1) < tol && d(2, 0) < tol && d(3, 2) >= tol
}
