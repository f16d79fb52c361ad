use super::{alpha_violation, check_start, SolveError, Tracer};
use crate::linalg;
use crate::projection::{project_epigraph, project_level_set};
use crate::{
    CostFunction, EpigraphSet, Error, LevelSet, LiftedVector, SetLabel, SolveResult, SolverConfig, Termination,
};

/// Alternating projections between the level set `{y <= alpha}` and the
/// epigraph of a convex `f`, starting from `(w0, f(w0))`.
///
/// Each cycle is one level-set projection followed by one epigraph
/// projection. The run converges once the base moves less than
/// `step_tolerance` over a cycle; the iterates then alternate between
/// `(w*, alpha)` and `(w*, f(w*))`. The minimizer is the base of the last
/// epigraph-side iterate.
pub fn solve_pocs_epigraph(
    f: &dyn CostFunction,
    w0: &[f64],
    cfg: &SolverConfig,
) -> Result<SolveResult, SolveError> {
    cfg.validate()?;
    check_start(f, w0)?;
    if !f.is_convex() {
        return Err(Error::Unsupported("epigraph POCS needs a convex cost; use the hyperplane solvers").into());
    }
    let alpha = cfg.resolve_alpha(f);
    let level = LevelSet::new(alpha)?;
    let epigraph = EpigraphSet::new(f);

    let f0 = f.eval(w0)?;
    if f0 < alpha {
        return Err(alpha_violation(f0, alpha).into());
    }
    let mut current = LiftedVector::new(w0.to_vec(), f0)?;
    let mut current_cost = f0;
    let mut tracer = Tracer::new(cfg.max_iterations, current.clone(), f0);

    let termination = loop {
        let low = project_level_set(&current, &level);
        if !tracer.push(low.clone(), SetLabel::LevelSet, current_cost) {
            break Termination::IterationCap;
        }
        if tracer.exhausted() {
            break Termination::IterationCap;
        }
        let next = match project_epigraph(&low, &epigraph, cfg.projection_tolerance) {
            Ok(q) => q,
            Err(Error::Domain { .. }) => break Termination::DomainError,
            Err(e) => return Err(tracer.fail(e)),
        };
        let next_cost = match f.eval(next.base()) {
            Ok(v) => v,
            Err(Error::Domain { .. }) => break Termination::DomainError,
            Err(e) => return Err(tracer.fail(e)),
        };
        if next_cost < alpha {
            return Err(tracer.fail(alpha_violation(next_cost, alpha)));
        }
        let movement = linalg::distance(next.base(), current.base());
        tracer.push(next.clone(), SetLabel::Epigraph, next_cost);
        current = next;
        current_cost = next_cost;
        if movement < cfg.step_tolerance {
            break Termination::Converged;
        }
    };

    let minimizer = current.base().to_vec();
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
        exhausted_fallbacks: alloc::vec::Vec::new(),
    })
}
