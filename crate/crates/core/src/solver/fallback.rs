use alloc::vec::Vec;

use crate::projection::{project_hyperplane, supporting_hyperplane_at, Hyperplane};
use crate::{CostFunction, Error, LiftedVector, Result, SetLabel, SolverConfig};

/// Result of one two-hyperplane fallback episode.
#[derive(Debug, Clone, PartialEq)]
pub struct FallbackOutcome {
    /// Graph point `(w, f(w))` to continue from: the first bounce whose cost
    /// beats the previous anchor, or the previous anchor itself when none
    /// did.
    pub point: LiftedVector,
    /// Whether a strictly lower cost than the previous anchor was found.
    pub improved: bool,
    /// Hyperplane projections performed.
    pub bounces: usize,
    /// Every intermediate point, in order, with its label and cost.
    pub records: Vec<(LiftedVector, SetLabel, f64)>,
}

/// Plane used at `w`: the supporting plane from the reported subgradient, or
/// for a convex cost without one, the horizontal plane through the graph
/// point.
pub(crate) fn plane_at(f: &dyn CostFunction, w: &[f64]) -> Result<Hyperplane> {
    match supporting_hyperplane_at(f, w) {
        Err(Error::NotDifferentiable { .. }) if f.is_convex() => {
            Ok(Hyperplane::horizontal(LiftedVector::new(w.to_vec(), f.eval(w)?)?))
        }
        other => other,
    }
}

/// Escape from a non-descent step.
///
/// `anchor_prev` is the last accepted graph point and `anchor_bad` the graph
/// point whose cost failed to go below it. Starting from `anchor_bad`
/// dropped to the level set, the point is projected alternately onto the
/// planes at `anchor_prev` and `anchor_bad` (relaxation `cfg.lambda`). After
/// each projection its base is lifted to the graph; the episode ends at the
/// first cost strictly below `f(anchor_prev)` or after
/// `cfg.fallback_max_bounces` projections. Identical planes end it at once.
pub fn fallback_two_hyperplanes(
    f: &dyn CostFunction,
    anchor_prev: &LiftedVector,
    anchor_bad: &LiftedVector,
    cfg: &SolverConfig,
) -> Result<FallbackOutcome> {
    cfg.validate()?;
    fallback_with_alpha(f, anchor_prev, anchor_bad, cfg, cfg.resolve_alpha(f))
}

pub(crate) fn fallback_with_alpha(
    f: &dyn CostFunction,
    anchor_prev: &LiftedVector,
    anchor_bad: &LiftedVector,
    cfg: &SolverConfig,
    alpha: f64,
) -> Result<FallbackOutcome> {
    let target = anchor_prev.height();
    let plane_prev = plane_at(f, anchor_prev.base())?;
    let plane_bad = plane_at(f, anchor_bad.base())?;
    let unchanged = FallbackOutcome { point: anchor_prev.clone(), improved: false, bounces: 0, records: Vec::new() };
    if plane_prev.normal() == plane_bad.normal() && plane_prev.residual(anchor_bad)? == 0.0 {
        return Ok(unchanged);
    }

    let planes = [&plane_prev, &plane_bad];
    let mut current = anchor_bad.with_height(alpha)?;
    let mut records = Vec::new();
    for bounce in 0..cfg.fallback_max_bounces {
        current = project_hyperplane(&current, planes[bounce % 2], cfg.lambda)?;
        let cost = match f.eval(current.base()) {
            Ok(v) => v,
            // Left the domain: give up on this episode.
            Err(Error::Domain { .. }) => {
                return Ok(FallbackOutcome { bounces: bounce + 1, records, ..unchanged });
            }
            Err(e) => return Err(e),
        };
        records.push((current.clone(), SetLabel::Hyperplane, cost));
        if cost < target {
            let point = current.with_height(cost)?;
            records.push((point.clone(), SetLabel::Epigraph, cost));
            return Ok(FallbackOutcome { point, improved: true, bounces: bounce + 1, records });
        }
    }
    Ok(FallbackOutcome { bounces: cfg.fallback_max_bounces, records, ..unchanged })
}

/// Runs `bounces` alternating relaxed projections of `start` onto `first`
/// and `second` (in that order) and returns every iterate.
pub fn bounce_between(
    start: &LiftedVector,
    first: &Hyperplane,
    second: &Hyperplane,
    lambda: f64,
    bounces: usize,
) -> Result<Vec<LiftedVector>> {
    let mut out = Vec::with_capacity(bounces);
    let mut current = start.clone();
    for k in 0..bounces {
        current = project_hyperplane(&current, if k % 2 == 0 { first } else { second }, lambda)?;
        out.push(current.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::costs::{L2Squared, L1};
    use alloc::vec;

    fn graph(f: &dyn CostFunction, w: f64) -> LiftedVector {
        LiftedVector::new(vec![w], f.eval(&[w]).unwrap()).unwrap()
    }

    /// Intersection of the tangent lines y = f(a) + f'(a)(w - a) at two anchors.
    fn tangent_intersection(fa: f64, da: f64, a: f64, fb: f64, db: f64, b: f64) -> (f64, f64) {
        let w = (fb - db * b - fa + da * a) / (da - db);
        (w, fa + da * (w - a))
    }

    #[test]
    fn parabola_tangents_meet_at_three_and_a_half() {
        let f = L2Squared::new(vec![3.0]).unwrap();
        let (w, y) = tangent_intersection(9.0, -6.0, 0.0, 16.0, 8.0, 7.0);
        assert!((w - 3.5).abs() < 1e-12 && (y + 12.0).abs() < 1e-12);
        assert!(f.eval(&[w]).unwrap() < 9.0);

        let p0 = plane_at(&f, &[0.0]).unwrap();
        let p7 = plane_at(&f, &[7.0]).unwrap();
        let start = LiftedVector::new(vec![7.0], 0.0).unwrap();
        let path = bounce_between(&start, &p0, &p7, 1.0, 2000).unwrap();
        let last = path.last().unwrap();
        assert!((last.base()[0] - w).abs() < 1e-9 && (last.height() - y).abs() < 1e-9, "{last:?}");

        let cfg = SolverConfig::default().with_alpha(0.0);
        let out = fallback_two_hyperplanes(&f, &graph(&f, 0.0), &graph(&f, 7.0), &cfg).unwrap();
        assert!(out.improved);
        assert!(out.point.height() < 9.0);
        assert_eq!(out.point.height(), f.eval(out.point.base()).unwrap());
    }

    #[test]
    fn l1_support_lines_meet_at_origin() {
        let f = L1::new(1).unwrap();
        let (w, y) = tangent_intersection(2.0, -1.0, -2.0, 3.0, 1.0, 3.0);
        assert_eq!((w, y), (0.0, 0.0));
        let pm = plane_at(&f, &[-2.0]).unwrap();
        let pp = plane_at(&f, &[3.0]).unwrap();
        let path = bounce_between(&LiftedVector::new(vec![3.0], 0.0).unwrap(), &pm, &pp, 1.0, 200).unwrap();
        let last = path.last().unwrap();
        assert!(last.base()[0].abs() < 1e-12 && last.height().abs() < 1e-12);

        let out = fallback_two_hyperplanes(&f, &graph(&f, -2.0), &graph(&f, 3.0), &SolverConfig::default()).unwrap();
        assert!(out.improved && out.point.height() < 2.0);
    }

    #[test]
    fn identical_anchors_exit_immediately() {
        let f = L2Squared::new(vec![3.0]).unwrap();
        let a = graph(&f, 5.0);
        let out = fallback_two_hyperplanes(&f, &a, &a, &SolverConfig::default()).unwrap();
        assert!(!out.improved);
        assert_eq!(out.bounces, 0);
        assert_eq!(out.point, a);
    }
}
