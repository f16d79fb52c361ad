use alloc::format;
use alloc::vec::Vec;

use crate::linalg;
use crate::{CostFunction, CostShape, EpigraphSet, Error, LiftedSet, LiftedVector, Result};

/// Cap on inner iterations of the epigraph solve.
const MAX_INNER_STEPS: usize = 10_000;

/// Orthogonal projection onto the epigraph of a convex cost.
///
/// Points already in the set are returned unchanged. Affine costs and the
/// Euclidean norm use their closed forms (a halfspace and a second-order
/// cone). Everything else goes through the stationarity system of the
/// projection: the result is `(u, f(u))` with `u = prox_{mu f}(w)` and
/// `f(u) = y + mu`, and the scalar multiplier `mu >= 0` is found by
/// bisection. `tol` is the relative width at which the bisection stops.
/// For a cost with a restricted domain, a point outside it and high enough
/// projects onto the domain boundary with its height kept.
pub fn project_epigraph(p: &LiftedVector, set: &EpigraphSet<'_>, tol: f64) -> Result<LiftedVector> {
    let cost = set.cost;
    if !cost.is_convex() {
        return Err(Error::Unsupported("epigraph projection needs a convex cost"));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    if set.contains(p)? {
        return Ok(p.clone());
    }
    match cost.shape() {
        CostShape::Affine { slope, offset } => project_halfspace(p, slope, offset),
        CostShape::EuclideanNorm { center } => project_cone(p, center),
        CostShape::General => project_by_multiplier(p, cost, tol),
    }
}

/// `{(w, y) : a . w - y + b <= 0}`.
fn project_halfspace(p: &LiftedVector, slope: &[f64], offset: f64) -> Result<LiftedVector> {
    let excess = linalg::dot(slope, p.base()) - p.height() + offset;
    let scale = excess / (linalg::norm_sq(slope) + 1.0);
    let base: Vec<f64> = p.base().iter().zip(slope).map(|(w, a)| w - scale * a).collect();
    LiftedVector::new(base, p.height() + scale)
}

/// `{(w, y) : ||w - c|| <= y}`.
fn project_cone(p: &LiftedVector, center: &[f64]) -> Result<LiftedVector> {
    let x = linalg::sub(p.base(), center);
    let r = linalg::norm(&x);
    let t = p.height();
    if r <= -t {
        return LiftedVector::new(center.to_vec(), 0.0);
    }
    let scale = (1.0 + t / r) / 2.0;
    let base = x.iter().zip(center).map(|(xi, c)| c + scale * xi).collect();
    LiftedVector::new(base, (r + t) / 2.0)
}

fn project_by_multiplier(p: &LiftedVector, cost: &dyn CostFunction, tol: f64) -> Result<LiftedVector> {
    let x = p.base();
    let h = p.height();
    // mu = 0: the nearest point of the domain, if it lies under the height
    // already (p outside the domain, above the graph's boundary).
    let u0 = prox_step(cost, x, 0.0, tol)?;
    if let Ok(value) = cost.eval(&u0) {
        if value <= h {
            return LiftedVector::new(u0, h);
        }
    }
    // phi(mu) = f(prox_{mu f}(x)) - h - mu is strictly decreasing and
    // positive at mu = 0 because p lies below the graph.
    let gap = |mu: f64| -> Result<(f64, Vec<f64>, f64)> {
        let u = prox_step(cost, x, mu, tol)?;
        let value = cost.eval(&u)?;
        Ok((value - h - mu, u, value))
    };

    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut steps = 0;
    let mut best = loop {
        let (phi, u, value) = gap(hi)?;
        if phi <= 0.0 {
            break (u, value);
        }
        lo = hi;
        hi *= 2.0;
        steps += 1;
        if steps > MAX_INNER_STEPS || !hi.is_finite() {
            return Err(Error::Numerical("could not bracket the epigraph multiplier".into()));
        }
    };

    while hi - lo > tol * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let (phi, u, value) = gap(mid)?;
        if phi > 0.0 {
            lo = mid;
        } else {
            hi = mid;
            best = (u, value);
        }
        steps += 1;
        if steps > MAX_INNER_STEPS {
            return Err(Error::Numerical(format!("epigraph bisection exceeded {MAX_INNER_STEPS} steps")));
        }
    }
    LiftedVector::new(best.0, best.1)
}

/// `prox_{step f}(x)`: the cost's own map when it has one, otherwise
/// damped fixed-point iteration on `u = x - step g(u)` with backtracking on
/// the proximal objective.
fn prox_step(cost: &dyn CostFunction, x: &[f64], step: f64, tol: f64) -> Result<Vec<f64>> {
    if let Some(u) = cost.prox(x, step) {
        return u;
    }
    if step <= 0.0 {
        return Ok(x.to_vec());
    }
    let objective = |u: &[f64]| -> Result<f64> {
        let d = linalg::distance(u, x);
        Ok(cost.eval(u)? + d * d / (2.0 * step))
    };
    let mut u = x.to_vec();
    let mut current = objective(&u)?;
    let mut damping = 1.0;
    for _ in 0..MAX_INNER_STEPS {
        let g = cost.subgradient(&u)?;
        let target: Vec<f64> = x.iter().zip(&g).map(|(xi, gi)| xi - step * gi).collect();
        let mut accepted = false;
        while damping > 1e-12 {
            let candidate: Vec<f64> =
                u.iter().zip(&target).map(|(ui, ti)| ui + damping * (ti - ui)).collect();
            if let Ok(value) = objective(&candidate) {
                if value <= current {
                    let moved = linalg::distance(&candidate, &u);
                    u = candidate;
                    current = value;
                    accepted = true;
                    if moved <= tol * (1.0 + linalg::norm(&u)) {
                        return Ok(u);
                    }
                    break;
                }
            }
            damping *= 0.5;
        }
        if !accepted {
            return Ok(u);
        }
        damping = (damping * 2.0).min(1.0);
    }
    Err(Error::Numerical(format!("proximal fixed point did not settle in {MAX_INNER_STEPS} steps")))
}
