//! Brute-force references for certifying the solvers at desk scale.
//!
//! Nothing here calls into the projection or solver modules; the oracles
//! only evaluate costs and membership predicates.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg;
use crate::{CostFunction, Error, LiftedVector, Result};

/// Largest number of grid axes the oracles accept.
pub const MAX_GRID_DIM: usize = 4;

const GOLDEN_TOL: f64 = 1e-10;
const GOLDEN_MAX_ITER: usize = 200;
const REFINE_SWEEPS: usize = 3;
const SNAP_STEPS: usize = 80;
const ZOOM_MAX_ROUNDS: usize = 600;
const ZOOM_POINTS: usize = 5;

/// Golden-section search for a minimum of `g` on `[a, b]`.
///
/// Stops once the bracket is narrower than `tol` or after `max_iter`
/// reductions and returns the better interior probe with its value.
pub fn golden_section(mut g: impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64, max_iter: usize) -> (f64, f64) {
    let inv_phi = (libm::sqrt(5.0) - 1.0) / 2.0;
    let (mut a, mut b) = (a.min(b), a.max(b));
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut gc = g(c);
    let mut gd = g(d);
    for _ in 0..max_iter {
        if b - a <= tol {
            break;
        }
        if gc <= gd {
            b = d;
            d = c;
            gd = gc;
            c = b - inv_phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + inv_phi * (b - a);
            gd = g(d);
        }
    }
    if gc <= gd {
        (c, gc)
    } else {
        (d, gd)
    }
}

fn check_box(bounds: &[(f64, f64)], points_per_axis: usize) -> Result<()> {
    if bounds.is_empty() {
        return Err(Error::InvalidParameter("grid needs at least one axis".into()));
    }
    if bounds.len() > MAX_GRID_DIM {
        return Err(Error::InvalidParameter(format!(
            "grid oracle limited to {MAX_GRID_DIM} axes (got {}); use golden_section per coordinate or a random multistart",
            bounds.len()
        )));
    }
    if points_per_axis < 3 {
        return Err(Error::InvalidParameter("grid needs at least 3 points per axis".into()));
    }
    for &(lo, hi) in bounds {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidParameter(format!("invalid axis bounds [{lo}, {hi}]")));
        }
    }
    Ok(())
}

fn axis_point(lo: f64, hi: f64, k: usize, n: usize) -> f64 {
    lo + (hi - lo) * k as f64 / (n - 1) as f64
}

/// Visits every point of a tensor grid in linear-index order.
fn for_each_grid_point(bounds: &[(f64, f64)], n: usize, mut visit: impl FnMut(&[f64])) {
    let dim = bounds.len();
    let mut idx = vec![0usize; dim];
    let mut x: Vec<f64> = bounds.iter().map(|&(lo, _)| lo).collect();
    loop {
        visit(&x);
        let mut axis = dim;
        loop {
            if axis == 0 {
                return;
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < n {
                let (lo, hi) = bounds[axis];
                x[axis] = axis_point(lo, hi, idx[axis], n);
                break;
            }
            idx[axis] = 0;
            x[axis] = bounds[axis].0;
        }
    }
}

/// Exhaustive grid minimization of `f` over a box, followed by coordinate-
/// wise golden-section refinement around the best grid point.
///
/// Ties on the grid go to the lowest linear index. Points outside the cost's
/// domain are skipped. The returned value is `f` evaluated at the returned
/// point.
pub fn grid_oracle(f: &dyn CostFunction, bounds: &[(f64, f64)], points_per_axis: usize) -> Result<(Vec<f64>, f64)> {
    check_box(bounds, points_per_axis)?;
    crate::check_dim(f, &vec![0.0; bounds.len()])?;
    let mut best: Option<(Vec<f64>, f64)> = None;
    for_each_grid_point(bounds, points_per_axis, |x| {
        if let Ok(v) = f.eval(x) {
            if best.as_ref().is_none_or(|(_, b)| v < *b) {
                best = Some((x.to_vec(), v));
            }
        }
    });
    let (mut x, mut value) = best.ok_or_else(|| Error::Numerical("no grid point inside the cost's domain".into()))?;

    let spacing: Vec<f64> = bounds.iter().map(|&(lo, hi)| (hi - lo) / (points_per_axis - 1) as f64).collect();
    for _ in 0..REFINE_SWEEPS {
        for i in 0..x.len() {
            let (lo, hi) = bounds[i];
            let a = (x[i] - spacing[i]).max(lo);
            let b = (x[i] + spacing[i]).min(hi);
            let mut probe = x.clone();
            let (t, _) = golden_section(
                |t| {
                    probe[i] = t;
                    f.eval(&probe).unwrap_or(f64::INFINITY)
                },
                a,
                b,
                GOLDEN_TOL,
                GOLDEN_MAX_ITER,
            );
            let mut candidate = x.clone();
            candidate[i] = t;
            if let Ok(v) = f.eval(&candidate) {
                if v <= value {
                    x = candidate;
                    value = v;
                }
            }
        }
    }
    let value = f.eval(&x)?;
    Ok((x, value))
}

/// Nearest member of a convex set to `p`, found by grid search over a box of
/// the lifted space and refined by shrinking local grids.
///
/// `bounds` has one `(lo, hi)` pair per lifted coordinate (base first,
/// height last). Each refinement round first slides the current point
/// toward `p` along the segment between them, as far as membership allows,
/// then searches a small grid around it. A member `p` is returned as is.
pub fn projection_oracle(
    p: &LiftedVector,
    is_member: &dyn Fn(&LiftedVector) -> bool,
    bounds: &[(f64, f64)],
    points_per_axis: usize,
) -> Result<LiftedVector> {
    check_box(bounds, points_per_axis)?;
    if bounds.len() != p.dim() + 1 {
        return Err(Error::DimensionMismatch { expected: p.dim() + 1, found: bounds.len() });
    }
    if is_member(p) {
        return Ok(p.clone());
    }
    let target = p.components();
    let member = |x: &[f64]| LiftedVector::from_components(x).map(|q| is_member(&q)).unwrap_or(false);

    let mut best: Option<(Vec<f64>, f64)> = None;
    for_each_grid_point(bounds, points_per_axis, |x| {
        if member(x) {
            let d = linalg::distance(x, &target);
            if best.as_ref().is_none_or(|(_, b)| d < *b) {
                best = Some((x.to_vec(), d));
            }
        }
    });
    let (mut q, mut dist) = best.ok_or_else(|| Error::Numerical("no member of the set inside the box".into()))?;

    let mut half: Vec<f64> = bounds.iter().map(|&(lo, hi)| (hi - lo) / (points_per_axis - 1) as f64).collect();
    let floor = 1e-13 * (1.0 + linalg::norm(&target));
    let offsets: Vec<f64> = (0..ZOOM_POINTS).map(|k| -1.0 + 2.0 * k as f64 / (ZOOM_POINTS - 1) as f64).collect();
    for _ in 0..ZOOM_MAX_ROUNDS {
        // slide toward p: membership along [q, p] is an interval starting at q
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..SNAP_STEPS {
            let mid = 0.5 * (lo + hi);
            let x: Vec<f64> = q.iter().zip(&target).map(|(a, b)| a + mid * (b - a)).collect();
            if member(&x) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if lo > 0.0 {
            let x: Vec<f64> = q.iter().zip(&target).map(|(a, b)| a + lo * (b - a)).collect();
            let d = linalg::distance(&x, &target);
            if d < dist {
                q = x;
                dist = d;
            }
        }

        let mut moved_to_edge = false;
        let mut moved = false;
        let centre = q.clone();
        for_each_grid_point(&vec![(0.0, 1.0); centre.len()], ZOOM_POINTS, |unit| {
            let mut on_edge = false;
            let x: Vec<f64> = unit
                .iter()
                .enumerate()
                .map(|(i, u)| {
                    let k = libm::round(u * (ZOOM_POINTS - 1) as f64) as usize;
                    on_edge |= k == 0 || k == ZOOM_POINTS - 1;
                    centre[i] + offsets[k] * half[i]
                })
                .collect();
            if member(&x) {
                let d = linalg::distance(&x, &target);
                if d < dist {
                    q = x;
                    dist = d;
                    moved = true;
                    moved_to_edge = on_edge;
                }
            }
        });
        if !(moved && moved_to_edge) {
            for h in half.iter_mut() {
                *h *= 0.5;
            }
        }
        if half.iter().all(|&h| h < floor) {
            break;
        }
    }
    LiftedVector::from_components(&q)
}

/// Largest per-coordinate discrepancy between central differences and the
/// cost's reported subgradient at `w`.
///
/// The error of coordinate `i` is `|fd_i - g_i| / max(|g_i|, 1)`: relative
/// for large slopes, absolute below unit slope.
pub fn finite_difference_subgradient_check(f: &dyn CostFunction, w: &[f64], step: f64) -> Result<f64> {
    crate::check_dim(f, w)?;
    if !(step > 0.0) {
        return Err(Error::InvalidParameter(format!("difference step must be positive, got {step}")));
    }
    let g = f.subgradient(w)?;
    let mut worst = 0.0_f64;
    let mut probe = w.to_vec();
    for i in 0..w.len() {
        probe[i] = w[i] + step;
        let up = f.eval(&probe)?;
        probe[i] = w[i] - step;
        let down = f.eval(&probe)?;
        probe[i] = w[i];
        let fd = (up - down) / (2.0 * step);
        worst = worst.max((fd - g[i]).abs() / g[i].abs().max(1.0));
    }
    Ok(worst)
}
