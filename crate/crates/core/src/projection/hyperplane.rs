use alloc::format;
use alloc::vec::Vec;

use crate::linalg;
use crate::{check_dim, CostFunction, Error, LiftedVector, Result};

/// The hyperplane `{p : normal . (p - anchor) = 0}` of the lifted space.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane {
    normal: Vec<f64>,
    anchor: LiftedVector,
}

impl Hyperplane {
    /// `normal` has `N + 1` components, is finite and nonzero.
    pub fn new(normal: Vec<f64>, anchor: LiftedVector) -> Result<Self> {
        if normal.len() != anchor.dim() + 1 {
            return Err(Error::DimensionMismatch { expected: anchor.dim() + 1, found: normal.len() });
        }
        if !linalg::all_finite(&normal) {
            return Err(Error::NonFinite("hyperplane normal"));
        }
        if linalg::norm_sq(&normal) == 0.0 {
            return Err(Error::InvalidParameter("hyperplane normal is zero".into()));
        }
        Ok(Self { normal, anchor })
    }

    /// The plane `y = anchor.height` with normal `(0, ..., 0, -1)`.
    pub fn horizontal(anchor: LiftedVector) -> Self {
        let mut normal = alloc::vec![0.0; anchor.dim() + 1];
        normal[anchor.dim()] = -1.0;
        Self { normal, anchor }
    }

    /// Normal vector `v`.
    pub fn normal(&self) -> &[f64] {
        &self.normal
    }

    /// A point on the plane.
    pub fn anchor(&self) -> &LiftedVector {
        &self.anchor
    }

    /// Signed residual `v . (p - anchor)`.
    pub fn residual(&self, p: &LiftedVector) -> Result<f64> {
        if p.dim() != self.anchor.dim() {
            return Err(Error::DimensionMismatch { expected: self.anchor.dim(), found: p.dim() });
        }
        let n = self.anchor.dim();
        let base: f64 = (0..n).map(|i| self.normal[i] * (p.base()[i] - self.anchor.base()[i])).sum();
        Ok(base + self.normal[n] * (p.height() - self.anchor.height()))
    }

    /// Height of the plane above `w`, when the plane is not vertical.
    pub fn height_at(&self, w: &[f64]) -> Option<f64> {
        let n = self.anchor.dim();
        let vy = self.normal[n];
        if vy == 0.0 || w.len() != n {
            return None;
        }
        let dot: f64 = (0..n).map(|i| self.normal[i] * (w[i] - self.anchor.base()[i])).sum();
        Some(self.anchor.height() - dot / vy)
    }
}

/// Relaxed projection `p - lambda (v . (p - a) / ||v||^2) v`.
///
/// `lambda = 1` lands on the plane; `lambda` in `(0, 2)` moves along the same
/// normal line, under- or over-shooting.
pub fn project_hyperplane(p: &LiftedVector, plane: &Hyperplane, lambda: f64) -> Result<LiftedVector> {
    if !(lambda > 0.0 && lambda < 2.0) {
        return Err(Error::InvalidParameter(format!("relaxation must lie in (0, 2), got {lambda}")));
    }
    let r = plane.residual(p)?;
    let step = lambda * r / linalg::norm_sq(&plane.normal);
    let mut components = p.components();
    for (c, v) in components.iter_mut().zip(&plane.normal) {
        *c -= step * v;
    }
    LiftedVector::from_components(&components)
}

/// The supporting plane of the epigraph at `(w, f(w))`, with normal
/// `(g, -1)` for the subgradient `g` that `f` reports.
///
/// For convex `f` the epigraph lies in `{p : v . (p - anchor) <= 0}`.
pub fn supporting_hyperplane_at(f: &dyn CostFunction, w: &[f64]) -> Result<Hyperplane> {
    check_dim(f, w)?;
    let value = f.eval(w)?;
    let mut normal = f.subgradient(w)?;
    normal.push(-1.0);
    Hyperplane::new(normal, LiftedVector::new(w.to_vec(), value)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::costs::{L2Squared, L1};
    use alloc::vec;

    fn lv(base: &[f64], h: f64) -> LiftedVector {
        LiftedVector::new(base.to_vec(), h).unwrap()
    }

    #[test]
    fn projects_onto_horizontal_axis() {
        let plane = Hyperplane::new(vec![0.0, 1.0], lv(&[0.0], 0.0)).unwrap();
        assert_eq!(project_hyperplane(&lv(&[3.0], 5.0), &plane, 1.0).unwrap(), lv(&[3.0], 0.0));
    }

    #[test]
    fn projects_onto_diagonal_plane() {
        // min ||(2,0) - q|| s.t. q_w + q_y = 0: Lagrange gives q = (2,0) - (2/2)(1,1).
        let plane = Hyperplane::new(vec![1.0, 1.0], lv(&[0.0], 0.0)).unwrap();
        assert_eq!(project_hyperplane(&lv(&[2.0], 0.0), &plane, 1.0).unwrap(), lv(&[1.0], -1.0));
    }

    #[test]
    fn points_on_the_plane_stay_put() {
        let plane = Hyperplane::new(vec![2.0, -1.0], lv(&[1.0], 1.0)).unwrap();
        let on = lv(&[3.0], 5.0);
        assert_eq!(plane.residual(&on).unwrap(), 0.0);
        assert_eq!(project_hyperplane(&on, &plane, 1.0).unwrap(), on);
    }

    #[test]
    fn rejects_zero_normal_and_bad_lambda() {
        assert!(Hyperplane::new(vec![0.0, 0.0], lv(&[0.0], 0.0)).is_err());
        assert!(Hyperplane::new(vec![1.0], lv(&[0.0], 0.0)).is_err());
        let plane = Hyperplane::horizontal(lv(&[0.0], 0.0));
        assert!(project_hyperplane(&lv(&[0.0], 1.0), &plane, 2.0).is_err());
        assert!(project_hyperplane(&lv(&[0.0], 1.0), &plane, 0.0).is_err());
    }

    #[test]
    fn tangent_of_parabola() {
        let f = L2Squared::origin(1).unwrap();
        let plane = supporting_hyperplane_at(&f, &[1.0]).unwrap();
        assert_eq!(plane.anchor(), &lv(&[1.0], 1.0));
        assert_eq!(plane.normal(), &[2.0, -1.0]);
        // support inequality f(u) >= 2u - 1 on a grid
        for i in 0..=2000 {
            let u = -10.0 + i as f64 * 0.01;
            assert!(u * u - plane.height_at(&[u]).unwrap() >= -1e-12);
        }
    }

    #[test]
    fn l1_kink_gives_horizontal_plane() {
        let f = L1::new(1).unwrap();
        let plane = supporting_hyperplane_at(&f, &[0.0]).unwrap();
        assert_eq!(plane.anchor(), &lv(&[0.0], 0.0));
        assert_eq!(plane.normal(), &[0.0, -1.0]);
    }

    #[test]
    fn relaxation_is_affine_in_lambda() {
        let plane = Hyperplane::new(vec![0.3, -1.0, 2.0], lv(&[1.0, -1.0], 0.5)).unwrap();
        let p = lv(&[4.0, 2.0], -3.0);
        let half = project_hyperplane(&p, &plane, 0.5).unwrap().components();
        let one = project_hyperplane(&p, &plane, 1.0).unwrap().components();
        let over = project_hyperplane(&p, &plane, 1.5).unwrap().components();
        for i in 0..3 {
            assert!(((half[i] + over[i]) / 2.0 - one[i]).abs() < 1e-12);
        }
    }
}
