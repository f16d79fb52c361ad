use alloc::format;
use alloc::vec::Vec;

use crate::linalg;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Box { lower: Vec<f64>, upper: Vec<f64> },
    Ball { center: Vec<f64>, radius: f64 },
    Halfspace { normal: Vec<f64>, offset: f64 },
    Hyperplane { normal: Vec<f64>, offset: f64 },
}

/// A closed convex constraint on the base vector with a closed-form
/// projection.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintSet(Kind);

impl ConstraintSet {
    /// `lower <= w <= upper` componentwise.
    pub fn boxed(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch { expected: lower.len(), found: upper.len() });
        }
        if lower.is_empty() {
            return Err(Error::InvalidParameter("box needs at least one coordinate".into()));
        }
        if lower.iter().chain(&upper).any(|v| v.is_nan()) {
            return Err(Error::NonFinite("box bounds"));
        }
        if lower.iter().zip(&upper).any(|(l, u)| l > u) {
            return Err(Error::InvalidParameter("box is empty (lower > upper)".into()));
        }
        Ok(Self(Kind::Box { lower, upper }))
    }

    /// `||w - center|| <= radius`, `radius > 0`.
    pub fn ball(center: Vec<f64>, radius: f64) -> Result<Self> {
        if center.is_empty() {
            return Err(Error::InvalidParameter("ball needs at least one coordinate".into()));
        }
        if !linalg::all_finite(&center) {
            return Err(Error::NonFinite("ball center"));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter(format!("ball radius must be positive, got {radius}")));
        }
        Ok(Self(Kind::Ball { center, radius }))
    }

    /// `normal . w <= offset`.
    pub fn halfspace(normal: Vec<f64>, offset: f64) -> Result<Self> {
        check_normal(&normal, offset)?;
        Ok(Self(Kind::Halfspace { normal, offset }))
    }

    /// `normal . w = offset`.
    pub fn hyperplane(normal: Vec<f64>, offset: f64) -> Result<Self> {
        check_normal(&normal, offset)?;
        Ok(Self(Kind::Hyperplane { normal, offset }))
    }

    /// Name of the constraint family.
    pub fn kind(&self) -> &'static str {
        match self.0 {
            Kind::Box { .. } => "box",
            Kind::Ball { .. } => "ball",
            Kind::Halfspace { .. } => "halfspace",
            Kind::Hyperplane { .. } => "hyperplane",
        }
    }

    /// Dimension of the vectors the set constrains.
    pub fn dim(&self) -> usize {
        match &self.0 {
            Kind::Box { lower, .. } => lower.len(),
            Kind::Ball { center, .. } => center.len(),
            Kind::Halfspace { normal, .. } | Kind::Hyperplane { normal, .. } => normal.len(),
        }
    }

    /// Membership with slack `tol` on the defining inequality.
    pub fn contains(&self, w: &[f64], tol: f64) -> Result<bool> {
        self.check(w)?;
        Ok(match &self.0 {
            Kind::Box { lower, upper } => {
                w.iter().zip(lower.iter().zip(upper)).all(|(x, (l, u))| *x >= l - tol && *x <= u + tol)
            }
            Kind::Ball { center, radius } => linalg::distance(w, center) <= radius + tol,
            Kind::Halfspace { normal, offset } => linalg::dot(normal, w) - offset <= tol,
            Kind::Hyperplane { normal, offset } => (linalg::dot(normal, w) - offset).abs() <= tol,
        })
    }

    /// Euclidean projection of `w` onto the set.
    pub fn project(&self, w: &[f64]) -> Result<Vec<f64>> {
        self.check(w)?;
        Ok(match &self.0 {
            Kind::Box { lower, upper } => {
                w.iter().zip(lower.iter().zip(upper)).map(|(x, (l, u))| x.clamp(*l, *u)).collect()
            }
            Kind::Ball { center, radius } => {
                let r = linalg::distance(w, center);
                if r <= *radius {
                    w.to_vec()
                } else {
                    let s = radius / r;
                    w.iter().zip(center).map(|(x, c)| c + s * (x - c)).collect()
                }
            }
            Kind::Halfspace { normal, offset } => {
                let excess = linalg::dot(normal, w) - offset;
                if excess <= 0.0 {
                    w.to_vec()
                } else {
                    shift_along(w, normal, excess)
                }
            }
            Kind::Hyperplane { normal, offset } => shift_along(w, normal, linalg::dot(normal, w) - offset),
        })
    }

    fn check(&self, w: &[f64]) -> Result<()> {
        if w.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: w.len() });
        }
        Ok(())
    }
}

fn check_normal(normal: &[f64], offset: f64) -> Result<()> {
    if normal.is_empty() {
        return Err(Error::InvalidParameter("normal needs at least one coordinate".into()));
    }
    if !linalg::all_finite(normal) || !offset.is_finite() {
        return Err(Error::NonFinite("constraint normal"));
    }
    if linalg::norm_sq(normal) == 0.0 {
        return Err(Error::InvalidParameter("constraint normal is zero".into()));
    }
    Ok(())
}

fn shift_along(w: &[f64], normal: &[f64], excess: f64) -> Vec<f64> {
    let s = excess / linalg::norm_sq(normal);
    w.iter().zip(normal).map(|(x, a)| x - s * a).collect()
}

/// Projection of `w` onto `set`.
pub fn project_constraint(w: &[f64], set: &ConstraintSet) -> Result<Vec<f64>> {
    set.project(w)
}
