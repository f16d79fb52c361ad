use alloc::vec::Vec;

use crate::{Error, Result};

/// Closed-form structure a cost may expose so that epigraph projections can
/// skip the iterative route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CostShape<'a> {
    /// `f(w) = slope . w + offset`.
    Affine {
        /// Linear coefficients.
        slope: &'a [f64],
        /// Constant term.
        offset: f64,
    },
    /// `f(w) = ||w - center||_2`; the epigraph is a second-order cone.
    EuclideanNorm {
        /// Apex of the cone.
        center: &'a [f64],
    },
    /// No closed form is known.
    General,
}

/// A cost `f: R^N -> R` with subgradient access.
///
/// Implementations must be pure: the same input always gives the same
/// output, with no interior mutability.
pub trait CostFunction: Send + Sync {
    /// Short identifier used in messages and trace output.
    fn name(&self) -> &'static str;

    /// Dimension `N` of the argument.
    fn dim(&self) -> usize;

    /// Evaluates `f(w)`. Points outside the domain yield [`Error::Domain`].
    fn eval(&self, w: &[f64]) -> Result<f64>;

    /// A subgradient of `f` at `w`.
    ///
    /// Returns [`Error::NotDifferentiable`] where the cost has no finite
    /// subgradient (the entropic cost on the boundary of its domain).
    fn subgradient(&self, w: &[f64]) -> Result<Vec<f64>>;

    /// Whether `f` is convex.
    fn is_convex(&self) -> bool;

    /// A known value `<= inf f`, if any.
    fn lower_bound(&self) -> Option<f64>;

    /// Closed-form structure, if the cost has one.
    fn shape(&self) -> CostShape<'_> {
        CostShape::General
    }

    /// `argmin_u f(u) + ||u - x||^2 / (2 step)`, when the cost knows it.
    ///
    /// `None` means the cost has no dedicated proximal map and callers fall
    /// back to an iterative scheme.
    fn prox(&self, _x: &[f64], _step: f64) -> Option<Result<Vec<f64>>> {
        None
    }
}

/// Fails with [`Error::DimensionMismatch`] unless `w` has the cost's dimension.
pub fn check_dim(cost: &(impl CostFunction + ?Sized), w: &[f64]) -> Result<()> {
    if w.len() != cost.dim() {
        return Err(Error::DimensionMismatch { expected: cost.dim(), found: w.len() });
    }
    Ok(())
}

impl<C: CostFunction + ?Sized> CostFunction for alloc::boxed::Box<C> {
    fn name(&self) -> &'static str {
        (**self).name()
    }
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn eval(&self, w: &[f64]) -> Result<f64> {
        (**self).eval(w)
    }
    fn subgradient(&self, w: &[f64]) -> Result<Vec<f64>> {
        (**self).subgradient(w)
    }
    fn is_convex(&self) -> bool {
        (**self).is_convex()
    }
    fn lower_bound(&self) -> Option<f64> {
        (**self).lower_bound()
    }
    fn shape(&self) -> CostShape<'_> {
        (**self).shape()
    }
    fn prox(&self, x: &[f64], step: f64) -> Option<Result<Vec<f64>>> {
        (**self).prox(x, step)
    }
}
