use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::{CostFunction, CostShape, Error, Result};

/// `f(w) + offset` for a wrapped cost `f`.
pub struct Shifted {
    inner: Box<dyn CostFunction>,
    offset: f64,
}

impl Shifted {
    /// Adds the constant `offset` to `inner`.
    pub fn new(inner: Box<dyn CostFunction>, offset: f64) -> Result<Self> {
        if !offset.is_finite() {
            return Err(Error::NonFinite("cost offset"));
        }
        Ok(Self { inner, offset })
    }

    /// The constant added to the wrapped cost.
    pub fn offset(&self) -> f64 {
        self.offset
    }
}

impl core::fmt::Debug for Shifted {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Shifted").field("inner", &self.inner.name()).field("offset", &self.offset).finish()
    }
}

impl CostFunction for Shifted {
    fn name(&self) -> &'static str {
        self.inner.name()
    }
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn eval(&self, w: &[f64]) -> Result<f64> {
        Ok(self.inner.eval(w)? + self.offset)
    }
    fn subgradient(&self, w: &[f64]) -> Result<Vec<f64>> {
        self.inner.subgradient(w)
    }
    fn is_convex(&self) -> bool {
        self.inner.is_convex()
    }
    fn lower_bound(&self) -> Option<f64> {
        self.inner.lower_bound().map(|b| b + self.offset)
    }
    fn shape(&self) -> CostShape<'_> {
        match self.inner.shape() {
            CostShape::Affine { slope, offset } => CostShape::Affine { slope, offset: offset + self.offset },
            _ => CostShape::General,
        }
    }
    fn prox(&self, x: &[f64], step: f64) -> Option<Result<Vec<f64>>> {
        self.inner.prox(x, step)
    }
}
