use alloc::vec::Vec;

use crate::linalg;
use crate::{Error, Result};

/// A point `(w, y)` of the lifted space `R^{N+1}`.
///
/// `base` is the `w` part, `height` the extra coordinate measured in cost
/// units. Both are finite by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedVector {
    base: Vec<f64>,
    height: f64,
}

impl LiftedVector {
    /// Builds a lifted vector, rejecting an empty base and non-finite values.
    pub fn new(base: Vec<f64>, height: f64) -> Result<Self> {
        if base.is_empty() {
            return Err(Error::InvalidParameter("lifted vector needs a base of dimension >= 1".into()));
        }
        if !linalg::all_finite(&base) || !height.is_finite() {
            return Err(Error::NonFinite("lifted vector"));
        }
        Ok(Self { base, height })
    }

    /// Builds a lifted vector from its `N + 1` stacked components.
    pub fn from_components(components: &[f64]) -> Result<Self> {
        match components.split_last() {
            Some((&height, base)) => Self::new(base.to_vec(), height),
            None => Err(Error::InvalidParameter("empty component list".into())),
        }
    }

    /// The `w` part.
    pub fn base(&self) -> &[f64] {
        &self.base
    }

    /// The `y` part.
    pub fn height(&self) -> f64 {
        self.height
    }

    /// Dimension `N` of the base.
    pub fn dim(&self) -> usize {
        self.base.len()
    }

    /// The stacked `N + 1` components `[w; y]`.
    pub fn components(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.base.len() + 1);
        out.extend_from_slice(&self.base);
        out.push(self.height);
        out
    }

    /// Same base, new height.
    pub fn with_height(&self, height: f64) -> Result<Self> {
        Self::new(self.base.clone(), height)
    }

    /// Euclidean distance in `R^{N+1}`.
    pub fn distance(&self, other: &Self) -> f64 {
        let dy = self.height - other.height;
        let db = linalg::distance(&self.base, &other.base);
        libm::sqrt(db * db + dy * dy)
    }

    /// Splits into `(base, height)`.
    pub fn into_parts(self) -> (Vec<f64>, f64) {
        (self.base, self.height)
    }
}
