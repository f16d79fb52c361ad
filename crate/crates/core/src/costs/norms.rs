use alloc::vec::Vec;

use super::{require_dim, require_finite};
use crate::linalg::{self, sign};
use crate::{check_dim, CostFunction, CostShape, Error, Result};

/// `f(w) = sum_i |w_i|`.
#[derive(Debug, Clone, PartialEq)]
pub struct L1 {
    dim: usize,
}

impl L1 {
    /// `l1` norm on `R^dim`.
    pub fn new(dim: usize) -> Result<Self> {
        require_dim(dim, 1, "l1")?;
        Ok(Self { dim })
    }
}

impl CostFunction for L1 {
    fn name(&self) -> &'static str {
        "l1"
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn eval(&self, w: &[f64]) -> Result<f64> {
        check_dim(self, w)?;
        Ok(w.iter().map(|x| x.abs()).sum())
    }
    fn subgradient(&self, w: &[f64]) -> Result<Vec<f64>> {
        check_dim(self, w)?;
        Ok(w.iter().map(|&x| sign(x)).collect())
    }
    fn is_convex(&self) -> bool {
        true
    }
    fn lower_bound(&self) -> Option<f64> {
        Some(0.0)
    }
    /// Soft thresholding.
    fn prox(&self, x: &[f64], step: f64) -> Option<Result<Vec<f64>>> {
        Some(check_dim(self, x).map(|_| x.iter().map(|&v| sign(v) * (v.abs() - step).max(0.0)).collect()))
    }
}

/// `f(w) = ||w - center||^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct L2Squared {
    center: Vec<f64>,
}

impl L2Squared {
    /// Squared distance to `center`; the dimension is `center.len()`.
    pub fn new(center: Vec<f64>) -> Result<Self> {
        require_dim(center.len(), 1, "l2sq")?;
        require_finite(&center, "l2sq center")?;
        Ok(Self { center })
    }

    /// Centered at the origin of `R^dim`.
    pub fn origin(dim: usize) -> Result<Self> {
        Self::new(alloc::vec![0.0; dim])
    }

    /// The minimizer.
    pub fn center(&self) -> &[f64] {
        &self.center
    }
}

impl CostFunction for L2Squared {
    fn name(&self) -> &'static str {
        "l2sq"
    }
    fn dim(&self) -> usize {
        self.center.len()
    }
    fn eval(&self, w: &[f64]) -> Result<f64> {
        check_dim(self, w)?;
        Ok(w.iter().zip(&self.center).map(|(x, c)| (x - c) * (x - c)).sum())
    }
    fn subgradient(&self, w: &[f64]) -> Result<Vec<f64>> {
        check_dim(self, w)?;
        Ok(w.iter().zip(&self.center).map(|(x, c)| 2.0 * (x - c)).collect())
    }
    fn is_convex(&self) -> bool {
        true
    }
    fn lower_bound(&self) -> Option<f64> {
        Some(0.0)
    }
    fn prox(&self, x: &[f64], step: f64) -> Option<Result<Vec<f64>>> {
        Some(check_dim(self, x).map(|_| {
            x.iter().zip(&self.center).map(|(v, c)| (v + 2.0 * step * c) / (1.0 + 2.0 * step)).collect()
        }))
    }
}

/// `f(w) = ||w - center||_2`, whose epigraph is a second-order cone.
#[derive(Debug, Clone, PartialEq)]
pub struct EuclideanNorm {
    center: Vec<f64>,
}

impl EuclideanNorm {
    /// Euclidean distance to `center`.
    pub fn new(center: Vec<f64>) -> Result<Self> {
        require_dim(center.len(), 1, "l2")?;
        require_finite(&center, "l2 center")?;
        Ok(Self { center })
    }
}

impl CostFunction for EuclideanNorm {
    fn name(&self) -> &'static str {
        "l2"
    }
    fn dim(&self) -> usize {
        self.center.len()
    }
    fn eval(&self, w: &[f64]) -> Result<f64> {
        check_dim(self, w)?;
        Ok(linalg::distance(w, &self.center))
    }
    fn subgradient(&self, w: &[f64]) -> Result<Vec<f64>> {
        check_dim(self, w)?;
        let r = linalg::distance(w, &self.center);
        if r == 0.0 {
            return Ok(alloc::vec![0.0; w.len()]);
        }
        Ok(w.iter().zip(&self.center).map(|(x, c)| (x - c) / r).collect())
    }
    fn is_convex(&self) -> bool {
        true
    }
    fn lower_bound(&self) -> Option<f64> {
        Some(0.0)
    }
    fn shape(&self) -> CostShape<'_> {
        CostShape::EuclideanNorm { center: &self.center }
    }
    /// Block soft thresholding around the center.
    fn prox(&self, x: &[f64], step: f64) -> Option<Result<Vec<f64>>> {
        Some(check_dim(self, x).map(|_| {
            let r = linalg::distance(x, &self.center);
            let scale = if r > step { 1.0 - step / r } else { 0.0 };
            x.iter().zip(&self.center).map(|(v, c)| c + scale * (v - c)).collect()
        }))
    }
}

/// `f(w) = slope . w + offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct Affine {
    slope: Vec<f64>,
    offset: f64,
}

impl Affine {
    /// Affine cost; the dimension is `slope.len()`.
    pub fn new(slope: Vec<f64>, offset: f64) -> Result<Self> {
        require_dim(slope.len(), 1, "affine")?;
        require_finite(&slope, "affine slope")?;
        if !offset.is_finite() {
            return Err(Error::NonFinite("affine offset"));
        }
        Ok(Self { slope, offset })
    }
}

impl CostFunction for Affine {
    fn name(&self) -> &'static str {
        "affine"
    }
    fn dim(&self) -> usize {
        self.slope.len()
    }
    fn eval(&self, w: &[f64]) -> Result<f64> {
        check_dim(self, w)?;
        Ok(linalg::dot(&self.slope, w) + self.offset)
    }
    fn subgradient(&self, w: &[f64]) -> Result<Vec<f64>> {
        check_dim(self, w)?;
        Ok(self.slope.clone())
    }
    fn is_convex(&self) -> bool {
        true
    }
    fn lower_bound(&self) -> Option<f64> {
        if self.slope.iter().all(|&a| a == 0.0) {
            Some(self.offset)
        } else {
            None
        }
    }
    fn shape(&self) -> CostShape<'_> {
        CostShape::Affine { slope: &self.slope, offset: self.offset }
    }
    fn prox(&self, x: &[f64], step: f64) -> Option<Result<Vec<f64>>> {
        Some(check_dim(self, x).map(|_| x.iter().zip(&self.slope).map(|(v, a)| v - step * a).collect()))
    }
}
