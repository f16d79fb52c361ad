use alloc::format;
use alloc::vec::Vec;

use super::{require_dim, require_finite};
use crate::linalg::sign;
use crate::{check_dim, CostFunction, Error, Result};

/// `f(w) = sum_i |w_i - c_i|^p` with `0 < p < 1` (not convex).
#[derive(Debug, Clone, PartialEq)]
pub struct PowerCost {
    p: f64,
    center: Vec<f64>,
}

impl PowerCost {
    /// `l_p` cost around `center`; the dimension is `center.len()`.
    pub fn new(p: f64, center: Vec<f64>) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidParameter(format!("lp exponent must lie in (0, 1), got {p}")));
        }
        require_dim(center.len(), 1, "lp")?;
        require_finite(&center, "lp center")?;
        Ok(Self { p, center })
    }

    /// The exponent.
    pub fn exponent(&self) -> f64 {
        self.p
    }
}

impl CostFunction for PowerCost {
    fn name(&self) -> &'static str {
        "lp"
    }
    fn dim(&self) -> usize {
        self.center.len()
    }
    fn eval(&self, w: &[f64]) -> Result<f64> {
        check_dim(self, w)?;
        Ok(w.iter().zip(&self.center).map(|(x, c)| libm::pow((x - c).abs(), self.p)).sum())
    }
    /// `p sign(e) |e|^(p-1)` with `0` at `e = 0`.
    fn subgradient(&self, w: &[f64]) -> Result<Vec<f64>> {
        check_dim(self, w)?;
        Ok(w.iter()
            .zip(&self.center)
            .map(|(x, c)| {
                let e = x - c;
                if e == 0.0 {
                    0.0
                } else {
                    self.p * sign(e) * libm::pow(e.abs(), self.p - 1.0)
                }
            })
            .collect())
    }
    fn is_convex(&self) -> bool {
        false
    }
    fn lower_bound(&self) -> Option<f64> {
        Some(0.0)
    }
}
