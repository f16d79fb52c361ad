use alloc::vec::Vec;

use super::require_dim;
use crate::{check_dim, CostFunction, Error, Result};

/// `f(w) = sum_i w_i ln w_i` on `w >= 0`, with `0 ln 0 = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Entropic {
    dim: usize,
}

impl Entropic {
    /// Entropic cost on `R^dim_+`.
    pub fn new(dim: usize) -> Result<Self> {
        require_dim(dim, 1, "entropy")?;
        Ok(Self { dim })
    }
}

fn check_domain(w: &[f64]) -> Result<()> {
    if w.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("entropy argument"));
    }
    if w.iter().any(|&x| x < 0.0) {
        return Err(Error::Domain { cost: "entropy", reason: "negative component" });
    }
    Ok(())
}

impl CostFunction for Entropic {
    fn name(&self) -> &'static str {
        "entropy"
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn eval(&self, w: &[f64]) -> Result<f64> {
        check_dim(self, w)?;
        check_domain(w)?;
        Ok(w.iter().map(|&x| if x == 0.0 { 0.0 } else { x * libm::log(x) }).sum())
    }
    fn subgradient(&self, w: &[f64]) -> Result<Vec<f64>> {
        check_dim(self, w)?;
        check_domain(w)?;
        if w.contains(&0.0) {
            return Err(Error::NotDifferentiable { cost: "entropy" });
        }
        Ok(w.iter().map(|&x| 1.0 + libm::log(x)).collect())
    }
    fn is_convex(&self) -> bool {
        true
    }
    fn lower_bound(&self) -> Option<f64> {
        Some(-(self.dim as f64) / core::f64::consts::E)
    }
    /// Solves `u + step (1 + ln u) = x` per coordinate, by Newton's method
    /// in `v = ln u`. A zero step projects onto the domain `w >= 0`.
    fn prox(&self, x: &[f64], step: f64) -> Option<Result<Vec<f64>>> {
        if let Err(e) = check_dim(self, x) {
            return Some(Err(e));
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Some(Err(Error::NonFinite("entropy prox argument")));
        }
        if step <= 0.0 {
            // the indicator part alone: projection onto the orthant
            return Some(Ok(x.iter().map(|&v| v.max(0.0)).collect()));
        }
        Some(x.iter().map(|&xi| entropic_prox_scalar(xi, step)).collect())
    }
}

fn entropic_prox_scalar(x: f64, step: f64) -> Result<f64> {
    // H(v) = e^v + step v - (x - step) is convex and increasing, so Newton
    // started where H > 0 decreases monotonically onto the root.
    let target = x - step;
    let mut v = libm::log(x.max(1.0) + 1.0);
    for _ in 0..200 {
        let ev = libm::exp(v);
        let h = ev + step * v - target;
        let next = v - h / (ev + step);
        if !next.is_finite() {
            return Err(Error::Numerical("entropic prox diverged".into()));
        }
        if (next - v).abs() <= 1e-15 * (1.0 + v.abs()) {
            return Ok(libm::exp(next));
        }
        v = next;
    }
    Err(Error::Numerical("entropic prox did not converge".into()))
}
