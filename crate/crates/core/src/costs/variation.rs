use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{require_dim, require_finite};
use crate::linalg::sign;
use crate::{check_dim, CostFunction, Error, Result};

/// Taps of a finite impulse response filter.
#[derive(Debug, Clone, PartialEq)]
pub struct FirFilter {
    taps: Vec<f64>,
}

impl FirFilter {
    /// At least one tap, all finite, not all zero.
    pub fn new(taps: Vec<f64>) -> Result<Self> {
        if taps.is_empty() {
            return Err(Error::InvalidParameter("filter needs at least one tap".into()));
        }
        require_finite(&taps, "filter taps")?;
        if taps.iter().all(|&t| t == 0.0) {
            return Err(Error::InvalidParameter("filter taps are all zero".into()));
        }
        Ok(Self { taps })
    }

    /// The first-difference filter `[-1, 1]`.
    pub fn difference() -> Self {
        Self { taps: vec![-1.0, 1.0] }
    }

    /// Tap values.
    pub fn taps(&self) -> &[f64] {
        &self.taps
    }

    /// Number of taps `M`.
    pub fn len(&self) -> usize {
        self.taps.len()
    }

    /// Always false; a filter has at least one tap.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Valid-mode convolution: `out_i = sum_k h_k w_{i + M - 1 - k}`,
    /// `N - M + 1` outputs.
    pub fn convolve(&self, w: &[f64]) -> Vec<f64> {
        let m = self.taps.len();
        (0..=w.len() - m)
            .map(|i| {
                let mut acc = 0.0;
                for (k, h) in self.taps.iter().enumerate() {
                    acc += h * w[i + m - 1 - k];
                }
                acc
            })
            .collect()
    }

    /// Adjoint of [`convolve`](Self::convolve) for signals of length `n`.
    pub fn convolve_adjoint(&self, z: &[f64], n: usize) -> Vec<f64> {
        let m = self.taps.len();
        let mut out = vec![0.0; n];
        for (i, zi) in z.iter().enumerate() {
            for (k, h) in self.taps.iter().enumerate() {
                out[i + m - 1 - k] += h * zi;
            }
        }
        out
    }

    /// `(sum_k |h_k|)^2`, an upper bound on the squared operator norm.
    fn norm_bound_sq(&self) -> f64 {
        let s: f64 = self.taps.iter().map(|h| h.abs()).sum();
        s * s
    }
}

/// 1D anisotropic total variation `sum_i |w_{i+1} - w_i|`.
#[derive(Debug, Clone, PartialEq)]
pub struct TotalVariation {
    dim: usize,
}

impl TotalVariation {
    /// Total variation of signals of length `dim >= 2`.
    pub fn new(dim: usize) -> Result<Self> {
        require_dim(dim, 2, "total variation")?;
        Ok(Self { dim })
    }
}

impl CostFunction for TotalVariation {
    fn name(&self) -> &'static str {
        "tv"
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn eval(&self, w: &[f64]) -> Result<f64> {
        check_dim(self, w)?;
        Ok(w.windows(2).map(|p| (p[1] - p[0]).abs()).sum())
    }
    fn subgradient(&self, w: &[f64]) -> Result<Vec<f64>> {
        check_dim(self, w)?;
        let mut g = vec![0.0; w.len()];
        for (i, p) in w.windows(2).enumerate() {
            let s = sign(p[1] - p[0]);
            g[i] -= s;
            g[i + 1] += s;
        }
        Ok(g)
    }
    fn is_convex(&self) -> bool {
        true
    }
    fn lower_bound(&self) -> Option<f64> {
        Some(0.0)
    }
    fn prox(&self, x: &[f64], step: f64) -> Option<Result<Vec<f64>>> {
        Some(check_dim(self, x).and_then(|_| analysis_l1_prox(&FirFilter::difference(), x, step)))
    }
}

/// Filtered variation `sum_i |(h * w)_i|` with valid-mode convolution.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredVariation {
    dim: usize,
    filter: FirFilter,
}

impl FilteredVariation {
    /// Filtered variation of signals of length `dim`, which must be at least
    /// the filter length.
    pub fn new(dim: usize, filter: FirFilter) -> Result<Self> {
        require_dim(dim, 1, "filtered variation")?;
        if filter.len() > dim {
            return Err(Error::InvalidParameter(format!(
                "filter of length {} is longer than the signal ({dim})",
                filter.len()
            )));
        }
        Ok(Self { dim, filter })
    }

    /// The filter.
    pub fn filter(&self) -> &FirFilter {
        &self.filter
    }
}

impl CostFunction for FilteredVariation {
    fn name(&self) -> &'static str {
        "fv"
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn eval(&self, w: &[f64]) -> Result<f64> {
        check_dim(self, w)?;
        Ok(self.filter.convolve(w).iter().map(|v| v.abs()).sum())
    }
    fn subgradient(&self, w: &[f64]) -> Result<Vec<f64>> {
        check_dim(self, w)?;
        let signs: Vec<f64> = self.filter.convolve(w).into_iter().map(sign).collect();
        Ok(self.filter.convolve_adjoint(&signs, w.len()))
    }
    fn is_convex(&self) -> bool {
        true
    }
    fn lower_bound(&self) -> Option<f64> {
        Some(0.0)
    }
    fn prox(&self, x: &[f64], step: f64) -> Option<Result<Vec<f64>>> {
        Some(check_dim(self, x).and_then(|_| analysis_l1_prox(&self.filter, x, step)))
    }
}

const PROX_MAX_ITER: usize = 200_000;

/// Proximal map of `u -> step * ||h * u||_1` by projected gradient on the
/// dual: `u = x - step * H^T z` with `|z_i| <= 1`.
fn analysis_l1_prox(filter: &FirFilter, x: &[f64], step: f64) -> Result<Vec<f64>> {
    if step <= 0.0 {
        return Ok(x.to_vec());
    }
    let n = x.len();
    let tau = 1.0 / (step * filter.norm_bound_sq());
    let scale = 1.0 + x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let mut z = vec![0.0; n + 1 - filter.len()];
    let mut u = x.to_vec();
    for _ in 0..PROX_MAX_ITER {
        let hu = filter.convolve(&u);
        for (zi, g) in z.iter_mut().zip(&hu) {
            *zi = (*zi + tau * g).clamp(-1.0, 1.0);
        }
        let adj = filter.convolve_adjoint(&z, n);
        let mut change = 0.0_f64;
        for ((ui, xi), ai) in u.iter_mut().zip(x).zip(&adj) {
            let next = xi - step * ai;
            change = change.max((next - *ui).abs());
            *ui = next;
        }
        if change <= 1e-15 * scale {
            return Ok(u);
        }
    }
    Err(Error::Numerical(format!("filtered-variation prox did not settle in {PROX_MAX_ITER} iterations")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_variation_values() {
        let f = TotalVariation::new(3).unwrap();
        assert_eq!(f.eval(&[1.0, 3.0, 2.0]).unwrap(), 3.0);
        assert_eq!(f.eval(&[5.0, 5.0, 5.0]).unwrap(), 0.0);
        assert_eq!(f.subgradient(&[1.0, 3.0, 2.0]).unwrap(), vec![-1.0, 2.0, -1.0]);
        assert!(TotalVariation::new(1).is_err());
    }

    #[test]
    fn filtered_variation_values() {
        let fv = FilteredVariation::new(3, FirFilter::difference()).unwrap();
        let tv = TotalVariation::new(3).unwrap();
        assert_eq!(fv.eval(&[1.0, 3.0, 2.0]).unwrap(), tv.eval(&[1.0, 3.0, 2.0]).unwrap());
        assert_eq!(fv.eval(&[7.5, 7.5, 7.5]).unwrap(), 0.0);
        let identity = FilteredVariation::new(3, FirFilter::new(vec![1.0]).unwrap()).unwrap();
        assert_eq!(identity.eval(&[1.0, -2.0, 0.5]).unwrap(), 3.5);
        assert!(FilteredVariation::new(2, FirFilter::new(vec![1.0, -2.0, 1.0]).unwrap()).is_err());
    }

    #[test]
    fn filter_validation() {
        assert!(FirFilter::new(vec![]).is_err());
        assert!(FirFilter::new(vec![0.0, 0.0]).is_err());
        assert!(FirFilter::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn adjoint_matches_convolution() {
        let h = FirFilter::new(vec![0.5, -2.0, 1.25]).unwrap();
        let w = [1.0, -3.0, 0.25, 4.0, 2.0];
        let z = [0.3, -1.0, 2.0];
        let lhs: f64 = h.convolve(&w).iter().zip(&z).map(|(a, b)| a * b).sum();
        let rhs: f64 = h.convolve_adjoint(&z, w.len()).iter().zip(&w).map(|(a, b)| a * b).sum();
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn tv_prox_of_two_samples_is_closed_form() {
        // For N = 2 the prox pulls both samples toward their mean by at most `step`.
        let f = TotalVariation::new(2).unwrap();
        let u = f.prox(&[0.0, 3.0], 1.0).unwrap().unwrap();
        assert!((u[0] - 1.0).abs() < 1e-12 && (u[1] - 2.0).abs() < 1e-12);
        let u = f.prox(&[0.0, 3.0], 2.0).unwrap().unwrap();
        assert!((u[0] - 1.5).abs() < 1e-12 && (u[1] - 1.5).abs() < 1e-12);
    }
}
