//! Cost families: `l1`, squared `l2`, total variation, filtered variation,
//! entropic, `l_p` with `p < 1`, plus the affine and Euclidean-norm costs
//! whose epigraphs have closed-form projections.
//!
//! Every cost picks `0` as its subgradient component at a kink, which gives
//! a horizontal supporting plane there.

mod entropic;
mod lp;
mod norms;
mod shifted;
mod variation;

pub use entropic::Entropic;
pub use lp::PowerCost;
pub use norms::{Affine, EuclideanNorm, L1, L2Squared};
pub use shifted::Shifted;
pub use variation::{FilteredVariation, FirFilter, TotalVariation};

use alloc::format;

use crate::{Error, Result};

fn require_dim(dim: usize, min: usize, what: &str) -> Result<()> {
    if dim < min {
        return Err(Error::InvalidParameter(format!("{what} needs dim >= {min}, got {dim}")));
    }
    Ok(())
}

fn require_finite(values: &[f64], what: &'static str) -> Result<()> {
    if crate::linalg::all_finite(values) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}
