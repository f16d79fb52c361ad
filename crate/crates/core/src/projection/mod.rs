//! Orthogonal and relaxed projections onto the sets the solvers alternate
//! between.

mod constraint;
mod epigraph;
mod hyperplane;
mod level;

pub use constraint::{project_constraint, ConstraintSet};
pub use epigraph::project_epigraph;
pub use hyperplane::{project_hyperplane, supporting_hyperplane_at, Hyperplane};
pub use level::project_level_set;
