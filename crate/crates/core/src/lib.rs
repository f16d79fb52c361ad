//! Minimization by lifting.
//!
//! A cost `f: R^N -> R` is turned into two sets in `R^{N+1}`: its epigraph
//! `{(w, y) : y >= f(w)}` and the level set `{(w, y) : y <= alpha}`, with
//! `alpha` a lower bound on `f`. Alternating orthogonal projections between
//! the two sets settle into an oscillation between `(w*, f(w*))` and
//! `(w*, alpha)`, which hands back the minimizer `w*`.
//!
//! Two solver families are provided:
//!
//! * [`solver::solve_pocs_epigraph`] projects onto the epigraph itself
//!   (convex costs only).
//! * [`solver::solve_supporting_hyperplane`] replaces the epigraph by the
//!   supporting hyperplane at the current graph point, which only needs a
//!   subgradient. A descent check and a two-hyperplane fallback keep the
//!   iteration moving downhill. [`solver::solve_constrained`] and
//!   [`solver::solve_nonconvex`] are variants of the same schedule.
//!
//! The [`oracle`] module holds brute-force references (grid search, grid
//! projection, finite differences) that are independent of the solver paths
//! and are used to certify them.
//!
//! The crate is `no_std` and only needs an allocator.

#![no_std]
#![warn(missing_docs)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod config;
mod cost;
pub mod costs;
mod error;
mod lifted;
pub(crate) mod linalg;
pub mod oracle;
pub mod projection;
mod sets;
pub mod solver;
mod trace;

pub use config::SolverConfig;
pub use cost::{check_dim, CostFunction, CostShape};
pub use error::{Error, Result};
pub use lifted::LiftedVector;
pub use sets::{EpigraphSet, LevelSet, LiftedSet};
pub use trace::{IterationRecord, SetLabel, SolveResult, Termination};
