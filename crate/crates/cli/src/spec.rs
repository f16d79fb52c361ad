//! Problem-spec files.
//!
//! A spec is a TOML document:
//!
//! ```toml
//! name = "parabola"
//! solver = "epigraph"          # epigraph | hyperplane | constrained | nonconvex
//! initial_point = [0.0]
//!
//! [cost]
//! name = "l2sq"                # l1 | l2sq | tv | fv | entropy | lp
//! dim = 1
//! center = [3.0]               # l2sq, lp (default: origin)
//! # taps = [-1.0, 1.0]         # fv
//! # p = 0.5                    # lp
//! # offset = 1.0               # constant added to any cost
//!
//! [config]                     # every key optional
//! lambda = 1.0
//! step_tolerance = 1e-10
//! max_iterations = 100000
//! alpha = 0.0
//! alpha_growth = 0.0
//! fallback_max_bounces = 50
//!
//! [[constraints]]              # constrained solver only
//! kind = "box"                 # box | ball | halfspace | hyperplane
//! lower = [0.0]
//! upper = [1.0]
//!
//! [oracle]
//! lower = -10.0                # scalar or one value per axis
//! upper = 10.0
//! points_per_axis = 1001
//! tolerance = 1e-4
//! ```

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Deserialize;

/// Failure to read or validate a spec.
#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Parse(#[from] toml::de::Error),
    #[error("field `{field}`: {message}")]
    Invalid { field: String, message: String },
}

fn invalid(field: impl Into<String>, message: impl Into<String>) -> SpecError {
    SpecError::Invalid { field: field.into(), message: message.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Epigraph,
    Hyperplane,
    Constrained,
    Nonconvex,
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverKind::Epigraph => "epigraph",
            SolverKind::Hyperplane => "hyperplane",
            SolverKind::Constrained => "constrained",
            SolverKind::Nonconvex => "nonconvex",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CostName {
    L1,
    L2sq,
    Tv,
    Fv,
    Entropy,
    Lp,
}

impl fmt::Display for CostName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CostName::L1 => "l1",
            CostName::L2sq => "l2sq",
            CostName::Tv => "tv",
            CostName::Fv => "fv",
            CostName::Entropy => "entropy",
            CostName::Lp => "lp",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CostSpec {
    pub name: CostName,
    pub dim: usize,
    pub center: Option<Vec<f64>>,
    pub taps: Option<Vec<f64>>,
    pub p: Option<f64>,
    #[serde(default)]
    pub offset: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigSpec {
    pub lambda: Option<f64>,
    pub step_tolerance: Option<f64>,
    pub max_iterations: Option<usize>,
    pub alpha: Option<f64>,
    pub alpha_growth: Option<f64>,
    pub fallback_max_bounces: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ConstraintSpec {
    Box { lower: Vec<f64>, upper: Vec<f64> },
    Ball { center: Vec<f64>, radius: f64 },
    /// `normal . w <= offset`
    Halfspace { normal: Vec<f64>, offset: f64 },
    /// `normal . w == offset`
    Hyperplane { normal: Vec<f64>, offset: f64 },
}

/// A scalar applied to every axis, or one value per axis.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Bound {
    Scalar(f64),
    PerAxis(Vec<f64>),
}

impl Bound {
    fn expand(&self, dim: usize) -> Option<Vec<f64>> {
        match self {
            Bound::Scalar(v) => Some(vec![*v; dim]),
            Bound::PerAxis(v) if v.len() == dim => Some(v.clone()),
            Bound::PerAxis(_) => None,
        }
    }
}

fn default_tolerance() -> f64 {
    1e-4
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSpec {
    pub lower: Bound,
    pub upper: Bound,
    pub points_per_axis: usize,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

impl OracleSpec {
    /// Per-axis `(lo, hi)` pairs.
    pub fn bounds(&self, dim: usize) -> Option<Vec<(f64, f64)>> {
        let lo = self.lower.expand(dim)?;
        let hi = self.upper.expand(dim)?;
        Some(lo.into_iter().zip(hi).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub name: String,
    pub solver: SolverKind,
    pub initial_point: Vec<f64>,
    pub cost: CostSpec,
    #[serde(default)]
    pub config: ConfigSpec,
    #[serde(default)]
    pub constraints: Vec<ConstraintSpec>,
    pub oracle: Option<OracleSpec>,
}

impl ProblemSpec {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let spec: ProblemSpec = toml::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self, SpecError> {
        let text = std::fs::read_to_string(path).map_err(|source| SpecError::Io { path: path.to_owned(), source })?;
        Self::parse(&text)
    }

    /// Field-level consistency: dimensions, required per-cost parameters,
    /// constraints only with the constrained solver.
    pub fn validate(&self) -> Result<(), SpecError> {
        let n = self.cost.dim;
        if n == 0 {
            return Err(invalid("cost.dim", "must be positive"));
        }
        if self.initial_point.len() != n {
            return Err(invalid(
                "initial_point",
                format!("has {} entries, cost.dim is {n}", self.initial_point.len()),
            ));
        }
        if let Some(c) = &self.cost.center {
            if c.len() != n {
                return Err(invalid("cost.center", format!("has {} entries, cost.dim is {n}", c.len())));
            }
        }
        match self.cost.name {
            CostName::Fv if self.cost.taps.is_none() => return Err(invalid("cost.taps", "required for fv")),
            CostName::Lp if self.cost.p.is_none() => return Err(invalid("cost.p", "required for lp")),
            _ => {}
        }
        for (k, c) in self.constraints.iter().enumerate() {
            let field = format!("constraints[{k}]");
            let lens: Vec<usize> = match c {
                ConstraintSpec::Box { lower, upper } => vec![lower.len(), upper.len()],
                ConstraintSpec::Ball { center, .. } => vec![center.len()],
                ConstraintSpec::Halfspace { normal, .. } | ConstraintSpec::Hyperplane { normal, .. } => {
                    vec![normal.len()]
                }
            };
            if lens.iter().any(|&l| l != n) {
                return Err(invalid(field, format!("dimension differs from cost.dim = {n}")));
            }
        }
        match (self.solver, self.constraints.is_empty()) {
            (SolverKind::Constrained, true) => {
                return Err(invalid("constraints", "the constrained solver needs at least one"))
            }
            (SolverKind::Constrained, false) | (_, true) => {}
            (_, false) => return Err(invalid("constraints", "only used by the constrained solver")),
        }
        if let Some(o) = &self.oracle {
            if o.bounds(n).is_none() {
                return Err(invalid("oracle", format!("bounds need one value or {n} values")));
            }
            if !(o.tolerance > 0.0) {
                return Err(invalid("oracle.tolerance", "must be positive"));
            }
        }
        Ok(())
    }
}
