use crate::{CostFunction, Error, LiftedVector, Result};

/// A closed set of the lifted space with an exact membership test.
pub trait LiftedSet {
    /// Dimension `N` of the base part, if the set fixes one.
    fn base_dim(&self) -> Option<usize>;

    /// Whether the defining inequality of the set holds (no tolerance).
    fn contains(&self, p: &LiftedVector) -> Result<bool>;
}

/// The level set `{(w, y) : y <= alpha}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelSet {
    alpha: f64,
}

impl LevelSet {
    /// Level set at `alpha`; `alpha` must be finite.
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::NonFinite("level set alpha"));
        }
        Ok(Self { alpha })
    }

    /// Upper bound on the height coordinate, in cost units.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

impl LiftedSet for LevelSet {
    fn base_dim(&self) -> Option<usize> {
        None
    }

    fn contains(&self, p: &LiftedVector) -> Result<bool> {
        Ok(p.height() <= self.alpha)
    }
}

/// The epigraph `{(w, y) : y >= f(w)}` of a cost.
#[derive(Clone, Copy)]
pub struct EpigraphSet<'a> {
    /// The cost whose epigraph this is.
    pub cost: &'a dyn CostFunction,
}

impl<'a> EpigraphSet<'a> {
    /// Epigraph of `cost`.
    pub fn new(cost: &'a dyn CostFunction) -> Self {
        Self { cost }
    }
}

impl core::fmt::Debug for EpigraphSet<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("EpigraphSet").field("cost", &self.cost.name()).finish()
    }
}

impl LiftedSet for EpigraphSet<'_> {
    fn base_dim(&self) -> Option<usize> {
        Some(self.cost.dim())
    }

    /// Points whose base is outside the cost's domain are not members.
    fn contains(&self, p: &LiftedVector) -> Result<bool> {
        crate::check_dim(self.cost, p.base())?;
        match self.cost.eval(p.base()) {
            Ok(value) => Ok(p.height() >= value),
            Err(Error::Domain { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    }
}
