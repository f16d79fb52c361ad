use crate::{LevelSet, LiftedVector};

/// Projection onto `{y <= alpha}`: clamps the height, keeps the base.
pub fn project_level_set(p: &LiftedVector, set: &LevelSet) -> LiftedVector {
    if p.height() <= set.alpha() {
        p.clone()
    } else {
        // alpha is finite by construction of LevelSet
        p.with_height(set.alpha()).expect("finite alpha")
    }
}
