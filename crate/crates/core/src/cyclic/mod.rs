//! Truncated cyclic sets and modules, cyclic nerves, edgewise subdivision,
//! fixed points, latching objects and the cyclotomic diagonal.

mod colimit;
mod cyclotomic;
mod latching;
mod linear;
mod model;
mod nerve;
mod subdivision;
mod truncated;

pub use colimit::{Colimit, Presentation, Relation};
pub use cyclotomic::{
    cyclotomic_compatibility, gamma_diagonal, generators_into, CompatibilityReport, GammaLevel, GammaReport,
};
pub use latching::{collapse, latching, round_down, LatchingData, LatchingReport};
pub use linear::{linearize, linearize_rcyclic, TruncatedCyclicModule};
pub use model::{CyclicModel, FixedPoints, Point, Representable, DEFAULT_MAX_CELLS};
pub use nerve::{ArrowSpec, CyclicNerve, FiniteCategory, FiniteMonoid};
pub use subdivision::{fixed_points, subdivide, RCyclicTruncatedObject, RLevel};
pub use truncated::{
    point, standard_cyclic_simplex, FunctorialityFailure, Level, LevelSource, ModelSource, TruncatedCyclicSet,
};

/// The cyclic nerve of a category as a truncated cyclic set with lazy levels.
pub fn cyclic_nerve(category: &FiniteCategory, truncation: usize) -> crate::Result<TruncatedCyclicSet> {
    TruncatedCyclicSet::from_model(CyclicNerve::new(category.clone())?, truncation)
}
