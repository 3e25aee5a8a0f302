//! Word semantics on finite models: transformation tables, orbits,
//! distinctness, the pointwise order, separation and monoid closure.

mod distinct;
mod monoid;
mod orbit;
mod poset;
mod separate;
mod transform;

pub use distinct::{distinct_operators, separating_subset, OperatorClass};
pub use monoid::{complement_is_involution, monoid_closure, MonoidElement, DEFAULT_MONOID_CAP};
pub use orbit::{orbit, orbit_size, OrbitResult};
pub use poset::{
    partial_order, partial_order_multi, transitive_closure, transitive_reduction, PosetResult,
};
pub use separate::{separate_pair, Separation, SeparationWitness, Separator};
pub use transform::{apply_generator, apply_word, Evaluator, Transformation, TABLE_ATOM_LIMIT};

use thiserror::Error;

use crate::catalog::CatalogError;
use crate::set_model::ModelError;
use crate::word::WordError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("topology index {index} exceeds the model's {n} topologies")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("{atoms} atoms is too many for full transformation tables (limit {limit})")]
    TooManyAtoms { atoms: usize, limit: usize },
    #[error("monoid exceeded {cap} elements")]
    SizeGuard { cap: usize },
    #[error("cannot separate a word from itself: {0}")]
    IdenticalPair(String),
    #[error("{0} is not a canonical word")]
    NotCanonical(String),
    #[error("models disagree: {0}")]
    ModelMismatch(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}
