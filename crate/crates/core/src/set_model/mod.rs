//! Finite closure-algebra models and the primitive set operators on them.

mod io;
mod mask;
mod model;
mod union;
mod validate;

pub use io::{from_json, to_json, ModelFile};
pub use mask::AtomMask;
pub use model::{ClosureModel, ModelKind};
pub use union::{disjoint_union, embed};
pub use validate::{
    validate, Check, ValidationReport, EXHAUSTIVE_ATOM_LIMIT, EXTENSIVE, IDEMPOTENT, NESTED,
    SATURATED, SATURATION_IDENTITY,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("topology index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("mask width {found} does not match model width {expected}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("atom {atom} out of range for width {width}")]
    AtomOutOfRange { atom: usize, width: usize },
    #[error("model has no atoms")]
    NoAtoms,
    #[error("model has no topologies")]
    NoTopologies,
    #[error("duplicate atom name {0:?}")]
    DuplicateAtom(String),
    #[error("unknown atom {0:?}")]
    UnknownAtom(String),
    #[error("topology {topology} lists {found} rows, expected {expected}")]
    RowCount {
        topology: usize,
        expected: usize,
        found: usize,
    },
    #[error("{width} atoms exceed the mask storage capacity of {capacity}")]
    CapacityExceeded { width: usize, capacity: usize },
    #[error("components disagree on the number of topologies: {expected} vs {found}")]
    TopologyCountMismatch { expected: usize, found: usize },
    #[error("{models} models but {sets} sets")]
    ComponentCount { models: usize, sets: usize },
    #[error("malformed mask {0:?}")]
    BadMask(String),
    #[error("model file: {0}")]
    Schema(String),
}
