//! Closure, interior, frontier and complement operators over finite nested
//! multi-topology models: canonical words, counting, and model checking.

pub mod bits;
pub mod catalog;
pub mod engine;
pub mod search;
pub mod set_model;
pub mod verify;
pub mod word;

pub use bits::{Bits, WideBits};
pub use set_model::{AtomMask, ClosureModel, ModelError, ModelKind};
pub use word::{Generator, OpWord, WordError, WordType};

/// Mask over at most 32 atoms.
pub type Mask = AtomMask<u32>;
/// Model over at most 32 atoms.
pub type Model = ClosureModel<u32>;
/// Model with unbounded atom count.
pub type WideModel = ClosureModel<WideBits>;
pub type Count = u64;
pub type BigCount = num_bigint::BigUint;
