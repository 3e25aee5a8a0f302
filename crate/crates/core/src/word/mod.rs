//! Operator words, the rewrite system, canonical forms and counting.

mod count;
mod generator;
mod grammar;
mod normalize;
mod opword;
mod parity;
mod rules;

pub use count::{binomial, count_kge, p_binomial, p_polynomial, KgeCount};
pub use generator::{Generator, Kind, STAR};
pub use grammar::{classify, enumerate_kge, enumerate_kge_flat, is_kge, WordType};
pub use normalize::{measure, normalize, normalize_with, Measure, Strategy};
pub use opword::OpWord;
pub use parity::{parity_reduce, Parity, ParityReduced};
pub use rules::{rules, Rhs, Rule};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("malformed word token {0:?}")]
    BadToken(String),
    #[error("topology index {index} exceeds n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("n must be at least 1")]
    ZeroTopologies,
    #[error("normal form {0} is not a canonical word")]
    NormalFormOutsideGrammar(String),
    #[error("rule {rule} did not decrease the termination measure on {word}")]
    MeasureNotDecreasing { rule: &'static str, word: String },
    #[error("rewrite search from {0} exceeded its bound")]
    SearchBound(String),
}
