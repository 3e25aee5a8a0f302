//! Search over small finite topologies for minimal witnesses.

mod find;
mod space;

pub use find::{
    exhaustive_at, find_min_points, randomized_at, SearchConfig, SearchOutcome, SpaceProbe, Target,
};
pub use space::{
    all_spaces, brute_force_preorder_count, enumerate_extensions, enumerate_spaces,
    spaces_up_to_homeomorphism, PreorderSpace, EXHAUSTIVE_POINT_LIMIT, MAX_POINTS,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("no {target} witness on at most {limit} points")]
    NotFoundWithinLimit { target: Target, limit: usize },
    #[error("{points} points is beyond exhaustive range (at most {limit}); pass the bounded flag for randomized search")]
    OutOfExhaustiveRange { points: usize, limit: usize },
    #[error("at most 16 points are supported, got {0}")]
    TooManyPoints(usize),
    #[error("unknown search target {0:?}")]
    UnknownTarget(String),
}
