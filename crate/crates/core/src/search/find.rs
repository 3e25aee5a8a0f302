use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rayon::prelude::*;

use super::space::{
    all_spaces, enumerate_extensions, PreorderSpace, EXHAUSTIVE_POINT_LIMIT, MAX_POINTS,
};
use super::SearchError;
use crate::{Mask, Model};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    /// A space on which the 17 even single-topology operators are distinct.
    Even17,
    /// A set with 14 distinct images under closure and complement.
    Set14,
    /// A set with 34 distinct images under closure, frontier and complement.
    Set34,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Even17 => "EVEN17",
            Target::Set14 => "SET14",
            Target::Set34 => "SET34",
        }
    }

    /// Fewest points with enough subsets for the target.
    fn floor(self) -> usize {
        match self {
            Target::Even17 => 1,
            Target::Set14 => 4,
            Target::Set34 => 6,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, SearchError> {
        match s.to_ascii_uppercase().as_str() {
            "EVEN17" => Ok(Target::Even17),
            "SET14" => Ok(Target::Set14),
            "SET34" => Ok(Target::Set34),
            _ => Err(SearchError::UnknownTarget(s.to_string())),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Largest point count to try.
    pub limit: usize,
    /// Allow randomized search beyond the exhaustive range.
    pub bounded: bool,
    pub seed: u64,
    /// Wall-clock budget for the randomized phase.
    pub time_budget: Duration,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            limit: 5,
            bounded: false,
            seed: 0,
            time_budget: Duration::from_secs(60),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub target: Target,
    pub points: usize,
    pub space: PreorderSpace,
    /// The initial set, for the set targets.
    pub set: Option<Mask>,
    /// Whether every smaller point count was ruled out exhaustively.
    pub minimal: bool,
    /// Spaces examined over the whole search.
    pub examined: u64,
}

impl SearchOutcome {
    pub fn model(&self) -> Model {
        self.space.to_model()
    }
}

/// Per-space evaluation of a target over all subsets.
pub struct SpaceProbe {
    points: usize,
    full: u32,
    k: Vec<u32>,
    seen: Vec<u32>,
    stamp: u32,
    stack: Vec<u32>,
}

impl SpaceProbe {
    pub fn new(space: &PreorderSpace) -> Self {
        let size = 1usize << space.points();
        SpaceProbe {
            points: space.points(),
            full: (size - 1) as u32,
            k: space.closure_table(),
            seen: vec![0; size],
            stamp: 0,
            stack: Vec::with_capacity(64),
        }
    }

    fn c(&self, s: u32) -> u32 {
        self.full & !s
    }

    fn kk(&self, s: u32) -> u32 {
        self.k[s as usize]
    }

    fn i(&self, s: u32) -> u32 {
        self.c(self.kk(self.c(s)))
    }

    fn f(&self, s: u32) -> u32 {
        self.kk(s) & self.kk(self.c(s))
    }

    /// Orbit size of `a` under closure and complement, plus frontier when `frontier`.
    pub fn orbit(&mut self, a: u32, frontier: bool) -> usize {
        self.stamp += 1;
        let stamp = self.stamp;
        self.stack.clear();
        self.stack.push(a);
        self.seen[a as usize] = stamp;
        let mut count = 1;
        while let Some(s) = self.stack.pop() {
            let images = [self.kk(s), self.c(s), if frontier { self.f(s) } else { s }];
            for t in images {
                if self.seen[t as usize] != stamp {
                    self.seen[t as usize] = stamp;
                    self.stack.push(t);
                    count += 1;
                }
            }
        }
        count
    }

    /// Largest orbit over all initial sets, with a set attaining it.
    pub fn best_orbit(&mut self, frontier: bool) -> (usize, u32) {
        let mut best = (0, 0);
        for a in 0..=self.full {
            let n = self.orbit(a, frontier);
            if n > best.0 {
                best = (n, a);
            }
        }
        best
    }

    /// Number of distinct transformations among the 17 single-topology even words.
    pub fn even_operator_count(&self) -> usize {
        type Op = fn(&SpaceProbe, u32) -> u32;
        let words: [&[Op]; 17] = [
            &[],
            &[Self::kk],
            &[Self::i],
            &[Self::kk, Self::i],
            &[Self::i, Self::kk],
            &[Self::i, Self::kk, Self::i],
            &[Self::kk, Self::i, Self::kk],
            &[Self::f],
            &[Self::f, Self::f],
            &[Self::f, Self::kk],
            &[Self::f, Self::i],
            &[Self::i, Self::f],
            &[Self::kk, Self::i, Self::f],
            &[Self::i, Self::f, Self::kk],
            &[Self::f, Self::kk, Self::i],
            &[Self::f, Self::i, Self::kk],
            &[Self::f, Self::i, Self::f],
        ];
        let mut tables: Vec<Vec<u32>> = words
            .iter()
            .map(|w| {
                (0..=self.full)
                    .map(|s| w.iter().rev().fold(s, |v, op| op(self, v)))
                    .collect()
            })
            .collect();
        tables.sort();
        tables.dedup();
        tables.len()
    }

    pub fn points(&self) -> usize {
        self.points
    }
}

/// Checks one space; returns the witness set (or `0` for EVEN17) on success.
fn hits(space: &PreorderSpace, target: Target) -> Option<u32> {
    let mut probe = SpaceProbe::new(space);
    match target {
        Target::Even17 => (probe.even_operator_count() == 17).then_some(0),
        Target::Set14 => {
            let (n, a) = probe.best_orbit(false);
            (n == 14).then_some(a)
        }
        Target::Set34 => {
            let (n, a) = probe.best_orbit(true);
            (n == 34).then_some(a)
        }
    }
}

fn outcome(
    target: Target,
    space: PreorderSpace,
    set: u32,
    minimal: bool,
    examined: u64,
) -> SearchOutcome {
    let p = space.points();
    SearchOutcome {
        target,
        points: p,
        set: (target != Target::Even17).then(|| Mask::from_index(set as usize, p)),
        space,
        minimal,
        examined,
    }
}

/// Exhaustively checks every labeled space on `points` points and returns the
/// first hit in enumeration order, with the number of spaces examined up to it.
///
/// Work is split over the spaces on one point fewer, so the scan runs in
/// parallel while the reported hit stays the same for any thread count.
pub fn exhaustive_at(target: Target, points: usize) -> (Option<(PreorderSpace, u32)>, u64) {
    if points == 0 {
        return (None, 0);
    }
    let prefixes = all_spaces(points - 1);
    let hit = prefixes
        .par_iter()
        .enumerate()
        .find_map_first(|(i, prefix)| {
            let mut found = None;
            let mut seen = 0u64;
            enumerate_extensions(prefix, &mut |s| {
                if found.is_none() {
                    seen += 1;
                    if let Some(a) = hits(s, target) {
                        found = Some((s.clone(), a));
                    }
                }
            });
            found.map(|f| (i, f, seen))
        });
    let extensions = |p: &PreorderSpace| {
        let mut n = 0u64;
        enumerate_extensions(p, &mut |_| n += 1);
        n
    };
    match hit {
        Some((i, found, seen)) => {
            let before: u64 = prefixes[..i].par_iter().map(extensions).sum();
            (Some(found), before + seen)
        }
        None => (None, prefixes.par_iter().map(extensions).sum()),
    }
}

fn random_space(rng: &mut ChaCha8Rng, points: usize) -> PreorderSpace {
    let density: f64 = rng.gen_range(0.05..0.35);
    let rel: Vec<u32> = (0..points)
        .map(|a| {
            (0..points)
                .filter(|&b| b != a && rng.gen_bool(density))
                .fold(0u32, |acc, b| acc | 1 << b)
        })
        .collect();
    PreorderSpace::from_relation(&rel)
}

/// Randomized restarts with hill climbing on the best orbit size (or operator
/// count), stopping at `deadline`.
pub fn randomized_at(
    target: Target,
    points: usize,
    rng: &mut ChaCha8Rng,
    deadline: Instant,
) -> (Option<(PreorderSpace, u32)>, u64) {
    let score = |s: &PreorderSpace| -> (usize, u32) {
        let mut probe = SpaceProbe::new(s);
        match target {
            Target::Even17 => (probe.even_operator_count(), 0),
            Target::Set14 => probe.best_orbit(false),
            Target::Set34 => probe.best_orbit(true),
        }
    };
    let goal = match target {
        Target::Even17 => 17,
        Target::Set14 => 14,
        Target::Set34 => 34,
    };
    let mut examined = 0u64;
    while Instant::now() < deadline {
        let mut base: Vec<u32> = random_space(rng, points).below().to_vec();
        let mut current = PreorderSpace::from_relation(&base);
        let mut best = score(&current);
        examined += 1;
        for _ in 0..200 {
            if best.0 == goal {
                return (Some((current, best.1)), examined);
            }
            let a = rng.gen_range(0..points);
            let b = rng.gen_range(0..points);
            if a == b {
                continue;
            }
            let mut trial = base.clone();
            trial[a] ^= 1 << b;
            let cand = PreorderSpace::from_relation(&trial);
            let sc = score(&cand);
            examined += 1;
            if sc.0 >= best.0 {
                base = cand.below().to_vec();
                current = cand;
                best = sc;
            }
        }
        if best.0 == goal {
            return (Some((current, best.1)), examined);
        }
    }
    (None, examined)
}

/// Smallest point count at which `target` is realized, up to `config.limit`.
///
/// Point counts within the exhaustive range are settled by full enumeration,
/// so a hit there is minimal. Beyond it the search is randomized and needs
/// `config.bounded`; a randomized hit is still minimal when every smaller
/// point count was ruled out exhaustively.
pub fn find_min_points(
    target: Target,
    config: &SearchConfig,
) -> Result<SearchOutcome, SearchError> {
    if config.limit > MAX_POINTS {
        return Err(SearchError::TooManyPoints(config.limit));
    }
    if config.limit > EXHAUSTIVE_POINT_LIMIT && !config.bounded {
        return Err(SearchError::OutOfExhaustiveRange {
            points: config.limit,
            limit: EXHAUSTIVE_POINT_LIMIT,
        });
    }
    let mut examined = 0u64;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut random_start: Option<Instant> = None;
    // Every smaller point count so far was settled exhaustively.
    let mut settled = true;
    for points in 1..=config.limit {
        let exhaustive = points <= EXHAUSTIVE_POINT_LIMIT;
        if points < target.floor() {
            continue;
        }
        if exhaustive {
            let (found, n) = exhaustive_at(target, points);
            examined += n;
            if let Some((space, a)) = found {
                return Ok(outcome(target, space, a, true, examined));
            }
        } else {
            let remaining = config.limit + 1 - points;
            let start = *random_start.get_or_insert_with(Instant::now);
            let left = config.time_budget.saturating_sub(start.elapsed());
            let deadline = Instant::now() + left / remaining as u32;
            let (found, n) = randomized_at(target, points, &mut rng, deadline);
            examined += n;
            if let Some((space, a)) = found {
                return Ok(outcome(target, space, a, settled, examined));
            }
            settled = false;
        }
    }
    Err(SearchError::NotFoundWithinLimit {
        target,
        limit: config.limit,
    })
}
