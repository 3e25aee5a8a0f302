use std::collections::HashMap;

use crate::catalog::staircase;
use crate::set_model::AtomMask;
use crate::word::{normalize, OpWord};
use crate::{Mask, Model};

use super::{EngineError, Evaluator, Transformation};

/// A staircase index `m` and a subset on which two words differ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeparationWitness {
    pub m: usize,
    pub set: Mask,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separation {
    Separated(SeparationWitness),
    NotSeparated,
}

impl Separation {
    pub fn witness(&self) -> Option<&SeparationWitness> {
        match self {
            Separation::Separated(w) => Some(w),
            Separation::NotSeparated => None,
        }
    }
}

/// Separates canonical words over the staircase models `staircase(n, m)`,
/// caching each compiled word.
pub struct Separator {
    n: usize,
    models: Vec<Model>,
    cache: Vec<HashMap<OpWord, Transformation>>,
}

impl Separator {
    pub fn new(n: usize) -> Result<Self, EngineError> {
        let models = (0..=n)
            .map(|m| staircase(n, m))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Separator {
            n,
            cache: vec![HashMap::new(); models.len()],
            models,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn model(&self, m: usize) -> &Model {
        &self.models[m]
    }

    /// Compiles `words` on every staircase up front.
    pub fn precompile(&mut self, words: &[OpWord]) -> Result<(), EngineError> {
        for m in 0..self.models.len() {
            let ev = Evaluator::new(&self.models[m])?;
            for w in words {
                if !self.cache[m].contains_key(w) {
                    let t = ev.compile(w)?;
                    self.cache[m].insert(w.clone(), t);
                }
            }
        }
        Ok(())
    }

    fn table(&mut self, m: usize, w: &OpWord) -> Result<&Transformation, EngineError> {
        if !self.cache[m].contains_key(w) {
            let t = Evaluator::new(&self.models[m])?.compile(w)?;
            self.cache[m].insert(w.clone(), t);
        }
        Ok(&self.cache[m][w])
    }

    fn check_canonical(&self, w: &OpWord) -> Result<(), EngineError> {
        if &normalize(w, self.n)? != w {
            return Err(EngineError::NotCanonical(w.to_string()));
        }
        Ok(())
    }

    /// Scans `m = 0..=n`, then subsets in increasing numeric order, and returns
    /// the first place where the words differ.
    pub fn separate(&mut self, a: &OpWord, b: &OpWord) -> Result<Separation, EngineError> {
        if a == b {
            return Err(EngineError::IdenticalPair(a.to_string()));
        }
        self.check_canonical(a)?;
        self.check_canonical(b)?;
        for m in 0..self.models.len() {
            let ta = self.table(m, a)?.clone();
            let tb = self.table(m, b)?;
            if let Some(s) = ta.first_difference(tb) {
                return Ok(Separation::Separated(SeparationWitness {
                    m,
                    set: AtomMask::from_index(s, ta.width()),
                }));
            }
        }
        Ok(Separation::NotSeparated)
    }

    /// Like [`Separator::separate`] for words already known to be canonical
    /// and precompiled; skips the checks and the clone.
    pub fn separate_cached(&self, a: &OpWord, b: &OpWord) -> Option<SeparationWitness> {
        for (m, cache) in self.cache.iter().enumerate() {
            let (ta, tb) = (cache.get(a)?, cache.get(b)?);
            if let Some(s) = ta.first_difference(tb) {
                return Some(SeparationWitness {
                    m,
                    set: AtomMask::from_index(s, ta.width()),
                });
            }
        }
        None
    }
}

/// Separates two distinct canonical words over the staircases for `n` topologies.
pub fn separate_pair(a: &OpWord, b: &OpWord, n: usize) -> Result<Separation, EngineError> {
    Separator::new(n)?.separate(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> OpWord {
        s.parse().unwrap()
    }

    #[test]
    fn closures_split_on_the_sorgenfrey_level() {
        let r = separate_pair(&w("k1"), &w("k2"), 2).unwrap();
        let wit = r.witness().unwrap();
        assert_eq!(wit.m, 1);
        assert_eq!(wit.set.atoms().collect::<Vec<_>>(), [0]);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(
            separate_pair(&w("k1"), &w("k1"), 2),
            Err(EngineError::IdenticalPair(_))
        ));
        assert!(matches!(
            separate_pair(&w("k1 k1"), &w("k2"), 2),
            Err(EngineError::NotCanonical(_))
        ));
    }
}
