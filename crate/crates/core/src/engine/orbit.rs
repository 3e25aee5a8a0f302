use std::collections::{HashMap, HashSet};

use crate::bits::Bits;
use crate::set_model::{AtomMask, ClosureModel};
use crate::word::{Generator, OpWord};

use super::transform::{apply_generator, check_generators};
use super::EngineError;

/// Sets reachable from an initial set, each with its shortlex-least witness word.
#[derive(Clone, Debug)]
pub struct OrbitResult<B: Bits = u32> {
    pub initial: AtomMask<B>,
    pub generators: Vec<Generator>,
    /// Reached sets in witness order; `sets[0]` is the initial set.
    pub sets: Vec<AtomMask<B>>,
    pub witnesses: Vec<OpWord>,
}

impl<B: Bits> OrbitResult<B> {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn witness(&self, set: &AtomMask<B>) -> Option<&OpWord> {
        self.sets
            .iter()
            .position(|s| s == set)
            .map(|i| &self.witnesses[i])
    }

    pub fn contains(&self, set: &AtomMask<B>) -> bool {
        self.sets.contains(set)
    }
}

fn sorted_gens(gens: &[Generator]) -> Vec<Generator> {
    let mut g = gens.to_vec();
    g.sort();
    g.dedup();
    g
}

/// Breadth-first closure of `{initial}` under `gens`.
///
/// Layers are expanded generator-major over parents in witness order, so the
/// first word to reach a set is the shortlex-least one.
pub fn orbit<B: Bits>(
    model: &ClosureModel<B>,
    initial: &AtomMask<B>,
    gens: &[Generator],
) -> Result<OrbitResult<B>, EngineError> {
    check_generators(model, gens)?;
    initial.check_width(model.atom_count())?;
    let gens = sorted_gens(gens);
    let width = model.atom_count();
    let mut index: HashMap<B, usize> = HashMap::new();
    let mut sets = vec![initial.bits().clone()];
    let mut witnesses = vec![OpWord::identity()];
    index.insert(initial.bits().clone(), 0);
    let mut layer = vec![0usize];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for &g in &gens {
            for &p in &layer {
                let image = apply_generator(model, g, &sets[p]);
                if index.contains_key(&image) {
                    continue;
                }
                let id = sets.len();
                index.insert(image.clone(), id);
                sets.push(image);
                witnesses.push(witnesses[p].prepend(g));
                next.push(id);
            }
        }
        layer = next;
    }
    Ok(OrbitResult {
        initial: initial.clone(),
        generators: gens,
        sets: sets
            .into_iter()
            .map(|b| AtomMask::from_bits(b, width))
            .collect(),
        witnesses,
    })
}

/// Number of sets in the orbit, without witnesses.
pub fn orbit_size<B: Bits>(model: &ClosureModel<B>, initial: &B, gens: &[Generator]) -> usize {
    let mut seen: HashSet<B> = HashSet::new();
    let mut stack = vec![initial.clone()];
    seen.insert(initial.clone());
    while let Some(s) = stack.pop() {
        for &g in gens {
            let image = apply_generator(model, g, &s);
            if seen.insert(image.clone()) {
                stack.push(image);
            }
        }
    }
    seen.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::p_model;
    use crate::engine::apply_word;

    #[test]
    fn empty_set_orbit() {
        let p = p_model();
        let gens = Generator::parse_list("k1,c").unwrap();
        let r = orbit(&p, &p.empty_mask(), &gens).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r.witnesses[1].to_string(), "c");
    }

    #[test]
    fn witnesses_reproduce_their_sets() {
        let p = p_model();
        let a = p.parse_mask("P2,P6,P9,P11").unwrap();
        let gens = Generator::parse_list("k1,k2,c").unwrap();
        let r = orbit(&p, &a, &gens).unwrap();
        assert_eq!(r.len(), orbit_size(&p, a.bits(), &gens));
        for (s, w) in r.sets.iter().zip(&r.witnesses) {
            assert_eq!(&apply_word(&p, w, &a).unwrap(), s);
        }
        for pair in r.witnesses.windows(2) {
            assert!(pair[0] < pair[1], "{} then {}", pair[0], pair[1]);
        }
    }
}
