use std::collections::HashSet;

use crate::bits::Bits;
use crate::set_model::ClosureModel;
use crate::word::{Generator, OpWord};

use super::transform::check_generators;
use super::{EngineError, Evaluator, Transformation};

/// Default bound on the number of transformations [`monoid_closure`] may produce.
pub const DEFAULT_MONOID_CAP: usize = 100_000;

#[derive(Clone, Debug)]
pub struct MonoidElement<B: Bits = u32> {
    /// Shortlex-least word producing the transformation.
    pub word: OpWord,
    pub table: Transformation<B>,
}

/// Closes `{Id}` under post-composition with `gens`, breadth first, so each
/// element carries its shortlex-least word. Fails once more than `cap`
/// elements appear.
pub fn monoid_closure<B: Bits>(
    model: &ClosureModel<B>,
    gens: &[Generator],
    cap: usize,
) -> Result<Vec<MonoidElement<B>>, EngineError> {
    check_generators(model, gens)?;
    let mut gens = gens.to_vec();
    gens.sort();
    gens.dedup();
    let ev = Evaluator::new(model)?;
    let mut seen: HashSet<Transformation<B>> = HashSet::new();
    let mut out = vec![MonoidElement {
        word: OpWord::identity(),
        table: ev.identity(),
    }];
    seen.insert(out[0].table.clone());
    let mut layer = vec![0usize];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for &g in &gens {
            let gt = ev.generator(g)?;
            for &p in &layer {
                let t = gt.compose(&out[p].table);
                if seen.contains(&t) {
                    continue;
                }
                if out.len() >= cap {
                    return Err(EngineError::SizeGuard { cap });
                }
                seen.insert(t.clone());
                next.push(out.len());
                let word = out[p].word.prepend(g);
                out.push(MonoidElement { word, table: t });
            }
        }
        layer = next;
    }
    Ok(out)
}

/// Whether `T -> c∘T` maps the set of tables into itself, with `c∘c∘T = T`
/// and no fixed points.
pub fn complement_is_involution<B: Bits>(tables: &[Transformation<B>]) -> bool {
    let set: HashSet<&Transformation<B>> = tables.iter().collect();
    tables.iter().all(|t| {
        let ct = t.complemented();
        set.contains(&ct) && &ct.complemented() == t && &ct != t
    })
}
