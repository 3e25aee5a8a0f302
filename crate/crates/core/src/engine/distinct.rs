use std::collections::HashMap;

use crate::bits::Bits;
use crate::set_model::{AtomMask, ClosureModel};
use crate::word::OpWord;

use super::{EngineError, Evaluator, Transformation};

/// Words sharing one transformation on a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorClass {
    pub words: Vec<OpWord>,
}

/// Groups `words` by equality of their transformations. Classes appear in
/// order of their first word in `words`, and keep the input order inside.
pub fn distinct_operators<B: Bits>(
    model: &ClosureModel<B>,
    words: &[OpWord],
) -> Result<Vec<OperatorClass>, EngineError> {
    let ev = Evaluator::new(model)?;
    let mut index: HashMap<Transformation<B>, usize> = HashMap::new();
    let mut classes: Vec<OperatorClass> = Vec::new();
    for w in words {
        let t = ev.compile(w)?;
        match index.get(&t) {
            Some(&i) => classes[i].words.push(w.clone()),
            None => {
                index.insert(t, classes.len());
                classes.push(OperatorClass {
                    words: vec![w.clone()],
                });
            }
        }
    }
    Ok(classes)
}

/// The numerically smallest subset on which the two words differ.
pub fn separating_subset<B: Bits>(
    model: &ClosureModel<B>,
    a: &OpWord,
    b: &OpWord,
) -> Result<Option<AtomMask<B>>, EngineError> {
    let ev = Evaluator::new(model)?;
    let ta = ev.compile(a)?;
    let tb = ev.compile(b)?;
    Ok(ta
        .first_difference(&tb)
        .map(|s| AtomMask::from_index(s, model.atom_count())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::p_model;

    #[test]
    fn zero_words_share_a_class() {
        let p = p_model();
        let words: Vec<OpWord> = ["i1 f2 k1", "i2 f1 i1", "k1"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let classes = distinct_operators(&p, &words).unwrap();
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0].words.len(), 2);
        let s = separating_subset(&p, &words[0], &words[2])
            .unwrap()
            .unwrap();
        assert_eq!(s.atoms().collect::<Vec<_>>(), [0]);
        assert!(separating_subset(&p, &words[0], &words[1])
            .unwrap()
            .is_none());
    }
}
