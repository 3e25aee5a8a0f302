use serde_json::{json, Value};

use crate::bits::Bits;
use crate::set_model::ClosureModel;
use crate::word::OpWord;

use super::{EngineError, Evaluator};

/// The pointwise order on a list of words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetResult {
    /// Sorted shortlex, without duplicates.
    pub elements: Vec<OpWord>,
    pub leq: Vec<Vec<bool>>,
    /// `class[i]` is the first element with the same transformation as element `i`.
    pub class: Vec<usize>,
    /// Covering pairs `(lower, upper)` between class representatives.
    pub hasse: Vec<(usize, usize)>,
}

impl PosetResult {
    /// Builds the result from a preorder on `elements`.
    pub fn from_relation(elements: Vec<OpWord>, leq: Vec<Vec<bool>>) -> Self {
        let n = elements.len();
        let class: Vec<usize> = (0..n)
            .map(|i| (0..=i).find(|&j| leq[i][j] && leq[j][i]).unwrap_or(i))
            .collect();
        let reps: Vec<usize> = (0..n).filter(|&i| class[i] == i).collect();
        let strict: Vec<Vec<bool>> = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| a != b && leq[a][b]).collect())
            .collect();
        let hasse = transitive_reduction(&strict)
            .into_iter()
            .map(|(a, b)| (reps[a], reps[b]))
            .collect();
        PosetResult {
            elements,
            leq,
            class,
            hasse,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, w: &OpWord) -> Option<usize> {
        self.elements.binary_search(w).ok()
    }

    /// Whether `a <= b`; `None` if either word is not an element.
    pub fn holds(&self, a: &OpWord, b: &OpWord) -> Option<bool> {
        Some(self.leq[self.position(a)?][self.position(b)?])
    }

    pub fn class_count(&self) -> usize {
        self.class
            .iter()
            .enumerate()
            .filter(|(i, c)| i == *c)
            .count()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.len()).all(|i| self.leq[i][i])
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (0..n).all(|b| !self.leq[a][b] || (0..n).all(|c| !self.leq[b][c] || self.leq[a][c]))
        })
    }

    /// Mutual `<=` only between elements of one class.
    pub fn is_antisymmetric_on_classes(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (0..n).all(|b| !(self.leq[a][b] && self.leq[b][a]) || self.class[a] == self.class[b])
        })
    }

    /// Whether the reflexive transitive closure of the Hasse edges reproduces
    /// the order between class representatives.
    pub fn hasse_round_trips(&self) -> bool {
        let reps: Vec<usize> = (0..self.len()).filter(|&i| self.class[i] == i).collect();
        let pos = |x: usize| {
            reps.iter()
                .position(|&r| r == x)
                .expect("edge between reps")
        };
        let mut rel = vec![vec![false; reps.len()]; reps.len()];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in &self.hasse {
            rel[pos(a)][pos(b)] = true;
        }
        let closed = transitive_closure(&rel);
        reps.iter().enumerate().all(|(i, &a)| {
            reps.iter()
                .enumerate()
                .all(|(j, &b)| closed[i][j] == self.leq[a][b])
        })
    }

    /// Rows of the relation as `0`/`1` strings.
    pub fn leq_bitstrings(&self) -> Vec<String> {
        self.leq
            .iter()
            .map(|row| row.iter().map(|&b| if b { '1' } else { '0' }).collect())
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "elements": self.elements.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            "leq": self.leq_bitstrings(),
            "classes": self.class,
            "hasse": self.hasse.iter().map(|&(a, b)| json!([self.elements[a].to_string(), self.elements[b].to_string()])).collect::<Vec<_>>(),
        })
    }

    /// Hasse diagram in DOT, nodes in shortlex order, edges pointing upward.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph order {\n  rankdir=BT;\n");
        for i in 0..self.len() {
            if self.class[i] == i {
                let same: Vec<String> = (0..self.len())
                    .filter(|&j| self.class[j] == i)
                    .map(|j| self.elements[j].to_string())
                    .collect();
                out.push_str(&format!("  n{i} [label=\"{}\"];\n", same.join(" = ")));
            }
        }
        for &(a, b) in &self.hasse {
            out.push_str(&format!("  n{a} -> n{b};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Reflexive-or-not transitive closure of a square relation (Warshall).
pub fn transitive_closure(rel: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = rel.len();
    let mut r = rel.to_vec();
    for k in 0..n {
        let via = r[k].clone();
        for row in r.iter_mut() {
            if row[k] {
                for (cell, &step) in row.iter_mut().zip(&via) {
                    *cell |= step;
                }
            }
        }
    }
    r
}

/// Covering pairs of a strict partial order given as its full relation.
pub fn transitive_reduction(strict: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = strict.len();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if strict[a][b] && !(0..n).any(|c| strict[a][c] && strict[c][b]) {
                edges.push((a, b));
            }
        }
    }
    edges
}

fn sorted_words(words: &[OpWord]) -> Vec<OpWord> {
    let mut w = words.to_vec();
    w.sort();
    w.dedup();
    w
}

/// `a <= b` iff `a(S) ⊆ b(S)` for every subset `S` of the model.
pub fn partial_order<B: Bits>(
    model: &ClosureModel<B>,
    words: &[OpWord],
) -> Result<PosetResult, EngineError> {
    partial_order_multi(&[model], words)
}

/// The order that holds on every one of `models`, which is the order on
/// their disjoint union.
pub fn partial_order_multi<B: Bits>(
    models: &[&ClosureModel<B>],
    words: &[OpWord],
) -> Result<PosetResult, EngineError> {
    let elements = sorted_words(words);
    let n = elements.len();
    let mut leq = vec![vec![true; n]; n];
    for model in models {
        let ev = Evaluator::new(model)?;
        let tables = elements
            .iter()
            .map(|w| ev.compile(w))
            .collect::<Result<Vec<_>, _>>()?;
        for a in 0..n {
            for b in 0..n {
                if leq[a][b] {
                    leq[a][b] = tables[a].leq(&tables[b]);
                }
            }
        }
    }
    Ok(PosetResult::from_relation(elements, leq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::p_model;

    fn w(s: &str) -> OpWord {
        s.parse().unwrap()
    }

    #[test]
    fn chain_of_two_topologies() {
        let p = p_model();
        let chain: Vec<OpWord> = ["0", "i2", "i1", "Id", "k1", "k2"]
            .iter()
            .map(|s| w(s))
            .collect();
        let r = partial_order(&p, &chain).unwrap();
        for pair in chain.windows(2) {
            assert_eq!(r.holds(&pair[0], &pair[1]), Some(true));
            assert_eq!(r.holds(&pair[1], &pair[0]), Some(false));
        }
        assert_eq!(r.hasse.len(), 5);
        assert!(r.hasse_round_trips());
        assert!(r.to_dot().contains("->"));
    }

    #[test]
    fn equal_words_share_a_class() {
        let p = p_model();
        let r = partial_order(&p, &[w("i1 f2 k1"), w("0"), w("k1")]).unwrap();
        assert_eq!(r.class_count(), 2);
        assert!(r.is_antisymmetric_on_classes());
        assert!(r.is_transitive());
    }

    #[test]
    fn reduction_of_a_chain() {
        let strict = vec![
            vec![false, true, true],
            vec![false, false, true],
            vec![false, false, false],
        ];
        assert_eq!(transitive_reduction(&strict), [(0, 1), (1, 2)]);
    }
}
