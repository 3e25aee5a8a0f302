use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use crate::bits::Bits;

use super::{AtomMask, ModelError};

/// How a model was obtained. Purely descriptive; both kinds evaluate the same way.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum ModelKind {
    /// Atoms are the points of a finite space.
    #[default]
    PointSpace,
    /// Atoms are blocks of a partition of a larger space on which the operators act blockwise.
    BlockQuotient,
}

/// A finite n-topological closure algebra.
///
/// For each topology index `j` (1-based, finest first) and each atom `a`,
/// `row(j, a)` is the closure of `{a}`. Closures of arbitrary sets are unions
/// of rows, which is exact for finite (Alexandrov) spaces and for block
/// quotients whose operators act blockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureModel<B: Bits = u32> {
    names: Vec<String>,
    n: usize,
    rows: Vec<Vec<B>>,
    kind: ModelKind,
}

impl<B: Bits> ClosureModel<B> {
    /// Builds a model from per-topology closure rows.
    ///
    /// Only the shape is checked here; the closure-algebra invariants are the
    /// job of [`validate`](super::validate).
    pub fn new(
        names: Vec<String>,
        rows: Vec<Vec<AtomMask<B>>>,
        kind: ModelKind,
    ) -> Result<Self, ModelError> {
        let width = names.len();
        if width == 0 {
            return Err(ModelError::NoAtoms);
        }
        if rows.is_empty() {
            return Err(ModelError::NoTopologies);
        }
        if !B::supports(width) {
            return Err(ModelError::CapacityExceeded {
                width,
                capacity: B::CAPACITY.unwrap_or(usize::MAX),
            });
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(ModelError::DuplicateAtom(name.clone()));
            }
        }
        let mut stored = Vec::with_capacity(rows.len());
        for (j, topology) in rows.into_iter().enumerate() {
            if topology.len() != width {
                return Err(ModelError::RowCount {
                    topology: j + 1,
                    expected: width,
                    found: topology.len(),
                });
            }
            let mut out = Vec::with_capacity(width);
            for mask in topology {
                mask.check_width(width)?;
                out.push(mask.into_bits());
            }
            stored.push(out);
        }
        Ok(ClosureModel {
            names,
            n: stored.len(),
            rows: stored,
            kind,
        })
    }

    /// Builds a model from rows given as atom index lists.
    pub fn from_atom_lists(
        names: Vec<String>,
        rows: &[Vec<Vec<usize>>],
        kind: ModelKind,
    ) -> Result<Self, ModelError> {
        let width = names.len();
        let rows = rows
            .iter()
            .map(|topology| {
                topology
                    .iter()
                    .map(|atoms| AtomMask::from_atoms(atoms.iter().copied(), width))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(names, rows, kind)
    }

    pub fn atom_count(&self) -> usize {
        self.names.len()
    }

    /// Number of topologies.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn atom_name(&self, atom: usize) -> &str {
        &self.names[atom]
    }

    pub fn atom_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn row(&self, j: usize, atom: usize) -> AtomMask<B> {
        AtomMask::from_bits(self.rows[j - 1][atom].clone(), self.atom_count())
    }

    pub fn empty_mask(&self) -> AtomMask<B> {
        AtomMask::empty(self.atom_count())
    }

    pub fn full_mask(&self) -> AtomMask<B> {
        AtomMask::full(self.atom_count())
    }

    pub fn check_index(&self, j: usize) -> Result<(), ModelError> {
        if j == 0 || j > self.n {
            Err(ModelError::IndexOutOfRange {
                index: j,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    fn check(&self, j: usize, s: &AtomMask<B>) -> Result<(), ModelError> {
        self.check_index(j)?;
        s.check_width(self.atom_count())
    }

    pub fn closure(&self, j: usize, s: &AtomMask<B>) -> Result<AtomMask<B>, ModelError> {
        self.check(j, s)?;
        Ok(AtomMask::from_bits(
            self.closure_bits(j, s.bits()),
            self.atom_count(),
        ))
    }

    pub fn interior(&self, j: usize, s: &AtomMask<B>) -> Result<AtomMask<B>, ModelError> {
        self.check(j, s)?;
        Ok(AtomMask::from_bits(
            self.interior_bits(j, s.bits()),
            self.atom_count(),
        ))
    }

    pub fn frontier(&self, j: usize, s: &AtomMask<B>) -> Result<AtomMask<B>, ModelError> {
        self.check(j, s)?;
        Ok(AtomMask::from_bits(
            self.frontier_bits(j, s.bits()),
            self.atom_count(),
        ))
    }

    /// Closure on raw bits. `j` must already be a valid 1-based index.
    #[inline]
    pub fn closure_bits(&self, j: usize, s: &B) -> B {
        let row = &self.rows[j - 1];
        let mut out = B::zeroed(self.atom_count());
        for a in s.ones() {
            out.union_with(&row[a]);
        }
        out
    }

    #[inline]
    pub fn interior_bits(&self, j: usize, s: &B) -> B {
        let width = self.atom_count();
        self.closure_bits(j, &s.complement(width)).complement(width)
    }

    #[inline]
    pub fn frontier_bits(&self, j: usize, s: &B) -> B {
        let width = self.atom_count();
        let mut out = self.closure_bits(j, s);
        out.intersect_with(&self.closure_bits(j, &s.complement(width)));
        out
    }

    /// A new model keeping only the listed topologies, in the given order.
    pub fn select_topologies(&self, indices: &[usize]) -> Result<Self, ModelError> {
        if indices.is_empty() {
            return Err(ModelError::NoTopologies);
        }
        let mut rows = Vec::with_capacity(indices.len());
        for &j in indices {
            self.check_index(j)?;
            rows.push(self.rows[j - 1].clone());
        }
        Ok(ClosureModel {
            names: self.names.clone(),
            n: rows.len(),
            rows,
            kind: self.kind,
        })
    }

    /// Stable content hash, used to tie transformations to their model.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.names.hash(&mut h);
        self.n.hash(&mut h);
        self.rows.hash(&mut h);
        h.finish()
    }

    pub fn with_kind(mut self, kind: ModelKind) -> Self {
        self.kind = kind;
        self
    }

    /// Re-homes the model into another storage type.
    pub fn convert<C: Bits>(&self) -> Result<ClosureModel<C>, ModelError> {
        let width = self.atom_count();
        let rows = (1..=self.n)
            .map(|j| (0..width).map(|a| self.row(j, a).convert::<C>()).collect())
            .collect();
        ClosureModel::new(self.names.clone(), rows, self.kind)
    }

    /// Parses a mask given as comma-separated atom names or as a hex string.
    pub fn parse_mask(&self, text: &str) -> Result<AtomMask<B>, ModelError> {
        let text = text.trim();
        let width = self.atom_count();
        if text.starts_with("0x") || text.starts_with("0X") {
            return AtomMask::from_hex(text, width);
        }
        let body = text
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .unwrap_or(text);
        let mut mask = AtomMask::empty(width);
        for name in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let atom = self
                .atom_index(name)
                .ok_or_else(|| ModelError::UnknownAtom(name.to_string()))?;
            mask.insert(atom);
        }
        Ok(mask)
    }

    pub fn mask_names(&self, mask: &AtomMask<B>) -> Vec<String> {
        mask.atoms().map(|a| self.names[a].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> ClosureModel {
        // 0 <= 1 <= 2 in the specialization order, one topology.
        ClosureModel::from_atom_lists(
            vec!["a".into(), "b".into(), "c".into()],
            &[vec![vec![0], vec![0, 1], vec![0, 1, 2]]],
            ModelKind::PointSpace,
        )
        .unwrap()
    }

    #[test]
    fn closure_is_union_of_rows() {
        let m = chain3();
        let s = AtomMask::from_atoms([1], 3).unwrap();
        assert_eq!(
            m.closure(1, &s).unwrap().atoms().collect::<Vec<_>>(),
            [0, 1]
        );
        assert!(m.closure(1, &m.empty_mask()).unwrap().is_empty());
    }

    #[test]
    fn interior_and_frontier() {
        let m = chain3();
        let s = AtomMask::from_atoms([1, 2], 3).unwrap();
        assert_eq!(
            m.interior(1, &s).unwrap().atoms().collect::<Vec<_>>(),
            [1, 2]
        );
        let f = m.frontier(1, &s).unwrap();
        assert_eq!(f.atoms().collect::<Vec<_>>(), [0]);
        assert_eq!(m.frontier(1, &s.complement()).unwrap(), f);
    }

    #[test]
    fn errors_on_bad_index_and_width() {
        let m = chain3();
        let s = m.empty_mask();
        assert!(matches!(
            m.closure(2, &s),
            Err(ModelError::IndexOutOfRange { index: 2, n: 1 })
        ));
        assert!(matches!(
            m.closure(0, &s),
            Err(ModelError::IndexOutOfRange { .. })
        ));
        let wrong = AtomMask::<u32>::empty(4);
        assert!(matches!(
            m.interior(1, &wrong),
            Err(ModelError::WidthMismatch {
                expected: 3,
                found: 4
            })
        ));
    }

    #[test]
    fn capacity_is_enforced() {
        let names: Vec<String> = (0..9).map(|i| format!("p{i}")).collect();
        let rows = vec![(0..9).map(|a| vec![a]).collect::<Vec<_>>()];
        let err = ClosureModel::<u8>::from_atom_lists(names, &rows, ModelKind::PointSpace);
        assert!(matches!(
            err,
            Err(ModelError::CapacityExceeded { width: 9, .. })
        ));
    }

    #[test]
    fn mask_parsing_accepts_names_and_hex() {
        let m = chain3();
        assert_eq!(m.parse_mask("a,c").unwrap(), m.parse_mask("0x5").unwrap());
        assert_eq!(
            m.parse_mask("{b}").unwrap().atoms().collect::<Vec<_>>(),
            [1]
        );
        assert!(m.parse_mask("").unwrap().is_empty());
        assert!(matches!(m.parse_mask("z"), Err(ModelError::UnknownAtom(_))));
    }
}
