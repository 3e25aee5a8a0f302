//! Finite topologies as specialization preorders.

use crate::set_model::{ClosureModel, ModelKind};
use crate::Model;

/// Largest point count for which exhaustive enumeration is offered.
pub const EXHAUSTIVE_POINT_LIMIT: usize = 7;
/// Largest point count a [`PreorderSpace`] can hold.
pub const MAX_POINTS: usize = 16;

/// A finite topology on `points` points, given by its specialization preorder:
/// `below[a]` is the closure of `{a}`, i.e. every `b` with `b <= a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PreorderSpace {
    points: usize,
    below: Vec<u32>,
}

impl PreorderSpace {
    pub fn discrete(points: usize) -> Self {
        assert!(points <= MAX_POINTS);
        PreorderSpace {
            points,
            below: (0..points).map(|a| 1 << a).collect(),
        }
    }

    /// The reflexive transitive closure of `relation` (`relation[a]` has bit `b`
    /// set when `b <= a`).
    pub fn from_relation(relation: &[u32]) -> Self {
        let points = relation.len();
        assert!(points <= MAX_POINTS);
        let mut below: Vec<u32> = relation
            .iter()
            .enumerate()
            .map(|(a, r)| r | 1 << a)
            .collect();
        loop {
            let mut changed = false;
            for a in 0..points {
                let mut acc = below[a];
                for b in 0..points {
                    if below[a] >> b & 1 == 1 {
                        acc |= below[b];
                    }
                }
                if acc != below[a] {
                    below[a] = acc;
                    changed = true;
                }
            }
            if !changed {
                return PreorderSpace { points, below };
            }
        }
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn below(&self) -> &[u32] {
        &self.below
    }

    /// `b <= a` in the specialization preorder.
    pub fn leq(&self, b: usize, a: usize) -> bool {
        self.below[a] >> b & 1 == 1
    }

    pub fn is_preorder(&self) -> bool {
        (0..self.points).all(|a| self.leq(a, a))
            && (0..self.points).all(|a| {
                (0..self.points)
                    .filter(|&b| self.leq(b, a))
                    .all(|b| self.below[b] & !self.below[a] == 0)
            })
    }

    pub fn closure(&self, s: u32) -> u32 {
        let mut out = 0;
        let mut rest = s;
        while rest != 0 {
            let a = rest.trailing_zeros() as usize;
            out |= self.below[a];
            rest &= rest - 1;
        }
        out
    }

    /// Closure table over all `2^points` subsets.
    pub fn closure_table(&self) -> Vec<u32> {
        let size = 1usize << self.points;
        let mut t = vec![0u32; size];
        for s in 1..size {
            let low = s.trailing_zeros() as usize;
            t[s] = t[s & (s - 1)] | self.below[low];
        }
        t
    }

    /// Row-major bit encoding of the relation, for ordering and dedup.
    pub fn encoding(&self) -> u128 {
        let mut code = 0u128;
        for a in 0..self.points {
            for b in 0..self.points {
                if self.leq(b, a) {
                    code |= 1 << (a * self.points + b);
                }
            }
        }
        code
    }

    /// Least encoding over all relabelings of the points.
    pub fn canonical_encoding(&self) -> u128 {
        let p = self.points;
        let mut perm: Vec<usize> = (0..p).collect();
        let mut best = u128::MAX;
        let mut c = vec![0usize; p];
        let mut eval = |perm: &[usize]| {
            let mut code = 0u128;
            for a in 0..p {
                for b in 0..p {
                    if self.leq(perm[b], perm[a]) {
                        code |= 1 << (a * p + b);
                    }
                }
            }
            best = best.min(code);
        };
        eval(&perm);
        let mut i = 0;
        while i < p {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                eval(&perm);
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        best
    }

    pub fn to_model(&self) -> Model {
        let names: Vec<String> = (0..self.points).map(|a| format!("p{a}")).collect();
        let rows: Vec<Vec<usize>> = (0..self.points)
            .map(|a| (0..self.points).filter(|&b| self.leq(b, a)).collect())
            .collect();
        ClosureModel::from_atom_lists(names, &[rows], ModelKind::PointSpace)
            .expect("preorder rows form a valid model")
    }

    /// Extends by a new last point `p` with `D` below it and `U` above it.
    fn extend(&self, down: u32, up: u32) -> Self {
        let p = self.points;
        let mut below = self.below.clone();
        for (a, row) in below.iter_mut().enumerate() {
            if up >> a & 1 == 1 {
                *row |= 1 << p;
            }
        }
        below.push(down | 1 << p);
        PreorderSpace {
            points: p + 1,
            below,
        }
    }

    fn down_sets(&self) -> Vec<u32> {
        (0..1u32 << self.points)
            .filter(|&s| self.closure(s) == s)
            .collect()
    }

    /// Up-closed sets: complements of down-closed sets.
    fn up_sets(&self, downs: &[u32]) -> Vec<u32> {
        let full = (1u32 << self.points) - 1;
        downs.iter().map(|d| full & !d).collect()
    }
}

/// Visits every labeled topology on `points` points exactly once.
///
/// A preorder on `p + 1` points is a preorder on the first `p` plus a down-set
/// `D` and an up-set `U` for the new point, where everything in `D` lies below
/// everything in `U`.
pub fn enumerate_spaces(points: usize, visit: &mut dyn FnMut(&PreorderSpace)) {
    assert!(points <= MAX_POINTS);
    go(&PreorderSpace::discrete(0), points, visit);
}

/// Visits every labeled topology on `space.points() + 1` points that restricts
/// to `space` on its first points, in the order [`enumerate_spaces`] uses.
pub fn enumerate_extensions(space: &PreorderSpace, visit: &mut dyn FnMut(&PreorderSpace)) {
    assert!(space.points < MAX_POINTS);
    go(space, space.points + 1, visit);
}

fn go(space: &PreorderSpace, target: usize, visit: &mut dyn FnMut(&PreorderSpace)) {
    if space.points == target {
        visit(space);
        return;
    }
    let downs = space.down_sets();
    let ups = space.up_sets(&downs);
    for &u in &ups {
        // Everything in D must lie below every point of U.
        let mut allowed = (1u32 << space.points) - 1;
        let mut rest = u;
        while rest != 0 {
            let a = rest.trailing_zeros() as usize;
            allowed &= space.below[a];
            rest &= rest - 1;
        }
        for &d in &downs {
            if d & !allowed == 0 {
                go(&space.extend(d, u), target, visit);
            }
        }
    }
}

/// Every labeled topology on `points` points, collected.
pub fn all_spaces(points: usize) -> Vec<PreorderSpace> {
    let mut out = Vec::new();
    enumerate_spaces(points, &mut |s| out.push(s.clone()));
    out
}

/// One representative per homeomorphism class, least encoding first.
pub fn spaces_up_to_homeomorphism(points: usize) -> Vec<PreorderSpace> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    enumerate_spaces(points, &mut |s| {
        if seen.insert(s.canonical_encoding()) {
            out.push(s.clone());
        }
    });
    out.sort_by_key(|s| s.canonical_encoding());
    out
}

/// Counts preorders by testing every reflexive relation for transitivity.
/// Independent of [`enumerate_spaces`]; exponential in `points^2`.
pub fn brute_force_preorder_count(points: usize) -> u64 {
    let off: Vec<(usize, usize)> = (0..points)
        .flat_map(|a| (0..points).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut count = 0;
    for bits in 0u64..1 << off.len() {
        let mut rel = vec![vec![false; points]; points];
        for (a, row) in rel.iter_mut().enumerate() {
            row[a] = true;
        }
        for (i, &(a, b)) in off.iter().enumerate() {
            rel[a][b] = bits >> i & 1 == 1;
        }
        let transitive = (0..points).all(|a| {
            (0..points).all(|b| !rel[a][b] || (0..points).all(|c| !rel[b][c] || rel[a][c]))
        });
        if transitive {
            count += 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts_match_brute_force() {
        for p in 0..=4 {
            let mut n = 0u64;
            enumerate_spaces(p, &mut |s| {
                assert!(s.is_preorder());
                n += 1;
            });
            assert_eq!(n, brute_force_preorder_count(p), "points = {p}");
        }
    }

    #[test]
    fn no_duplicates() {
        let all = all_spaces(4);
        let mut codes: Vec<u128> = all.iter().map(|s| s.encoding()).collect();
        codes.sort();
        codes.dedup();
        assert_eq!(codes.len(), 355);
    }

    #[test]
    fn homeomorphism_classes() {
        assert_eq!(spaces_up_to_homeomorphism(3).len(), 9);
        assert_eq!(spaces_up_to_homeomorphism(4).len(), 33);
    }

    #[test]
    fn closure_table_and_model() {
        let s = PreorderSpace::from_relation(&[0, 0b01, 0b10]);
        assert_eq!(s.below(), [0b001, 0b011, 0b111]);
        let t = s.closure_table();
        assert_eq!(t[0b100], 0b111);
        assert!(crate::set_model::validate(&s.to_model()).is_valid());
    }
}
