use crate::bits::Bits;

use super::{AtomMask, ClosureModel, ModelError, ModelKind};

/// The n-topological disjoint union of `models`, with `sets[i]` embedded into
/// component `i`.
///
/// Atoms are concatenated in component order and renamed `c<i>.<name>`. No
/// closure crosses a component boundary, so any operator acts componentwise
/// and a set pair separated in one component stays separated in the union.
/// The output storage `W` may be wider than the inputs.
pub fn disjoint_union<B: Bits, W: Bits>(
    models: &[&ClosureModel<B>],
    sets: &[AtomMask<B>],
) -> Result<(ClosureModel<W>, AtomMask<W>), ModelError> {
    let first = models.first().ok_or(ModelError::NoAtoms)?;
    if sets.len() != models.len() {
        return Err(ModelError::ComponentCount {
            models: models.len(),
            sets: sets.len(),
        });
    }
    let n = first.n();
    let mut offsets = Vec::with_capacity(models.len());
    let mut width = 0;
    for (m, s) in models.iter().zip(sets) {
        if m.n() != n {
            return Err(ModelError::TopologyCountMismatch {
                expected: n,
                found: m.n(),
            });
        }
        s.check_width(m.atom_count())?;
        offsets.push(width);
        width += m.atom_count();
    }

    let mut names = Vec::with_capacity(width);
    for (i, m) in models.iter().enumerate() {
        names.extend(m.names().iter().map(|name| format!("c{i}.{name}")));
    }

    let mut rows = Vec::with_capacity(n);
    for j in 1..=n {
        let mut topology = Vec::with_capacity(width);
        for (m, &offset) in models.iter().zip(&offsets) {
            for a in 0..m.atom_count() {
                let row = m.row(j, a);
                topology.push(AtomMask::from_atoms(
                    row.atoms().map(|b| b + offset),
                    width,
                )?);
            }
        }
        rows.push(topology);
    }

    let mut union_set = AtomMask::<W>::empty(width);
    for (s, &offset) in sets.iter().zip(&offsets) {
        for a in s.atoms() {
            union_set.insert(a + offset);
        }
    }

    let kind = if models.iter().all(|m| m.kind() == ModelKind::PointSpace) {
        ModelKind::PointSpace
    } else {
        ModelKind::BlockQuotient
    };
    Ok((ClosureModel::new(names, rows, kind)?, union_set))
}

/// Embeds a component-local mask into the union produced by [`disjoint_union`].
pub fn embed<B: Bits, W: Bits>(
    models: &[&ClosureModel<B>],
    component: usize,
    set: &AtomMask<B>,
) -> AtomMask<W> {
    let offset: usize = models[..component].iter().map(|m| m.atom_count()).sum();
    let width: usize = models.iter().map(|m| m.atom_count()).sum();
    let mut out = AtomMask::empty(width);
    for a in set.atoms() {
        out.insert(a + offset);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::WideBits;
    use crate::set_model::validate;

    fn sierpinski() -> ClosureModel<u32> {
        ClosureModel::from_atom_lists(
            vec!["o".into(), "x".into()],
            &[vec![vec![0, 1], vec![1]]],
            ModelKind::PointSpace,
        )
        .unwrap()
    }

    #[test]
    fn self_union_doubles_atoms_and_keeps_closures() {
        let m = sierpinski();
        let a = m.parse_mask("o").unwrap();
        let b = m.parse_mask("x").unwrap();
        let (u, set) = disjoint_union::<u32, u32>(&[&m, &m], &[a.clone(), b.clone()]).unwrap();
        assert_eq!(u.atom_count(), 4);
        assert_eq!(set.atoms().collect::<Vec<_>>(), [0, 3]);
        assert!(validate(&u).is_valid());
        for (i, s) in [a, b].iter().enumerate() {
            let embedded: AtomMask<u32> = embed(&[&m, &m], i, s);
            let closed: AtomMask<u32> = embed(&[&m, &m], i, &m.closure(1, s).unwrap());
            assert_eq!(u.closure(1, &embedded).unwrap(), closed);
        }
    }

    #[test]
    fn wide_output_storage() {
        let m = sierpinski();
        let parts: Vec<&ClosureModel<u32>> = std::iter::repeat_n(&m, 80).collect();
        let sets = vec![m.full_mask(); 80];
        let (u, set) = disjoint_union::<u32, WideBits>(&parts, &sets).unwrap();
        assert_eq!(u.atom_count(), 160);
        assert_eq!(set.len(), 160);
    }

    #[test]
    fn mismatched_topology_counts_are_rejected() {
        let m = sierpinski();
        let two = m.select_topologies(&[1, 1]).unwrap();
        let err = disjoint_union::<u32, u32>(&[&m, &two], &[m.empty_mask(), two.empty_mask()]);
        assert!(matches!(
            err,
            Err(ModelError::TopologyCountMismatch {
                expected: 1,
                found: 2
            })
        ));
    }

    #[test]
    fn mismatched_set_width_is_rejected() {
        let m = sierpinski();
        let err = disjoint_union::<u32, u32>(&[&m], &[AtomMask::empty(3)]);
        assert!(matches!(err, Err(ModelError::WidthMismatch { .. })));
    }
}
