use proptest::prelude::*;

use ktf_core::catalog::{p_model, staircase};
use ktf_core::search::PreorderSpace;
use ktf_core::set_model::{
    disjoint_union, embed, from_json, to_json, validate, ModelKind, EXTENSIVE, IDEMPOTENT, NESTED,
};
use ktf_core::{AtomMask, Mask, Model, WideBits};

fn space() -> impl Strategy<Value = PreorderSpace> {
    (1usize..=8).prop_flat_map(|p| {
        prop::collection::vec(0u32..(1 << p), p).prop_map(|rel| PreorderSpace::from_relation(&rel))
    })
}

fn space_and_sets() -> impl Strategy<Value = (PreorderSpace, u32, u32)> {
    space().prop_flat_map(|s| {
        let top = 1u32 << s.points();
        (Just(s), 0..top, 0..top)
    })
}

proptest! {
    #[test]
    fn finite_spaces_are_closure_algebras(s in space()) {
        let report = validate(&s.to_model());
        prop_assert!(report.check(EXTENSIVE).unwrap().passed);
        prop_assert!(report.check(IDEMPOTENT).unwrap().passed);
        prop_assert!(report.check(NESTED).unwrap().passed);
    }

    #[test]
    fn closure_laws((s, a, b) in space_and_sets()) {
        let m = s.to_model();
        let w = m.atom_count();
        let (ma, mb) = (Mask::from_bits(a, w), Mask::from_bits(b, w));
        let k = |x: &Mask| m.closure(1, x).unwrap();
        prop_assert!(ma.is_subset(&k(&ma)));
        prop_assert_eq!(k(&k(&ma)), k(&ma));
        prop_assert_eq!(k(&ma.union(&mb)), k(&ma).union(&k(&mb)));
        prop_assert_eq!(m.interior(1, &ma).unwrap(), k(&ma.complement()).complement());
        prop_assert_eq!(m.frontier(1, &ma).unwrap(), m.frontier(1, &ma.complement()).unwrap());
        prop_assert_eq!(*k(&ma).bits(), s.closure(a));
    }

    #[test]
    fn model_files_round_trip(s in space()) {
        let m = s.to_model();
        let text = to_json(&m);
        let back: Model = from_json(&text, ModelKind::PointSpace).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(to_json(&back), text);
    }

    #[test]
    fn masks_round_trip_through_hex(bits in any::<u32>(), width in 1usize..=32) {
        let m = Mask::from_bits(bits, width);
        prop_assert_eq!(Mask::from_hex(&m.to_hex(), width).unwrap(), m.clone());
        prop_assert_eq!(m.complement().complement(), m);
    }

    #[test]
    fn union_acts_componentwise(
        (s, a, _) in space_and_sets(),
        (t, b, _) in space_and_sets(),
    ) {
        let (ms, mt) = (s.to_model(), t.to_model());
        let sa = Mask::from_bits(a, ms.atom_count());
        let tb = Mask::from_bits(b, mt.atom_count());
        let parts = [&ms, &mt];
        let (u, set) = disjoint_union::<u32, WideBits>(&parts, &[sa.clone(), tb.clone()]).unwrap();
        let expected = embed::<u32, WideBits>(&parts, 0, &ms.closure(1, &sa).unwrap())
            .union(&embed(&parts, 1, &mt.closure(1, &tb).unwrap()));
        prop_assert_eq!(u.closure(1, &set).unwrap(), expected);
    }
}

#[test]
fn builtin_models_are_saturated() {
    let mut models = vec![p_model()];
    for n in 1..=3 {
        for m in 0..=n {
            models.push(staircase(n, m).unwrap());
        }
    }
    for m in &models {
        let report = validate(m);
        assert!(report.is_valid(), "{report}");
        assert!(report.saturation_agreement());
    }
}

#[test]
fn wide_masks_hold_many_atoms() {
    let m = AtomMask::<WideBits>::from_atoms([0, 70, 199], 200).unwrap();
    assert_eq!(m.len(), 3);
    assert_eq!(m.complement().len(), 197);
    assert!(AtomMask::<u32>::from_atoms([0], 40).is_err());
}
