use std::time::{Duration, Instant};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ktf_core::engine::{distinct_operators, orbit_size};
use ktf_core::search::{
    all_spaces, brute_force_preorder_count, exhaustive_at, find_min_points, randomized_at,
    PreorderSpace, SearchConfig, SearchError, SpaceProbe, Target,
};
use ktf_core::set_model::validate;
use ktf_core::word::enumerate_kge_flat;
use ktf_core::Generator;

#[test]
fn labeled_counts_match_the_brute_force_counter() {
    for p in 0..=5 {
        assert_eq!(
            all_spaces(p).len() as u64,
            brute_force_preorder_count(p),
            "{p} points"
        );
    }
    assert_eq!(all_spaces(5).len(), 6942);
}

#[test]
fn six_point_count() {
    let mut n = 0u64;
    ktf_core::search::enumerate_spaces(6, &mut |_| n += 1);
    assert_eq!(n, 209_527);
}

#[test]
fn emitted_spaces_validate() {
    for s in all_spaces(4) {
        assert!(s.is_preorder());
        assert!(validate(&s.to_model()).is_valid());
    }
}

fn space() -> impl Strategy<Value = PreorderSpace> {
    (1usize..=7).prop_flat_map(|p| {
        prop::collection::vec(0u32..(1 << p), p).prop_map(|rel| PreorderSpace::from_relation(&rel))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // The table-driven probe and the engine's generic orbit agree, and both
    // respect the classical bounds of 14 and 34.
    #[test]
    fn orbit_bounds_on_random_spaces(s in space()) {
        let model = s.to_model();
        let mut probe = SpaceProbe::new(&s);
        let kc = Generator::parse_list("k1,c").unwrap();
        let kfc = Generator::parse_list("k1,f1,c").unwrap();
        for a in 0..1u32 << s.points() {
            let x = probe.orbit(a, false);
            let y = probe.orbit(a, true);
            prop_assert_eq!(x, orbit_size(&model, &a, &kc));
            prop_assert_eq!(y, orbit_size(&model, &a, &kfc));
            prop_assert!(x <= 14 && y <= 34);
        }
        let even = distinct_operators(&model, &enumerate_kge_flat(1)).unwrap().len();
        prop_assert_eq!(probe.even_operator_count(), even);
    }
}

#[test]
fn even17_witness_is_real() {
    let out = find_min_points(Target::Even17, &SearchConfig::default()).unwrap();
    assert_eq!(out.points, 4);
    assert!(out.set.is_none());
    let words = enumerate_kge_flat(1);
    assert_eq!(distinct_operators(&out.model(), &words).unwrap().len(), 17);
    for s in all_spaces(3) {
        assert!(distinct_operators(&s.to_model(), &words).unwrap().len() < 17);
    }
}

#[test]
fn set14_refuted_below_seven() {
    let config = SearchConfig {
        limit: 6,
        ..SearchConfig::default()
    };
    assert!(matches!(
        find_min_points(Target::Set14, &config),
        Err(SearchError::NotFoundWithinLimit { limit: 6, .. })
    ));
}

#[test]
fn exhaustive_range_needs_the_bounded_flag() {
    let config = SearchConfig {
        limit: 8,
        ..SearchConfig::default()
    };
    assert!(matches!(
        find_min_points(Target::Set34, &config),
        Err(SearchError::OutOfExhaustiveRange { .. })
    ));
    let config = SearchConfig {
        limit: 17,
        bounded: true,
        ..SearchConfig::default()
    };
    assert!(matches!(
        find_min_points(Target::Set34, &config),
        Err(SearchError::TooManyPoints(17))
    ));
}

#[test]
fn randomized_search_is_reproducible() {
    let run = || {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let deadline = Instant::now() + Duration::from_secs(60);
        randomized_at(Target::Set34, 8, &mut rng, deadline)
    };
    let (a, na) = run();
    let (b, nb) = run();
    assert_eq!(na, nb);
    let (space, set) = a.expect("seed 3 finds a witness quickly");
    assert_eq!(Some((space.clone(), set)), b);
    let g = Generator::parse_list("k1,f1,c").unwrap();
    assert_eq!(orbit_size(&space.to_model(), &set, &g), 34);
}

#[test]
fn exhaustive_hits_are_deterministic() {
    let (a, na) = exhaustive_at(Target::Even17, 4);
    let (b, nb) = exhaustive_at(Target::Even17, 4);
    assert_eq!(a, b);
    assert_eq!(na, nb);
}
