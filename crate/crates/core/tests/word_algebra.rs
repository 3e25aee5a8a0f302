use ktf_core::word::{
    count_kge, enumerate_kge, enumerate_kge_flat, is_kge, normalize, normalize_with, parity_reduce,
    Generator, OpWord, Parity, Strategy as Rewrite, WordType,
};
use proptest::prelude::*;

fn gens_with_c(n: u16) -> Vec<Generator> {
    let mut g = Generator::even_set(n);
    g.push(Generator::C);
    g
}

#[test]
fn grammar_is_closed_under_every_generator() {
    for n in 1..=4u16 {
        let words = enumerate_kge_flat(n as usize);
        for w in &words {
            for g in Generator::even_set(n) {
                let out = normalize(&w.prepend(g), n as usize)
                    .unwrap_or_else(|e| panic!("{g} . {w}: {e}"));
                assert!(is_kge(&out, n as usize), "{g} . {w} -> {out}");
            }
        }
    }
}

#[test]
fn canonical_words_are_fixed_points() {
    for n in 1..=4 {
        for w in enumerate_kge_flat(n) {
            assert_eq!(normalize(&w, n).unwrap(), w);
        }
    }
}

#[test]
fn enumeration_matches_table_counts() {
    for n in 1..=6u64 {
        let counts = count_kge::<u64>(n);
        let groups = enumerate_kge(n as usize);
        for ((t, words), (t2, c)) in groups.iter().zip(&counts.per_type) {
            assert_eq!(t, t2);
            assert_eq!(words.len() as u64, *c, "{t} at n = {n}");
        }
        let total: usize = groups.iter().map(|(_, w)| w.len()).sum();
        assert_eq!(total as u64, counts.total);
    }
}

#[test]
fn type_listing_at_two_by_length() {
    let words = enumerate_kge_flat(2);
    let mut by_len = [0usize; 6];
    for w in &words {
        if !w.is_constant() {
            by_len[w.len()] += 1;
        }
    }
    // Zero is listed with the three-letter words.
    by_len[3] += 1;
    assert_eq!(by_len, [1, 6, 17, 23, 10, 3]);
    assert_eq!(WordType::ALL.len(), 32);
}

fn word_strategy(n: u16, max_len: usize) -> impl Strategy<Value = OpWord> {
    proptest::collection::vec(proptest::sample::select(gens_with_c(n)), 0..=max_len)
        .prop_map(OpWord::from_gens)
}

proptest! {
    #[test]
    fn normalize_is_idempotent(w in word_strategy(3, 8)) {
        let once = normalize(&w, 3).unwrap();
        prop_assert_eq!(normalize(&once, 3).unwrap(), once);
    }

    #[test]
    fn parity_reduction_commutes_with_normalization(w in word_strategy(3, 8)) {
        let reduced = parity_reduce(&w).into_word();
        prop_assert_eq!(normalize(&reduced, 3).unwrap(), normalize(&w, 3).unwrap());
    }

    #[test]
    fn parity_of_result_matches_input(w in word_strategy(2, 8)) {
        let out = normalize(&w, 2).unwrap();
        let even = parity_reduce(&w).parity == Parity::Even;
        prop_assert_eq!(out.is_even(), even);
    }

    #[test]
    fn leftmost_strategy_never_beats_shortlex(w in word_strategy(2, 6)) {
        let best = normalize(&w, 2).unwrap();
        if let Ok(other) = normalize_with(&w, 2, Rewrite::Leftmost) {
            prop_assert!(best <= other);
        }
    }

    #[test]
    fn text_round_trip(w in word_strategy(4, 8)) {
        let text = w.to_string();
        prop_assert_eq!(text.parse::<OpWord>().unwrap(), w);
    }
}
