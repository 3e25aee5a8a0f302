use std::collections::HashSet;

use ktf_core::catalog::{p_model, staircase};
use ktf_core::engine::{
    apply_word, distinct_operators, monoid_closure, orbit_size, Evaluator, Separator,
    DEFAULT_MONOID_CAP,
};
use ktf_core::word::{enumerate_kge_flat, normalize, rules, Generator, OpWord, Rhs};
use ktf_core::AtomMask;

#[test]
fn sixty_distinct_on_pmodel() {
    let p = p_model();
    let words = enumerate_kge_flat(2);
    assert_eq!(words.len(), 60);
    assert_eq!(distinct_operators(&p, &words).unwrap().len(), 60);
    let even = monoid_closure(&p, &Generator::even_set(2), DEFAULT_MONOID_CAP).unwrap();
    assert_eq!(even.len(), 60);
    let mut all_gens = Generator::even_set(2);
    all_gens.push(Generator::C);
    let full = monoid_closure(&p, &all_gens, DEFAULT_MONOID_CAP).unwrap();
    assert_eq!(full.len(), 120);
}

#[test]
fn rules_hold_on_staircases() {
    let mut models = vec![p_model()];
    for m in 0..=3 {
        models.push(staircase(3, m).unwrap());
    }
    for model in &models {
        let ev = Evaluator::new(model).unwrap();
        for rule in rules() {
            for (lhs, rhs) in rule.instances(model.n() as u16) {
                let l = ev.compile(&OpWord::Gens(lhs.clone())).unwrap();
                let r = match rhs {
                    Rhs::Zero => ev.compile(&OpWord::Zero).unwrap(),
                    Rhs::Word(g) => ev.compile(&OpWord::Gens(g)).unwrap(),
                };
                assert_eq!(l, r, "rule {} instance {}", rule.name, OpWord::Gens(lhs));
            }
        }
    }
}

#[test]
fn three_topology_pairs_separate() {
    let words = enumerate_kge_flat(3);
    assert_eq!(words.len(), 157);
    let mut sep = Separator::new(3).unwrap();
    sep.precompile(&words).unwrap();
    let mut missing = 0;
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            if sep.separate_cached(&words[i], &words[j]).is_none() {
                missing += 1;
                eprintln!("not separated: {} / {}", words[i], words[j]);
            }
        }
    }
    assert_eq!(missing, 0);
}

#[test]
fn classical_orbits() {
    let p = p_model();
    for (gens, expect) in [("k2,c", 14), ("k1,k2,c", 26), ("k2,f2,c", 34)] {
        let g = Generator::parse_list(gens).unwrap();
        let best = (0..8192u32).map(|s| orbit_size(&p, &s, &g)).max().unwrap();
        eprintln!("{gens}: {best} (bound {expect})");
        assert!(best <= expect);
    }
}

#[test]
fn normalization_matches_semantics_on_random_words() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for n in [2usize, 3] {
        let models: Vec<_> = (0..=n).map(|m| staircase(n, m).unwrap()).collect();
        let evs: Vec<_> = models.iter().map(|m| Evaluator::new(m).unwrap()).collect();
        let mut gens = Generator::even_set(n as u16);
        gens.push(Generator::C);
        let mut seen = HashSet::new();
        for _ in 0..300 {
            let len = rng.gen_range(0..=8);
            let w = OpWord::Gens(
                (0..len)
                    .map(|_| gens[rng.gen_range(0..gens.len())])
                    .collect(),
            );
            let c = normalize(&w, n).unwrap();
            seen.insert(c.clone());
            for ev in &evs {
                assert_eq!(
                    ev.compile(&w).unwrap(),
                    ev.compile(&c).unwrap(),
                    "{w} -> {c}"
                );
            }
        }
        let _ = apply_word(&models[0], &OpWord::identity(), &AtomMask::empty(13));
    }
}
