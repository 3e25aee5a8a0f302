//! The acceptance suite: twelve numbered checks that tie the symbolic
//! algebra, the models and the searches together.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::catalog::{all_builtins, constants, kf1_reference, p_model, set34_witness, staircase};
use crate::engine::{
    complement_is_involution, distinct_operators, monoid_closure, orbit_size, partial_order,
    transitive_closure, EngineError, Evaluator, Separator, DEFAULT_MONOID_CAP,
};
use crate::search::{
    exhaustive_at, find_min_points, randomized_at, SearchConfig, SearchError, Target,
};
use crate::set_model::{disjoint_union, AtomMask, ClosureModel};
use crate::word::{
    count_kge, enumerate_kge, enumerate_kge_flat, is_kge, normalize, p_polynomial, rules,
    Generator, OpWord, Rhs, WordType,
};
use crate::{Mask, Model, WideBits};

/// Result of one criterion.
#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    /// An internal error stopped the check before it could decide.
    pub errored: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CriterionOutcome {
    pub fn within_budget(&self) -> bool {
        self.elapsed <= self.budget
    }
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {:<14} {:>8.2}s / {:>4}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }
}

type Check = fn() -> Result<(bool, String), EngineError>;

/// A named, budgeted check.
#[derive(Clone, Copy)]
pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub budget: Duration,
    check: Check,
}

impl Criterion {
    /// Runs the check; the outcome fails if the check fails or overruns its budget.
    pub fn run(&self) -> CriterionOutcome {
        let start = Instant::now();
        let result = (self.check)();
        let elapsed = start.elapsed();
        let (ok, errored, mut detail) = match result {
            Ok((ok, detail)) => (ok, false, detail),
            Err(e) => (false, true, format!("error: {e}")),
        };
        if elapsed > self.budget {
            detail.push_str(&format!("; over budget ({:.1}s)", elapsed.as_secs_f64()));
        }
        CriterionOutcome {
            id: self.id,
            name: self.name,
            passed: ok && elapsed <= self.budget,
            errored,
            detail,
            elapsed,
            budget: self.budget,
        }
    }
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

pub const CRITERIA: [Criterion; 12] = [
    Criterion {
        id: 1,
        name: "counting",
        budget: secs(1),
        check: counting,
    },
    Criterion {
        id: 2,
        name: "grammar",
        budget: secs(5),
        check: grammar_closure,
    },
    Criterion {
        id: 3,
        name: "rules",
        budget: secs(5),
        check: rule_soundness,
    },
    Criterion {
        id: 4,
        name: "normalization",
        budget: secs(30),
        check: normalization_soundness,
    },
    Criterion {
        id: 5,
        name: "distinct-n2",
        budget: secs(2),
        check: distinct_two,
    },
    Criterion {
        id: 6,
        name: "distinct-n3",
        budget: secs(120),
        check: distinct_three,
    },
    Criterion {
        id: 7,
        name: "orbits",
        budget: secs(10),
        check: classical_orbits,
    },
    Criterion {
        id: 8,
        name: "order-n1",
        budget: secs(5),
        check: order_one,
    },
    Criterion {
        id: 9,
        name: "inequalities",
        budget: secs(1),
        check: inequalities,
    },
    Criterion {
        id: 10,
        name: "kfkf",
        budget: secs(30),
        check: kfkf_four,
    },
    Criterion {
        id: 11,
        name: "search",
        budget: secs(720),
        check: minimal_spaces,
    },
    Criterion {
        id: 12,
        name: "parity",
        budget: secs(2),
        check: parity,
    },
];

/// Looks a criterion up by number or name.
pub fn criterion(key: &str) -> Option<Criterion> {
    CRITERIA
        .iter()
        .copied()
        .find(|c| c.name == key || key.parse::<u8>().ok() == Some(c.id))
}

/// Runs the named suite, or every criterion for `all`.
pub fn run_suite(key: &str) -> Option<Vec<CriterionOutcome>> {
    if key == "all" {
        return Some(CRITERIA.iter().map(Criterion::run).collect());
    }
    criterion(key).map(|c| vec![c.run()])
}

/// Accumulates named sub-checks into one verdict and a summary line.
#[derive(Default)]
struct Report {
    ok: bool,
    parts: Vec<String>,
}

impl Report {
    fn new() -> Self {
        Report {
            ok: true,
            parts: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, text: impl Into<String>) {
        self.ok &= ok;
        let text = text.into();
        self.parts
            .push(if ok { text } else { format!("FAILED {text}") });
    }

    fn note(&mut self, text: impl Into<String>) {
        self.parts.push(text.into());
    }

    fn finish(self) -> Result<(bool, String), EngineError> {
        Ok((self.ok, self.parts.join("; ")))
    }
}

fn word(text: &str) -> OpWord {
    text.parse().expect("fixed word parses")
}

fn counting() -> Result<(bool, String), EngineError> {
    let mut r = Report::new();
    let expected = [17u64, 60, 157, 339, 642];
    let totals: Vec<u64> = (1..=5).map(|n| count_kge::<u64>(n).total).collect();
    r.check(totals == expected, format!("totals {totals:?}"));
    let table = &constants().p_table;
    r.check(
        (1..=5).all(|n| table.get(&n) == Some(&expected[n as usize - 1])),
        "published table agrees",
    );
    let poly_ok = (1..=50).all(|n| count_kge::<u64>(n).total == p_polynomial::<u64>(n));
    r.check(poly_ok, "p(n) for n <= 50");
    let types_ok = (1..=10).all(|n| {
        count_kge::<u64>(n)
            .per_type
            .iter()
            .all(|&(t, c)| c == constants().type_count(t, n))
    });
    r.check(types_ok, "32 type formulas for n <= 10");
    let enum_ok = (1..=5usize).all(|n| {
        let counts = count_kge::<u64>(n as u64);
        enumerate_kge(n)
            .iter()
            .zip(&counts.per_type)
            .all(|((t, words), (u, c))| t == u && words.len() as u64 == *c)
    });
    r.check(enum_ok, "enumeration sizes for n <= 5");
    r.finish()
}

fn grammar_closure() -> Result<(bool, String), EngineError> {
    let mut r = Report::new();
    let mut products = 0usize;
    let mut bad = Vec::new();
    for n in 1..=4usize {
        let words = enumerate_kge_flat(n);
        for w in &words {
            for g in Generator::even_set(n as u16) {
                let v = normalize(&w.prepend(g), n)?;
                products += 1;
                if !is_kge(&v, n) {
                    bad.push(format!("{g}.{w}"));
                }
            }
        }
    }
    r.check(
        bad.is_empty(),
        format!("{products} products g.w stay canonical"),
    );
    if !bad.is_empty() {
        r.note(format!("first offenders {:?}", &bad[..bad.len().min(5)]));
    }
    r.finish()
}

fn rule_soundness() -> Result<(bool, String), EngineError> {
    let mut r = Report::new();
    let mut models: Vec<(String, Model)> = vec![("pmodel".into(), p_model())];
    for m in 0..=3 {
        models.push((format!("staircase:3:{m}"), staircase(3, m)?));
    }
    let mut instances = 0usize;
    for (name, model) in &models {
        let ev = Evaluator::new(model)?;
        for rule in rules() {
            for (lhs, rhs) in rule.instances(model.n() as u16) {
                let l = ev.compile(&OpWord::Gens(lhs.clone()))?;
                let rw = match rhs {
                    Rhs::Zero => OpWord::Zero,
                    Rhs::Word(g) => OpWord::Gens(g),
                };
                instances += 1;
                if l != ev.compile(&rw)? {
                    r.check(
                        false,
                        format!("{} on {name}: {} != {rw}", rule.name, OpWord::Gens(lhs)),
                    );
                }
            }
        }
    }
    r.check(
        r.ok,
        format!(
            "{} rules, {instances} instances on {} models",
            rules().len(),
            models.len()
        ),
    );
    r.finish()
}

/// Random words over `{k_j, i_j, f_j, c}` of length at most 8.
fn random_words(n: usize, count: usize, seed: u64) -> Vec<OpWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens = Generator::even_set(n as u16);
    gens.push(Generator::C);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(0..=8);
            OpWord::Gens(
                (0..len)
                    .map(|_| gens[rng.gen_range(0..gens.len())])
                    .collect(),
            )
        })
        .collect()
}

fn normalization_soundness() -> Result<(bool, String), EngineError> {
    const SAMPLES: usize = 10_000;
    let mut r = Report::new();
    for n in [2usize, 3] {
        let models = (0..=n)
            .map(|m| staircase(n, m))
            .collect::<Result<Vec<_>, _>>()?;
        let evs = models
            .iter()
            .map(Evaluator::new)
            .collect::<Result<Vec<_>, _>>()?;
        let words = random_words(n, SAMPLES, 0x006b_7466 + n as u64);
        let failures: Vec<String> = words
            .par_iter()
            .map(|w| -> Result<Option<String>, EngineError> {
                let v = normalize(w, n)?;
                for ev in &evs {
                    if ev.compile(w)? != ev.compile(&v)? {
                        return Ok(Some(format!("{w} -> {v}")));
                    }
                }
                Ok(None)
            })
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .flatten()
            .collect();
        r.check(
            failures.is_empty(),
            format!("n={n}: {SAMPLES} words on {} staircases", models.len()),
        );
        if let Some(f) = failures.first() {
            r.note(format!("first mismatch {f}"));
        }
    }
    r.finish()
}

fn distinct_two() -> Result<(bool, String), EngineError> {
    let mut r = Report::new();
    let p = p_model();
    let words = enumerate_kge_flat(2);
    let even = distinct_operators(&p, &words)?.len();
    r.check(
        words.len() == 60 && even == 60,
        format!("{even} of {} even words distinct", words.len()),
    );
    let ev = Evaluator::new(&p)?;
    let mut tables = HashSet::new();
    for w in &words {
        tables.insert(ev.compile(w)?);
        tables.insert(ev.compile(&w.prepend(Generator::C))?);
    }
    r.check(
        tables.len() == 120,
        format!("{} with complements", tables.len()),
    );
    r.finish()
}

/// A disjoint union realizing every operator in `words` (and its complement)
/// on one initial set, built from separation witnesses.
pub struct UnionWitness {
    pub model: ClosureModel<WideBits>,
    pub set: AtomMask<WideBits>,
    /// Staircase index and component set, in union order.
    pub components: Vec<(usize, Mask)>,
}

/// Adds witnesses greedily until the component images split `words` into
/// singletons, then appends an empty component so even and odd images differ.
pub fn union_witness(words: &[OpWord], sep: &Separator) -> Result<UnionWitness, EngineError> {
    let mut components: Vec<(usize, Mask)> = Vec::new();
    let mut evs: Vec<Evaluator<'_>> = Vec::new();
    let mut signatures: Vec<Vec<u32>> = vec![Vec::new(); words.len()];
    loop {
        let mut groups: BTreeMap<&[u32], Vec<usize>> = BTreeMap::new();
        for (i, s) in signatures.iter().enumerate() {
            groups.entry(s.as_slice()).or_default().push(i);
        }
        let Some(clash) = groups.values().find(|g| g.len() > 1).cloned() else {
            break;
        };
        let (a, b) = (&words[clash[0]], &words[clash[1]]);
        let w = sep
            .separate_cached(a, b)
            .ok_or_else(|| EngineError::ModelMismatch(format!("{a} and {b} are not separated")))?;
        evs.push(Evaluator::new(sep.model(w.m))?);
        let ev = evs.last().expect("just pushed");
        for (i, x) in words.iter().enumerate() {
            signatures[i].push(*ev.compile(x)?.image(&w.set).bits());
        }
        components.push((w.m, w.set));
    }
    let mut parts: Vec<&Model> = components.iter().map(|(m, _)| sep.model(*m)).collect();
    let mut sets: Vec<Mask> = components.iter().map(|(_, s)| s.clone()).collect();
    parts.push(sep.model(0));
    sets.push(AtomMask::empty(sep.model(0).atom_count()));
    let (model, set) = disjoint_union::<u32, WideBits>(&parts, &sets)?;
    Ok(UnionWitness {
        model,
        set,
        components,
    })
}

fn distinct_three() -> Result<(bool, String), EngineError> {
    let mut r = Report::new();
    let n = 3;
    let words = enumerate_kge_flat(n);
    let mut sep = Separator::new(n)?;
    sep.precompile(&words)?;
    let pairs: Vec<(usize, usize)> = (0..words.len())
        .flat_map(|i| (i + 1..words.len()).map(move |j| (i, j)))
        .collect();
    let unseparated = pairs
        .par_iter()
        .filter(|&&(i, j)| sep.separate_cached(&words[i], &words[j]).is_none())
        .count();
    r.check(
        words.len() == 157 && unseparated == 0,
        format!("{} pairs separated, {unseparated} not", pairs.len()),
    );
    if unseparated > 0 {
        return r.finish();
    }
    let witness = union_witness(&words, &sep)?;
    let mut gens = Generator::even_set(n as u16);
    gens.push(Generator::C);
    let size = orbit_size(&witness.model, witness.set.bits(), &gens);
    r.check(
        size == 314,
        format!(
            "union of {} components ({} atoms) has orbit {size}",
            witness.components.len() + 1,
            witness.model.atom_count()
        ),
    );
    r.finish()
}

/// Largest orbit over every initial set, with the first set attaining it.
fn max_orbit(model: &Model, gens: &[Generator]) -> (usize, u32) {
    let sizes: Vec<usize> = (0..1u32 << model.atom_count())
        .into_par_iter()
        .map(|s| orbit_size(model, &s, gens))
        .collect();
    sizes.iter().enumerate().fold(
        (0, 0),
        |best, (s, &n)| if n > best.0 { (n, s as u32) } else { best },
    )
}

fn classical_orbits() -> Result<(bool, String), EngineError> {
    let mut r = Report::new();
    let p = p_model();
    let cases = [("k2,c", 14usize), ("k1,k2,c", 26), ("k2,f2,c", 34)];
    let mut short = Vec::new();
    for (gens, bound) in cases {
        let g = Generator::parse_list(gens)?;
        let (best, set) = max_orbit(&p, &g);
        r.check(
            best <= bound,
            format!(
                "{{{gens}}} max {best} <= {bound} at {}",
                AtomMask::<u32>::from_bits(set, 13).to_hex()
            ),
        );
        if best < bound {
            short.push((gens, bound));
        }
    }
    for (gens, bound) in short {
        if bound != 34 {
            r.check(
                false,
                format!("{{{gens}}} does not reach {bound} on the P-model"),
            );
            continue;
        }
        let (model, set) = set34_witness();
        let g = Generator::parse_list("k1,f1,c")?;
        let size = orbit_size(&model, set.bits(), &g);
        let (best, _) = max_orbit(&model, &g);
        r.check(
            size == 34 && best == 34,
            format!(
                "34 reached on the {}-point search witness at {} (max {best})",
                model.atom_count(),
                set
            ),
        );
    }
    r.finish()
}

/// A square relation over a word list, `rel[a][b]` meaning `a <= b`.
pub type Relation = Vec<Vec<bool>>;

/// The order on the 17 one-topology words computed on `kf1ref`, and the
/// closure of the published Hasse edges, as matrices over the sorted words.
pub fn order_one_matrices() -> Result<(Vec<OpWord>, Relation, Relation), EngineError> {
    let model = kf1_reference();
    let result = partial_order(&model, &enumerate_kge_flat(1))?;
    let n = result.len();
    let mut fig = vec![vec![false; n]; n];
    for (i, row) in fig.iter_mut().enumerate() {
        row[i] = true;
    }
    for (a, b) in &constants().kf1_order.edges {
        let (Some(i), Some(j)) = (result.position(a), result.position(b)) else {
            return Err(EngineError::ModelMismatch(format!(
                "edge {a} <= {b} names a non-canonical word"
            )));
        };
        fig[i][j] = true;
    }
    Ok((
        result.elements.clone(),
        result.leq.clone(),
        transitive_closure(&fig),
    ))
}

fn order_one() -> Result<(bool, String), EngineError> {
    let mut r = Report::new();
    let (elements, leq, fig) = order_one_matrices()?;
    let n = elements.len();
    let pairs = (0..n).flat_map(|a| (0..n).map(move |b| (a, b)));
    let missing = pairs
        .clone()
        .filter(|&(a, b)| fig[a][b] && !leq[a][b])
        .count();
    let extra = pairs.filter(|&(a, b)| leq[a][b] && !fig[a][b]).count();
    r.check(
        missing == 0,
        format!(
            "contains the closure of {} edges",
            constants().kf1_order.edges.len()
        ),
    );
    let result = partial_order(&kf1_reference(), &elements)?;
    r.check(
        result.class_count() == 17 && result.is_antisymmetric_on_classes(),
        format!("{} classes, antisymmetric", result.class_count()),
    );
    let zero = result.position(&OpWord::Zero).expect("0 is canonical");
    let top = result.position(&word("k1")).expect("k1 is canonical");
    r.check((0..n).all(|i| leq[zero][i]), "0 is bottom");
    r.check((0..n).all(|i| leq[i][top]), "k1 is top");
    r.note(if extra == 0 {
        "equal to the published order".to_string()
    } else {
        format!("{extra} relations beyond the published order")
    });
    r.finish()
}

/// The published inequalities among two-topology operators.
pub const INEQUALITIES: [(&str, &str); 9] = [
    ("f1 i1", "f1 i2"),
    ("f1 k1", "f1 k2"),
    ("f1 k1 i*", "f1 i2 k* i*"),
    ("f1 i1 k*", "f1 k2 i* k*"),
    ("f1 f1", "f1 k2 f1"),
    ("f1 k2 f1", "f1 f2"),
    ("f1 k2 i* k*", "f1 k2"),
    ("f1 i2 k* i*", "f1 i2"),
    ("f1 k2", "f1 f2"),
];

fn inequalities() -> Result<(bool, String), EngineError> {
    let mut r = Report::new();
    let p = p_model();
    let ev = Evaluator::new(&p)?;
    for (a, b) in INEQUALITIES {
        let ok = ev.compile(&word(a))?.leq(&ev.compile(&word(b))?);
        if !ok {
            r.check(false, format!("{a} <= {b}"));
        }
    }
    r.check(
        r.ok,
        format!("{} inequalities over 8192 sets", INEQUALITIES.len()),
    );
    r.finish()
}

fn kfkf_four() -> Result<(bool, String), EngineError> {
    let mut r = Report::new();
    let n = 4;
    let symbolic = WordType::KFKF.count::<u64>(n as u64);
    let tabled = constants().type_count(WordType::KFKF, n as u64);
    let words = enumerate_kge(n)
        .into_iter()
        .find(|(t, _)| *t == WordType::KFKF)
        .map(|(_, w)| w)
        .unwrap_or_default();
    r.check(
        symbolic == 31 && tabled == 31 && words.len() == 31,
        format!("count {symbolic}, table {tabled}, listed {}", words.len()),
    );
    let mut sep = Separator::new(n)?;
    sep.precompile(&words)?;
    let mut unseparated = 0;
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            if sep.separate_cached(&words[i], &words[j]).is_none() {
                unseparated += 1;
            }
        }
    }
    r.check(
        unseparated == 0,
        format!(
            "{} pairs separated on 5 staircases",
            words.len() * (words.len() - 1) / 2
        ),
    );
    r.finish()
}

fn search_error(e: SearchError) -> EngineError {
    EngineError::ModelMismatch(e.to_string())
}

fn minimal_spaces() -> Result<(bool, String), EngineError> {
    let mut r = Report::new();
    let config = SearchConfig {
        limit: 5,
        ..SearchConfig::default()
    };
    let even = find_min_points(Target::Even17, &config).map_err(search_error)?;
    let distinct = distinct_operators(&even.model(), &enumerate_kge_flat(1))?.len();
    r.check(
        even.points == 4 && even.minimal && distinct == 17,
        format!("EVEN17 first at {} points", even.points),
    );

    let config = SearchConfig {
        limit: 6,
        ..SearchConfig::default()
    };
    let start = Instant::now();
    let refuted = find_min_points(Target::Set14, &config);
    let took = start.elapsed();
    match refuted {
        Err(SearchError::NotFoundWithinLimit { .. }) => r.check(
            took < Duration::from_secs(120),
            format!("no 14-set on <= 6 points ({:.1}s)", took.as_secs_f64()),
        ),
        Ok(o) => r.check(false, format!("unexpected 14-set on {} points", o.points)),
        Err(e) => return Err(search_error(e)),
    }
    let start = Instant::now();
    let (found, examined) = exhaustive_at(Target::Set14, 7);
    let took = start.elapsed();
    match found {
        Some((space, a)) => {
            let g = Generator::parse_list("k1,c")?;
            let size = orbit_size(&space.to_model(), &a, &g);
            r.check(
                size == 14 && took < Duration::from_secs(600),
                format!(
                    "7-point 14-set after {examined} spaces ({:.1}s)",
                    took.as_secs_f64()
                ),
            );
        }
        None => r.check(false, "no 7-point 14-set"),
    }

    // The 34-set question is reported but never fails the criterion.
    let mut smaller = 0u64;
    let mut below_eight = true;
    for points in 6..=7 {
        let (found, examined) = exhaustive_at(Target::Set34, points);
        smaller += examined;
        below_eight &= found.is_none();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SET34_SEED);
    let deadline = Instant::now() + SET34_BUDGET;
    let (found, examined) = randomized_at(Target::Set34, 8, &mut rng, deadline);
    r.note(match (found.is_some(), below_eight) {
        (true, true) => format!(
            "34-set minimum is 8 ({smaller} spaces on 6-7 points ruled out, 8-point witness after {examined})"
        ),
        (true, false) => "34-set found below 8 points".to_string(),
        (false, _) => format!("8-point 34-set not found in {}s: unverified", SET34_BUDGET.as_secs()),
    });
    r.finish()
}

/// Seed and time budget of the non-blocking 34-set search.
pub const SET34_SEED: u64 = 1;
pub const SET34_BUDGET: Duration = Duration::from_secs(20);

fn parity() -> Result<(bool, String), EngineError> {
    let mut r = Report::new();
    let p = p_model();
    let even = monoid_closure(&p, &Generator::even_set(2), DEFAULT_MONOID_CAP)?;
    let mut gens = Generator::even_set(2);
    gens.push(Generator::C);
    let full = monoid_closure(&p, &gens, DEFAULT_MONOID_CAP)?;
    r.check(
        full.len() == 2 * even.len() && even.len() == 60,
        format!("P-model monoid {} = 2 x {}", full.len(), even.len()),
    );
    let mut models = 0;
    for (name, model) in all_builtins() {
        if model.n() > 3 {
            continue;
        }
        let mut gens = Generator::even_set(model.n() as u16);
        gens.push(Generator::C);
        let tables: Vec<_> = monoid_closure(&model, &gens, DEFAULT_MONOID_CAP)?
            .into_iter()
            .map(|e| e.table)
            .collect();
        models += 1;
        if !complement_is_involution(&tables) {
            r.check(false, format!("complement on {name}"));
        }
    }
    r.check(
        r.ok,
        format!("complement is an involution without fixed points on {models} models"),
    );
    r.finish()
}
