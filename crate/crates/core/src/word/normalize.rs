use std::collections::{HashSet, VecDeque};

use super::{
    is_kge, parity_reduce, rules, Generator, Kind, OpWord, Parity, ParityReduced, Rhs, Rule,
    WordError, STAR,
};

/// Upper bound on the words visited while searching for the least normal form
/// of a single prefix extension.
const SEARCH_CAP: usize = 4096;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Explore every rewrite sequence and keep the shortlex-least irreducible word.
    #[default]
    Shortlex,
    /// Always rewrite the leftmost match, trying rules in table order.
    Leftmost,
}

/// Termination measure, compared lexicographically field by field.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Measure {
    pub len: usize,
    pub kinds: Vec<Kind>,
    /// Star positions holding an index other than 1, plus `f_x k_y` / `f_x i_y`
    /// pairs with `y < x`.
    pub misplaced: usize,
}

pub fn measure(word: &[Generator]) -> Measure {
    let mut misplaced = 0;
    for p in 1..word.len() {
        let (prev, cur) = (word[p - 1], word[p]);
        let x = cur.index().unwrap_or(0);
        if is_star_pair(prev.kind(), cur.kind()) && x != 1 {
            misplaced += 1;
        }
        if prev.kind() == Kind::F
            && matches!(cur.kind(), Kind::K | Kind::I)
            && x < prev.index().unwrap_or(0)
        {
            misplaced += 1;
        }
    }
    Measure {
        len: word.len(),
        kinds: word.iter().map(|g| g.kind()).collect(),
        misplaced,
    }
}

pub(crate) fn is_star_pair(prev: Kind, cur: Kind) -> bool {
    matches!(
        (prev, cur),
        (Kind::K, Kind::I) | (Kind::I, Kind::K) | (Kind::I, Kind::F)
    )
}

/// Canonical form of `w` over `n` topologies: `0`, a canonical word, or `c`
/// followed by one. A star in the input is read as index 1.
pub fn normalize(w: &OpWord, n: usize) -> Result<OpWord, WordError> {
    normalize_with(w, n, Strategy::Shortlex)
}

pub fn normalize_with(w: &OpWord, n: usize, strategy: Strategy) -> Result<OpWord, WordError> {
    if n == 0 {
        return Err(WordError::ZeroTopologies);
    }
    w.check_indices(n)?;
    let ParityReduced { parity, core } = parity_reduce(w);
    let even = match core {
        OpWord::Gens(g) => match reduce_core(&g, strategy)? {
            Some(body) => OpWord::Gens(starify(body)),
            None => OpWord::Zero,
        },
        _ => OpWord::Zero,
    };
    if !is_kge(&even, n) {
        return Err(WordError::NormalFormOutsideGrammar(even.to_string()));
    }
    Ok(match parity {
        Parity::Even => even,
        Parity::Odd => even.prepend(Generator::C),
    })
}

/// Reduces a complement-free word, prefix by prefix from the right.
/// `None` means the word is zero.
fn reduce_core(
    gens: &[Generator],
    strategy: Strategy,
) -> Result<Option<Vec<Generator>>, WordError> {
    let mut acc: Vec<Generator> = Vec::new();
    for &g in gens.iter().rev() {
        let g = if g.is_star() { g.with_index(1) } else { g };
        let mut cand = Vec::with_capacity(acc.len() + 1);
        cand.push(g);
        cand.extend_from_slice(&acc);
        let reduced = match strategy {
            Strategy::Shortlex => least_normal_form(cand)?,
            Strategy::Leftmost => leftmost_normal_form(cand)?,
        };
        match reduced {
            Some(r) => acc = r,
            None => return Ok(None),
        }
    }
    Ok(Some(acc))
}

fn rewrite_at(
    word: &[Generator],
    pos: usize,
    rule: &Rule,
    rhs: Rhs,
) -> Result<Option<Vec<Generator>>, WordError> {
    let Rhs::Word(mid) = rhs else {
        return Ok(None);
    };
    let mut out = Vec::with_capacity(word.len());
    out.extend_from_slice(&word[..pos]);
    out.extend(mid);
    out.extend_from_slice(&word[pos + rule.len()..]);
    if measure(&out) >= measure(word) {
        return Err(WordError::MeasureNotDecreasing {
            rule: rule.name,
            word: OpWord::Gens(word.to_vec()).to_string(),
        });
    }
    Ok(Some(out))
}

/// All one-step rewrites of `word`; `Err` on a measure violation, `Ok(None)` if
/// some rewrite yields zero.
fn successors(word: &[Generator]) -> Result<Option<Vec<Vec<Generator>>>, WordError> {
    let mut out = Vec::new();
    for pos in 0..word.len() {
        for rule in rules() {
            let end = pos + rule.len();
            if end > word.len() {
                continue;
            }
            if let Some(rhs) = rule.apply(&word[pos..end]) {
                match rewrite_at(word, pos, rule, rhs)? {
                    Some(w) => out.push(w),
                    None => return Ok(None),
                }
            }
        }
    }
    Ok(Some(out))
}

fn least_normal_form(start: Vec<Generator>) -> Result<Option<Vec<Generator>>, WordError> {
    let mut seen: HashSet<Vec<Generator>> = HashSet::new();
    let mut queue = VecDeque::new();
    let mut best: Option<Vec<Generator>> = None;
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(word) = queue.pop_front() {
        let Some(next) = successors(&word)? else {
            return Ok(None);
        };
        if next.is_empty() {
            let better = match &best {
                None => true,
                Some(b) => (word.len(), &word) < (b.len(), b),
            };
            if better {
                best = Some(word);
            }
            continue;
        }
        for w in next {
            if seen.insert(w.clone()) {
                if seen.len() > SEARCH_CAP {
                    return Err(WordError::SearchBound(OpWord::Gens(w).to_string()));
                }
                queue.push_back(w);
            }
        }
    }
    Ok(best)
}

fn leftmost_normal_form(mut word: Vec<Generator>) -> Result<Option<Vec<Generator>>, WordError> {
    'outer: loop {
        for pos in 0..word.len() {
            for rule in rules() {
                let end = pos + rule.len();
                if end > word.len() {
                    continue;
                }
                if let Some(rhs) = rule.apply(&word[pos..end]) {
                    match rewrite_at(&word, pos, rule, rhs)? {
                        Some(w) => word = w,
                        None => return Ok(None),
                    }
                    continue 'outer;
                }
            }
        }
        return Ok(Some(word));
    }
}

fn starify(mut word: Vec<Generator>) -> Vec<Generator> {
    for p in 1..word.len() {
        if is_star_pair(word[p - 1].kind(), word[p].kind()) {
            word[p] = word[p].with_index(STAR);
        }
    }
    word
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> OpWord {
        s.parse().unwrap()
    }

    fn norm(s: &str, n: usize) -> String {
        normalize(&w(s), n).unwrap().to_string()
    }

    #[test]
    fn known_reductions() {
        assert_eq!(norm("i1 f2 k1", 2), "0");
        assert_eq!(norm("f1 k2 f1 k1", 2), "k2 f1 k1");
        assert_eq!(norm("k2 i1", 2), "k2 i*");
        assert_eq!(norm("f1 f2", 2), "f1 f2");
        assert_eq!(norm("k1 c i1 c c k1 c f1 k1 c", 1), "0");
    }

    #[test]
    fn constants_and_parity() {
        assert_eq!(norm("c i1 f2 k1", 2), "1");
        assert_eq!(norm("c", 1), "c");
        assert_eq!(norm("Id", 3), "Id");
        assert_eq!(norm("c k1 c", 1), "i1");
        assert_eq!(norm("k1 0", 1), "0");
        assert_eq!(norm("c 1", 1), "0");
    }

    #[test]
    fn errors() {
        assert!(matches!(
            normalize(&w("k3"), 2),
            Err(WordError::IndexOutOfRange { index: 3, n: 2 })
        ));
        assert!(matches!(
            normalize(&w("k1"), 0),
            Err(WordError::ZeroTopologies)
        ));
    }

    #[test]
    fn strategies_agree_on_short_words() {
        let gens = Generator::even_set(2);
        for a in &gens {
            for b in &gens {
                for c in &gens {
                    let word = OpWord::Gens(vec![*a, *b, *c]);
                    let x = normalize_with(&word, 2, Strategy::Shortlex).unwrap();
                    let y = normalize_with(&word, 2, Strategy::Leftmost);
                    if let Ok(y) = y {
                        assert!(x <= y, "{word}: {x} vs {y}");
                    }
                }
            }
        }
    }
}
