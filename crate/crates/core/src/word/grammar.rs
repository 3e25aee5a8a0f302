//! The canonical word grammar and its 32 word types.

use std::fmt;

use num_integer::Integer;
use num_traits::FromPrimitive;

use super::count::binomial;
use super::normalize::is_star_pair;
use super::{Generator, Kind, OpWord, STAR};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WordType {
    Identity,
    Zero,
    I,
    K,
    IK,
    KI,
    IKI,
    KIK,
    F,
    IF,
    FF,
    FI,
    FK,
    FIF,
    KIF,
    FIK,
    FKI,
    KF,
    KFK,
    KFI,
    KFF,
    FKF,
    FIKI,
    FKIK,
    FKIF,
    KFIK,
    KFKI,
    KFIF,
    KFKF,
    KFIKI,
    KFKIK,
    KFKIF,
}

#[derive(Copy, Clone, Debug)]
enum Rel {
    Lt,
    Le,
    Gt,
}

use Rel::{Gt, Le, Lt};

/// `(a, rel, b)`: the `a`-th non-star index stands in `rel` to the `b`-th.
type Condition = (usize, Rel, usize);

impl WordType {
    pub const ALL: [WordType; 32] = [
        WordType::Identity,
        WordType::Zero,
        WordType::I,
        WordType::K,
        WordType::IK,
        WordType::KI,
        WordType::IKI,
        WordType::KIK,
        WordType::F,
        WordType::IF,
        WordType::FF,
        WordType::FI,
        WordType::FK,
        WordType::FIF,
        WordType::KIF,
        WordType::FIK,
        WordType::FKI,
        WordType::KF,
        WordType::KFK,
        WordType::KFI,
        WordType::KFF,
        WordType::FKF,
        WordType::FIKI,
        WordType::FKIK,
        WordType::FKIF,
        WordType::KFIK,
        WordType::KFKI,
        WordType::KFIF,
        WordType::KFKF,
        WordType::KFIKI,
        WordType::KFKIK,
        WordType::KFKIF,
    ];

    /// Kind letters of the type's words; the zero type is written `IFK`.
    pub fn pattern(self) -> &'static str {
        use WordType::*;
        match self {
            Identity => "",
            Zero => "IFK",
            I => "I",
            K => "K",
            IK => "IK",
            KI => "KI",
            IKI => "IKI",
            KIK => "KIK",
            F => "F",
            IF => "IF",
            FF => "FF",
            FI => "FI",
            FK => "FK",
            FIF => "FIF",
            KIF => "KIF",
            FIK => "FIK",
            FKI => "FKI",
            KF => "KF",
            KFK => "KFK",
            KFI => "KFI",
            KFF => "KFF",
            FKF => "FKF",
            FIKI => "FIKI",
            FKIK => "FKIK",
            FKIF => "FKIF",
            KFIK => "KFIK",
            KFKI => "KFKI",
            KFIF => "KFIF",
            KFKF => "KFKF",
            KFIKI => "KFIKI",
            KFKIK => "KFKIK",
            KFKIF => "KFKIF",
        }
    }

    /// Types whose words carry an ordering constraint on their indices.
    pub fn is_reduced(self) -> bool {
        self >= WordType::KF
    }

    pub fn label(self) -> String {
        match self {
            WordType::Identity => "{Id}".into(),
            WordType::Zero => "IFK".into(),
            t if t.is_reduced() => format!("({})_r", t.pattern()),
            t => t.pattern().into(),
        }
    }

    pub fn from_label(label: &str) -> Option<WordType> {
        WordType::ALL
            .into_iter()
            .find(|t| t.label() == label || t.pattern() == label)
    }

    fn conditions(self) -> &'static [Condition] {
        use WordType::*;
        match self {
            FI | FK | FIF | FIK | FKI => &[(0, Le, 1)],
            KF | KFF => &[(0, Gt, 1)],
            FKF => &[(0, Lt, 1), (1, Gt, 2)],
            FIKI | FKIK | FKIF => &[(0, Lt, 1)],
            KFK | KFI | KFIK | KFKI | KFIF => &[(0, Gt, 1), (1, Le, 2)],
            KFIKI | KFKIK | KFKIF => &[(0, Gt, 1), (1, Lt, 2)],
            KFKF => &[(0, Gt, 1), (1, Lt, 2), (2, Gt, 3)],
            _ => &[],
        }
    }

    fn kinds(self) -> Vec<Kind> {
        self.pattern()
            .chars()
            .map(|c| match c {
                'K' => Kind::K,
                'I' => Kind::I,
                _ => Kind::F,
            })
            .collect()
    }

    /// Whether position `p` of this type's words holds a star.
    fn star_mask(self) -> Vec<bool> {
        let kinds = self.kinds();
        (0..kinds.len())
            .map(|p| p > 0 && is_star_pair(kinds[p - 1], kinds[p]))
            .collect()
    }

    /// Number of words of this type over `n` topologies, from the closed-form table.
    pub fn count<T: Integer + Clone + FromPrimitive>(self, n: u64) -> T {
        use WordType::*;
        let t = |v: u64| T::from_u64(v).expect("small constant");
        let nn = t(n);
        let c2 = binomial::<T>(n, 2);
        let c3 = binomial::<T>(n, 3);
        let c4 = binomial::<T>(n, 4);
        let c3p = binomial::<T>(n + 1, 3);
        match self {
            Identity | Zero => t(1),
            I | K | IK | KI | IKI | KIK | F | IF | KIF => nn,
            FF => nn.clone() * nn,
            FI | FK | FIF | FIK | FKI => nn + c2,
            KF | FIKI | FKIK | FKIF => c2,
            KFK | KFI | KFIK | KFKI | KFIF => t(2) * c3p,
            KFF => c2 * nn,
            FKF | KFIKI | KFKIK | KFKIF => c2 + t(2) * c3,
            KFKF => c2 + t(5) * c3 + t(5) * c4,
        }
    }
}

impl fmt::Display for WordType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// The type of a canonical even word, judged by its kind letters only.
pub fn classify(w: &OpWord) -> Option<WordType> {
    match w {
        OpWord::Zero => Some(WordType::Zero),
        OpWord::One => None,
        OpWord::Gens(_) => {
            let shape = w.shape();
            WordType::ALL
                .into_iter()
                .filter(|&t| t != WordType::Zero)
                .find(|t| t.pattern() == shape)
        }
    }
}

/// Whether `w` is a canonical even word over `n` topologies, with stars
/// exactly at the grammar's star positions.
pub fn is_kge(w: &OpWord, n: usize) -> bool {
    let Some(t) = classify(w) else {
        return false;
    };
    let stars = t.star_mask();
    let mut free = Vec::with_capacity(4);
    for (g, star) in w.gens().iter().zip(stars) {
        let x = g.index().unwrap_or(STAR);
        if star {
            if x != STAR {
                return false;
            }
        } else if x == STAR || x as usize > n {
            return false;
        } else {
            free.push(x);
        }
    }
    t.conditions().iter().all(|&(a, rel, b)| match rel {
        Lt => free[a] < free[b],
        Le => free[a] <= free[b],
        Gt => free[a] > free[b],
    })
}

/// All canonical even words for `n` topologies, grouped by type in table order
/// and shortlex-ordered within each group.
pub fn enumerate_kge(n: usize) -> Vec<(WordType, Vec<OpWord>)> {
    WordType::ALL
        .into_iter()
        .map(|t| (t, words_of_type(t, n)))
        .collect()
}

/// [`enumerate_kge`] flattened and sorted shortlex.
pub fn enumerate_kge_flat(n: usize) -> Vec<OpWord> {
    let mut all: Vec<OpWord> = enumerate_kge(n).into_iter().flat_map(|(_, w)| w).collect();
    all.sort();
    all
}

fn words_of_type(t: WordType, n: usize) -> Vec<OpWord> {
    if t == WordType::Zero {
        return vec![OpWord::Zero];
    }
    let kinds = t.kinds();
    let stars = t.star_mask();
    let free = stars.iter().filter(|s| !**s).count();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut idx = vec![1u16; free];
    loop {
        let mut it = idx.iter();
        let gens: Vec<Generator> = kinds
            .iter()
            .zip(&stars)
            .map(|(&k, &s)| Generator::new(k, if s { STAR } else { *it.next().unwrap() }))
            .collect();
        let word = OpWord::Gens(gens);
        if is_kge(&word, n) {
            out.push(word);
        }
        let mut p = free;
        loop {
            if p == 0 {
                out.sort();
                return out;
            }
            p -= 1;
            if (idx[p] as usize) < n {
                idx[p] += 1;
                break;
            }
            idx[p] = 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> OpWord {
        s.parse().unwrap()
    }

    #[test]
    fn star_positions() {
        assert!(is_kge(&w("k2 i*"), 2));
        assert!(!is_kge(&w("k2 i1"), 2));
        assert!(is_kge(&w("f1 i2 k* i*"), 2));
        assert!(is_kge(&w("k2 f1 i1 k*"), 2));
        assert!(!is_kge(&w("f*"), 2));
    }

    #[test]
    fn conditions() {
        assert!(is_kge(&w("k2 f1"), 2));
        assert!(!is_kge(&w("k1 f2"), 2));
        assert!(is_kge(&w("f1 k2 f1"), 2));
        assert!(!is_kge(&w("f1 k2 f2"), 2));
        assert!(is_kge(&w("k2 f1 k2 f1"), 2));
        assert!(!is_kge(&w("k3 f1 k2 f2"), 3));
        assert!(!is_kge(&w("k3"), 2));
        assert!(is_kge(&OpWord::Zero, 1));
        assert!(!is_kge(&w("c k1"), 1));
    }

    #[test]
    fn one_topology_list() {
        let words: Vec<String> = enumerate_kge_flat(1)
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(words.len(), 17);
        assert!(words.contains(&"f1 i1 f*".to_string()));
    }

    #[test]
    fn kfi_at_two() {
        let groups = enumerate_kge(2);
        let (_, kfi) = groups.iter().find(|(t, _)| *t == WordType::KFI).unwrap();
        let s: Vec<String> = kfi.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["k2 f1 i1", "k2 f1 i2"]);
    }

    #[test]
    fn labels_round_trip() {
        for t in WordType::ALL {
            assert_eq!(WordType::from_label(&t.label()), Some(t));
        }
        assert_eq!(WordType::KFKF.label(), "(KFKF)_r");
    }
}
