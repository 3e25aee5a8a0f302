//! The rewrite rules on even words with concrete indices.
//!
//! Each rule matches a window of letters by kind and rewrites it according to
//! the indices. Star positions are represented by index 1 while rewriting, so
//! the "representative" rules move an arbitrary index there to 1.
//!
//! The `FFK`, `FFI` and `FFF` rules are oriented `f_x f_y g -> k_x f_y g` when
//! `x > y` and `f_x f_y g -> f_y g` otherwise.

use super::{Generator, Kind};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rhs {
    Zero,
    Word(Vec<Generator>),
}

pub struct Rule {
    pub name: &'static str,
    /// Schematic statement of the identity.
    pub identity: &'static str,
    pub pattern: &'static [Kind],
    rewrite: fn(&[u16]) -> Option<Rhs>,
}

impl std::fmt::Debug for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Rule").field("name", &self.name).finish()
    }
}

impl Rule {
    pub fn len(&self) -> usize {
        self.pattern.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pattern.is_empty()
    }

    /// Rewrites `window` if its kinds match the pattern and the index condition holds.
    pub fn apply(&self, window: &[Generator]) -> Option<Rhs> {
        if window.len() != self.pattern.len()
            || window.iter().zip(self.pattern).any(|(g, &k)| g.kind() != k)
        {
            return None;
        }
        let idx: Vec<u16> = window.iter().map(|g| g.index().unwrap_or(0)).collect();
        (self.rewrite)(&idx)
    }

    /// Every instance `L -> R` with indices in `1..=n`.
    pub fn instances(&self, n: u16) -> Vec<(Vec<Generator>, Rhs)> {
        let len = self.pattern.len();
        let mut out = Vec::new();
        let mut idx = vec![1u16; len];
        loop {
            let lhs: Vec<Generator> = self
                .pattern
                .iter()
                .zip(&idx)
                .map(|(&k, &x)| Generator::new(k, x))
                .collect();
            if let Some(rhs) = self.apply(&lhs) {
                out.push((lhs, rhs));
            }
            let mut p = len;
            loop {
                if p == 0 {
                    return out;
                }
                p -= 1;
                if idx[p] < n {
                    idx[p] += 1;
                    break;
                }
                idx[p] = 1;
            }
        }
    }
}

fn k(x: u16) -> Generator {
    Generator::K(x)
}
fn i(x: u16) -> Generator {
    Generator::I(x)
}
fn f(x: u16) -> Generator {
    Generator::F(x)
}
fn word(g: Vec<Generator>) -> Option<Rhs> {
    Some(Rhs::Word(g))
}

use Kind::{F, I, K};

static RULES: &[Rule] = &[
    Rule {
        name: "KK",
        identity: "k_x k_y = k_max(x,y)",
        pattern: &[K, K],
        rewrite: |v| word(vec![k(v[0].max(v[1]))]),
    },
    Rule {
        name: "II",
        identity: "i_x i_y = i_max(x,y)",
        pattern: &[I, I],
        rewrite: |v| word(vec![i(v[0].max(v[1]))]),
    },
    Rule {
        name: "KF",
        identity: "k_x f_y = f_y if x <= y",
        pattern: &[K, F],
        rewrite: |v| (v[0] <= v[1]).then(|| Rhs::Word(vec![f(v[1])])),
    },
    Rule {
        name: "KIKI",
        identity: "k_x i_y k_z i_w = k_x i_y",
        pattern: &[K, I, K, I],
        rewrite: |v| word(vec![k(v[0]), i(v[1])]),
    },
    Rule {
        name: "IKIK",
        identity: "i_x k_y i_z k_w = i_x k_y",
        pattern: &[I, K, I, K],
        rewrite: |v| word(vec![i(v[0]), k(v[1])]),
    },
    Rule {
        name: "KI*",
        identity: "k_x i_y = k_x i_*",
        pattern: &[K, I],
        rewrite: |v| (v[1] != 1).then(|| Rhs::Word(vec![k(v[0]), i(1)])),
    },
    Rule {
        name: "IK*",
        identity: "i_x k_y = i_x k_*",
        pattern: &[I, K],
        rewrite: |v| (v[1] != 1).then(|| Rhs::Word(vec![i(v[0]), k(1)])),
    },
    Rule {
        name: "IF*",
        identity: "i_x f_y = i_x f_*",
        pattern: &[I, F],
        rewrite: |v| (v[1] != 1).then(|| Rhs::Word(vec![i(v[0]), f(1)])),
    },
    Rule {
        name: "FK",
        identity: "f_x k_y = f_x k_max(x,y)",
        pattern: &[F, K],
        rewrite: |v| (v[1] < v[0]).then(|| Rhs::Word(vec![f(v[0]), k(v[0])])),
    },
    Rule {
        name: "FI",
        identity: "f_x i_y = f_x i_max(x,y)",
        pattern: &[F, I],
        rewrite: |v| (v[1] < v[0]).then(|| Rhs::Word(vec![f(v[0]), i(v[0])])),
    },
    Rule {
        name: "FKF",
        identity: "f_x k_y f_z = f_x f_z if y <= max(x,z)",
        pattern: &[F, K, F],
        rewrite: |v| (v[1] <= v[0].max(v[2])).then(|| Rhs::Word(vec![f(v[0]), f(v[2])])),
    },
    Rule {
        name: "FIKI",
        identity: "f_x i_y k_* i_* = f_x k_x i_* if y <= x",
        pattern: &[F, I, K, I],
        rewrite: |v| (v[1] <= v[0]).then(|| Rhs::Word(vec![f(v[0]), k(v[0]), i(1)])),
    },
    Rule {
        name: "FKIK",
        identity: "f_x k_y i_* k_* = f_x i_x k_* if y <= x",
        pattern: &[F, K, I, K],
        rewrite: |v| (v[1] <= v[0]).then(|| Rhs::Word(vec![f(v[0]), i(v[0]), k(1)])),
    },
    Rule {
        name: "FKIF",
        identity: "f_x k_y i_* f_* = f_x i_x f_* if y <= x",
        pattern: &[F, K, I, F],
        rewrite: |v| (v[1] <= v[0]).then(|| Rhs::Word(vec![f(v[0]), i(v[0]), f(1)])),
    },
    Rule {
        name: "IFK",
        identity: "i_x f_y k_z = 0",
        pattern: &[I, F, K],
        rewrite: |_| Some(Rhs::Zero),
    },
    Rule {
        name: "IFI",
        identity: "i_x f_y i_z = 0",
        pattern: &[I, F, I],
        rewrite: |_| Some(Rhs::Zero),
    },
    Rule {
        name: "IFF",
        identity: "i_x f_y f_z = 0",
        pattern: &[I, F, F],
        rewrite: |_| Some(Rhs::Zero),
    },
    Rule {
        name: "FFK",
        identity: "f_x f_y k_z = k_x f_y k_z if x > y, else f_y k_z",
        pattern: &[F, F, K],
        rewrite: |v| ff(v, k),
    },
    Rule {
        name: "FFI",
        identity: "f_x f_y i_z = k_x f_y i_z if x > y, else f_y i_z",
        pattern: &[F, F, I],
        rewrite: |v| ff(v, i),
    },
    Rule {
        name: "FFF",
        identity: "f_x f_y f_z = k_x f_y f_z if x > y, else f_y f_z",
        pattern: &[F, F, F],
        rewrite: |v| ff(v, f),
    },
    Rule {
        name: "FKFK",
        identity: "f_x k_y f_z k_w = k_max(x,y) f_z k_w",
        pattern: &[F, K, F, K],
        rewrite: |v| word(vec![k(v[0].max(v[1])), f(v[2]), k(v[3])]),
    },
    Rule {
        name: "FKFI",
        identity: "f_x k_y f_z i_w = k_max(x,y) f_z i_w",
        pattern: &[F, K, F, I],
        rewrite: |v| word(vec![k(v[0].max(v[1])), f(v[2]), i(v[3])]),
    },
    Rule {
        name: "FKFF",
        identity: "f_x k_y f_z f_w = k_max(x,y) f_z f_w",
        pattern: &[F, K, F, F],
        rewrite: |v| word(vec![k(v[0].max(v[1])), f(v[2]), f(v[3])]),
    },
    Rule {
        name: "IKIF",
        identity: "i_x k_y i_z f_w = i_x f_w",
        pattern: &[I, K, I, F],
        rewrite: |v| word(vec![i(v[0]), f(v[3])]),
    },
];

fn ff(v: &[u16], tail: fn(u16) -> Generator) -> Option<Rhs> {
    if v[0] > v[1] {
        word(vec![k(v[0]), f(v[1]), tail(v[2])])
    } else {
        word(vec![f(v[1]), tail(v[2])])
    }
}

/// The rule table, in the order the rewriter tries them.
pub fn rules() -> &'static [Rule] {
    RULES
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find(name: &str) -> &'static Rule {
        rules().iter().find(|r| r.name == name).unwrap()
    }

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = rules().iter().map(|r| r.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), rules().len());
    }

    #[test]
    fn conditions() {
        let kf = find("KF");
        assert_eq!(kf.apply(&[k(1), f(2)]), Some(Rhs::Word(vec![f(2)])));
        assert_eq!(kf.apply(&[k(2), f(1)]), None);
        assert_eq!(kf.apply(&[i(1), f(2)]), None);
        let fkf = find("FKF");
        assert!(fkf.apply(&[f(1), k(2), f(1)]).is_none());
        assert!(fkf.apply(&[f(1), k(2), f(2)]).is_some());
        assert_eq!(find("IFK").apply(&[i(1), f(2), k(1)]), Some(Rhs::Zero));
    }

    #[test]
    fn instance_counts() {
        assert_eq!(find("KK").instances(3).len(), 9);
        assert_eq!(find("KF").instances(3).len(), 6);
        assert_eq!(find("KI*").instances(3).len(), 6);
        assert_eq!(find("FKF").instances(2).len(), 7);
    }
}
