use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::{Generator, Kind, WordError};

/// An operator word, read right to left: `k1 i2` applies `i2` first.
///
/// The empty word is the identity. `Zero` sends every set to the empty set and
/// `One` (its complement) sends every set to the whole space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OpWord {
    Zero,
    One,
    Gens(Vec<Generator>),
}

impl OpWord {
    pub fn identity() -> Self {
        OpWord::Gens(Vec::new())
    }

    pub fn from_gens(gens: Vec<Generator>) -> Self {
        OpWord::Gens(gens)
    }

    pub fn single(g: Generator) -> Self {
        OpWord::Gens(vec![g])
    }

    pub fn gens(&self) -> &[Generator] {
        match self {
            OpWord::Gens(g) => g,
            _ => &[],
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, OpWord::Gens(g) if g.is_empty())
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, OpWord::Zero | OpWord::One)
    }

    /// Number of letters; the constants count as zero.
    pub fn len(&self) -> usize {
        self.gens().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Whether the word has an even number of complements (`One` is odd).
    pub fn is_even(&self) -> bool {
        match self {
            OpWord::Zero => true,
            OpWord::One => false,
            OpWord::Gens(g) => g.iter().filter(|x| x.kind() == Kind::C).count() % 2 == 0,
        }
    }

    /// Largest non-star topology index used.
    pub fn max_index(&self) -> u16 {
        self.gens()
            .iter()
            .filter_map(|g| g.index())
            .max()
            .unwrap_or(0)
    }

    pub fn check_indices(&self, n: usize) -> Result<(), WordError> {
        let max = self.max_index() as usize;
        if max > n {
            Err(WordError::IndexOutOfRange { index: max, n })
        } else {
            Ok(())
        }
    }

    /// Image of the empty set (`false`) or the whole space (`true`) under this word.
    ///
    /// `k` and `i` fix both, `f` sends both to the empty set, `c` swaps them.
    pub fn apply_to_constant(&self, full: bool) -> bool {
        match self {
            OpWord::Zero => false,
            OpWord::One => true,
            OpWord::Gens(gens) => gens.iter().rev().fold(full, |v, g| match g.kind() {
                Kind::K | Kind::I => v,
                Kind::F => false,
                Kind::C => !v,
            }),
        }
    }

    /// `self · other`: apply `other`, then `self`.
    pub fn compose(&self, other: &OpWord) -> OpWord {
        match (self, other) {
            (OpWord::Zero, _) => OpWord::Zero,
            (OpWord::One, _) => OpWord::One,
            (_, OpWord::Zero) => constant(self.apply_to_constant(false)),
            (_, OpWord::One) => constant(self.apply_to_constant(true)),
            (OpWord::Gens(a), OpWord::Gens(b)) => {
                let mut g = a.clone();
                g.extend_from_slice(b);
                OpWord::Gens(g)
            }
        }
    }

    /// `g · self`.
    pub fn prepend(&self, g: Generator) -> OpWord {
        OpWord::single(g).compose(self)
    }

    /// The word with every star replaced by `index`.
    pub fn resolve_stars(&self, index: u16) -> OpWord {
        match self {
            OpWord::Gens(g) => OpWord::Gens(
                g.iter()
                    .map(|&x| if x.is_star() { x.with_index(index) } else { x })
                    .collect(),
            ),
            other => other.clone(),
        }
    }

    /// Kind letters, e.g. `"KFI"`; `"0"` and `"1"` for the constants.
    pub fn shape(&self) -> String {
        match self {
            OpWord::Zero => "0".into(),
            OpWord::One => "1".into(),
            OpWord::Gens(g) => g.iter().map(|x| x.kind().letter()).collect(),
        }
    }
}

fn constant(full: bool) -> OpWord {
    if full {
        OpWord::One
    } else {
        OpWord::Zero
    }
}

impl From<Vec<Generator>> for OpWord {
    fn from(gens: Vec<Generator>) -> Self {
        OpWord::Gens(gens)
    }
}

/// Shortlex: the constants first (`0` then `1`), then by length, then letter by letter.
impl Ord for OpWord {
    fn cmp(&self, other: &Self) -> Ordering {
        fn rank(w: &OpWord) -> u8 {
            match w {
                OpWord::Zero => 0,
                OpWord::One => 1,
                OpWord::Gens(_) => 2,
            }
        }
        rank(self)
            .cmp(&rank(other))
            .then_with(|| self.len().cmp(&other.len()))
            .then_with(|| self.gens().cmp(other.gens()))
    }
}

impl PartialOrd for OpWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpWord::Zero => write!(f, "0"),
            OpWord::One => write!(f, "1"),
            OpWord::Gens(g) if g.is_empty() => write!(f, "Id"),
            OpWord::Gens(g) => {
                for (i, x) in g.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

/// Whitespace-separated tokens (`k1 i* f2 c`). `Id` or the empty string is the
/// identity; a trailing `0` or `1` token composes with the constant.
impl FromStr for OpWord {
    type Err = WordError;

    fn from_str(text: &str) -> Result<Self, WordError> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        match tokens.as_slice() {
            [] | ["Id"] => return Ok(OpWord::identity()),
            _ => {}
        }
        let (body, tail) = match tokens.last() {
            Some(&"0") => (&tokens[..tokens.len() - 1], Some(OpWord::Zero)),
            Some(&"1") => (&tokens[..tokens.len() - 1], Some(OpWord::One)),
            _ => (&tokens[..], None),
        };
        let gens = body
            .iter()
            .map(|t| t.parse::<Generator>())
            .collect::<Result<Vec<_>, _>>()?;
        let word = OpWord::Gens(gens);
        Ok(match tail {
            Some(constant) => word.compose(&constant),
            None => word,
        })
    }
}
