use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::WordError;

/// Sentinel index for a position whose topology index does not affect the operator.
pub const STAR: u16 = 0;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    K,
    I,
    F,
    C,
}

impl Kind {
    pub fn letter(self) -> char {
        match self {
            Kind::K => 'K',
            Kind::I => 'I',
            Kind::F => 'F',
            Kind::C => 'C',
        }
    }
}

/// One letter of an operator word: closure `k`, interior `i` and frontier `f`
/// for a topology index (or [`STAR`]), or the complement `c`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    K(u16),
    I(u16),
    F(u16),
    C,
}

impl Generator {
    pub fn kind(self) -> Kind {
        match self {
            Generator::K(_) => Kind::K,
            Generator::I(_) => Kind::I,
            Generator::F(_) => Kind::F,
            Generator::C => Kind::C,
        }
    }

    pub fn index(self) -> Option<u16> {
        match self {
            Generator::K(x) | Generator::I(x) | Generator::F(x) => Some(x),
            Generator::C => None,
        }
    }

    pub fn new(kind: Kind, index: u16) -> Self {
        match kind {
            Kind::K => Generator::K(index),
            Kind::I => Generator::I(index),
            Kind::F => Generator::F(index),
            Kind::C => Generator::C,
        }
    }

    pub fn with_index(self, index: u16) -> Self {
        Generator::new(self.kind(), index)
    }

    pub fn is_star(self) -> bool {
        self.index() == Some(STAR)
    }

    /// Ordering key: `k < i < f < c`, then index with the star first.
    pub fn sort_key(self) -> (Kind, u16) {
        (self.kind(), self.index().unwrap_or(0))
    }

    /// The even generators `k_j, i_j, f_j` for `j = 1..=n`, in key order.
    pub fn even_set(n: u16) -> Vec<Generator> {
        let mut out = Vec::with_capacity(3 * n as usize);
        for kind in [Kind::K, Kind::I, Kind::F] {
            out.extend((1..=n).map(|j| Generator::new(kind, j)));
        }
        out
    }

    /// Parses a comma- or whitespace-separated generator list such as `k1,k2,c`.
    pub fn parse_list(text: &str) -> Result<Vec<Generator>, WordError> {
        text.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect()
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self {
            Generator::K(_) => 'k',
            Generator::I(_) => 'i',
            Generator::F(_) => 'f',
            Generator::C => return write!(f, "c"),
        };
        match self.index() {
            Some(STAR) => write!(f, "{letter}*"),
            Some(x) => write!(f, "{letter}{x}"),
            None => unreachable!(),
        }
    }
}

impl FromStr for Generator {
    type Err = WordError;

    fn from_str(token: &str) -> Result<Self, WordError> {
        let bad = || WordError::BadToken(token.to_string());
        let mut chars = token.chars();
        let kind = match chars.next().ok_or_else(bad)? {
            'k' | 'K' => Kind::K,
            'i' | 'I' => Kind::I,
            'f' | 'F' => Kind::F,
            'c' | 'C' => {
                return if chars.as_str().is_empty() {
                    Ok(Generator::C)
                } else {
                    Err(bad())
                }
            }
            _ => return Err(bad()),
        };
        let rest = chars.as_str();
        let rest = rest.strip_prefix('_').unwrap_or(rest);
        let index = match rest {
            "*" => STAR,
            digits if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) => {
                let v: u16 = digits.parse().map_err(|_| bad())?;
                if v == 0 {
                    return Err(bad());
                }
                v
            }
            _ => return Err(bad()),
        };
        Ok(Generator::new(kind, index))
    }
}
