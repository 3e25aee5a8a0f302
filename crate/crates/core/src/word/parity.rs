use super::{Generator, Kind, OpWord};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// A word written as `core` (even) or `c · core` (odd), with no `c` in `core`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParityReduced {
    pub parity: Parity,
    pub core: OpWord,
}

impl ParityReduced {
    pub fn into_word(self) -> OpWord {
        match self.parity {
            Parity::Even => self.core,
            Parity::Odd => self.core.prepend(Generator::C),
        }
    }
}

/// Pushes every complement to the front.
///
/// Reading right to left with a pending complement: `k c = c i`, `i c = c k`,
/// `f c = f` and `c c = Id`. Adjacent equal `k_x k_x` and `i_x i_x` produced by
/// the moves are merged by idempotence.
pub fn parity_reduce(w: &OpWord) -> ParityReduced {
    let gens = match w {
        OpWord::Zero => {
            return ParityReduced {
                parity: Parity::Even,
                core: OpWord::Zero,
            }
        }
        OpWord::One => {
            return ParityReduced {
                parity: Parity::Odd,
                core: OpWord::Zero,
            }
        }
        OpWord::Gens(g) => g,
    };
    let mut pending = false;
    let mut rev_core: Vec<Generator> = Vec::with_capacity(gens.len());
    for &g in gens.iter().rev() {
        let out = match (g, pending) {
            (Generator::C, _) => {
                pending = !pending;
                continue;
            }
            (Generator::K(x), true) => Generator::I(x),
            (Generator::I(x), true) => Generator::K(x),
            (Generator::F(x), _) => {
                pending = false;
                Generator::F(x)
            }
            (other, false) => other,
        };
        let idempotent = matches!(out.kind(), Kind::K | Kind::I);
        if idempotent && rev_core.last() == Some(&out) {
            continue;
        }
        rev_core.push(out);
    }
    rev_core.reverse();
    ParityReduced {
        parity: if pending { Parity::Odd } else { Parity::Even },
        core: OpWord::Gens(rev_core),
    }
}
