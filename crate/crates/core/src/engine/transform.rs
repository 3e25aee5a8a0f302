use crate::bits::Bits;
use crate::set_model::{AtomMask, ClosureModel};
use crate::word::{Generator, OpWord, STAR};

use super::EngineError;

/// Largest atom count for which full transformation tables are built.
pub const TABLE_ATOM_LIMIT: usize = 20;

/// The value table of an operator on a model: entry `s` is the image of the
/// subset with index `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transformation<B: Bits = u32> {
    model: u64,
    width: usize,
    table: Vec<B>,
}

impl<B: Bits> Transformation<B> {
    pub fn identity<M: Bits>(model: &ClosureModel<M>) -> Self {
        let width = model.atom_count();
        Transformation {
            model: model.fingerprint(),
            width,
            table: (0..1usize << width)
                .map(|s| B::from_index(s, width))
                .collect(),
        }
    }

    pub fn model_fingerprint(&self) -> u64 {
        self.model
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn table(&self) -> &[B] {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn image(&self, set: &AtomMask<B>) -> AtomMask<B> {
        AtomMask::from_bits(self.table[set.bits().to_index()].clone(), self.width)
    }

    pub fn image_of_index(&self, index: usize) -> AtomMask<B> {
        AtomMask::from_bits(self.table[index].clone(), self.width)
    }

    /// `self ∘ inner`: apply `inner`, then `self`.
    pub fn compose(&self, inner: &Self) -> Self {
        Transformation {
            model: self.model,
            width: self.width,
            table: inner
                .table
                .iter()
                .map(|v| self.table[v.to_index()].clone())
                .collect(),
        }
    }

    /// Post-composition with the complement.
    pub fn complemented(&self) -> Self {
        Transformation {
            model: self.model,
            width: self.width,
            table: self
                .table
                .iter()
                .map(|v| v.complement(self.width))
                .collect(),
        }
    }

    /// Pointwise containment: `self(s) ⊆ other(s)` for every subset `s`.
    pub fn leq(&self, other: &Self) -> bool {
        self.table
            .iter()
            .zip(&other.table)
            .all(|(a, b)| a.is_subset(b))
    }

    /// Index of the first subset on which the two tables differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        self.table
            .iter()
            .zip(&other.table)
            .position(|(a, b)| a != b)
    }
}

fn concrete(index: u16) -> usize {
    if index == STAR {
        1
    } else {
        index as usize
    }
}

/// Applies one generator directly through the model's rows. A star reads as index 1.
pub fn apply_generator<B: Bits>(model: &ClosureModel<B>, g: Generator, s: &B) -> B {
    match g {
        Generator::K(j) => model.closure_bits(concrete(j), s),
        Generator::I(j) => model.interior_bits(concrete(j), s),
        Generator::F(j) => model.frontier_bits(concrete(j), s),
        Generator::C => s.complement(model.atom_count()),
    }
}

/// Applies a word to one set, right to left, without building tables.
pub fn apply_word<B: Bits>(
    model: &ClosureModel<B>,
    word: &OpWord,
    set: &AtomMask<B>,
) -> Result<AtomMask<B>, EngineError> {
    check_word(model, word)?;
    set.check_width(model.atom_count())?;
    let width = model.atom_count();
    Ok(match word {
        OpWord::Zero => AtomMask::empty(width),
        OpWord::One => AtomMask::full(width),
        OpWord::Gens(gens) => {
            let mut s = set.bits().clone();
            for &g in gens.iter().rev() {
                s = apply_generator(model, g, &s);
            }
            AtomMask::from_bits(s, width)
        }
    })
}

pub(crate) fn check_word<B: Bits>(
    model: &ClosureModel<B>,
    word: &OpWord,
) -> Result<(), EngineError> {
    let index = word.max_index() as usize;
    if index > model.n() {
        return Err(EngineError::IndexOutOfRange {
            index,
            n: model.n(),
        });
    }
    Ok(())
}

pub(crate) fn check_generators<B: Bits>(
    model: &ClosureModel<B>,
    gens: &[Generator],
) -> Result<(), EngineError> {
    for g in gens {
        let index = g.index().unwrap_or(0) as usize;
        if index > model.n() {
            return Err(EngineError::IndexOutOfRange {
                index,
                n: model.n(),
            });
        }
    }
    Ok(())
}

/// Compiles words into transformations on one model, using a precomputed
/// table per generator.
pub struct Evaluator<'m, B: Bits = u32> {
    model: &'m ClosureModel<B>,
    /// Slot 0 is `c`, then `k_j, i_j, f_j` for each `j`.
    slots: Vec<Transformation<B>>,
}

impl<'m, B: Bits> Evaluator<'m, B> {
    pub fn new(model: &'m ClosureModel<B>) -> Result<Self, EngineError> {
        let width = model.atom_count();
        if width > TABLE_ATOM_LIMIT {
            return Err(EngineError::TooManyAtoms {
                atoms: width,
                limit: TABLE_ATOM_LIMIT,
            });
        }
        let id = Transformation::<B>::identity(model);
        let build = |g: Generator| Transformation {
            model: id.model,
            width,
            table: id
                .table
                .iter()
                .map(|s| apply_generator(model, g, s))
                .collect(),
        };
        let mut slots = vec![build(Generator::C)];
        for j in 1..=model.n() as u16 {
            slots.push(build(Generator::K(j)));
            slots.push(build(Generator::I(j)));
            slots.push(build(Generator::F(j)));
        }
        Ok(Evaluator { model, slots })
    }

    pub fn model(&self) -> &'m ClosureModel<B> {
        self.model
    }

    fn slot(&self, g: Generator) -> usize {
        match g {
            Generator::C => 0,
            Generator::K(j) => 1 + 3 * (concrete(j) - 1),
            Generator::I(j) => 2 + 3 * (concrete(j) - 1),
            Generator::F(j) => 3 + 3 * (concrete(j) - 1),
        }
    }

    pub fn generator(&self, g: Generator) -> Result<&Transformation<B>, EngineError> {
        check_generators(self.model, &[g])?;
        Ok(&self.slots[self.slot(g)])
    }

    pub fn identity(&self) -> Transformation<B> {
        Transformation::identity(self.model)
    }

    pub fn constant(&self, full: bool) -> Transformation<B> {
        let width = self.model.atom_count();
        let v = if full {
            B::full(width)
        } else {
            B::zeroed(width)
        };
        Transformation {
            model: self.slots[0].model,
            width,
            table: vec![v; 1 << width],
        }
    }

    pub fn compile(&self, word: &OpWord) -> Result<Transformation<B>, EngineError> {
        check_word(self.model, word)?;
        Ok(match word {
            OpWord::Zero => self.constant(false),
            OpWord::One => self.constant(true),
            OpWord::Gens(gens) => {
                let mut t = self.identity();
                for &g in gens.iter().rev() {
                    let table = &self.slots[self.slot(g)].table;
                    for v in t.table.iter_mut() {
                        *v = table[v.to_index()].clone();
                    }
                }
                t
            }
        })
    }

    /// `g ∘ t`.
    pub fn post_apply(
        &self,
        g: Generator,
        t: &Transformation<B>,
    ) -> Result<Transformation<B>, EngineError> {
        Ok(self.generator(g)?.compose(t))
    }
}
