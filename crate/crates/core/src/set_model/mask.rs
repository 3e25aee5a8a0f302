use std::fmt;

use crate::bits::Bits;

use super::ModelError;

/// A subset of a finite model's atoms.
///
/// The width travels with the mask so that mixing masks from differently
/// sized models is caught instead of silently truncated.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomMask<B: Bits = u32> {
    bits: B,
    width: usize,
}

impl<B: Bits> AtomMask<B> {
    pub fn empty(width: usize) -> Self {
        AtomMask {
            bits: B::zeroed(width),
            width,
        }
    }

    pub fn full(width: usize) -> Self {
        AtomMask {
            bits: B::full(width),
            width,
        }
    }

    /// Wraps raw bits; anything above `width` is cleared.
    pub fn from_bits(bits: B, width: usize) -> Self {
        let mut bits = bits;
        bits.intersect_with(&B::full(width));
        AtomMask { bits, width }
    }

    pub fn from_atoms<I: IntoIterator<Item = usize>>(
        atoms: I,
        width: usize,
    ) -> Result<Self, ModelError> {
        if !B::supports(width) {
            return Err(ModelError::CapacityExceeded {
                width,
                capacity: B::CAPACITY.unwrap_or(usize::MAX),
            });
        }
        let mut mask = Self::empty(width);
        for a in atoms {
            if a >= width {
                return Err(ModelError::AtomOutOfRange { atom: a, width });
            }
            mask.bits.insert(a);
        }
        Ok(mask)
    }

    pub fn singleton(atom: usize, width: usize) -> Self {
        let mut mask = Self::empty(width);
        mask.bits.insert(atom);
        mask
    }

    /// The subset whose table index is `index` (bit `i` set means atom `i`).
    pub fn from_index(index: usize, width: usize) -> Self {
        AtomMask {
            bits: B::from_index(index, width),
            width,
        }
    }

    pub fn bits(&self) -> &B {
        &self.bits
    }

    pub fn into_bits(self) -> B {
        self.bits
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn contains(&self, atom: usize) -> bool {
        self.bits.test(atom)
    }

    pub fn insert(&mut self, atom: usize) {
        assert!(
            atom < self.width,
            "atom {atom} outside width {}",
            self.width
        );
        self.bits.insert(atom);
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn atoms(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn complement(&self) -> Self {
        AtomMask {
            bits: self.bits.complement(self.width),
            width: self.width,
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.width, other.width);
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        AtomMask {
            bits,
            width: self.width,
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.width, other.width);
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        AtomMask {
            bits,
            width: self.width,
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        debug_assert_eq!(self.width, other.width);
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        AtomMask {
            bits,
            width: self.width,
        }
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        debug_assert_eq!(self.width, other.width);
        let mut bits = self.bits.clone();
        bits.xor_with(&other.bits);
        AtomMask {
            bits,
            width: self.width,
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn check_width(&self, width: usize) -> Result<(), ModelError> {
        if self.width == width {
            Ok(())
        } else {
            Err(ModelError::WidthMismatch {
                expected: width,
                found: self.width,
            })
        }
    }

    /// Hex rendering, least significant bit = atom 0, always `0x`-prefixed.
    pub fn to_hex(&self) -> String {
        let mut digits = Vec::new();
        let mut i = 0;
        let end = self.width.max(1);
        while i < end {
            let mut nibble = 0u8;
            for b in 0..4 {
                if i + b < self.width && self.bits.test(i + b) {
                    nibble |= 1 << b;
                }
            }
            digits.push(char::from_digit(u32::from(nibble), 16).unwrap_or('0'));
            i += 4;
        }
        while digits.len() > 1 && digits.last() == Some(&'0') {
            digits.pop();
        }
        digits.reverse();
        format!("0x{}", digits.into_iter().collect::<String>())
    }

    pub fn from_hex(text: &str, width: usize) -> Result<Self, ModelError> {
        let body = text
            .strip_prefix("0x")
            .or_else(|| text.strip_prefix("0X"))
            .unwrap_or(text);
        if body.is_empty() {
            return Err(ModelError::BadMask(text.to_string()));
        }
        let mut mask = Self::empty(width);
        for (pos, ch) in body.chars().rev().enumerate() {
            let nibble = ch
                .to_digit(16)
                .ok_or_else(|| ModelError::BadMask(text.to_string()))?;
            for b in 0..4 {
                if nibble >> b & 1 == 1 {
                    let atom = pos * 4 + b;
                    if atom >= width {
                        return Err(ModelError::AtomOutOfRange { atom, width });
                    }
                    mask.bits.insert(atom);
                }
            }
        }
        Ok(mask)
    }

    /// Re-homes the mask into a different storage type of the same width.
    pub fn convert<C: Bits>(&self) -> AtomMask<C> {
        let mut bits = C::zeroed(self.width);
        for a in self.atoms() {
            bits.insert(a);
        }
        AtomMask {
            bits,
            width: self.width,
        }
    }
}

impl<B: Bits> fmt::Debug for AtomMask<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.atoms()).finish()
    }
}

impl<B: Bits> fmt::Display for AtomMask<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.atoms().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}
