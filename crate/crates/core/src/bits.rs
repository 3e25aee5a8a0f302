//! Storage backends for atom masks.
//!
//! Every set computation in the crate is generic over a [`Bits`] block. Any
//! unsigned primitive integer works as a fixed-capacity block (one bit per
//! atom), and [`WideBits`] covers models whose atom count exceeds 128, such as
//! large disjoint unions.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::hash::Hash;

use num_traits::{PrimInt, Unsigned};

/// A fixed- or variable-width bit vector holding one bit per atom.
///
/// Bits beyond the owning model's width are always zero.
pub trait Bits: Clone + Eq + Ord + Hash + Debug + Send + Sync + 'static {
    /// Largest width the storage can represent, `None` when unbounded.
    const CAPACITY: Option<usize>;

    fn zeroed(width: usize) -> Self;
    fn test(&self, i: usize) -> bool;
    fn insert(&mut self, i: usize);
    fn remove(&mut self, i: usize);
    fn union_with(&mut self, other: &Self);
    fn intersect_with(&mut self, other: &Self);
    fn difference_with(&mut self, other: &Self);
    fn xor_with(&mut self, other: &Self);
    /// The complement relative to the first `width` bits.
    fn complement(&self, width: usize) -> Self;
    fn count(&self) -> usize;
    fn is_clear(&self) -> bool;
    fn is_subset(&self, other: &Self) -> bool;
    /// Index of the highest set bit plus one, zero when clear.
    fn span(&self) -> usize;

    /// The mask read as an integer index into a subset table.
    ///
    /// Only meaningful for widths below `usize::BITS`.
    fn to_index(&self) -> usize;
    fn from_index(index: usize, width: usize) -> Self;

    fn supports(width: usize) -> bool {
        Self::CAPACITY.is_none_or(|cap| width <= cap)
    }

    fn full(width: usize) -> Self {
        Self::zeroed(width).complement(width)
    }

    fn ones(&self) -> Ones<'_, Self> {
        Ones {
            bits: self,
            next: 0,
            end: self.span(),
        }
    }
}

/// Iterator over the set bit positions of a [`Bits`] value, ascending.
pub struct Ones<'a, B: Bits> {
    bits: &'a B,
    next: usize,
    end: usize,
}

impl<B: Bits> Iterator for Ones<'_, B> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.next < self.end {
            let i = self.next;
            self.next += 1;
            if self.bits.test(i) {
                return Some(i);
            }
        }
        None
    }
}

impl<T> Bits for T
where
    T: PrimInt + Unsigned + Hash + Debug + Send + Sync + 'static,
{
    const CAPACITY: Option<usize> = Some(std::mem::size_of::<T>() * 8);

    #[inline]
    fn zeroed(_width: usize) -> Self {
        T::zero()
    }

    #[inline]
    fn test(&self, i: usize) -> bool {
        (*self >> i) & T::one() == T::one()
    }

    #[inline]
    fn insert(&mut self, i: usize) {
        *self = *self | (T::one() << i);
    }

    #[inline]
    fn remove(&mut self, i: usize) {
        *self = *self & !(T::one() << i);
    }

    #[inline]
    fn union_with(&mut self, other: &Self) {
        *self = *self | *other;
    }

    #[inline]
    fn intersect_with(&mut self, other: &Self) {
        *self = *self & *other;
    }

    #[inline]
    fn difference_with(&mut self, other: &Self) {
        *self = *self & !*other;
    }

    #[inline]
    fn xor_with(&mut self, other: &Self) {
        *self = *self ^ *other;
    }

    #[inline]
    fn complement(&self, width: usize) -> Self {
        let bits = std::mem::size_of::<T>() * 8;
        let full = if width >= bits {
            !T::zero()
        } else {
            (T::one() << width) - T::one()
        };
        !*self & full
    }

    #[inline]
    fn count(&self) -> usize {
        self.count_ones() as usize
    }

    #[inline]
    fn is_clear(&self) -> bool {
        self.is_zero()
    }

    #[inline]
    fn is_subset(&self, other: &Self) -> bool {
        *self & !*other == T::zero()
    }

    #[inline]
    fn span(&self) -> usize {
        std::mem::size_of::<T>() * 8 - self.leading_zeros() as usize
    }

    #[inline]
    fn to_index(&self) -> usize {
        self.to_usize().expect("mask does not fit in a table index")
    }

    #[inline]
    fn from_index(index: usize, _width: usize) -> Self {
        T::from(index).expect("table index does not fit in the mask storage")
    }
}

/// Unbounded bit vector backed by 64-bit words.
///
/// Two values of the same width always carry the same number of words, so the
/// derived equality is exact. Ordering is numeric (most significant word first).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct WideBits {
    words: Vec<u64>,
}

impl WideBits {
    fn word_count(width: usize) -> usize {
        width.div_ceil(64).max(1)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl PartialOrd for WideBits {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WideBits {
    fn cmp(&self, other: &Self) -> Ordering {
        self.span()
            .cmp(&other.span())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl Bits for WideBits {
    const CAPACITY: Option<usize> = None;

    fn zeroed(width: usize) -> Self {
        WideBits {
            words: vec![0; Self::word_count(width)],
        }
    }

    #[inline]
    fn test(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    #[inline]
    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    fn union_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    fn intersect_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    fn difference_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    fn xor_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    fn complement(&self, width: usize) -> Self {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        words.resize(Self::word_count(width), u64::MAX);
        let tail = width % 64;
        if tail != 0 {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        } else if width == 0 {
            words.iter_mut().for_each(|w| *w = 0);
        }
        WideBits { words }
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_clear(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(other.words.iter().chain(std::iter::repeat(&0)))
            .all(|(a, b)| a & !b == 0)
    }

    fn span(&self) -> usize {
        for (i, w) in self.words.iter().enumerate().rev() {
            if *w != 0 {
                return i * 64 + 64 - w.leading_zeros() as usize;
            }
        }
        0
    }

    fn to_index(&self) -> usize {
        assert!(
            self.words[1..].iter().all(|&w| w == 0),
            "mask does not fit in a table index"
        );
        self.words[0] as usize
    }

    fn from_index(index: usize, width: usize) -> Self {
        let mut bits = Self::zeroed(width);
        bits.words[0] = index as u64;
        bits
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_complement_respects_width() {
        assert_eq!(0b0101u32.complement(4), 0b1010);
        assert_eq!(0u8.complement(8), u8::MAX);
        assert_eq!(0u32.complement(0), 0);
    }

    #[test]
    fn ones_lists_positions() {
        let v: Vec<usize> = 0b1001_0010u16.ones().collect();
        assert_eq!(v, vec![1, 4, 7]);
    }

    #[test]
    fn wide_bits_cross_word_boundary() {
        let mut a = WideBits::zeroed(130);
        a.insert(0);
        a.insert(64);
        a.insert(129);
        assert_eq!(a.count(), 3);
        assert_eq!(a.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        let c = a.complement(130);
        assert_eq!(c.count(), 127);
        assert!(!c.test(129));
        assert!(c.test(128));
        assert_eq!(c.complement(130), a);
        assert_eq!(a.span(), 130);
    }

    #[test]
    fn wide_bits_order_is_numeric() {
        let mut low = WideBits::zeroed(100);
        low.insert(63);
        let mut high = WideBits::zeroed(100);
        high.insert(64);
        assert!(low < high);
    }

    #[test]
    fn index_round_trip() {
        assert_eq!(u32::from_index(37, 13).to_index(), 37);
        assert_eq!(WideBits::from_index(37, 13).to_index(), 37);
    }
}
