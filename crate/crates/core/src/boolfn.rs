//! Boolean functions on small domains, stored as truth-table bitmasks.
//!
//! Inputs are bit sequences read most-significant-first: the sequence
//! `(b0, b1, .., b_{n-1})` addresses table bit `b0·2^{n-1} + .. + b_{n-1}`.
//! Every module in the crate uses this convention.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported truth-table arity.
pub const MAX_ARITY: usize = 6;

/// A short bit sequence, most significant bit first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bits {
    len: u8,
    value: u32,
}

impl Bits {
    pub const EMPTY: Bits = Bits { len: 0, value: 0 };

    /// Builds the sequence whose integer encoding is `value`.
    pub fn from_index(len: usize, value: u32) -> Self {
        debug_assert!(len <= 32);
        debug_assert!(len == 32 || value >> len == 0);
        Bits {
            len: len as u8,
            value,
        }
    }

    pub fn from_slice(bits: &[bool]) -> Self {
        bits.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Integer encoding of the sequence.
    pub fn index(&self) -> u32 {
        self.value
    }

    /// Element `i`, counted from the front.
    pub fn bit(&self, i: usize) -> bool {
        assert!(
            i < self.len(),
            "bit {i} out of range for length {}",
            self.len
        );
        (self.value >> (self.len() - 1 - i)) & 1 == 1
    }

    pub fn push(&mut self, bit: bool) {
        assert!(self.len < 32, "bit sequence overflow");
        self.value = (self.value << 1) | bit as u32;
        self.len += 1;
    }

    /// Concatenation `self ++ other`.
    pub fn concat(mut self, other: Bits) -> Bits {
        for bit in other.iter() {
            self.push(bit);
        }
        self
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |i| self.bit(i))
    }

    /// XOR of all elements.
    pub fn parity(&self) -> bool {
        self.value.count_ones() % 2 == 1
    }

    /// Every sequence of length `len`, in ascending order.
    pub fn all(len: usize) -> impl Iterator<Item = Bits> {
        assert!(len < 32);
        (0..1u32 << len).map(move |v| Bits::from_index(len, v))
    }
}

impl FromIterator<bool> for Bits {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut bits = Bits::EMPTY;
        for b in iter {
            bits.push(b);
        }
        bits
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits({self})")
    }
}

impl Serialize for Bits {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A boolean function of `arity` bits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TruthTable {
    arity: u8,
    mask: u64,
}

impl TruthTable {
    pub fn new(arity: usize, mask: u64) -> Result<Self> {
        if arity > MAX_ARITY {
            return Err(Error::ArityOutOfRange(arity));
        }
        Ok(TruthTable {
            arity: arity as u8,
            mask: mask & Self::full_mask(arity),
        })
    }

    /// Tabulates `f` over every input of the given arity.
    pub fn from_fn(arity: usize, f: impl Fn(Bits) -> bool) -> Result<Self> {
        if arity > MAX_ARITY {
            return Err(Error::ArityOutOfRange(arity));
        }
        let mask = Bits::all(arity)
            .filter(|&input| f(input))
            .fold(0u64, |acc, input| acc | 1 << input.index());
        Ok(TruthTable {
            arity: arity as u8,
            mask,
        })
    }

    pub fn constant(arity: usize, value: bool) -> Result<Self> {
        Self::new(arity, if value { u64::MAX } else { 0 })
    }

    /// Projection onto input position `i`.
    pub fn projection(arity: usize, i: usize) -> Result<Self> {
        Self::from_fn(arity, |input| input.bit(i))
    }

    /// `g(s0, s1) = α·s0 ⊕ β·s1 ⊕ γ·s0·s1 ⊕ δ`.
    pub fn from_anf_2bit(alpha: bool, beta: bool, gamma: bool, delta: bool) -> Self {
        Self::from_fn(2, |s| {
            let (s0, s1) = (s.bit(0), s.bit(1));
            (alpha & s0) ^ (beta & s1) ^ (gamma & s0 & s1) ^ delta
        })
        .expect("arity 2 is in range")
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn evaluate(&self, input: &[bool]) -> Result<bool> {
        if input.len() != self.arity() {
            return Err(Error::InputLength {
                expected: self.arity(),
                got: input.len(),
            });
        }
        Ok(self.eval_index(Bits::from_slice(input).index()))
    }

    pub fn eval_bits(&self, input: Bits) -> Result<bool> {
        if input.len() != self.arity() {
            return Err(Error::InputLength {
                expected: self.arity(),
                got: input.len(),
            });
        }
        Ok(self.eval_index(input.index()))
    }

    /// Output on the input whose integer encoding is `index`.
    #[inline]
    pub fn eval_index(&self, index: u32) -> bool {
        debug_assert!((index as u64) < 1u64 << self.arity);
        (self.mask >> index) & 1 == 1
    }

    fn full_mask(arity: usize) -> u64 {
        if arity == MAX_ARITY {
            u64::MAX
        } else {
            (1u64 << (1 << arity)) - 1
        }
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = 1usize << self.arity;
        write!(f, "{:0width$b}", self.mask, width = width)
    }
}

impl Serialize for TruthTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("TruthTable", 2)?;
        s.serialize_field("arity", &self.arity)?;
        s.serialize_field("mask", &self.mask)?;
        s.end()
    }
}

/// All `2^(2^arity)` tables of the given arity in ascending mask order.
pub fn enumerate_tables(arity: usize) -> Result<impl Iterator<Item = TruthTable>> {
    if arity > MAX_ARITY {
        return Err(Error::ArityOutOfRange(arity));
    }
    let top = TruthTable::full_mask(arity);
    Ok((0..=top).map(move |mask| TruthTable {
        arity: arity as u8,
        mask,
    }))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    #[test]
    fn and_xor_constant() {
        let and = TruthTable::new(2, 0b1000).unwrap();
        assert!(and.evaluate(&[true, true]).unwrap());
        assert!(!and.evaluate(&[true, false]).unwrap());

        let xor = TruthTable::new(2, 0b0110).unwrap();
        assert!(xor.evaluate(&[true, false]).unwrap());
        assert!(!xor.evaluate(&[true, true]).unwrap());

        let zero = TruthTable::new(3, 0).unwrap();
        for input in Bits::all(3) {
            assert!(!zero.eval_bits(input).unwrap());
        }
    }

    #[test]
    fn first_input_is_most_significant() {
        // (1, 0) -> index 2
        let t = TruthTable::new(2, 0b0100).unwrap();
        assert!(t.evaluate(&[true, false]).unwrap());
        assert!(!t.evaluate(&[false, true]).unwrap());
        assert_eq!(TruthTable::projection(2, 0).unwrap().mask(), 0b1100);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let t = TruthTable::new(2, 0b0110).unwrap();
        assert_eq!(
            t.evaluate(&[true]),
            Err(Error::InputLength {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn high_bits_are_cleared() {
        let t = TruthTable::new(1, 0xff).unwrap();
        assert_eq!(t.mask(), 0b11);
        assert_eq!(TruthTable::constant(6, true).unwrap().mask(), u64::MAX);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_tables(0).unwrap().count(), 2);
        assert_eq!(enumerate_tables(1).unwrap().count(), 4);
        assert_eq!(enumerate_tables(2).unwrap().count(), 16);
        assert_eq!(enumerate_tables(3).unwrap().count(), 256);
        assert!(enumerate_tables(7).is_err());
        assert_eq!(TruthTable::new(7, 0), Err(Error::ArityOutOfRange(7)));
    }

    #[test]
    fn enumeration_is_ascending_and_distinct() {
        for arity in 0..=3 {
            let tables: Vec<_> = enumerate_tables(arity).unwrap().collect();
            assert!(tables.windows(2).all(|w| w[0].mask() < w[1].mask()));
            let distinct: BTreeSet<_> = tables.iter().collect();
            assert_eq!(distinct.len(), 1 << (1 << arity));
        }
    }

    #[test]
    fn anf_examples() {
        assert_eq!(
            TruthTable::from_anf_2bit(false, false, false, false).mask(),
            0
        );
        assert_eq!(
            TruthTable::from_anf_2bit(true, true, false, false).mask(),
            0b0110
        );
    }

    #[test]
    fn anf_basis_is_complete_and_free() {
        let mut seen = BTreeSet::new();
        for coeffs in Bits::all(4) {
            let t = TruthTable::from_anf_2bit(
                coeffs.bit(0),
                coeffs.bit(1),
                coeffs.bit(2),
                coeffs.bit(3),
            );
            // Distinct coefficient tuples give distinct tables.
            assert!(seen.insert(t));
        }
        let all: BTreeSet<_> = enumerate_tables(2).unwrap().collect();
        assert_eq!(seen, all);
    }

    #[test]
    fn bits_roundtrip_and_display() {
        let b = Bits::from_slice(&[true, false, true]);
        assert_eq!(b.index(), 0b101);
        assert_eq!(b.to_string(), "101");
        assert_eq!(b.concat(Bits::from_slice(&[true])).to_string(), "1011");
        assert!(!b.parity());
        assert_eq!(Bits::all(2).count(), 4);
    }
}
