use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};

type Limbs = SmallVec<[u64; 1]>;

/// A fixed-length binary word.
///
/// Bit 0 is the leftmost bit. The word is stored as the integer
/// `sum(bit_i * 2^(len-1-i))` in little-endian 64-bit limbs, so words of
/// length at most 64 occupy a single inline limb. Unused high bits are zero.
/// Words of equal length order lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitWord {
    len: usize,
    limbs: Limbs,
}

fn limb_count(len: usize) -> usize {
    len.div_ceil(64).max(1)
}

impl BitWord {
    pub fn zeros(len: usize) -> Self {
        BitWord { len, limbs: SmallVec::from_elem(0, limb_count(len)) }
    }

    pub fn ones(len: usize) -> Self {
        let mut w = Self::zeros(len);
        for limb in w.limbs.iter_mut() {
            *limb = u64::MAX;
        }
        w.mask_top();
        w
    }

    /// Word of length `len` whose bits read as the binary expansion of `value`.
    pub fn from_u64(value: u64, len: usize) -> Result<Self> {
        if len < 64 && value >> len != 0 {
            return Err(Error::InvalidParameter(format!("value {value} does not fit in {len} bits")));
        }
        let mut w = Self::zeros(len);
        w.limbs[0] = value;
        Ok(w)
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut w = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                w.set(i, true);
            }
        }
        w
    }

    /// `count` leading ones followed by `len - count` zeros.
    pub fn prefix_ones(count: usize, len: usize) -> Self {
        debug_assert!(count <= len);
        Self::from_bits((0..len).map(|i| i < count))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn position(&self, i: usize) -> (usize, u32) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let p = self.len - 1 - i;
        (p / 64, (p % 64) as u32)
    }

    fn mask_top(&mut self) {
        let rem = self.len % 64;
        let last = self.limbs.len() - 1;
        if self.len == 0 {
            self.limbs[0] = 0;
        } else if rem != 0 {
            self.limbs[last] &= (1u64 << rem) - 1;
        }
    }

    fn set(&mut self, i: usize, value: bool) {
        let (limb, off) = self.position(i);
        if value {
            self.limbs[limb] |= 1 << off;
        } else {
            self.limbs[limb] &= !(1 << off);
        }
    }

    pub fn bit(&self, i: usize) -> bool {
        let (limb, off) = self.position(i);
        (self.limbs[limb] >> off) & 1 == 1
    }

    pub fn with_bit(&self, i: usize, value: bool) -> Self {
        let mut w = self.clone();
        w.set(i, value);
        w
    }

    pub fn flipped(&self, i: usize) -> Self {
        self.with_bit(i, !self.bit(i))
    }

    /// Flips every position in `positions`.
    pub fn flipped_at(&self, positions: &[usize]) -> Self {
        let mut w = self.clone();
        for &i in positions {
            let b = w.bit(i);
            w.set(i, !b);
        }
        w
    }

    pub fn weight(&self) -> usize {
        self.limbs.iter().map(|l| l.count_ones() as usize).sum()
    }

    /// Distance to a word of the same length. Lengths are not checked.
    pub(crate) fn distance_unchecked(&self, other: &BitWord) -> usize {
        self.limbs.iter().zip(other.limbs.iter()).map(|(a, b)| (a ^ b).count_ones() as usize).sum()
    }

    pub fn distance(&self, other: &BitWord) -> Result<usize> {
        if self.len != other.len {
            return Err(Error::LengthMismatch { left: self.len, right: other.len });
        }
        Ok(self.distance_unchecked(other))
    }

    pub fn xor(&self, other: &BitWord) -> Result<BitWord> {
        if self.len != other.len {
            return Err(Error::LengthMismatch { left: self.len, right: other.len });
        }
        let limbs = self.limbs.iter().zip(other.limbs.iter()).map(|(a, b)| a ^ b).collect();
        Ok(BitWord { len: self.len, limbs })
    }

    /// The integer value of the word, if it has at most 64 bits.
    pub fn to_u64(&self) -> Option<u64> {
        (self.len <= 64).then(|| self.limbs[0])
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &BitWord) -> BitWord {
        if self.len + other.len <= 64 {
            let value = if other.len == 64 { 0 } else { self.limbs[0] << other.len } | other.limbs[0];
            let mut w = Self::zeros(self.len + other.len);
            w.limbs[0] = value;
            return w;
        }
        Self::from_bits(self.iter().chain(other.iter()))
    }

    /// Bits `start..end`.
    pub fn slice(&self, start: usize, end: usize) -> BitWord {
        assert!(start <= end && end <= self.len);
        Self::from_bits((start..end).map(|i| self.bit(i)))
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.bit(i))
    }

    /// Every word of length `len`, in lexicographic order.
    pub fn all(len: usize) -> impl Iterator<Item = BitWord> {
        assert!(len < 64, "enumerating all words of length {len} is not supported");
        (0..1u64 << len).map(move |v| BitWord::from_u64(v, len).expect("value fits"))
    }
}

impl Ord for BitWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| self.limbs.iter().rev().cmp(other.limbs.iter().rev()))
    }
}

impl PartialOrd for BitWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitWord({self})")
    }
}

impl FromStr for BitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("unexpected character {other:?} in binary word"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        Ok(BitWord::from_bits(bits))
    }
}

impl serde::Serialize for BitWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for BitWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn hamming_distance(a: &BitWord, b: &BitWord) -> Result<usize> {
    a.distance(b)
}

pub fn hamming_weight(a: &BitWord) -> usize {
    a.weight()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn distance_and_weight() {
        assert_eq!(hamming_distance(&w("101"), &w("011")).unwrap(), 2);
        assert_eq!(hamming_weight(&w("10110")), 3);
        assert!(matches!(hamming_distance(&w("10"), &w("101")), Err(Error::LengthMismatch { left: 2, right: 3 })));
    }

    #[test]
    fn bit_zero_is_most_significant() {
        let x = w("100");
        assert_eq!(x.to_u64(), Some(4));
        assert!(x.bit(0));
        assert_eq!(BitWord::from_u64(3, 4).unwrap().to_string(), "0011");
    }

    #[test]
    fn long_words_span_limbs() {
        let long: String = (0..150).map(|i| if i % 3 == 0 { '1' } else { '0' }).collect();
        let x = w(&long);
        assert_eq!(x.to_string(), long);
        assert_eq!(x.weight(), 50);
        assert_eq!(x.distance(&BitWord::zeros(150)).unwrap(), 50);
        assert_eq!(BitWord::ones(130).weight(), 130);
        let y = x.flipped(149);
        assert_eq!(x.distance(&y).unwrap(), 1);
        assert!(x < y);
    }

    #[test]
    fn concat_and_slice() {
        let a = w("1101");
        let b = w("001");
        assert_eq!(a.concat(&b).to_string(), "1101001");
        let big = BitWord::ones(40).concat(&BitWord::zeros(40));
        assert_eq!(big.len(), 80);
        assert_eq!(big.slice(38, 42).to_string(), "1100");
        assert_eq!(BitWord::zeros(0).concat(&a), a);
    }

    #[test]
    fn lexicographic_order() {
        let mut v: Vec<BitWord> = ["110", "011", "000", "101"].iter().map(|s| w(s)).collect();
        v.sort();
        let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["000", "011", "101", "110"]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!("10a".parse::<BitWord>().is_err());
        assert!(BitWord::from_u64(8, 3).is_err());
    }
}
