use itertools::Itertools;

use crate::bitcore::{BitWord, Code};
use crate::error::{invalid, Error, Result};

/// Largest Hadamard order materialized by [`hadamard_code`].
const MAX_HADAMARD_ORDER: u32 = 1024;

/// Sylvester-Hadamard code: `4D` words of length `2D` with minimum distance
/// `D`. Available when `2D` is a power of two (up to order 1024).
///
/// Words are the rows of the order-`2D` Sylvester matrix with `+1 -> 0`,
/// followed by their complements.
pub fn hadamard_code(d: u32) -> Option<Code> {
    let n = d.checked_mul(2)?;
    if d == 0 || !n.is_power_of_two() || n > MAX_HADAMARD_ORDER {
        return None;
    }
    let n = n as usize;
    let rows: Vec<BitWord> =
        (0..n).map(|i| BitWord::from_bits((0..n).map(|j| (i & j).count_ones() % 2 == 1))).collect();
    let complements: Vec<BitWord> = rows.iter().map(|w| w.xor(&BitWord::ones(n)).expect("same length")).collect();
    Some(Code::new(rows.into_iter().chain(complements).collect()).expect("equal lengths"))
}

/// Generator rows of RM(r, m): evaluations of the monomials of degree at
/// most `r`, by degree then lexicographically, at the points of `{0,1}^m`
/// in lexicographic order.
fn reed_muller_generators(r: u32, m: u32) -> Result<Vec<BitWord>> {
    if r > m {
        return invalid(format!("Reed-Muller order {r} exceeds m = {m}"));
    }
    if m > 16 {
        return Err(Error::TooLarge(format!("Reed-Muller length 2^{m}")));
    }
    let (m, n) = (m as usize, 1usize << m);
    let mut rows = Vec::new();
    for deg in 0..=r as usize {
        for vars in (0..m).combinations(deg) {
            rows.push(BitWord::from_bits((0..n).map(|p| vars.iter().all(|&v| (p >> (m - 1 - v)) & 1 == 1))));
        }
    }
    Ok(rows)
}

fn combine(generators: &[BitWord], message: u64) -> BitWord {
    let k = generators.len();
    let mut acc = BitWord::zeros(generators[0].len());
    for (g, row) in generators.iter().enumerate() {
        if (message >> (k - 1 - g)) & 1 == 1 {
            acc = acc.xor(row).expect("generator rows share a length");
        }
    }
    acc
}

/// All `2^k` codewords of RM(r, m), `k = sum_{i<=r} C(m, i)`, in message
/// order with the first generator row as the most significant message bit.
/// Length `2^m`, minimum distance `2^(m-r)`.
pub fn reed_muller_code(r: u32, m: u32) -> Result<Code> {
    let generators = reed_muller_generators(r, m)?;
    if generators.len() > 20 {
        return Err(Error::TooLarge(format!("Reed-Muller dimension {}", generators.len())));
    }
    reed_muller_prefix(r, m, 1 << generators.len())
}

/// The first `count` codewords of RM(r, m) in the order of [`reed_muller_code`].
pub fn reed_muller_prefix(r: u32, m: u32, count: usize) -> Result<Code> {
    let generators = reed_muller_generators(r, m)?;
    let k = generators.len();
    if k < 64 && count as u128 > 1u128 << k {
        return invalid(format!("RM({r},{m}) has only 2^{k} codewords, {count} requested"));
    }
    Code::with_word_len(1 << m, (0..count as u64).map(|msg| combine(&generators, msg)).collect())
}

/// The first `count` words of even weight and length `len`, in lexicographic order.
pub fn even_weight_subcode(count: usize, len: usize) -> Result<Code> {
    if len > 63 {
        return Err(Error::TooLarge(format!("even-weight words of length {len}")));
    }
    let available = if len == 0 { 1u64 } else { 1u64 << (len - 1) };
    if count as u64 > available {
        return invalid(format!("only {available} even-weight words of length {len}, {count} requested"));
    }
    let words = (0..1u64 << len)
        .filter(|v| v.count_ones() % 2 == 0)
        .take(count)
        .map(|v| BitWord::from_u64(v, len).expect("fits"))
        .collect();
    Code::with_word_len(len, words)
}
