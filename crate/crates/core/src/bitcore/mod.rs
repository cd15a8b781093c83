//! Binary words, codes, distance-requirement matrices and the counting
//! helpers shared by the rest of the crate.

mod code;
mod matrix;
mod word;

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub use code::Code;
pub(crate) use matrix::check_permutation;
pub use matrix::DistanceMatrix;
pub use word::{hamming_distance, hamming_weight, BitWord};

use crate::error::{Error, Result};

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Number of words of length `r` within distance `d` of a fixed word.
pub fn sphere_size(r: usize, d: usize) -> BigUint {
    (0..=d.min(r)).map(|i| binomial(r, i)).sum()
}

/// Outcome of checking a code against a distance-requirement matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceCheck {
    Satisfied,
    /// First pair `i < j` (0-based, row-major order) whose distance is too small.
    Violated {
        i: usize,
        j: usize,
        required: u32,
        actual: usize,
    },
}

impl DistanceCheck {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, DistanceCheck::Satisfied)
    }
}

/// Checks `d(p_i, p_j) >= D[i][j]` for all pairs.
pub fn satisfies_distance_matrix(code: &Code, d: &DistanceMatrix) -> Result<DistanceCheck> {
    if code.size() != d.dim() {
        return Err(Error::LengthMismatch { left: code.size(), right: d.dim() });
    }
    let words = code.words();
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            let actual = words[i].distance_unchecked(&words[j]);
            let required = d.get(i, j);
            if actual < required as usize {
                return Ok(DistanceCheck::Violated { i, j, required, actual });
            }
        }
    }
    Ok(DistanceCheck::Satisfied)
}

/// Shifted modulo: `((a - 1) mod b) + 1`, always in `1..=b`.
pub fn smod(a: u64, b: u64) -> u64 {
    assert!(b >= 1, "smod modulus must be positive");
    (a + b - 1) % b + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(words: &[&str]) -> Code {
        Code::new(words.iter().map(|w| w.parse().unwrap()).collect()).unwrap()
    }

    #[test]
    fn sphere_sizes() {
        assert_eq!(sphere_size(3, 1), BigUint::from(4u32));
        assert_eq!(sphere_size(5, 0), BigUint::from(1u32));
        assert_eq!(sphere_size(6, 6), BigUint::from(64u32));
        assert_eq!(sphere_size(4, 9), BigUint::from(16u32));
        assert_eq!(binomial(200, 100).to_string(), "90548514656103281165404177077484163874504589675413336841320");
    }

    #[test]
    fn weight_matrix_is_satisfied() {
        // Requirement [3 - |i-j|]^+ between weight classes 0, 1, 2.
        let d = DistanceMatrix::from_rows(vec![vec![0, 2, 1], vec![2, 0, 2], vec![1, 2, 0]]).unwrap();
        assert!(satisfies_distance_matrix(&code(&["000", "110", "011"]), &d).unwrap().is_satisfied());
    }

    #[test]
    fn reports_first_violation() {
        let d = DistanceMatrix::regular(2, 2);
        assert_eq!(
            satisfies_distance_matrix(&code(&["00", "01"]), &d).unwrap(),
            DistanceCheck::Violated { i: 0, j: 1, required: 2, actual: 1 }
        );
        assert!(satisfies_distance_matrix(&code(&["00"]), &d).is_err());
    }

    #[test]
    fn shifted_modulo() {
        assert_eq!(smod(3, 3), 3);
        assert_eq!(smod(4, 3), 1);
        assert_eq!(smod(1, 1), 1);
        assert_eq!(smod(0, 4), 4);
    }
}
