//! Code constructions: greedy codes for arbitrary requirement matrices,
//! exact minimum-length search, and algebraic families.

mod classical;
mod greedy;
mod search;

use std::time::Duration;

pub use classical::{even_weight_subcode, hadamard_code, reed_muller_code, reed_muller_prefix};
pub use greedy::greedy_irregular_code;
pub use search::{exact_min_length, exact_min_length_with, ExhaustReason, SearchOptions, SearchOutcome};

use crate::bitcore::{BitWord, Code};
use crate::error::{invalid, Result};

/// Limits for [`exact_min_length`]. All limits are positive.
#[derive(Clone, Debug)]
pub struct SearchBudget {
    pub max_length: usize,
    pub max_nodes: u64,
    pub time_limit: Duration,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_length: 32, max_nodes: 50_000_000, time_limit: Duration::from_secs(120) }
    }
}

impl SearchBudget {
    pub fn validate(&self) -> Result<()> {
        if self.max_length == 0 || self.max_nodes == 0 || self.time_limit.is_zero() {
            return invalid("search budget limits must be positive");
        }
        Ok(())
    }
}

/// Minimum pairwise distance. Duplicate words give 0.
pub fn min_distance(code: &Code) -> Result<usize> {
    if code.size() < 2 {
        return invalid("minimum distance needs at least two words");
    }
    let w = code.words();
    Ok((0..w.len())
        .flat_map(|i| (i + 1..w.len()).map(move |j| (i, j)))
        .map(|(i, j)| w[i].distance_unchecked(&w[j]))
        .min()
        .expect("at least one pair"))
}

/// Repeats every bit `t` times in place, multiplying all distances by `t`.
pub fn replicate_bits(code: &Code, t: usize) -> Code {
    let words =
        code.words().iter().map(|w| BitWord::from_bits(w.iter().flat_map(|b| std::iter::repeat_n(b, t)))).collect();
    Code::with_word_len(code.word_len() * t, words).expect("replicated words share a length")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(words: &[&str]) -> Code {
        Code::new(words.iter().map(|w| w.parse().unwrap()).collect()).unwrap()
    }

    #[test]
    fn minimum_distance() {
        assert_eq!(min_distance(&code(&["000", "011", "101"])).unwrap(), 2);
        assert_eq!(min_distance(&code(&["01", "01"])).unwrap(), 0);
        assert!(min_distance(&code(&["01"])).is_err());
    }

    #[test]
    fn replication() {
        let r = replicate_bits(&code(&["01", "10"]), 3);
        assert_eq!(r.to_text(), "000111\n111000\n");
        assert_eq!(replicate_bits(&code(&["01", "10"]), 0).word_len(), 0);
    }

    #[test]
    fn budget_validation() {
        assert!(SearchBudget::default().validate().is_ok());
        assert!(SearchBudget { max_nodes: 0, ..Default::default() }.validate().is_err());
    }
}
