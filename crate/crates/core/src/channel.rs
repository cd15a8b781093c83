//! Adversarial substitution channel.
//!
//! Every transmitted codeword is hit by an error pattern of weight at most
//! `t` and decoded; a trial fails when the decoded value differs from
//! `f(u)`. Exhaustive mode enumerates patterns by weight, then by
//! lexicographic position set. Random mode draws patterns from ChaCha8
//! with stream `u` per message, so reports do not depend on scheduling.

use itertools::Itertools;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitcore::{binomial, BitWord};
use crate::error::{Error, Result};
use crate::fcc::{decode, FccEncoder, FunctionValue};

/// Largest number of decoded words a single simulation may run.
pub const MAX_TRIALS: u64 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum ChannelMode {
    /// All `sum_{i <= t} C(n, i)` patterns.
    Exhaustive,
    /// `trials` patterns per message with weight uniform in `0..=t`.
    Random { seed: u64, trials: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChannelModel {
    pub t: usize,
    pub mode: ChannelMode,
}

impl ChannelModel {
    pub fn exhaustive(t: usize) -> Self {
        ChannelModel { t, mode: ChannelMode::Exhaustive }
    }

    pub fn random(t: usize, seed: u64, trials: u64) -> Self {
        ChannelModel { t, mode: ChannelMode::Random { seed, trials } }
    }

    /// Patterns applied to each message of a length-`n` code.
    pub fn patterns_per_message(&self, n: usize) -> u64 {
        match self.mode {
            ChannelMode::Exhaustive => (0..=self.t.min(n))
                .map(|i| u64::try_from(binomial(n, i)).unwrap_or(u64::MAX))
                .fold(0, u64::saturating_add),
            ChannelMode::Random { trials, .. } => trials,
        }
    }

    /// Patterns for one message, in canonical order. Each is a sorted position set.
    fn patterns(&self, n: usize, message: u64) -> Box<dyn Iterator<Item = Vec<usize>> + '_> {
        let t = self.t.min(n);
        match self.mode {
            ChannelMode::Exhaustive => Box::new((0..=t).flat_map(move |e| (0..n).combinations(e))),
            ChannelMode::Random { seed, trials } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(message);
                Box::new((0..trials).map(move |_| {
                    let e = rng.random_range(0..=t);
                    sample(&mut rng, n, e).into_iter().sorted().collect()
                }))
            }
        }
    }
}

/// Which messages are transmitted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Messages {
    All,
    /// `count` distinct messages drawn with ChaCha8 from `seed`, in ascending order.
    Sample {
        count: u64,
        seed: u64,
    },
}

impl Messages {
    fn select(&self, k: usize) -> Result<Vec<u64>> {
        if k >= 64 {
            return Err(Error::TooLarge(format!("message space of {k} bits")));
        }
        let total = 1u64 << k;
        match *self {
            Messages::All => Ok((0..total).collect()),
            Messages::Sample { count, seed } => {
                if count >= total {
                    return Ok((0..total).collect());
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut chosen = std::collections::BTreeSet::new();
                while (chosen.len() as u64) < count {
                    chosen.insert(rng.random_range(0..total));
                }
                Ok(chosen.into_iter().collect())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimulationFailure {
    pub message: BitWord,
    /// Flipped codeword positions, 0-based.
    pub positions: Vec<usize>,
    pub received: BitWord,
    pub expected: FunctionValue,
    pub decoded: FunctionValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimulationReport {
    pub channel: ChannelModel,
    pub messages: u64,
    pub trials: u64,
    pub failures: u64,
    /// First failure in (message, pattern) order.
    pub witness: Option<SimulationFailure>,
}

impl SimulationReport {
    pub fn is_clean(&self) -> bool {
        self.failures == 0
    }
}

/// Simulates the channel with the nearest-codeword decoder.
pub fn simulate(enc: &FccEncoder, channel: &ChannelModel, messages: &Messages) -> Result<SimulationReport> {
    simulate_with(enc, channel, messages, |y| Ok(decode(enc, y)?.value))
}

/// Simulates the channel with a custom decoder from received words to function values.
pub fn simulate_with<D>(
    enc: &FccEncoder,
    channel: &ChannelModel,
    messages: &Messages,
    decoder: D,
) -> Result<SimulationReport>
where
    D: Fn(&BitWord) -> Result<FunctionValue> + Sync,
{
    let spec = enc.spec();
    let selected = messages.select(spec.k())?;
    let n = enc.n();
    let per = channel.patterns_per_message(n);
    let trials = per.saturating_mul(selected.len() as u64);
    if trials > MAX_TRIALS {
        return Err(Error::TooLarge(format!("{trials} channel trials")));
    }
    let outcomes = selected
        .par_iter()
        .map(|&x| -> Result<(u64, Option<SimulationFailure>)> {
            let u = spec.message(x);
            let expected = spec.eval(&u)?;
            let c = enc.encode(&u)?;
            let mut failures = 0;
            let mut first = None;
            for positions in channel.patterns(n, x) {
                let received = c.flipped_at(&positions);
                let decoded = decoder(&received)?;
                if decoded != expected {
                    failures += 1;
                    if first.is_none() {
                        first = Some(SimulationFailure { message: u.clone(), positions, received, expected, decoded });
                    }
                }
            }
            Ok((failures, first))
        })
        .collect::<Result<Vec<_>>>()?;
    // `collect` keeps message order, so the first witness is canonical.
    let failures = outcomes.iter().map(|(f, _)| f).sum();
    let witness = outcomes.into_iter().find_map(|(_, w)| w);
    Ok(SimulationReport { channel: *channel, messages: selected.len() as u64, trials, failures, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fcc::verify_fcc;
    use crate::functions::{construction1_wt_encoder, parity_spec};

    #[test]
    fn exhaustive_pattern_count_and_order() {
        let ch = ChannelModel::exhaustive(2);
        assert_eq!(ch.patterns_per_message(5), 16);
        let pats: Vec<_> = ch.patterns(5, 0).collect();
        assert_eq!(pats.len(), 16);
        assert_eq!(pats[0], Vec::<usize>::new());
        assert_eq!(pats[1], vec![0]);
        assert_eq!(pats[6], vec![0, 1]);
        assert_eq!(pats[15], vec![3, 4]);
    }

    #[test]
    fn verified_encoder_survives() {
        let enc = construction1_wt_encoder(6, 1).unwrap();
        assert!(verify_fcc(&enc).unwrap().is_ok());
        let report = simulate(&enc, &ChannelModel::exhaustive(1), &Messages::All).unwrap();
        assert_eq!(report.trials, 64 * 10);
        assert!(report.is_clean());
    }

    #[test]
    fn unprotected_parity_fails_with_witness() {
        let spec = parity_spec(3).unwrap();
        let enc = FccEncoder::per_message(spec, 1, 0, vec![BitWord::zeros(0); 8]).unwrap();
        let report = simulate(&enc, &ChannelModel::exhaustive(1), &Messages::All).unwrap();
        assert!(report.failures > 0);
        let w = report.witness.unwrap();
        assert_eq!(w.message.to_string(), "000");
        assert_eq!(w.positions, vec![0]);
    }

    #[test]
    fn random_mode_is_reproducible() {
        let enc = construction1_wt_encoder(5, 1).unwrap();
        let ch = ChannelModel::random(1, 7, 20);
        let a = simulate(&enc, &ch, &Messages::Sample { count: 10, seed: 3 }).unwrap();
        let b = simulate(&enc, &ch, &Messages::Sample { count: 10, seed: 3 }).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.trials, 200);
        let pa: Vec<_> = ch.patterns(8, 4).collect();
        let pb: Vec<_> = ch.patterns(8, 4).collect();
        assert_eq!(pa, pb);
        assert!(pa.iter().all(|p| p.len() <= 1));
    }
}
