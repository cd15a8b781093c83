//! Function specifications, systematic encoders and the generic analysis
//! around them: requirement matrices, function distances, exhaustive
//! verification, nearest-codeword decoding and exact optimal redundancy.
//!
//! An encoder protects `f` against `t` errors iff every pair of messages
//! with `f(u1) != f(u2)` satisfies `d(u1, u2) + d(p(u1), p(u2)) >= 2t + 1`.

mod encoder;
mod spec;

use std::collections::{BTreeSet, VecDeque};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub use encoder::{EncoderMode, FccEncoder};
pub use spec::{FunctionSpec, FunctionValue, MAX_TABLE_K, MAX_VALIDATED_K};

use crate::bitcore::{BitWord, DistanceMatrix};
use crate::bounds::{gv_irregular_threshold, identity_order, row_sum_order};
use crate::codegen::{exact_min_length_with, greedy_irregular_code, SearchBudget, SearchOptions, SearchOutcome};
use crate::error::{invalid, Error, Result};

fn requirement(t: usize, d: usize) -> u32 {
    (2 * t + 1).saturating_sub(d) as u32
}

/// `D[i][j] = [2t + 1 - d(u_i, u_j)]^+` when `f(u_i) != f(u_j)`, else 0.
pub fn distance_requirement_matrix(spec: &FunctionSpec, t: usize, us: &[BitWord]) -> Result<DistanceMatrix> {
    let values = us.iter().map(|u| spec.eval(u)).collect::<Result<Vec<_>>>()?;
    if us.iter().tuple_combinations().any(|(a, b)| a == b) {
        return invalid("message list contains duplicates");
    }
    Ok(DistanceMatrix::from_fn(us.len(), |i, j| {
        if values[i] == values[j] {
            0
        } else {
            requirement(t, us[i].distance_unchecked(&us[j]))
        }
    }))
}

/// Distance from the preimage of image index `from` to the preimage of
/// every image index, by breadth-first search over the hypercube.
fn distances_from(spec: &FunctionSpec, from: usize) -> Result<Vec<usize>> {
    let table = spec.value_table()?;
    let k = spec.k();
    let mut best = vec![usize::MAX; spec.expressiveness()];
    let mut seen_values = 0;
    let mut dist = vec![u32::MAX; table.len()];
    let mut queue = VecDeque::new();
    for (x, &v) in table.iter().enumerate() {
        if v as usize == from {
            dist[x] = 0;
            queue.push_back(x);
        }
    }
    while let Some(x) = queue.pop_front() {
        let v = table[x] as usize;
        if best[v] == usize::MAX {
            best[v] = dist[x] as usize;
            seen_values += 1;
            if seen_values == best.len() {
                break;
            }
        }
        for b in 0..k {
            let y = x ^ (1 << b);
            if dist[y] == u32::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    Ok(best)
}

/// Minimum Hamming distance between messages evaluating to `f1` and `f2`.
pub fn function_distance(spec: &FunctionSpec, f1: &FunctionValue, f2: &FunctionValue) -> Result<usize> {
    let i = spec.index_of(f1).ok_or_else(|| Error::ValueNotInImage(f1.to_string()))?;
    let j = spec.index_of(f2).ok_or_else(|| Error::ValueNotInImage(f2.to_string()))?;
    if i == j {
        return Ok(0);
    }
    if let Some(d) = spec.distance_override(i, j) {
        return Ok(d);
    }
    Ok(distances_from(spec, i)?[j])
}

/// `d_f(f_i, f_j)` for all pairs of image indices.
pub fn function_distance_table(spec: &FunctionSpec) -> Result<Vec<Vec<usize>>> {
    let e = spec.expressiveness();
    (0..e)
        .map(|i| match spec.distance_override(i, i) {
            Some(_) => Ok((0..e).map(|j| spec.distance_override(i, j).expect("override present")).collect()),
            None => distances_from(spec, i),
        })
        .collect()
}

/// `E x E` matrix `[2t + 1 - d_f(f_i, f_j)]^+` in image order.
pub fn function_distance_matrix(spec: &FunctionSpec, t: usize) -> Result<DistanceMatrix> {
    let table = function_distance_table(spec)?;
    Ok(DistanceMatrix::from_fn(table.len(), |i, j| requirement(t, table[i][j])))
}

/// Per-value encoder from the function distance matrix: the greedy code at
/// the GV threshold for the identity and row-sum orders, keeping the shorter.
pub fn build_function_value_encoder(spec: &FunctionSpec, t: usize) -> Result<FccEncoder> {
    let d = function_distance_matrix(spec, t)?;
    let mut best = None;
    for order in [identity_order(d.dim()), row_sum_order(&d)] {
        let r = gv_irregular_threshold(&d, &order)?;
        if best.as_ref().is_some_and(|(br, _)| *br <= r) {
            continue;
        }
        let code = greedy_irregular_code(&d, r, &order)?
            .ok_or_else(|| Error::InvalidMatrix(format!("greedy code failed at its threshold length {r}")))?;
        best = Some((r, code));
    }
    let (r, code) = best.expect("at least one order was tried");
    FccEncoder::per_function_value(spec.clone(), t, r, code.into_words())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FccViolation {
    pub u1: BitWord,
    pub u2: BitWord,
    pub message_distance: usize,
    pub parity_distance: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    /// Pairs with different function values that were examined.
    pub pairs_checked: u64,
    /// The lexicographically smallest failing pair, if any.
    pub violation: Option<FccViolation>,
}

impl Verification {
    pub fn is_ok(&self) -> bool {
        self.violation.is_none()
    }
}

fn violation(enc: &FccEncoder, x: usize, y: usize) -> FccViolation {
    let (u1, u2) = (enc.spec().message(x as u64), enc.spec().message(y as u64));
    let parity_distance = enc.parity(&u1).expect("valid").distance_unchecked(enc.parity(&u2).expect("valid"));
    FccViolation { message_distance: u1.distance_unchecked(&u2), u1, u2, parity_distance }
}

/// Exhaustive check over all message pairs with different function values.
pub fn verify_fcc(enc: &FccEncoder) -> Result<Verification> {
    let table = enc.spec().value_table()?;
    let words = enc.codewords()?;
    let need = 2 * enc.t() + 1;
    let first = (0..words.len()).into_par_iter().find_map_first(|x| {
        (x + 1..words.len())
            .find(|&y| table[x] != table[y] && words[x].distance_unchecked(&words[y]) < need)
            .map(|y| (x, y))
    });
    let mut per_value = vec![0u64; enc.spec().expressiveness()];
    for &v in table.iter() {
        per_value[v as usize] += 1;
    }
    let n = words.len() as u64;
    let same: u64 = per_value.iter().map(|c| c * c.saturating_sub(1) / 2).sum();
    Ok(Verification { pairs_checked: n * (n - 1) / 2 - same, violation: first.map(|(x, y)| violation(enc, x, y)) })
}

/// Checks `samples` uniformly random message pairs drawn from a seeded ChaCha8 stream.
pub fn verify_fcc_sampled(enc: &FccEncoder, samples: u64, seed: u64) -> Result<Verification> {
    let k = enc.spec().k();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_word = |rng: &mut ChaCha8Rng| BitWord::from_bits((0..k).map(|_| rng.random::<bool>()));
    let need = 2 * enc.t() + 1;
    let mut checked = 0;
    let mut worst: Option<FccViolation> = None;
    for _ in 0..samples {
        let (u1, u2) = (random_word(&mut rng), random_word(&mut rng));
        if enc.spec().eval(&u1)? == enc.spec().eval(&u2)? {
            continue;
        }
        checked += 1;
        let (c1, c2) = (enc.encode(&u1)?, enc.encode(&u2)?);
        if c1.distance_unchecked(&c2) < need {
            let (u1, u2) = if u1 < u2 { (u1, u2) } else { (u2, u1) };
            let v = FccViolation {
                message_distance: u1.distance_unchecked(&u2),
                parity_distance: enc.parity(&u1)?.distance_unchecked(enc.parity(&u2)?),
                u1,
                u2,
            };
            if worst.as_ref().is_none_or(|w| (&v.u1, &v.u2) < (&w.u1, &w.u2)) {
                worst = Some(v);
            }
        }
    }
    Ok(Verification { pairs_checked: checked, violation: worst })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decoded {
    pub value: FunctionValue,
    /// Distance from the received word to the nearest codeword.
    pub distance: usize,
    /// Nearest codewords disagree on `f`, or more than `t` errors occurred.
    pub out_of_model: bool,
}

/// Function value of the nearest codeword. Ties between different values
/// resolve to the smallest value and are flagged out of model.
pub fn decode(enc: &FccEncoder, y: &BitWord) -> Result<Decoded> {
    if y.len() != enc.n() {
        return Err(Error::LengthMismatch { left: enc.n(), right: y.len() });
    }
    let table = enc.spec().value_table()?;
    let words = enc.codewords()?;
    let mut best = usize::MAX;
    let mut values = BTreeSet::new();
    for (x, w) in words.iter().enumerate() {
        let d = w.distance_unchecked(y);
        if d < best {
            best = d;
            values.clear();
        }
        if d == best {
            values.insert(table[x]);
        }
    }
    let index = *values.first().expect("at least one codeword");
    Ok(Decoded {
        value: enc.spec().image()[index as usize],
        distance: best,
        out_of_model: values.len() > 1 || best > enc.t(),
    })
}

#[derive(Clone, Debug)]
pub struct ExactRedundancy {
    pub outcome: SearchOutcome,
    /// Per-message encoder built from the optimal parities, when proven.
    pub encoder: Option<FccEncoder>,
}

/// Optimal parity length over all encoders, by exact search on the
/// requirement matrix of every message. Practical for `k <= 6`.
pub fn exact_optimal_redundancy(spec: &FunctionSpec, t: usize, budget: &SearchBudget) -> Result<ExactRedundancy> {
    exact_optimal_redundancy_with(spec, t, budget, &SearchOptions::default())
}

pub fn exact_optimal_redundancy_with(
    spec: &FunctionSpec,
    t: usize,
    budget: &SearchBudget,
    opts: &SearchOptions,
) -> Result<ExactRedundancy> {
    if spec.k() > 6 {
        return Err(Error::TooLarge(format!("exact search over all 2^{} messages", spec.k())));
    }
    let us: Vec<BitWord> = BitWord::all(spec.k()).collect();
    let d = distance_requirement_matrix(spec, t, &us)?;
    let outcome = exact_min_length_with(&d, budget, opts)?;
    let encoder = match &outcome {
        SearchOutcome::Proven { length, code, .. } => {
            Some(FccEncoder::per_message(spec.clone(), t, *length, code.words().to_vec())?)
        }
        SearchOutcome::BudgetExhausted { .. } => None,
    };
    Ok(ExactRedundancy { outcome, encoder })
}

/// Image indices of `f` over the Hamming ball of radius `rho` around message `x`.
fn ball_indices(table: &[u32], k: usize, x: usize, rho: usize) -> BTreeSet<u32> {
    let mut out = BTreeSet::new();
    for e in 0..=rho.min(k) {
        for positions in (0..k).combinations(e) {
            let y = positions.iter().fold(x, |acc, &b| acc ^ (1 << b));
            out.insert(table[y]);
        }
    }
    out
}

/// `{f(u') : d(u, u') <= rho}`.
pub fn function_ball(spec: &FunctionSpec, u: &BitWord, rho: usize) -> Result<BTreeSet<FunctionValue>> {
    if u.len() != spec.k() {
        return Err(Error::LengthMismatch { left: spec.k(), right: u.len() });
    }
    let table = spec.value_table()?;
    let x = u.to_u64().expect("k <= 24") as usize;
    Ok(ball_indices(&table, spec.k(), x, rho).into_iter().map(|i| spec.image()[i as usize]).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LocalBinarity {
    Binary,
    /// The ball around `witness` (the smallest such message) holds `ball_size > 2` values.
    NotBinary {
        witness: BitWord,
        ball_size: usize,
    },
}

impl LocalBinarity {
    pub fn is_binary(&self) -> bool {
        matches!(self, LocalBinarity::Binary)
    }
}

/// Whether every radius-`rho` ball sees at most two function values.
pub fn is_locally_binary(spec: &FunctionSpec, rho: usize) -> Result<LocalBinarity> {
    let table = spec.value_table()?;
    let k = spec.k();
    let found = (0..table.len()).into_par_iter().find_map_first(|x| {
        let ball = ball_indices(&table, k, x, rho);
        (ball.len() > 2).then_some((x, ball.len()))
    });
    Ok(match found {
        None => LocalBinarity::Binary,
        Some((x, ball_size)) => LocalBinarity::NotBinary { witness: spec.message(x as u64), ball_size },
    })
}
