use num_traits::ToPrimitive;
use serde::Serialize;

use crate::bitcore::{binomial, BitWord, DistanceMatrix};
use crate::bounds::ceil_log2_u64;
use crate::codegen::{even_weight_subcode, reed_muller_prefix, replicate_bits};
use crate::error::{invalid, Error, Result};
use crate::fcc::{function_distance_table, FccEncoder, FunctionSpec, FunctionValue, MAX_VALIDATED_K};

/// `(argmin, argmax)` over the `w` parts of length `l`, 1-based.
///
/// Parts are ordered lexicographically with ties broken by ascending index,
/// so the minimum takes the first of equal smallest parts and the maximum
/// the last of equal largest parts.
pub fn minmax_eval(u: &BitWord, w: usize, l: usize) -> FunctionValue {
    let parts: Vec<BitWord> = (0..w).map(|i| u.slice(i * l, (i + 1) * l)).collect();
    let mut argmin = 0;
    let mut argmax = 0;
    for i in 1..w {
        if parts[i] < parts[argmin] {
            argmin = i;
        }
        if parts[i] >= parts[argmax] {
            argmax = i;
        }
    }
    FunctionValue::Pair(argmin as u32 + 1, argmax as u32 + 1)
}

/// Min-max function on `w` parts of `l` bits. For `w >= 2` and `l >= 2`
/// the image is every pair `(i, j)` with `i != j`.
pub fn minmax_spec(w: usize, l: usize) -> Result<FunctionSpec> {
    if w == 0 || l == 0 {
        return invalid("min-max needs w >= 1 and l >= 1");
    }
    let k = w * l;
    let name = format!("minmax:w={w},l={l}");
    let eval = move |u: &BitWord| minmax_eval(u, w, l);
    if k <= MAX_VALIDATED_K {
        return FunctionSpec::from_eval(name, k, eval);
    }
    if l == 1 {
        return Err(Error::TooLarge(format!("min-max image for l = 1 and k = {k}")));
    }
    let image = if w == 1 {
        vec![FunctionValue::Pair(1, 1)]
    } else {
        (1..=w as u32)
            .flat_map(|i| (1..=w as u32).filter(move |&j| j != i).map(move |j| FunctionValue::Pair(i, j)))
            .collect()
    };
    FunctionSpec::new(name, k, image, eval)
}

/// Brute-force function distances of a min-max function.
#[derive(Clone, Debug, Serialize)]
pub struct MinMaxOracle {
    pub w: usize,
    pub l: usize,
    /// Image values in order.
    pub values: Vec<FunctionValue>,
    /// `distances[i][j] = d_mm(values[i], values[j])`.
    pub distances: Vec<Vec<usize>>,
    /// Number of values at distance exactly 1 from each value.
    pub neighbor_counts: Vec<usize>,
}

impl MinMaxOracle {
    pub fn max_distance(&self) -> usize {
        self.distances.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Requirement matrix `[2t + 1 - d_mm]^+`.
    pub fn requirement_matrix(&self, t: usize) -> DistanceMatrix {
        DistanceMatrix::from_fn(self.values.len(), |i, j| (2 * t + 1).saturating_sub(self.distances[i][j]) as u32)
    }
}

pub fn minmax_distance_oracle(w: usize, l: usize) -> Result<MinMaxOracle> {
    let spec = minmax_spec(w, l)?;
    let distances = function_distance_table(&spec)?;
    let neighbor_counts = distances.iter().map(|row| row.iter().filter(|&&d| d == 1).count()).collect();
    Ok(MinMaxOracle { w, l, values: spec.image().to_vec(), distances, neighbor_counts })
}

fn pair_count(w: usize) -> Result<usize> {
    if w < 2 {
        return invalid("min-max constructions need w >= 2");
    }
    Ok(w * (w - 1))
}

/// Parity length `t (ceil(log2 w(w-1)) + 1)` of [`construction3_minmax_encoder`].
pub fn construction3_redundancy(w: usize, t: usize) -> Result<usize> {
    Ok(t * (ceil_log2_u64(pair_count(w)? as u64) as usize + 1))
}

/// Even-weight words of length `ceil(log2 w(w-1)) + 1`, each bit repeated
/// `t` times, assigned to the function values in order.
pub fn construction3_minmax_encoder(w: usize, l: usize, t: usize) -> Result<FccEncoder> {
    let count = pair_count(w)?;
    let len = ceil_log2_u64(count as u64) as usize + 1;
    let code = replicate_bits(&even_weight_subcode(count, len)?, t);
    let spec = minmax_spec(w, l)?;
    let parities = code.words()[..spec.expressiveness()].to_vec();
    FccEncoder::per_function_value(spec, t, len * t, parities)
}

/// Smallest `m`, with the largest order `r` for it, such that RM(r, m) has
/// distance `2^(m-r) >= 2t` and at least `w(w-1)` codewords. Returns `(r, m)`.
pub fn construction4_parameters(w: usize, t: usize) -> Result<(u32, u32)> {
    let count = pair_count(w)?;
    if t == 0 {
        return invalid("the Reed-Muller construction needs t >= 1");
    }
    let gap = ceil_log2_u64(2 * t as u64) as u32;
    for m in gap..=16 {
        let r = m - gap;
        let dim: usize = (0..=r as usize)
            .map(|i| binomial(m as usize, i).to_usize().unwrap_or(usize::MAX))
            .fold(0, usize::saturating_add);
        if dim >= 64 || 1usize << dim >= count {
            return Ok((r, m));
        }
    }
    Err(Error::TooLarge(format!("Reed-Muller parameters for w = {w}, t = {t}")))
}

/// First `w(w-1)` codewords of RM(r, m), parity length `2^m`.
pub fn construction4_minmax_encoder(w: usize, l: usize, t: usize) -> Result<FccEncoder> {
    let (r, m) = construction4_parameters(w, t)?;
    let spec = minmax_spec(w, l)?;
    let code = reed_muller_prefix(r, m, spec.expressiveness())?;
    FccEncoder::per_function_value(spec, t, 1 << m, code.into_words())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitcore::satisfies_distance_matrix;
    use crate::fcc::verify_fcc;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn argmin_argmax_tie_breaking() {
        assert_eq!(minmax_eval(&w("100010010"), 3, 3), FunctionValue::Pair(2, 1));
        assert_eq!(minmax_eval(&w("000000000"), 3, 3), FunctionValue::Pair(1, 3));
        assert_eq!(minmax_eval(&w("011"), 3, 1), FunctionValue::Pair(1, 3));
    }

    #[test]
    fn images() {
        assert_eq!(minmax_spec(3, 3).unwrap().expressiveness(), 6);
        assert_eq!(minmax_spec(4, 2).unwrap().expressiveness(), 12);
        // With one-bit parts, (3,1) needs parts 1, 1, 0, whose maximum is part 2.
        let one_bit = minmax_spec(3, 1).unwrap();
        assert!(one_bit.index_of(&FunctionValue::Pair(3, 1)).is_none());
        assert_eq!(minmax_spec(1, 3).unwrap().expressiveness(), 1);
        assert_eq!(minmax_spec(3, 8).unwrap().expressiveness(), 6);
    }

    #[test]
    fn worst_row_profile() {
        // Each value has 4(w-2) neighbors at distance 1; the rest are at 2.
        for (width, l) in [(3, 2), (3, 3), (4, 3), (5, 3)] {
            let oracle = minmax_distance_oracle(width, l).unwrap();
            assert!(oracle.neighbor_counts.iter().all(|&c| c == 4 * (width - 2)));
            assert_eq!(oracle.max_distance(), 2);
        }
        // Two-bit parts are too short for four parts: some values lose neighbors.
        let short = minmax_distance_oracle(4, 2).unwrap();
        assert_eq!(short.neighbor_counts, vec![6, 8, 8, 8, 6, 8, 8, 8, 6, 6, 8, 8]);
    }

    #[test]
    fn construction_redundancies() {
        assert_eq!(construction3_redundancy(3, 1).unwrap(), 4);
        assert_eq!(construction3_redundancy(2, 3).unwrap(), 6);
        assert_eq!(construction4_parameters(3, 1).unwrap(), (1, 2));
        assert_eq!(construction4_parameters(4, 2).unwrap(), (1, 3));
        let enc = construction4_minmax_encoder(3, 2, 1).unwrap();
        assert_eq!(enc.r(), 4);
        assert!(verify_fcc(&enc).unwrap().is_ok());
        let enc = construction3_minmax_encoder(4, 2, 2).unwrap();
        assert_eq!(enc.r(), 10);
        assert!(verify_fcc(&enc).unwrap().is_ok());
    }

    #[test]
    fn parities_cover_the_requirement_matrix() {
        let oracle = minmax_distance_oracle(3, 2).unwrap();
        for t in 1..4 {
            let enc = construction3_minmax_encoder(3, 2, t).unwrap();
            let code = crate::bitcore::Code::new(enc.parity_table().to_vec()).unwrap();
            assert!(satisfies_distance_matrix(&code, &oracle.requirement_matrix(t)).unwrap().is_satisfied());
        }
    }
}
