use crate::bitcore::{smod, BitWord, DistanceMatrix};
use crate::bounds::{gv_irregular_threshold, identity_order};
use crate::codegen::{greedy_irregular_code, hadamard_code};
use crate::error::{invalid, Error, Result};
use crate::fcc::{FccEncoder, FunctionSpec, FunctionValue};

/// Hamming weight `wt: {0,1}^k -> {0, ..., k}`. Distances between weights
/// `i` and `j` are `|i - j|`.
pub fn wt_spec(k: usize) -> Result<FunctionSpec> {
    let image = (0..=k as i64).map(FunctionValue::Int).collect();
    Ok(FunctionSpec::new("wt", k, image, |u| FunctionValue::Int(u.weight() as i64))?
        .with_distance_override(|i, j| i.abs_diff(j)))
}

/// Weight distribution `floor(wt(u) / T)`. Classes `i < j` are at distance
/// `(j - i - 1) T + 1`.
pub fn delta_spec(k: usize, threshold: usize) -> Result<FunctionSpec> {
    if threshold == 0 {
        return invalid("weight-distribution threshold must be positive");
    }
    let image = (0..=(k / threshold) as i64).map(FunctionValue::Int).collect();
    let spec = FunctionSpec::new(format!("delta_T:T={threshold}"), k, image, move |u| {
        FunctionValue::Int((u.weight() / threshold) as i64)
    })?;
    Ok(spec.with_distance_override(move |i, j| if i == j { 0 } else { (i.abs_diff(j) - 1) * threshold + 1 }))
}

/// `(k+1) x (k+1)` requirement matrix of the weight function,
/// `[2t + 1 - |i - j|]^+` between weights `i` and `j`.
pub fn wt_requirement_matrix(k: usize, t: usize) -> DistanceMatrix {
    DistanceMatrix::from_fn(k + 1, |i, j| (2 * t + 1).saturating_sub(j - i) as u32)
}

fn words(list: &[&str]) -> Vec<BitWord> {
    list.iter().map(|w| w.parse().expect("literal binary word")).collect()
}

/// One period of the weight-indexed parities: `3` words of length 3 for
/// `t = 1`, `8` words of length 6 for `t = 2`, and `2t + 1` words at
/// pairwise distance `2t` otherwise.
pub fn construction1_period(t: usize) -> Result<Vec<BitWord>> {
    match t {
        0 => invalid("the weight construction needs t >= 1"),
        1 => Ok(words(&["000", "110", "011"])),
        2 => {
            let base = words(&["000000", "110011", "001111", "111100"]);
            let last = BitWord::from_u64(1, 6).expect("fits");
            let shifted: Vec<BitWord> = base.iter().map(|p| p.xor(&last).expect("same length")).collect();
            Ok(base.into_iter().chain(shifted).collect())
        }
        _ => {
            let count = 2 * t + 1;
            let d = u32::try_from(2 * t).map_err(|_| Error::TooLarge(format!("t = {t}")))?;
            if let Some(code) = hadamard_code(d) {
                return Ok(code.words()[..count].to_vec());
            }
            let m = DistanceMatrix::regular(count, d);
            let order = identity_order(count);
            let r = gv_irregular_threshold(&m, &order)?;
            let code = greedy_irregular_code(&m, r, &order)?
                .ok_or_else(|| Error::InvalidMatrix("greedy code failed at its threshold".into()))?;
            Ok(code.into_words())
        }
    }
}

/// Parity of weight `w`: entry `smod(w + 1, P)` of the period of length `P`.
pub fn construction1_parity(period: &[BitWord], weight: usize) -> &BitWord {
    &period[smod(weight as u64 + 1, period.len() as u64) as usize - 1]
}

/// Weight-function encoder with weight-indexed periodic parities.
/// Redundancy 3 for `t = 1` and 6 for `t = 2`.
pub fn construction1_wt_encoder(k: usize, t: usize) -> Result<FccEncoder> {
    let period = construction1_period(t)?;
    let r = period[0].len();
    let parities = (0..=k).map(|w| construction1_parity(&period, w).clone()).collect();
    FccEncoder::per_function_value(wt_spec(k)?, t, r, parities)
}

/// Parity `p_i`, `i = smod(wt(u) + 1, T)`: `1^(i-1) 0^(2t-i+1)` for
/// `i <= 2t + 1`, else `1^(2t)`.
pub fn construction2_parity(weight: usize, threshold: usize, t: usize) -> BitWord {
    let i = smod(weight as u64 + 1, threshold as u64) as usize;
    BitWord::prefix_ones((i - 1).min(2 * t), 2 * t)
}

/// Weight-distribution encoder with `r = 2t`; needs `2t + 1 <= T`.
pub fn construction2_delta_encoder(k: usize, threshold: usize, t: usize) -> Result<FccEncoder> {
    if 2 * t + 1 > threshold {
        return invalid(format!("the weight-distribution construction needs 2t + 1 <= T (t = {t}, T = {threshold})"));
    }
    let spec = delta_spec(k, threshold)?;
    let parities = (0..spec.message_count()? as u64)
        .map(|x| construction2_parity(x.count_ones() as usize, threshold, t))
        .collect();
    FccEncoder::per_message(spec, t, 2 * t, parities)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitcore::{satisfies_distance_matrix, Code};
    use crate::fcc::{function_distance, function_distance_matrix, verify_fcc};

    #[test]
    fn weight_distances_match_search() {
        let spec = wt_spec(5).unwrap();
        // Same spec without the closed form, so distances come from search.
        let plain = FunctionSpec::from_eval("wt", 5, |u| FunctionValue::Int(u.weight() as i64)).unwrap();
        for t in 1..4 {
            assert_eq!(function_distance_matrix(&spec, t).unwrap(), function_distance_matrix(&plain, t).unwrap());
            assert_eq!(function_distance_matrix(&spec, t).unwrap(), wt_requirement_matrix(5, t));
        }
        assert_eq!(function_distance(&plain, &FunctionValue::Int(1), &FunctionValue::Int(4)).unwrap(), 3);
    }

    #[test]
    fn delta_distances_match_search() {
        for threshold in 1..5 {
            let spec = delta_spec(8, threshold).unwrap();
            let plain =
                FunctionSpec::from_eval("delta", 8, move |u| FunctionValue::Int((u.weight() / threshold) as i64))
                    .unwrap();
            assert_eq!(function_distance_matrix(&spec, 2).unwrap(), function_distance_matrix(&plain, 2).unwrap());
        }
        assert_eq!(delta_spec(9, 5).unwrap().expressiveness(), 2);
        assert!(delta_spec(4, 0).is_err());
    }

    #[test]
    fn period_parities_satisfy_weight_matrix() {
        for t in 1..=4 {
            let period = construction1_period(t).unwrap();
            let k = 3 * period.len();
            let code = Code::new((0..=k).map(|w| construction1_parity(&period, w).clone()).collect()).unwrap();
            assert!(satisfies_distance_matrix(&code, &wt_requirement_matrix(k, t)).unwrap().is_satisfied(), "t = {t}");
        }
        assert_eq!(construction1_period(4).unwrap()[0].len(), 16);
    }

    #[test]
    fn weight_encoder_verifies() {
        let enc = construction1_wt_encoder(8, 1).unwrap();
        assert_eq!(enc.r(), 3);
        assert!(verify_fcc(&enc).unwrap().is_ok());
        let enc = construction1_wt_encoder(7, 2).unwrap();
        assert_eq!(enc.r(), 6);
        assert!(verify_fcc(&enc).unwrap().is_ok());
    }

    #[test]
    fn delta_parities() {
        assert_eq!(construction2_parity(0, 8, 1).to_string(), "00");
        assert_eq!(construction2_parity(1, 8, 1).to_string(), "10");
        assert_eq!(construction2_parity(2, 8, 1).to_string(), "11");
        assert_eq!(construction2_parity(5, 8, 1).to_string(), "11");
        assert_eq!(construction2_parity(8, 8, 1).to_string(), "00");
        assert!(construction2_delta_encoder(8, 2, 1).is_err());
        assert!(verify_fcc(&construction2_delta_encoder(8, 3, 1).unwrap()).unwrap().is_ok());
    }
}
