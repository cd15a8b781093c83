use crate::bitcore::{check_permutation, BitWord, Code, DistanceMatrix};
use crate::error::{invalid, Result};

/// Lexicographic greedy code of length `r` in the given row order.
///
/// Row `order[j]` receives the smallest word compatible with the words
/// already assigned to `order[0..j]`. Returns `Ok(None)` when some row has
/// no compatible word. The result is indexed by original row.
pub fn greedy_irregular_code(d: &DistanceMatrix, r: usize, order: &[usize]) -> Result<Option<Code>> {
    check_permutation(order, d.dim())?;
    if r > 63 {
        return invalid(format!("greedy search supports lengths up to 63, got {r}"));
    }
    let mut chosen: Vec<Option<u64>> = vec![None; d.dim()];
    for (j, &row) in order.iter().enumerate() {
        let earlier = &order[..j];
        let fits = |cand: u64| {
            earlier.iter().all(|&prev| {
                let word = chosen[prev].expect("earlier rows are assigned");
                (cand ^ word).count_ones() >= d.get(prev, row)
            })
        };
        match (0..1u64 << r).find(|&c| fits(c)) {
            Some(c) => chosen[row] = Some(c),
            None => return Ok(None),
        }
    }
    let words = chosen
        .into_iter()
        .map(|c| BitWord::from_u64(c.expect("all rows assigned"), r).expect("fits in r bits"))
        .collect();
    Ok(Some(Code::with_word_len(r, words)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitcore::satisfies_distance_matrix;
    use crate::bounds::{gv_irregular_threshold, identity_order, row_sum_order};

    #[test]
    fn regular_pair_gives_repetition_code() {
        let d = DistanceMatrix::regular(2, 4);
        let code = greedy_irregular_code(&d, 4, &[0, 1]).unwrap().unwrap();
        assert_eq!(code.to_text(), "0000\n1111\n");
        assert!(greedy_irregular_code(&d, 3, &[0, 1]).unwrap().is_none());
    }

    #[test]
    fn succeeds_at_threshold_for_weight_matrix() {
        let d = DistanceMatrix::from_fn(9, |i, j| 5u32.saturating_sub((j - i) as u32));
        for order in [identity_order(9), row_sum_order(&d)] {
            let r = gv_irregular_threshold(&d, &order).unwrap();
            let code = greedy_irregular_code(&d, r, &order).unwrap().expect("greedy succeeds at threshold");
            assert!(satisfies_distance_matrix(&code, &d).unwrap().is_satisfied());
        }
    }

    #[test]
    fn zero_length_for_zero_matrix() {
        let code = greedy_irregular_code(&DistanceMatrix::regular(3, 0), 0, &[2, 1, 0]).unwrap().unwrap();
        assert_eq!((code.size(), code.word_len()), (3, 0));
    }
}
