use proptest::prelude::*;

use fcc::bitcore::{binomial, hamming_distance, satisfies_distance_matrix, smod, BitWord, DistanceMatrix};
use fcc::bounds::{gv_irregular_threshold, identity_order, plotkin_irregular, row_sum_order};
use fcc::channel::{simulate, ChannelModel, Messages};
use fcc::codegen::{exact_min_length, greedy_irregular_code, min_distance, replicate_bits, SearchBudget};
use fcc::fcc::{decode, distance_requirement_matrix, function_distance_matrix, verify_fcc, FunctionValue};
use fcc::functions::{binary_spec, construction1_wt_encoder, construction2_delta_encoder};
use fcc::registry::{build_encoder, Construction, FunctionRef};

fn word(len: usize) -> impl Strategy<Value = BitWord> {
    prop::collection::vec(any::<bool>(), len).prop_map(BitWord::from_bits)
}

fn words3(max_len: usize) -> impl Strategy<Value = (BitWord, BitWord, BitWord)> {
    (0..=max_len).prop_flat_map(|n| (word(n), word(n), word(n)))
}

/// Symmetric matrices with zero diagonal, `2 <= M <= max_m`, entries `<= max_entry`.
fn matrix(max_m: usize, max_entry: u32) -> impl Strategy<Value = DistanceMatrix> {
    (2..=max_m).prop_flat_map(move |m| {
        prop::collection::vec(0..=max_entry, m * (m - 1) / 2).prop_map(move |upper| {
            let mut it = upper.into_iter();
            let mut rows = vec![vec![0; m]; m];
            for i in 0..m {
                for j in i + 1..m {
                    let x = it.next().expect("sized");
                    rows[i][j] = x;
                    rows[j][i] = x;
                }
            }
            DistanceMatrix::from_rows(rows).expect("valid")
        })
    })
}

proptest! {
    #[test]
    fn hamming_is_a_metric((a, b, c) in words3(130)) {
        let d = |x: &BitWord, y: &BitWord| hamming_distance(x, y).unwrap();
        prop_assert_eq!(d(&a, &a), 0);
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
        prop_assert_eq!(d(&a, &b) == 0, a == b);
        prop_assert_eq!(d(&a, &b), a.xor(&b).unwrap().weight());
    }

    #[test]
    fn words_round_trip_through_text(a in (0usize..200).prop_flat_map(word)) {
        let back: BitWord = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn pascal_recurrence(n in 1usize..120, k in 1usize..120) {
        prop_assume!(k <= n);
        prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
    }

    #[test]
    fn smod_stays_in_range(a in 0u64..10_000, b in 1u64..500) {
        let s = smod(a, b);
        prop_assert!((1..=b).contains(&s));
        prop_assert_eq!((s + b - a % b) % b, 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bounds_sandwich_the_exact_length(d in matrix(5, 4)) {
        let order = identity_order(d.dim());
        let lower = plotkin_irregular(&d).integer_value as usize;
        let upper = gv_irregular_threshold(&d, &order).unwrap();
        let exact = exact_min_length(&d, &SearchBudget::default()).unwrap().proven_length().unwrap();
        prop_assert!(lower <= exact && exact <= upper);
        prop_assert!(exact >= d.max_entry() as usize);
        let code = greedy_irregular_code(&d, upper, &order).unwrap().unwrap();
        prop_assert!(satisfies_distance_matrix(&code, &d).unwrap().is_satisfied());
        let sorted = row_sum_order(&d);
        let upper2 = gv_irregular_threshold(&d, &sorted).unwrap();
        prop_assert!(exact <= upper2);
        prop_assert!(greedy_irregular_code(&d, upper2, &sorted).unwrap().is_some());
    }

    #[test]
    fn exact_length_ignores_row_order(d in matrix(5, 3), seed in any::<u64>()) {
        let mut order: Vec<usize> = (0..d.dim()).collect();
        let mut s = seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let budget = SearchBudget::default();
        let a = exact_min_length(&d, &budget).unwrap().proven_length();
        let b = exact_min_length(&d.permuted(&order).unwrap(), &budget).unwrap().proven_length();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn replication_scales_distance(d in matrix(6, 3), t in 1usize..4) {
        let order = identity_order(d.dim());
        let r = gv_irregular_threshold(&d, &order).unwrap();
        let code = greedy_irregular_code(&d, r, &order).unwrap().unwrap();
        let rep = replicate_bits(&code, t);
        prop_assert_eq!(rep.word_len(), code.word_len() * t);
        prop_assert_eq!(min_distance(&rep).unwrap(), min_distance(&code).unwrap() * t);
    }

    #[test]
    fn nonconstant_binary_functions_need_exactly_two_t(table in prop::collection::vec(any::<bool>(), 8), t in 1usize..4) {
        prop_assume!(table.iter().any(|&b| b) && table.iter().any(|&b| !b));
        let spec = binary_spec("table", 3, move |u| table[u.to_u64().unwrap() as usize]).unwrap();
        // Some two neighbors differ in value, so the two values are at distance 1.
        let d = function_distance_matrix(&spec, t).unwrap();
        let exact = exact_min_length(&d, &SearchBudget::default()).unwrap().proven_length();
        prop_assert_eq!(exact, Some(2 * t));
        let all: Vec<BitWord> = BitWord::all(3).collect();
        let full = distance_requirement_matrix(&spec, t, &all).unwrap();
        prop_assert_eq!(full.max_entry() as usize, 2 * t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn verified_encoders_decode_every_pattern(k in 2usize..7, t in 1usize..3) {
        let enc = match t {
            1 => construction1_wt_encoder(k, 1).unwrap(),
            _ => construction2_delta_encoder(k + 3, 5, 2).unwrap(),
        };
        prop_assert!(verify_fcc(&enc).unwrap().is_ok());
        let report = simulate(&enc, &ChannelModel::exhaustive(t), &Messages::All).unwrap();
        prop_assert_eq!(report.failures, 0);
    }

    #[test]
    fn decode_inverts_encode(k in 2usize..8, x in any::<u64>()) {
        let f = FunctionRef::parse("wt").unwrap().with_k(Some(k)).unwrap();
        let enc = build_encoder(&f, 1, Construction::Generic, &SearchBudget::default()).unwrap();
        let u = enc.spec().message(x % (1 << k));
        let d = decode(&enc, &enc.encode(&u).unwrap()).unwrap();
        prop_assert_eq!(d.value, FunctionValue::Int(u.weight() as i64));
        prop_assert_eq!(d.distance, 0);
        prop_assert!(!d.out_of_model);
    }
}
