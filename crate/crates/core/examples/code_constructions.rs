//! Greedy, Hadamard and Reed-Muller codes, checked against their distance targets.

use fcc::bitcore::{satisfies_distance_matrix, DistanceMatrix};
use fcc::bounds::{gv_irregular_threshold, identity_order, row_sum_order};
use fcc::codegen::{
    even_weight_subcode, greedy_irregular_code, hadamard_code, min_distance, reed_muller_code, replicate_bits,
};

fn main() -> fcc::Result<()> {
    for d in [2, 4, 8] {
        let code = hadamard_code(d).expect("Sylvester order");
        println!(
            "hadamard d = {d}: {} words of length {}, min distance {}",
            code.size(),
            code.word_len(),
            min_distance(&code)?
        );
    }
    for (r, m) in [(1, 3), (1, 4), (2, 4)] {
        let code = reed_muller_code(r, m)?;
        println!(
            "RM({r},{m}): {} words of length {}, min distance {}",
            code.size(),
            code.word_len(),
            min_distance(&code)?
        );
    }

    let even = even_weight_subcode(6, 4)?;
    let tripled = replicate_bits(&even, 3);
    println!("\n6 even-weight words of length 4, each bit tripled:");
    print!("{}", tripled.to_text());
    println!("min distance {} -> {}", min_distance(&even)?, min_distance(&tripled)?);

    // An irregular target: rows 0 and 1 must be far apart, the rest only a little.
    let d = DistanceMatrix::from_rows(vec![vec![0, 5, 2, 1], vec![5, 0, 2, 2], vec![2, 2, 0, 3], vec![1, 2, 3, 0]])?;
    for (label, order) in [("identity", identity_order(4)), ("row sums", row_sum_order(&d))] {
        let r = gv_irregular_threshold(&d, &order)?;
        let code = greedy_irregular_code(&d, r, &order)?.expect("greedy succeeds at its threshold");
        let ok = satisfies_distance_matrix(&code, &d)?.is_satisfied();
        println!("\ngreedy, {label} order, length {r} (valid: {ok}):");
        print!("{}", code.to_text());
    }
    Ok(())
}
