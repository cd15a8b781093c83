//! Lower and upper bounds on the shortest code meeting a distance-requirement matrix.
//!
//! ```text
//! cargo run --example bounds_calculator
//! ```

use fcc::bitcore::DistanceMatrix;
use fcc::bounds::{
    ecc_on_data_redundancy, ecc_on_function_values_redundancy, gv_irregular_threshold, gv_regular_closed_form,
    hadamard_upper, identity_order, minmax_gv_upper, minmax_lower_bound, plotkin_irregular, plotkin_regular,
    row_sum_order, sandwich, wt_lower_bound,
};
use fcc::functions::wt_requirement_matrix;

fn main() -> fcc::Result<()> {
    // Requirements between the 7 weight classes of 6-bit messages, two errors.
    let d = wt_requirement_matrix(6, 2);
    println!("weight matrix, k = 6, t = 2:");
    for row in d.rows() {
        println!("  {row:?}");
    }
    println!("plotkin lower bound      {}", plotkin_irregular(&d));
    println!("greedy threshold (id)    {}", gv_irregular_threshold(&d, &identity_order(d.dim()))?);
    println!("greedy threshold (sums)  {}", gv_irregular_threshold(&d, &row_sum_order(&d))?);
    let sw = sandwich(&d);
    println!("max-entry sandwich       {} ..= {}", sw.lower, sw.upper.map_or("-".into(), |u| u.to_string()));

    println!("\nregular matrices, M words at distance D:");
    for (m, dist) in [(4, 2), (8, 4), (16, 8), (6, 10)] {
        let r = DistanceMatrix::regular(m, dist);
        println!(
            "  M = {m:2}, D = {dist:2}: plotkin {}, greedy {}, hadamard {}, closed form {}",
            plotkin_regular(m, dist),
            gv_irregular_threshold(&r, &identity_order(m))?,
            hadamard_upper(m, dist).map_or("-".into(), |b| b.to_string()),
            gv_regular_closed_form(m, dist).map_or("-".into(), |b| b.to_string()),
        );
    }

    println!("\nfunction-specific bounds:");
    for t in 1..=4 {
        println!(
            "  t = {t}: weight lower {}, min-max (w = 5) lower {} upper {}",
            wt_lower_bound(t),
            minmax_lower_bound(5, t)?,
            minmax_gv_upper(5, t)?
        );
    }

    println!("\nclassical baselines for k = 1024:");
    for t in 1..=3 {
        println!(
            "  t = {t}: protect the data {}, protect 64 function values {}",
            ecc_on_data_redundancy(1024, t),
            ecc_on_function_values_redundancy(64, t)
        );
    }
    Ok(())
}
