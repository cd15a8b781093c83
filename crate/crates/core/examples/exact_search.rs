//! Exact shortest lengths by exhaustive search, and the optimal redundancy of small functions.
//!
//! Run with `RUST_LOG=debug` to watch the search progress.

use std::time::{Duration, Instant};

use fcc::bitcore::DistanceMatrix;
use fcc::bounds::{gv_irregular_threshold, identity_order, plotkin_irregular};
use fcc::codegen::{exact_min_length_with, SearchBudget, SearchOptions, SearchOutcome};
use fcc::fcc::exact_optimal_redundancy;
use fcc::functions::{or_spec, parity_spec, wt_requirement_matrix, wt_spec};

fn report(label: &str, d: &DistanceMatrix, opts: &SearchOptions) -> fcc::Result<()> {
    let start = Instant::now();
    let outcome = exact_min_length_with(d, &SearchBudget::default(), opts)?;
    let lower = plotkin_irregular(d).integer_value;
    let upper = gv_irregular_threshold(d, &identity_order(d.dim()))?;
    match outcome {
        SearchOutcome::Proven { length, nodes, .. } => {
            println!(
                "{label:24} plotkin {lower:2}  exact {length:2}  greedy {upper:2}  ({nodes} nodes, {:.0?})",
                start.elapsed()
            )
        }
        SearchOutcome::BudgetExhausted { lower_bound, reason, .. } => {
            println!("{label:24} gave up ({reason:?}); exact >= {lower_bound}")
        }
    }
    Ok(())
}

fn main() -> fcc::Result<()> {
    let symmetric = SearchOptions { interchangeable_rows: true, parallel: true };
    report("regular M=8, D=4", &DistanceMatrix::regular(8, 4), &symmetric)?;
    report("regular M=5, D=3", &DistanceMatrix::regular(5, 3), &symmetric)?;
    report("weight k=6, t=1", &wt_requirement_matrix(6, 1), &SearchOptions::default())?;
    report("weight k=6, t=2", &wt_requirement_matrix(6, 2), &SearchOptions::default())?;

    // Over all 2^k messages the search finds the optimal encoder outright.
    let budget = SearchBudget { time_limit: Duration::from_secs(60), ..SearchBudget::default() };
    for spec in [wt_spec(4)?, parity_spec(3)?, or_spec(3)?] {
        let exact = exact_optimal_redundancy(&spec, 1, &budget)?;
        let r = exact.outcome.proven_length().map_or("unknown".into(), |r| r.to_string());
        println!("optimal redundancy of {} at k = {}, t = 1: {r}", spec.name(), spec.k());
    }
    Ok(())
}
