//! The min-max function: which of `w` parts is smallest and which is largest.
//!
//! ```text
//! cargo run --release --example min_max
//! ```

use fcc::bounds::{minmax_gv_upper, minmax_lower_bound, plotkin_irregular};
use fcc::channel::{simulate, ChannelModel, Messages};
use fcc::fcc::verify_fcc;
use fcc::functions::{construction3_minmax_encoder, construction4_minmax_encoder, minmax_distance_oracle, minmax_eval};

fn main() -> fcc::Result<()> {
    let u = "011100001".parse()?;
    println!("mm(011 100 001) = {}", minmax_eval(&u, 3, 3));

    let oracle = minmax_distance_oracle(3, 3)?;
    println!("\nfunction distances, w = 3, l = 3:");
    for (v, row) in oracle.values.iter().zip(&oracle.distances) {
        println!("  {v}  {row:?}");
    }
    println!("neighbors at distance 1: {:?}", oracle.neighbor_counts);

    for t in 1..=3 {
        let d = oracle.requirement_matrix(t);
        println!(
            "t = {t}: plotkin {}, lower {}, greedy upper {}",
            plotkin_irregular(&d),
            minmax_lower_bound(3, t as u32)?,
            minmax_gv_upper(3, t as u32)?
        );
    }

    let enc = construction3_minmax_encoder(3, 3, 1)?;
    let sim = simulate(&enc, &ChannelModel::exhaustive(1), &Messages::All)?;
    println!(
        "\neven-weight parities: r = {}, verifies {}, {} channel failures",
        enc.r(),
        verify_fcc(&enc)?.is_ok(),
        sim.failures
    );
    let enc = construction4_minmax_encoder(4, 3, 2)?;
    println!("Reed-Muller parities for w = 4, t = 2: r = {}, verifies {}", enc.r(), verify_fcc(&enc)?.is_ok());
    Ok(())
}
