//! Functions whose small Hamming balls see at most two values need only `2t` parity bits.

use fcc::channel::{simulate_with, ChannelModel, Messages};
use fcc::fcc::{is_locally_binary, LocalBinarity};
use fcc::functions::{delta_spec, locally_binary_decode, locally_binary_encoder, wt_spec};

fn main() -> fcc::Result<()> {
    let wt = wt_spec(6)?;
    if let LocalBinarity::NotBinary { witness, ball_size } = is_locally_binary(&wt, 2)? {
        println!("wt is not 2-locally binary: the ball around {witness} holds {ball_size} weights");
    }

    let t = 1;
    let spec = delta_spec(9, 5)?;
    println!("{} is {}-locally binary: {}", spec.name(), 2 * t, is_locally_binary(&spec, 2 * t)?.is_binary());
    let enc = locally_binary_encoder(&spec, t)?;
    println!("parity length {} for {} messages", enc.r(), enc.parity_table().len());

    let report =
        simulate_with(&enc, &ChannelModel::exhaustive(t), &Messages::All, |y| locally_binary_decode(&spec, t, y))?;
    println!("ball-majority decoder: {} trials, {} failures", report.trials, report.failures);
    Ok(())
}
