//! Send every message through an adversarial bit-flip channel and decode the function value.

use fcc::bitcore::BitWord;
use fcc::channel::{simulate, ChannelModel, Messages};
use fcc::codegen::SearchBudget;
use fcc::fcc::FccEncoder;
use fcc::functions::parity_spec;
use fcc::registry::{build_encoder, Construction, FunctionRef};

fn main() -> fcc::Result<()> {
    let budget = SearchBudget::default();
    for (name, t) in [("wt:k=8", 1), ("delta_T:T=5,k=10", 2), ("minmax:w=3,l=3", 1), ("ml:tanh,k=6,eps=0.5", 1)] {
        let enc = build_encoder(&FunctionRef::parse(name)?, t, Construction::Auto, &budget)?;
        let report = simulate(&enc, &ChannelModel::exhaustive(t), &Messages::All)?;
        println!("{name:22} t = {t}, r = {:2}: {:7} trials, {} failures", enc.r(), report.trials, report.failures);
    }

    // Random patterns are drawn per message from a seeded ChaCha8 stream.
    let enc = build_encoder(&FunctionRef::parse("wt:k=16")?, 1, Construction::Auto, &budget)?;
    let ch = ChannelModel::random(1, 2024, 8);
    let report = simulate(&enc, &ch, &Messages::Sample { count: 500, seed: 7 })?;
    println!(
        "\nwt, k = 16, sampled: {} messages, {} trials, {} failures",
        report.messages, report.trials, report.failures
    );

    // No parity at all: single flips change the parity of the message.
    let bare = FccEncoder::per_message(parity_spec(4)?, 1, 0, vec![BitWord::zeros(0); 16])?;
    let report = simulate(&bare, &ChannelModel::exhaustive(1), &Messages::All)?;
    println!("\nunprotected parity: {} of {} trials fail", report.failures, report.trials);
    if let Some(w) = report.witness {
        println!(
            "first: {} with flips {:?} decodes to {} instead of {}",
            w.message, w.positions, w.decoded, w.expected
        );
    }
    Ok(())
}
