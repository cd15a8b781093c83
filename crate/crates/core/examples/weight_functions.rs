//! Encoders for the Hamming weight and for the weight distribution `floor(wt / T)`.

use fcc::bitcore::BitWord;
use fcc::bounds::wt_lower_bound;
use fcc::fcc::{decode, verify_fcc};
use fcc::functions::{
    construction1_period, construction1_wt_encoder, construction2_delta_encoder, construction2_parity,
};

fn main() -> fcc::Result<()> {
    for t in 1..=3 {
        let period = construction1_period(t)?;
        let words: Vec<String> = period.iter().map(BitWord::to_string).collect();
        println!(
            "t = {t}: lower bound {}, period of {} parities: {}",
            wt_lower_bound(t as u32),
            period.len(),
            words.join(" ")
        );
    }

    let enc = construction1_wt_encoder(10, 1)?;
    let v = verify_fcc(&enc)?;
    println!("\nweight encoder k = 10, t = 1: r = {}, {} pairs checked, ok = {}", enc.r(), v.pairs_checked, v.is_ok());
    let u: BitWord = "1101001110".parse()?;
    let c = enc.encode(&u)?;
    for flip in [None, Some(0), Some(11)] {
        let y = flip.map_or(c.clone(), |i| c.flipped(i));
        let d = decode(&enc, &y)?;
        println!("  received {y} -> weight {} (codeword at distance {})", d.value, d.distance);
    }

    println!("\nweight-distribution parities for T = 5, t = 2:");
    for w in 0..=10 {
        println!("  wt {w:2} -> class {} parity {}", w / 5, construction2_parity(w, 5, 2));
    }
    for (k, threshold, t) in [(8, 3, 1), (9, 5, 2), (12, 7, 3)] {
        let enc = construction2_delta_encoder(k, threshold, t)?;
        println!("k = {k}, T = {threshold}, t = {t}: r = {} verifies = {}", enc.r(), verify_fcc(&enc)?.is_ok());
    }
    Ok(())
}
