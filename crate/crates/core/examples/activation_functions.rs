//! Quantized activation functions: center classes, their requirement matrix and an encoder.

use fcc::bounds::{gv_irregular_threshold, identity_order, plotkin_irregular};
use fcc::codegen::greedy_irregular_code;
use fcc::fcc::{function_distance_matrix, verify_fcc, FccEncoder};
use fcc::functions::{ml_distance_matrix_for, ActivationKind, QuantizedActivation, Quantizer};

fn main() -> fcc::Result<()> {
    let q = Quantizer::new(5, 1.0)?;
    for kind in ActivationKind::ALL {
        let act = QuantizedActivation::new(kind, q)?;
        let spec = act.function_spec()?;
        let lemma = ml_distance_matrix_for(&act, 1)?;
        let agree = lemma.in_value_order() == function_distance_matrix(&spec, 1)?;
        println!(
            "{:20} interval {:?}: {:2} values, {:2} inside, matrices agree: {agree}",
            kind.name(),
            act.interval,
            spec.expressiveness(),
            act.interior_count()
        );
    }

    let act = QuantizedActivation::new(ActivationKind::Sigmoid, q)?;
    println!("\nsigmoid, first centers:");
    for x in [0u64, 5, 6, 16, 25, 26, 31] {
        println!(
            "  u = {x:05b}  center {:5.1}  sigmoid {:.6}  value {}",
            q.b2r(&act.function_spec()?.message(x)),
            act.real_value(x),
            act.value(x)
        );
    }

    let spec = act.function_spec()?;
    let d = ml_distance_matrix_for(&act, 1)?.in_value_order();
    let order = identity_order(d.dim());
    let r = gv_irregular_threshold(&d, &order)?;
    let code = greedy_irregular_code(&d, r, &order)?.expect("greedy succeeds at its threshold");
    let enc = FccEncoder::per_function_value(spec, 1, r, code.into_words())?;
    println!(
        "\nencoder for t = 1: r = {r} (plotkin {}), verifies {}",
        plotkin_irregular(&d),
        verify_fcc(&enc)?.is_ok()
    );
    Ok(())
}
