use crate::bitcore::BitWord;
use crate::error::{invalid, Error, Result};
use crate::fcc::{function_ball, is_locally_binary, FccEncoder, FunctionSpec, FunctionValue, LocalBinarity};

/// `1` iff `f(u)` is the largest value in the radius-`rho` function ball of `u`.
pub fn ball_max_indicator(spec: &FunctionSpec, u: &BitWord, rho: usize) -> Result<bool> {
    let ball = function_ball(spec, u, rho)?;
    Ok(ball.last() == Some(&spec.eval(u)?))
}

/// Encoder with parity `omega(u)` repeated `2t` times, where `omega` is
/// [`ball_max_indicator`] at radius `2t`. Needs `f` to be `2t`-locally binary.
pub fn locally_binary_encoder(spec: &FunctionSpec, t: usize) -> Result<FccEncoder> {
    if let LocalBinarity::NotBinary { witness, ball_size } = is_locally_binary(spec, 2 * t)? {
        return invalid(format!(
            "function is not {}-locally binary: the ball around {witness} holds {ball_size} values",
            2 * t
        ));
    }
    let parities = (0..spec.message_count()? as u64)
        .map(|x| {
            let omega = ball_max_indicator(spec, &spec.message(x), 2 * t)?;
            Ok(if omega { BitWord::ones(2 * t) } else { BitWord::zeros(2 * t) })
        })
        .collect::<Result<Vec<_>>>()?;
    FccEncoder::per_message(spec.clone(), t, 2 * t, parities)
}

/// Decodes `y = (u', p')` for the encoder above. If the radius-`t` ball of
/// `u'` holds one value, that is the answer. Otherwise the majority of
/// `omega(u')` and the `2t` parity bits picks the larger or the smaller of
/// the two values.
pub fn locally_binary_decode(spec: &FunctionSpec, t: usize, y: &BitWord) -> Result<FunctionValue> {
    let k = spec.k();
    if y.len() != k + 2 * t {
        return Err(Error::LengthMismatch { left: k + 2 * t, right: y.len() });
    }
    let u = y.slice(0, k);
    let ball = function_ball(spec, &u, t)?;
    let (lo, hi) = match (ball.first(), ball.last()) {
        (Some(lo), Some(hi)) if lo == hi => return Ok(*lo),
        (Some(lo), Some(hi)) => (*lo, *hi),
        _ => unreachable!("a ball contains its center"),
    };
    let votes = usize::from(ball_max_indicator(spec, &u, 2 * t)?) + y.slice(k, k + 2 * t).weight();
    Ok(if votes > t { hi } else { lo })
}
