//! Concrete functions and the encoders built for them.
//!
//! | function | encoder | parity length |
//! |---|---|---|
//! | Hamming weight | [`construction1_wt_encoder`] | 3 (t=1), 6 (t=2) |
//! | weight distribution | [`construction2_delta_encoder`] | `2t` |
//! | locally binary | [`locally_binary_encoder`] | `2t` |
//! | min-max | [`construction3_minmax_encoder`], [`construction4_minmax_encoder`] | `t(ceil(log2 w(w-1)) + 1)`, `2^m` |
//! | quantized activations | [`crate::fcc::build_function_value_encoder`] on [`ml_spec`] | greedy |

mod basic;
mod locally_binary;
mod minmax;
mod ml;
mod weight;

pub use basic::{binary_spec, constant_spec, indicator_spec, or_spec, parity_spec};
pub use locally_binary::{ball_max_indicator, locally_binary_decode, locally_binary_encoder};
pub use minmax::{
    construction3_minmax_encoder, construction3_redundancy, construction4_minmax_encoder, construction4_parameters,
    minmax_distance_oracle, minmax_eval, minmax_spec, MinMaxOracle,
};
pub use ml::{
    ml_distance_matrix, ml_distance_matrix_for, ml_spec, ActivationKind, ActivationMatrix, ActivationShape,
    QuantizedActivation, Quantizer,
};
pub use weight::{
    construction1_parity, construction1_period, construction1_wt_encoder, construction2_delta_encoder,
    construction2_parity, delta_spec, wt_requirement_matrix, wt_spec,
};
