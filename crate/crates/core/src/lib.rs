//! Function-correcting codes.
//!
//! A function-correcting code protects only the value `f(u)` of a message
//! `u`: the sender transmits `(u, p(u))` and the receiver must recover
//! `f(u)` after at most `t` bit flips. The crate provides
//!
//! * [`bitcore`]: packed binary words, codes and distance-requirement matrices,
//! * [`bounds`]: lower and upper bounds on the optimal parity length,
//! * [`codegen`]: greedy, exact and algebraic code constructions,
//! * [`fcc`]: function specifications, encoders, verification and decoding,
//! * [`functions`]: constructions for weight, weight-distribution, min-max,
//!   locally binary and quantized activation functions,
//! * [`channel`], [`table`], [`registry`]: channel simulation, redundancy
//!   comparison tables and the name-based lookup used by the `fcc` binary.
//!
//! Runnable walkthroughs live in `examples/`:
//!
//! ```text
//! cargo run --example bounds_calculator
//! cargo run --example code_constructions
//! cargo run --example exact_search
//! cargo run --example weight_functions
//! cargo run --example locally_binary
//! cargo run --example min_max
//! cargo run --example activation_functions
//! cargo run --example channel_simulation
//! cargo run --example redundancy_table
//! ```

pub mod bitcore;
pub mod bounds;
pub mod channel;
pub mod codegen;
mod error;
pub mod fcc;
pub mod functions;
pub mod registry;
pub mod table;

pub use error::{Error, Result};
