use std::collections::HashMap;

use crate::bitcore::{BitWord, Code};
use crate::error::{invalid, Result};
use crate::fcc::{FunctionSpec, FunctionValue};

/// Parity of the message weight.
pub fn parity_spec(k: usize) -> Result<FunctionSpec> {
    binary_spec("parity", k, |u| u.weight() % 2 == 1)
}

/// Logical OR of the message bits.
pub fn or_spec(k: usize) -> Result<FunctionSpec> {
    binary_spec("or", k, |u| u.weight() > 0)
}

pub fn constant_spec(k: usize) -> Result<FunctionSpec> {
    FunctionSpec::new("constant", k, vec![FunctionValue::Int(0)], |_| FunctionValue::Int(0))
}

/// A `{0, 1}`-valued function given by a predicate. Needs `k >= 1`.
pub fn binary_spec(
    name: &str,
    k: usize,
    predicate: impl Fn(&BitWord) -> bool + Send + Sync + 'static,
) -> Result<FunctionSpec> {
    if k == 0 {
        return invalid("a binary function needs k >= 1");
    }
    FunctionSpec::new(name, k, vec![FunctionValue::Int(0), FunctionValue::Int(1)], move |u| {
        FunctionValue::Int(i64::from(predicate(u)))
    })
}

/// Indicator of a code `Q = {q_1, ..., q_N}`: `i` at `q_i` (1-based), 0 elsewhere.
pub fn indicator_spec(code: &Code) -> Result<FunctionSpec> {
    let index: HashMap<BitWord, i64> = code.words().iter().cloned().zip(1..).collect();
    if index.len() != code.size() {
        return invalid("indicator code words must be distinct");
    }
    let k = code.word_len();
    let covers_all = k < 64 && code.size() as u64 == 1u64 << k;
    let mut image: Vec<FunctionValue> = (1..=code.size() as i64).map(FunctionValue::Int).collect();
    if !covers_all {
        image.push(FunctionValue::Int(0));
    }
    FunctionSpec::new("indicator", k, image, move |u| FunctionValue::Int(index.get(u).copied().unwrap_or(0)))
}
