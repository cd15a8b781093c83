use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::bitcore::BitWord;
use crate::error::{invalid, Error, Result};

/// Largest `k` for which message tables are materialized.
pub const MAX_TABLE_K: usize = 24;
/// Largest `k` for which the image is validated at construction.
pub const MAX_VALIDATED_K: usize = 20;

/// An opaque function value with a total order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FunctionValue {
    Int(i64),
    /// A pair of 1-based indices, used for (argmin, argmax).
    Pair(u32, u32),
}

impl fmt::Display for FunctionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionValue::Int(v) => write!(f, "{v}"),
            FunctionValue::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

type EvalFn = dyn Fn(&BitWord) -> FunctionValue + Send + Sync;
type DistanceFn = dyn Fn(usize, usize) -> usize + Send + Sync;

/// A function `f: {0,1}^k -> Im(f)` with its image in ascending order.
///
/// Cloning is cheap. Image indices (positions in [`FunctionSpec::image`])
/// are the canonical row order of per-value tables and matrices.
#[derive(Clone)]
pub struct FunctionSpec(Arc<Inner>);

#[derive(Clone)]
struct Inner {
    name: String,
    k: usize,
    image: Vec<FunctionValue>,
    eval: Arc<EvalFn>,
    distance_override: Option<Arc<DistanceFn>>,
    table: OnceLock<Arc<Vec<u32>>>,
}

impl fmt::Debug for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionSpec")
            .field("name", &self.0.name)
            .field("k", &self.0.k)
            .field("expressiveness", &self.0.image.len())
            .finish()
    }
}

impl FunctionSpec {
    /// Builds a spec from an explicit image. For `k <= 20` the image is
    /// checked exhaustively: every message maps into it and every value is hit.
    pub fn new(
        name: impl Into<String>,
        k: usize,
        mut image: Vec<FunctionValue>,
        eval: impl Fn(&BitWord) -> FunctionValue + Send + Sync + 'static,
    ) -> Result<Self> {
        let len_before = image.len();
        image.sort();
        image.dedup();
        if image.len() != len_before {
            return invalid("image values must be distinct");
        }
        if image.is_empty() {
            return invalid("image must not be empty");
        }
        let spec = FunctionSpec(Arc::new(Inner {
            name: name.into(),
            k,
            image,
            eval: Arc::new(eval),
            distance_override: None,
            table: OnceLock::new(),
        }));
        if k <= MAX_VALIDATED_K {
            let table = spec.value_table()?;
            let mut hit = vec![false; spec.expressiveness()];
            for &i in table.iter() {
                hit[i as usize] = true;
            }
            if let Some(missing) = hit.iter().position(|h| !h) {
                return Err(Error::InvalidParameter(format!(
                    "image value {} is never attained",
                    spec.0.image[missing]
                )));
            }
        }
        Ok(spec)
    }

    /// Builds a spec whose image is found by evaluating every message.
    pub fn from_eval(
        name: impl Into<String>,
        k: usize,
        eval: impl Fn(&BitWord) -> FunctionValue + Send + Sync + 'static,
    ) -> Result<Self> {
        if k > MAX_TABLE_K {
            return Err(Error::TooLarge(format!("enumerating the image over k = {k} bits")));
        }
        let mut image: Vec<FunctionValue> = BitWord::all(k).map(|u| eval(&u)).collect();
        image.sort();
        image.dedup();
        Self::new(name, k, image, eval)
    }

    /// Registers a closed form for the function distance between image
    /// indices, used instead of exhaustive search.
    pub fn with_distance_override(mut self, f: impl Fn(usize, usize) -> usize + Send + Sync + 'static) -> Self {
        Arc::make_mut(&mut self.0).distance_override = Some(Arc::new(f));
        self
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn k(&self) -> usize {
        self.0.k
    }

    pub fn image(&self) -> &[FunctionValue] {
        &self.0.image
    }

    /// Number of distinct function values `E`.
    pub fn expressiveness(&self) -> usize {
        self.0.image.len()
    }

    pub fn index_of(&self, value: &FunctionValue) -> Option<usize> {
        self.0.image.binary_search(value).ok()
    }

    pub fn eval(&self, u: &BitWord) -> Result<FunctionValue> {
        if u.len() != self.0.k {
            return Err(Error::LengthMismatch { left: self.0.k, right: u.len() });
        }
        Ok((self.0.eval)(u))
    }

    /// Image index of `f(u)`.
    pub fn eval_index(&self, u: &BitWord) -> Result<usize> {
        let v = self.eval(u)?;
        self.index_of(&v).ok_or_else(|| Error::ValueNotInImage(v.to_string()))
    }

    pub(crate) fn distance_override(&self, i: usize, j: usize) -> Option<usize> {
        self.0.distance_override.as_ref().map(|f| f(i, j))
    }

    pub fn message(&self, x: u64) -> BitWord {
        BitWord::from_u64(x, self.0.k).expect("message index fits in k bits")
    }

    pub fn message_count(&self) -> Result<usize> {
        if self.0.k > MAX_TABLE_K {
            return Err(Error::TooLarge(format!("enumerating 2^{} messages", self.0.k)));
        }
        Ok(1 << self.0.k)
    }

    /// Image index of `f(x)` for every message `x`, cached.
    pub fn value_table(&self) -> Result<Arc<Vec<u32>>> {
        if let Some(t) = self.0.table.get() {
            return Ok(t.clone());
        }
        let n = self.message_count()?;
        let table =
            (0..n as u64).map(|x| self.eval_index(&self.message(x)).map(|i| i as u32)).collect::<Result<Vec<u32>>>()?;
        Ok(self.0.table.get_or_init(|| Arc::new(table)).clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn image_is_sorted_and_validated() {
        let spec = FunctionSpec::new("wt", 3, (0..=3).rev().map(FunctionValue::Int).collect(), |u| {
            FunctionValue::Int(u.weight() as i64)
        })
        .unwrap();
        assert_eq!(spec.image()[0], FunctionValue::Int(0));
        assert_eq!(spec.expressiveness(), 4);
        assert_eq!(spec.eval_index(&"110".parse().unwrap()).unwrap(), 2);
        assert!(spec.eval(&"11".parse().unwrap()).is_err());
    }

    #[test]
    fn rejects_inconsistent_images() {
        let eval = |u: &BitWord| FunctionValue::Int(u.weight() as i64);
        assert!(FunctionSpec::new("short", 3, (0..3).map(FunctionValue::Int).collect(), eval).is_err());
        assert!(FunctionSpec::new("extra", 3, (0..5).map(FunctionValue::Int).collect(), eval).is_err());
        assert!(FunctionSpec::new("dup", 3, vec![FunctionValue::Int(0); 2], eval).is_err());
    }

    #[test]
    fn values_order_and_display() {
        assert!(FunctionValue::Pair(1, 3) < FunctionValue::Pair(2, 1));
        assert_eq!(FunctionValue::Pair(2, 1).to_string(), "(2,1)");
        let spec = FunctionSpec::from_eval("parity", 4, |u| FunctionValue::Int((u.weight() % 2) as i64)).unwrap();
        assert_eq!(spec.expressiveness(), 2);
        assert_eq!(spec.value_table().unwrap()[0b0111], 1);
    }
}
