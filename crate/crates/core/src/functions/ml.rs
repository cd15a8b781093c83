//! Quantized activation functions.
//!
//! A `k`-bit message `u` encodes the quantization center
//! `b2r(u) = eps * (bin2dec(u) - 2^(k-1) + 1/2)`. Activations are injective
//! on an interval `[a, b]` and treated as saturated outside it, so the
//! function value of `u` is determined by which center class it falls in.
//! Values are exact ranks in the order of the real activation values, never
//! floats.

use std::fmt;

use serde::Serialize;

use crate::bitcore::{BitWord, DistanceMatrix};
use crate::error::{invalid, Error, Result};
use crate::fcc::{FunctionSpec, FunctionValue, MAX_TABLE_K};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ActivationKind {
    Sigmoid,
    Tanh,
    Relu,
    SigmoidDerivative,
    TanhDerivative,
}

/// How an activation behaves outside its injective interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ActivationShape {
    /// Zero outside `[a, b]`; centers below `a` and above `b` share one value.
    ZeroOutside,
    /// One saturated value below `a`, another above `b`.
    Saturating,
    /// Even function, injective in `|x|` on `[0, a]` and zero beyond.
    Symmetric,
}

impl ActivationKind {
    pub const ALL: [ActivationKind; 5] = [
        ActivationKind::Sigmoid,
        ActivationKind::Tanh,
        ActivationKind::Relu,
        ActivationKind::SigmoidDerivative,
        ActivationKind::TanhDerivative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ActivationKind::Sigmoid => "sigmoid",
            ActivationKind::Tanh => "tanh",
            ActivationKind::Relu => "relu",
            ActivationKind::SigmoidDerivative => "sigmoid_derivative",
            ActivationKind::TanhDerivative => "tanh_derivative",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| Error::Parse(format!("unknown activation {s:?}")))
    }

    pub fn shape(self) -> ActivationShape {
        match self {
            ActivationKind::Relu => ActivationShape::ZeroOutside,
            ActivationKind::Sigmoid | ActivationKind::Tanh => ActivationShape::Saturating,
            ActivationKind::SigmoidDerivative | ActivationKind::TanhDerivative => ActivationShape::Symmetric,
        }
    }

    /// The unsaturated real activation.
    pub fn evaluate(self, x: f64) -> f64 {
        let sigmoid = |x: f64| 1.0 / (1.0 + (-x).exp());
        match self {
            ActivationKind::Sigmoid => sigmoid(x),
            ActivationKind::Tanh => x.tanh(),
            ActivationKind::Relu => x.max(0.0),
            ActivationKind::SigmoidDerivative => sigmoid(x) * (1.0 - sigmoid(x)),
            ActivationKind::TanhDerivative => 1.0 - x.tanh().powi(2),
        }
    }

    /// Values assigned below and above the injective interval.
    fn saturation(self) -> (f64, f64) {
        match self {
            ActivationKind::Sigmoid => (0.0, 1.0),
            ActivationKind::Tanh => (-1.0, 1.0),
            _ => (0.0, 0.0),
        }
    }

    /// Default injective interval: `[-10, 10]` for sigmoid, `[-6, 6]` for
    /// tanh (and `|x| <= 10`, `|x| <= 6` for their derivatives), and
    /// `(0, 2^(k-1) eps]` for ReLU.
    pub fn default_interval(self, q: &Quantizer) -> (f64, f64) {
        match self {
            ActivationKind::Sigmoid | ActivationKind::SigmoidDerivative => (-10.0, 10.0),
            ActivationKind::Tanh | ActivationKind::TanhDerivative => (-6.0, 6.0),
            ActivationKind::Relu => (0.0, q.max_center() + q.epsilon / 2.0),
        }
    }
}

impl fmt::Display for ActivationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Uniform quantizer with step `epsilon` over `k`-bit messages.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Quantizer {
    pub k: usize,
    pub epsilon: f64,
}

impl Quantizer {
    pub fn new(k: usize, epsilon: f64) -> Result<Self> {
        if k == 0 || k > MAX_TABLE_K || !(epsilon > 0.0 && epsilon.is_finite()) {
            return invalid(format!("quantizer needs 1 <= k <= {MAX_TABLE_K} and a positive step"));
        }
        Ok(Quantizer { k, epsilon })
    }

    /// Center of `u` in units of `eps / 2`: the odd integer `2 bin2dec(u) - 2^k + 1`.
    pub fn half_units(&self, x: u64) -> i64 {
        2 * x as i64 - (1i64 << self.k) + 1
    }

    pub fn b2r(&self, u: &BitWord) -> f64 {
        self.half_units(u.to_u64().expect("k <= 24")) as f64 * self.epsilon / 2.0
    }

    pub fn max_center(&self) -> f64 {
        ((1i64 << self.k) - 1) as f64 * self.epsilon / 2.0
    }

    /// `x / eps` as an integer, if it is one.
    fn in_steps(&self, x: f64) -> Result<i64> {
        let s = x / self.epsilon;
        if (s - s.round()).abs() > 1e-9 {
            return invalid(format!("{x} is not a multiple of the quantization step {}", self.epsilon));
        }
        Ok(s.round() as i64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CenterClass {
    /// 1-based index of an injective-region class, ascending in the center
    /// (in `|center|` for symmetric activations).
    Inside(usize),
    Below,
    Above,
}

/// A quantized activation with its injective interval.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct QuantizedActivation {
    pub kind: ActivationKind,
    pub quantizer: Quantizer,
    pub interval: (f64, f64),
    /// Interval ends in units of `eps / 2`.
    #[serde(skip)]
    half_bounds: (i64, i64),
}

impl QuantizedActivation {
    pub fn new(kind: ActivationKind, quantizer: Quantizer) -> Result<Self> {
        Self::with_interval(kind, quantizer, kind.default_interval(&quantizer))
    }

    /// `interval` ends must be multiples of `eps`; for symmetric activations
    /// only `interval.1 = a` is used. Every saturated class must be hit.
    pub fn with_interval(kind: ActivationKind, quantizer: Quantizer, interval: (f64, f64)) -> Result<Self> {
        let (a, b) = interval;
        let lo = 2 * quantizer.in_steps(a)?;
        let hi = 2 * quantizer.in_steps(b)?;
        let h_max = (1i64 << quantizer.k) - 1;
        let ok = match kind.shape() {
            ActivationShape::Saturating => -h_max < lo && lo < hi && hi < h_max,
            ActivationShape::ZeroOutside => -h_max < lo && lo < hi && hi <= h_max + 1,
            ActivationShape::Symmetric => 0 < hi && hi < h_max,
        };
        if !ok {
            return invalid(format!(
                "interval [{a}, {b}] leaves an empty class for {kind} at k = {}, eps = {}",
                quantizer.k, quantizer.epsilon
            ));
        }
        Ok(QuantizedActivation { kind, quantizer, interval, half_bounds: (lo, hi) })
    }

    /// Number of classes inside the injective interval.
    pub fn interior_count(&self) -> usize {
        let (lo, hi) = self.half_bounds;
        match self.kind.shape() {
            ActivationShape::Symmetric => (hi / 2) as usize,
            _ => ((hi - lo) / 2) as usize,
        }
    }

    fn classify(&self, x: u64) -> CenterClass {
        let h = self.quantizer.half_units(x);
        let (lo, hi) = self.half_bounds;
        match self.kind.shape() {
            ActivationShape::Symmetric if h.abs() <= hi => CenterClass::Inside(((h.abs() + 1) / 2) as usize),
            ActivationShape::Symmetric => CenterClass::Above,
            _ if h < lo => CenterClass::Below,
            _ if h > hi => CenterClass::Above,
            _ => CenterClass::Inside(((h - lo - 1) / 2 + 1) as usize),
        }
    }

    fn value_of(&self, class: CenterClass) -> FunctionValue {
        let n = self.interior_count() as i64;
        FunctionValue::Int(match (self.kind.shape(), class) {
            (ActivationShape::Symmetric, CenterClass::Inside(i)) => n + 1 - i as i64,
            (_, CenterClass::Inside(i)) => i as i64,
            (ActivationShape::Saturating, CenterClass::Above) => n + 1,
            _ => 0,
        })
    }

    /// Function value of message `x`.
    pub fn value(&self, x: u64) -> FunctionValue {
        self.value_of(self.classify(x))
    }

    /// Real activation of message `x` with saturation applied.
    pub fn real_value(&self, x: u64) -> f64 {
        let (below, above) = self.kind.saturation();
        match self.classify(x) {
            CenterClass::Inside(_) => {
                self.kind.evaluate(self.quantizer.half_units(x) as f64 * self.quantizer.epsilon / 2.0)
            }
            CenterClass::Below => below,
            CenterClass::Above => above,
        }
    }

    /// Registry name; the interval is spelled out only when it is not the default.
    pub fn name(&self) -> String {
        let base = format!("ml:{},k={},eps={}", self.kind, self.quantizer.k, self.quantizer.epsilon);
        if self.interval == self.kind.default_interval(&self.quantizer) {
            base
        } else {
            format!("{base},a={},b={}", self.interval.0, self.interval.1)
        }
    }

    pub fn function_spec(&self) -> Result<FunctionSpec> {
        let me = *self;
        let n = self.interior_count() as i64;
        let top = if self.kind.shape() == ActivationShape::Saturating { n + 1 } else { n };
        let image = (0..=top).map(FunctionValue::Int).collect();
        FunctionSpec::new(self.name(), self.quantizer.k, image, move |u| me.value(u.to_u64().expect("k <= 24")))
    }
}

pub fn ml_spec(kind: ActivationKind, quantizer: Quantizer) -> Result<FunctionSpec> {
    QuantizedActivation::new(kind, quantizer)?.function_spec()
}

/// Requirement matrix assembled class by class, with the function value of
/// each row.
#[derive(Clone, Debug, Serialize)]
pub struct ActivationMatrix {
    pub matrix: DistanceMatrix,
    pub values: Vec<FunctionValue>,
}

impl ActivationMatrix {
    /// Rows and columns reordered to ascending function value.
    pub fn in_value_order(&self) -> DistanceMatrix {
        let mut order: Vec<usize> = (0..self.values.len()).collect();
        order.sort_by_key(|&i| self.values[i]);
        self.matrix.permuted(&order).expect("a sort is a permutation")
    }
}

fn set_distance(a: &[u64], b: &[u64]) -> usize {
    a.iter().flat_map(|x| b.iter().map(move |y| (x ^ y).count_ones() as usize)).min().unwrap_or(usize::MAX)
}

/// Requirement matrix of a quantized activation from its center classes.
///
/// Rows `1..=n` are the injective classes in ascending center (or
/// `|center|`) order. Saturating activations add the class above `b`, then
/// the class below `a`; the others add one zero class. Entries are
/// `[2t + 1 - d]^+` where `d` is the minimum distance between the classes.
pub fn ml_distance_matrix(kind: ActivationKind, quantizer: Quantizer, t: usize) -> Result<ActivationMatrix> {
    ml_distance_matrix_for(&QuantizedActivation::new(kind, quantizer)?, t)
}

pub fn ml_distance_matrix_for(act: &QuantizedActivation, t: usize) -> Result<ActivationMatrix> {
    let n = act.interior_count();
    let mut inside: Vec<Vec<u64>> = vec![Vec::new(); n];
    let (mut below, mut above) = (Vec::new(), Vec::new());
    for x in 0..1u64 << act.quantizer.k {
        match act.classify(x) {
            CenterClass::Inside(i) => inside[i - 1].push(x),
            CenterClass::Below => below.push(x),
            CenterClass::Above => above.push(x),
        }
    }
    let mut classes: Vec<(Vec<u64>, CenterClass)> =
        inside.into_iter().enumerate().map(|(i, xs)| (xs, CenterClass::Inside(i + 1))).collect();
    match act.kind.shape() {
        ActivationShape::Saturating => {
            classes.push((above, CenterClass::Above));
            classes.push((below, CenterClass::Below));
        }
        ActivationShape::ZeroOutside => classes.push((below.into_iter().chain(above).collect(), CenterClass::Below)),
        ActivationShape::Symmetric => classes.push((above, CenterClass::Above)),
    }
    let matrix = DistanceMatrix::from_fn(classes.len(), |i, j| {
        (2 * t + 1).saturating_sub(set_distance(&classes[i].0, &classes[j].0)) as u32
    });
    let values = classes.iter().map(|(_, c)| act.value_of(*c)).collect();
    Ok(ActivationMatrix { matrix, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fcc::function_distance_matrix;

    fn q(k: usize, eps: f64) -> Quantizer {
        Quantizer::new(k, eps).unwrap()
    }

    #[test]
    fn centers() {
        let qz = q(5, 1.0);
        assert_eq!(qz.b2r(&"00000".parse().unwrap()), -15.5);
        assert_eq!(qz.b2r(&"11111".parse().unwrap()), 15.5);
        assert_eq!(qz.b2r(&"10000".parse().unwrap()), 0.5);
    }

    #[test]
    fn sigmoid_class_sizes() {
        let act = QuantizedActivation::new(ActivationKind::Sigmoid, q(5, 1.0)).unwrap();
        assert_eq!(act.interior_count(), 20);
        let spec = act.function_spec().unwrap();
        assert_eq!(spec.expressiveness(), 22);
        let table = spec.value_table().unwrap();
        let count = |v: u32| table.iter().filter(|&&x| x == v).count();
        assert_eq!((count(0), count(21)), (6, 6));
    }

    #[test]
    fn shapes_of_all_kinds() {
        let dims: Vec<usize> = ActivationKind::ALL
            .iter()
            .map(|&kind| ml_distance_matrix(kind, q(5, 1.0), 1).unwrap().matrix.dim())
            .collect();
        // sigmoid 20+2, tanh 12+2, relu 16+1, derivatives 10+1 and 6+1.
        assert_eq!(dims, vec![22, 14, 17, 11, 7]);
    }

    #[test]
    fn ranks_follow_real_values() {
        for kind in ActivationKind::ALL {
            let act = QuantizedActivation::new(kind, q(6, 0.5)).unwrap();
            let mut pairs: Vec<(FunctionValue, f64)> = (0..64).map(|x| (act.value(x), act.real_value(x))).collect();
            pairs.sort_by_key(|p| p.0);
            for w in pairs.windows(2) {
                if w[0].0 == w[1].0 {
                    assert!((w[0].1 - w[1].1).abs() <= 1e-12 * w[0].1.abs().max(1e-300), "{kind}");
                } else {
                    assert!(w[0].1 < w[1].1, "{kind}: {:?}", w);
                }
            }
        }
    }

    #[test]
    fn class_matrix_equals_generic_matrix() {
        for kind in ActivationKind::ALL {
            for t in 1..3 {
                let assembled = ml_distance_matrix(kind, q(5, 1.0), t).unwrap();
                let generic = function_distance_matrix(&ml_spec(kind, q(5, 1.0)).unwrap(), t).unwrap();
                assert_eq!(assembled.in_value_order(), generic, "{kind} t={t}");
            }
        }
    }

    #[test]
    fn rejects_degenerate_intervals() {
        assert!(QuantizedActivation::new(ActivationKind::Sigmoid, q(4, 1.0)).is_err());
        assert!(QuantizedActivation::with_interval(ActivationKind::Tanh, q(5, 1.0), (-2.5, 3.0)).is_err());
        assert!(ActivationKind::parse("softmax").is_err());
        assert!(Quantizer::new(5, 0.0).is_err());
    }
}
