//! Name-based lookup of functions and constructions.
//!
//! A function reference is `family[:params]` where `params` is a comma list
//! of `key=value` pairs; `ml` also takes the activation name as a bare
//! token. Examples: `wt`, `delta_T:T=3`, `minmax:w=3,l=3`, `parity`,
//! `ml:sigmoid,k=5,eps=1`, `indicator:file=code.txt`. Parameters may also
//! come from a config file of `key=value` lines or a flat JSON object.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::bitcore::Code;
use crate::codegen::SearchBudget;
use crate::error::{invalid, Error, Result};
use crate::fcc::{build_function_value_encoder, exact_optimal_redundancy, FccEncoder, FunctionSpec};
use crate::functions::{
    constant_spec, construction1_wt_encoder, construction2_delta_encoder, construction3_minmax_encoder,
    construction4_minmax_encoder, delta_spec, indicator_spec, locally_binary_encoder, minmax_spec, or_spec,
    parity_spec, wt_spec, ActivationKind, QuantizedActivation, Quantizer,
};

pub type Params = BTreeMap<String, String>;

/// Parses `key=value` lines (`#` comments allowed) or a flat JSON object.
pub fn parse_config(text: &str) -> Result<Params> {
    if text.trim_start().starts_with('{') {
        let map: serde_json::Map<String, serde_json::Value> = serde_json::from_str(text)?;
        return map
            .into_iter()
            .map(|(k, v)| match v {
                serde_json::Value::String(s) => Ok((k, s)),
                serde_json::Value::Number(n) => Ok((k, n.to_string())),
                serde_json::Value::Bool(b) => Ok((k, b.to_string())),
                other => Err(Error::Parse(format!("config value for {k} must be a scalar, got {other}"))),
            })
            .collect();
    }
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (k, v) =
                l.split_once('=').ok_or_else(|| Error::Parse(format!("config line {l:?} is not key=value")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Wt,
    Delta {
        threshold: usize,
    },
    MinMax {
        w: usize,
        l: usize,
    },
    Parity,
    Or,
    /// A generic binary function; instantiated as parity.
    Binary,
    Constant,
    Ml {
        kind: ActivationKind,
        epsilon: f64,
        interval: Option<(f64, f64)>,
    },
    Indicator {
        file: String,
    },
}

/// A function family with its message length, if fixed.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionRef {
    pub family: Family,
    pub k: Option<usize>,
}

fn get<T: FromStr>(params: &Params, key: &str) -> Result<Option<T>> {
    params.get(key).map(|v| v.parse().map_err(|_| Error::Parse(format!("bad value {v:?} for {key}")))).transpose()
}

fn require<T: FromStr>(params: &Params, key: &str, family: &str) -> Result<T> {
    get(params, key)?.ok_or_else(|| Error::Parse(format!("{family} needs parameter {key}")))
}

impl FunctionRef {
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with(text, &Params::new())
    }

    /// Parses `text`, with `defaults` filling parameters not given inline.
    pub fn parse_with(text: &str, defaults: &Params) -> Result<Self> {
        let (family, rest) = text.split_once(':').unwrap_or((text, ""));
        let mut params = defaults.clone();
        let mut bare = Vec::new();
        for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item.split_once('=') {
                Some((k, v)) => {
                    params.insert(k.trim().to_string(), v.trim().to_string());
                }
                None => bare.push(item),
            }
        }
        if family != "ml" && !bare.is_empty() {
            return Err(Error::Parse(format!("unexpected token {:?} in {text:?}", bare[0])));
        }
        let k = get(&params, "k")?;
        let family = match family {
            "wt" => Family::Wt,
            "delta_T" | "delta" => Family::Delta { threshold: require(&params, "T", "delta_T")? },
            "minmax" => {
                let w = require(&params, "w", "minmax")?;
                let l = require(&params, "l", "minmax")?;
                if k.is_some_and(|k| k != w * l) {
                    return invalid(format!("minmax with w = {w}, l = {l} has k = {}", w * l));
                }
                return Ok(FunctionRef { family: Family::MinMax { w, l }, k: Some(w * l) });
            }
            "parity" => Family::Parity,
            "or" => Family::Or,
            "binary" => Family::Binary,
            "constant" => Family::Constant,
            "ml" => {
                let name = match (bare.as_slice(), params.get("kind")) {
                    ([name], _) => name.to_string(),
                    ([], Some(name)) => name.clone(),
                    _ => return Err(Error::Parse("ml needs exactly one activation name".into())),
                };
                let interval = match (get::<f64>(&params, "a")?, get::<f64>(&params, "b")?) {
                    (Some(a), Some(b)) => Some((a, b)),
                    (None, Some(b)) => Some((-b, b)),
                    (None, None) => None,
                    (Some(_), None) => return Err(Error::Parse("ml interval needs b".into())),
                };
                Family::Ml {
                    kind: ActivationKind::parse(&name)?,
                    epsilon: get(&params, "eps")?.unwrap_or(1.0),
                    interval,
                }
            }
            "indicator" => Family::Indicator { file: require(&params, "file", "indicator")? },
            other => return Err(Error::Parse(format!("unknown function {other:?}"))),
        };
        Ok(FunctionRef { family, k })
    }

    /// Fills in `k` when it is not fixed by the reference itself.
    pub fn with_k(mut self, k: Option<usize>) -> Result<Self> {
        match (self.k, k) {
            (Some(a), Some(b)) if a != b && matches!(self.family, Family::MinMax { .. }) => {
                invalid(format!("minmax fixes k = {a}, got {b}"))
            }
            (_, Some(b)) => {
                self.k = Some(b);
                Ok(self)
            }
            _ => Ok(self),
        }
    }

    fn k(&self) -> Result<usize> {
        self.k.ok_or_else(|| Error::InvalidParameter("message length k is required".into()))
    }

    /// The quantized activation behind an `ml` reference.
    pub fn activation(&self) -> Result<QuantizedActivation> {
        let Family::Ml { kind, epsilon, interval } = &self.family else {
            return invalid(format!("{} is not an activation function", self.name()));
        };
        let q = Quantizer::new(self.k()?, *epsilon)?;
        match interval {
            Some(iv) => QuantizedActivation::with_interval(*kind, q, *iv),
            None => QuantizedActivation::new(*kind, q),
        }
    }

    pub fn spec(&self) -> Result<FunctionSpec> {
        match &self.family {
            Family::Wt => wt_spec(self.k()?),
            Family::Delta { threshold } => delta_spec(self.k()?, *threshold),
            Family::MinMax { w, l } => minmax_spec(*w, *l),
            Family::Parity | Family::Binary => parity_spec(self.k()?),
            Family::Or => or_spec(self.k()?),
            Family::Constant => constant_spec(self.k()?),
            Family::Ml { .. } => self.activation()?.function_spec(),
            Family::Indicator { file } => {
                let code = Code::parse_text(&std::fs::read_to_string(file)?)?;
                if self.k.is_some_and(|k| k != code.word_len()) {
                    return invalid(format!("indicator code has word length {}", code.word_len()));
                }
                indicator_spec(&code)
            }
        }
    }
}

impl FunctionRef {
    /// The reference without `k`, in a form [`FunctionRef::parse`] accepts.
    pub fn name(&self) -> String {
        match &self.family {
            Family::Wt => "wt".into(),
            Family::Delta { threshold } => format!("delta_T:T={threshold}"),
            Family::MinMax { w, l } => format!("minmax:w={w},l={l}"),
            Family::Parity => "parity".into(),
            Family::Or => "or".into(),
            Family::Binary => "binary".into(),
            Family::Constant => "constant".into(),
            Family::Ml { kind, epsilon, interval: None } => format!("ml:{kind},eps={epsilon}"),
            Family::Ml { kind, epsilon, interval: Some((a, b)) } => format!("ml:{kind},eps={epsilon},a={a},b={b}"),
            Family::Indicator { file } => format!("indicator:file={file}"),
        }
    }
}

impl fmt::Display for FunctionRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            Some(k) if !matches!(self.family, Family::MinMax { .. }) => write!(f, "{} (k = {k})", self.name()),
            _ => f.write_str(&self.name()),
        }
    }
}

/// Parses an encoder file, rebuilding its function from the header's
/// `function=` and `k=` fields.
pub fn load_encoder(text: &str) -> Result<FccEncoder> {
    let header = text
        .lines()
        .find_map(|l| l.trim().strip_prefix("#!"))
        .ok_or_else(|| Error::Parse("missing '#!' header line".into()))?;
    let field = |key: &str| {
        header
            .split_whitespace()
            .find_map(|kv| kv.strip_prefix(key).and_then(|rest| rest.strip_prefix('=')))
            .ok_or_else(|| Error::Parse(format!("header lacks {key}=")))
    };
    let k = field("k")?.parse().map_err(|_| Error::Parse("header field k is not a number".into()))?;
    let f = FunctionRef::parse(field("function")?)?.with_k(Some(k))?;
    FccEncoder::from_text(text, f.spec()?)
}

/// How parities are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    /// Family-specific default, falling back to [`Construction::Generic`].
    Auto,
    /// Periodic weight-indexed parities for `wt`.
    Weight,
    /// Prefix-of-ones parities for `delta_T`, `T >= 2t + 1`.
    WeightDistribution,
    /// Repeated even-weight words for min-max.
    MinMaxEvenWeight,
    /// Reed-Muller codewords for min-max.
    MinMaxReedMuller,
    /// Repeated ball-maximum indicator for `2t`-locally binary functions.
    LocallyBinary,
    /// Greedy code on the function distance matrix.
    Generic,
    /// Optimal per-message parities by exact search.
    Exact,
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => Construction::Auto,
            "1" | "weight" => Construction::Weight,
            "2" | "weight-distribution" => Construction::WeightDistribution,
            "3" | "minmax-even" => Construction::MinMaxEvenWeight,
            "4" | "minmax-rm" => Construction::MinMaxReedMuller,
            "locally-binary" => Construction::LocallyBinary,
            "generic" => Construction::Generic,
            "exact" => Construction::Exact,
            _ => return Err(Error::Parse(format!("unknown construction {s:?}"))),
        })
    }
}

/// Builds a `t`-error function-correcting encoder for `f`.
pub fn build_encoder(
    f: &FunctionRef,
    t: usize,
    construction: Construction,
    budget: &SearchBudget,
) -> Result<FccEncoder> {
    let mismatch = || invalid(format!("construction {construction:?} does not apply to {f}"));
    match (construction, &f.family) {
        (Construction::Auto | Construction::Weight, Family::Wt) => construction1_wt_encoder(f.k()?, t),
        (Construction::Auto, Family::Delta { threshold }) if 2 * t < *threshold => {
            construction2_delta_encoder(f.k()?, *threshold, t)
        }
        (Construction::WeightDistribution, Family::Delta { threshold }) => {
            construction2_delta_encoder(f.k()?, *threshold, t)
        }
        (Construction::Auto | Construction::MinMaxEvenWeight, Family::MinMax { w, l }) => {
            construction3_minmax_encoder(*w, *l, t)
        }
        (Construction::MinMaxReedMuller, Family::MinMax { w, l }) => construction4_minmax_encoder(*w, *l, t),
        (Construction::LocallyBinary, _) => locally_binary_encoder(&f.spec()?, t),
        (Construction::Auto | Construction::Generic, _) => build_function_value_encoder(&f.spec()?, t),
        (Construction::Exact, _) => {
            let exact = exact_optimal_redundancy(&f.spec()?, t, budget)?;
            exact.encoder.ok_or_else(|| {
                Error::TooLarge(format!("exact search budget exhausted after {} nodes", exact.outcome.nodes()))
            })
        }
        _ => mismatch(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_names() {
        assert_eq!(FunctionRef::parse("wt").unwrap(), FunctionRef { family: Family::Wt, k: None });
        assert_eq!(FunctionRef::parse("delta_T:T=3,k=8").unwrap().family, Family::Delta { threshold: 3 });
        let mm = FunctionRef::parse("minmax:w=3,l=3").unwrap();
        assert_eq!(mm.k, Some(9));
        assert!(mm.clone().with_k(Some(8)).is_err());
        let ml = FunctionRef::parse("ml:sigmoid,k=5,eps=1").unwrap();
        assert_eq!(ml.spec().unwrap().expressiveness(), 22);
        assert!(FunctionRef::parse("ml:k=5").is_err());
        assert!(FunctionRef::parse("wt:x").is_err());
        assert!(FunctionRef::parse("nope").is_err());
    }

    #[test]
    fn config_fills_defaults() {
        let kv = parse_config("# params\nT = 5\nk=9\n").unwrap();
        let json = parse_config(r#"{"T": 5, "k": "9"}"#).unwrap();
        assert_eq!(kv, json);
        let f = FunctionRef::parse_with("delta_T", &kv).unwrap();
        assert_eq!(f.k, Some(9));
        assert_eq!(FunctionRef::parse_with("delta_T:T=4", &kv).unwrap().family, Family::Delta { threshold: 4 });
    }

    #[test]
    fn selects_constructions() {
        let budget = SearchBudget::default();
        let wt = FunctionRef::parse("wt:k=6").unwrap();
        assert_eq!(build_encoder(&wt, 1, Construction::Auto, &budget).unwrap().r(), 3);
        assert!(build_encoder(&wt, 1, Construction::MinMaxReedMuller, &budget).is_err());
        let parity = FunctionRef::parse("parity:k=3").unwrap();
        assert_eq!(build_encoder(&parity, 1, Construction::Exact, &budget).unwrap().r(), 2);
        assert_eq!(build_encoder(&parity, 2, Construction::Auto, &budget).unwrap().r(), 4);
        let delta = FunctionRef::parse("delta_T:T=2,k=6").unwrap();
        assert!(build_encoder(&delta, 1, Construction::Auto, &budget).is_ok());
        assert!(build_encoder(&delta, 1, Construction::WeightDistribution, &budget).is_err());
        assert_eq!("3".parse::<Construction>().unwrap(), Construction::MinMaxEvenWeight);
    }

    #[test]
    fn encoders_round_trip_through_text() {
        let budget = SearchBudget::default();
        for name in ["wt:k=5", "delta_T:T=3,k=6", "minmax:w=3,l=2", "ml:tanh,k=5,eps=1,a=-4,b=4", "or:k=3"] {
            let f = FunctionRef::parse(name).unwrap();
            let enc = build_encoder(&f, 1, Construction::Auto, &budget).unwrap();
            let back = load_encoder(&enc.to_text()).unwrap();
            assert_eq!(back.spec().name(), enc.spec().name(), "{name}");
            assert_eq!(back.parity_table(), enc.parity_table(), "{name}");
        }
    }
}
