use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::bitcore::{BitWord, Code};
use crate::error::{invalid, Error, Result};
use crate::fcc::FunctionSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EncoderMode {
    /// One parity per message.
    PerMessage,
    /// One parity per function value; `p(u)` depends on `u` only through `f(u)`.
    PerFunctionValue,
}

impl EncoderMode {
    fn as_str(self) -> &'static str {
        match self {
            EncoderMode::PerMessage => "per-message",
            EncoderMode::PerFunctionValue => "per-function-value",
        }
    }
}

/// Systematic encoder `u -> (u, p(u))` with parities of length `r`.
///
/// Per-value tables are indexed by image index; per-message tables by the
/// integer value of the message.
#[derive(Clone, Debug)]
pub struct FccEncoder {
    spec: FunctionSpec,
    t: usize,
    r: usize,
    mode: EncoderMode,
    parities: Vec<BitWord>,
    codewords: Arc<OnceLock<Vec<BitWord>>>,
}

impl FccEncoder {
    pub fn per_function_value(spec: FunctionSpec, t: usize, r: usize, parities: Vec<BitWord>) -> Result<Self> {
        if parities.len() != spec.expressiveness() {
            return invalid(format!("{} parities for {} function values", parities.len(), spec.expressiveness()));
        }
        Self::build(spec, t, r, EncoderMode::PerFunctionValue, parities)
    }

    pub fn per_message(spec: FunctionSpec, t: usize, r: usize, parities: Vec<BitWord>) -> Result<Self> {
        let n = spec.message_count()?;
        if parities.len() != n {
            return invalid(format!("{} parities for {n} messages", parities.len()));
        }
        Self::build(spec, t, r, EncoderMode::PerMessage, parities)
    }

    fn build(spec: FunctionSpec, t: usize, r: usize, mode: EncoderMode, parities: Vec<BitWord>) -> Result<Self> {
        Code::with_word_len(r, parities.clone())?;
        Ok(FccEncoder { spec, t, r, mode, parities, codewords: Arc::new(OnceLock::new()) })
    }

    pub fn spec(&self) -> &FunctionSpec {
        &self.spec
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn mode(&self) -> EncoderMode {
        self.mode
    }

    /// Codeword length `k + r`.
    pub fn n(&self) -> usize {
        self.spec.k() + self.r
    }

    pub fn parity_table(&self) -> &[BitWord] {
        &self.parities
    }

    pub fn parity(&self, u: &BitWord) -> Result<&BitWord> {
        match self.mode {
            EncoderMode::PerFunctionValue => Ok(&self.parities[self.spec.eval_index(u)?]),
            EncoderMode::PerMessage => {
                if u.len() != self.spec.k() {
                    return Err(Error::LengthMismatch { left: self.spec.k(), right: u.len() });
                }
                Ok(&self.parities[u.to_u64().expect("per-message tables have k <= 24") as usize])
            }
        }
    }

    pub fn encode(&self, u: &BitWord) -> Result<BitWord> {
        Ok(u.concat(self.parity(u)?))
    }

    /// Codewords of all messages in message order, cached.
    pub fn codewords(&self) -> Result<&[BitWord]> {
        if let Some(c) = self.codewords.get() {
            return Ok(c);
        }
        let n = self.spec.message_count()?;
        let words = (0..n as u64).map(|x| self.encode(&self.spec.message(x))).collect::<Result<Vec<BitWord>>>()?;
        Ok(self.codewords.get_or_init(|| words))
    }

    /// Header comment line followed by the parity table, one word per line.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "#! k={} t={} r={} mode={} rows={} function={}\n",
            self.spec.k(),
            self.t,
            self.r,
            self.mode.as_str(),
            self.parities.len(),
            self.spec.name()
        );
        for p in &self.parities {
            writeln!(out, "{p}").expect("writing to a String");
        }
        out
    }

    /// Parses [`FccEncoder::to_text`] output for the given function.
    pub fn from_text(text: &str, spec: FunctionSpec) -> Result<Self> {
        let header = text
            .lines()
            .find_map(|l| l.trim().strip_prefix("#!"))
            .ok_or_else(|| Error::Parse("missing '#!' header line".into()))?;
        let field = |key: &str| -> Result<&str> {
            header
                .split_whitespace()
                .find_map(|kv| kv.strip_prefix(key).and_then(|rest| rest.strip_prefix('=')))
                .ok_or_else(|| Error::Parse(format!("header lacks {key}=")))
        };
        let num = |key: &str| -> Result<usize> {
            field(key)?.parse().map_err(|_| Error::Parse(format!("header field {key} is not a number")))
        };
        let (k, t, r, rows) = (num("k")?, num("t")?, num("r")?, num("rows")?);
        if k != spec.k() {
            return Err(Error::LengthMismatch { left: spec.k(), right: k });
        }
        let parities = if r == 0 { vec![BitWord::zeros(0); rows] } else { Code::parse_text(text)?.into_words() };
        if parities.len() != rows {
            return Err(Error::Parse(format!("header declares {rows} rows, found {}", parities.len())));
        }
        match field("mode")? {
            "per-message" => Self::per_message(spec, t, r, parities),
            "per-function-value" => Self::per_function_value(spec, t, r, parities),
            other => Err(Error::Parse(format!("unknown encoder mode {other:?}"))),
        }
    }
}
