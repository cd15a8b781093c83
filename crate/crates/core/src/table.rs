//! Redundancy comparison rows.
//!
//! Each row sets the best known lower bound on the optimal parity length
//! beside two classical baselines and the parity length of a concrete
//! function-correcting construction. The baselines protect either all `k`
//! data bits or a binary encoding of the `E` function values with a
//! `t`-error correcting code; both are estimates and flagged approximate.

use std::fmt;

use serde::Serialize;

use crate::bounds::{
    ecc_on_data_redundancy, ecc_on_function_values_redundancy, minmax_gv_upper, minmax_lower_bound,
    minmax_sphere_packing_bound, plotkin_irregular, wt_lower_bound,
};
use crate::error::{invalid, Error, Result};
use crate::fcc::{build_function_value_encoder, function_distance_matrix};
use crate::functions::{construction1_period, construction3_redundancy, construction4_parameters};
use crate::registry::{parse_config, Family, FunctionRef, Params};

/// Message length used when a row does not fix one.
pub const DEFAULT_K: usize = 1024;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub value: u64,
    /// An estimate rather than a proven bound or an achieved length.
    pub approximate: bool,
    pub source: String,
}

impl Entry {
    fn exact(value: u64, source: impl Into<String>) -> Self {
        Entry { value, approximate: false, source: source.into() }
    }

    fn approx(value: u64, source: impl Into<String>) -> Self {
        Entry { value, approximate: true, source: source.into() }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.value, if self.approximate { "*" } else { "" })
    }
}

/// Which function a row describes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum RowFunction {
    Binary {
        k: usize,
    },
    /// A `2t`-locally binary function with `e` values.
    LocallyBinary {
        k: usize,
        e: u64,
    },
    Wt {
        k: usize,
    },
    Delta {
        k: usize,
        threshold: usize,
    },
    MinMax {
        w: usize,
        l: usize,
    },
    /// Any function small enough to analyze from its tables.
    Generic {
        name: String,
        k: usize,
    },
}

impl fmt::Display for RowFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowFunction::Binary { k } => write!(f, "binary (k={k})"),
            RowFunction::LocallyBinary { k, e } => write!(f, "locally binary (k={k}, E={e})"),
            RowFunction::Wt { k } => write!(f, "wt (k={k})"),
            RowFunction::Delta { k, threshold } => write!(f, "delta_T (k={k}, T={threshold})"),
            RowFunction::MinMax { w, l } => write!(f, "minmax (w={w}, l={l})"),
            RowFunction::Generic { name, k } => write!(f, "{name} (k={k})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub function: RowFunction,
    pub t: usize,
    pub lower: Entry,
    pub ecc_on_data: Entry,
    pub ecc_on_function_values: Entry,
    pub fcc: Entry,
}

fn ceil_u64(x: i64) -> u64 {
    x.max(0) as u64
}

/// Builds one row.
pub fn table_row(function: &RowFunction, t: usize) -> Result<TableRow> {
    if t == 0 {
        return invalid("table rows need t >= 1");
    }
    let t64 = t as u64;
    let on_data = |k: usize| Entry::approx(ecc_on_data_redundancy(k as u64, t64), "ecc-on-data");
    let on_values = |e: u64| Entry::approx(ecc_on_function_values_redundancy(e, t64), "ecc-on-function-values");
    let two_t = || Entry::exact(2 * t64, "two-values-at-distance-one");
    let row = |lower, ecc_on_data, ecc_on_function_values, fcc| TableRow {
        function: function.clone(),
        t,
        lower,
        ecc_on_data,
        ecc_on_function_values,
        fcc,
    };
    match function {
        RowFunction::Binary { k } => {
            let values = Entry::exact(2 * t64 + 1, "repetition-of-one-bit");
            Ok(row(two_t(), on_data(*k), values, Entry::exact(2 * t64, "repetition-parity")))
        }
        RowFunction::LocallyBinary { k, e } => {
            Ok(row(two_t(), on_data(*k), on_values(*e), Entry::exact(2 * t64, "locally-binary-repetition")))
        }
        RowFunction::Wt { k } => {
            let lower = wt_lower_bound(t as u32);
            let period = construction1_period(t)?;
            let fcc = Entry::exact(period[0].len() as u64, "weight-periodic-parities");
            let lower = Entry::exact(ceil_u64(lower.integer_value), lower.source);
            Ok(row(lower, on_data(*k), on_values(*k as u64 + 1), fcc))
        }
        RowFunction::Delta { k, threshold } => {
            if 2 * t >= *threshold {
                return invalid(format!("the weight-distribution row needs T >= 2t + 1 (t = {t}, T = {threshold})"));
            }
            let e = (*k / *threshold) as u64 + 1;
            let fcc = Entry::exact(2 * t64, "weight-distribution-prefix-parities");
            Ok(row(two_t(), on_data(*k), on_values(e), fcc))
        }
        RowFunction::MinMax { w, l } => {
            if *w < 3 {
                return invalid("the min-max row needs w >= 3");
            }
            let (w32, t32) = (*w as u32, t as u32);
            let mut lower = two_t();
            for b in
                [Some(minmax_lower_bound(w32, t32)?), minmax_sphere_packing_bound(w32, t32).ok()].into_iter().flatten()
            {
                if ceil_u64(b.integer_value) > lower.value {
                    lower = Entry::exact(ceil_u64(b.integer_value), b.source);
                }
            }
            let (_, m) = construction4_parameters(*w, t)?;
            let candidates = [
                (construction3_redundancy(*w, t)? as u64, "minmax-even-weight"),
                (1u64 << m, "minmax-reed-muller"),
                (ceil_u64(minmax_gv_upper(w32, t32)?.integer_value), "minmax-gv"),
            ];
            let (value, source) = candidates.into_iter().min_by_key(|c| c.0).expect("nonempty");
            let e = (*w * (*w - 1)) as u64;
            Ok(row(lower, on_data(*w * *l), on_values(e), Entry::exact(value, source)))
        }
        RowFunction::Generic { name, k } => {
            let f = FunctionRef::parse(name)?.with_k(Some(*k))?;
            let spec = f.spec()?;
            let d = function_distance_matrix(&spec, t)?;
            let lower = plotkin_irregular(&d);
            let enc = build_function_value_encoder(&spec, t)?;
            let e = spec.expressiveness() as u64;
            let values = if e >= 2 { on_values(e) } else { Entry::exact(0, "constant") };
            Ok(row(
                Entry::exact(ceil_u64(lower.integer_value), lower.source),
                on_data(*k),
                values,
                Entry::exact(enc.r() as u64, "greedy-function-value-code"),
            ))
        }
    }
}

/// Row function for a registry name, or `locally_binary:E=<values>`.
/// `k` defaults to [`DEFAULT_K`] for the closed-form families.
pub fn row_function(name: &str, defaults: &Params, k: Option<usize>) -> Result<RowFunction> {
    if let Some(rest) = name.strip_prefix("locally_binary") {
        let mut params = defaults.clone();
        params.extend(parse_config(&rest.trim_start_matches(':').replace(',', "\n"))?);
        let e = params.get("E").ok_or_else(|| Error::Parse("locally_binary needs parameter E".into()))?;
        let e = e.parse().map_err(|_| Error::Parse(format!("bad value {e:?} for E")))?;
        let k = k.or(params.get("k").and_then(|k| k.parse().ok())).unwrap_or(DEFAULT_K);
        return Ok(RowFunction::LocallyBinary { k, e });
    }
    let f = FunctionRef::parse_with(name, defaults)?.with_k(k)?;
    let k = f.k.unwrap_or(DEFAULT_K);
    Ok(match &f.family {
        Family::Binary => RowFunction::Binary { k },
        Family::Wt => RowFunction::Wt { k },
        Family::Delta { threshold } => RowFunction::Delta { k, threshold: *threshold },
        Family::MinMax { w, l } => RowFunction::MinMax { w: *w, l: *l },
        _ => {
            let k = f.k.ok_or_else(|| Error::InvalidParameter(format!("{} needs k for a table row", f.name())))?;
            RowFunction::Generic { name: f.name(), k }
        }
    })
}

const HEADERS: [&str; 6] = ["function", "t", "lower", "ecc-on-data", "ecc-on-values", "fcc"];

/// Aligned text table; `*` marks approximate entries.
pub fn render_rows(rows: &[TableRow]) -> String {
    let cells: Vec<[String; 6]> = rows
        .iter()
        .map(|r| {
            [
                r.function.to_string(),
                r.t.to_string(),
                r.lower.to_string(),
                r.ecc_on_data.to_string(),
                r.ecc_on_function_values.to_string(),
                r.fcc.to_string(),
            ]
        })
        .collect();
    let mut widths = HEADERS.map(str::len);
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let line = |row: &[String]| {
        row.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
    };
    let mut out = vec![line(&HEADERS.map(String::from)), widths.map(|w| "-".repeat(w)).join("  ")];
    out.extend(cells.iter().map(|r| line(r)));
    out.push("* approximate estimate".into());
    out.join("\n") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_rows() {
        for t in 1..=3 {
            let r = table_row(&RowFunction::Binary { k: DEFAULT_K }, t).unwrap();
            assert_eq!(
                (r.lower.value, r.fcc.value, r.ecc_on_function_values.value),
                (2 * t as u64, 2 * t as u64, 2 * t as u64 + 1)
            );
            assert!(r.ecc_on_data.approximate && !r.fcc.approximate);
        }
        assert_eq!(table_row(&RowFunction::Binary { k: 1024 }, 1).unwrap().ecc_on_data.value, 11);
    }

    #[test]
    fn weight_and_minmax_rows() {
        let r1 = table_row(&RowFunction::Wt { k: 16 }, 1).unwrap();
        let r2 = table_row(&RowFunction::Wt { k: 16 }, 2).unwrap();
        assert_eq!((r1.lower.value, r1.fcc.value), (3, 3));
        assert_eq!((r2.lower.value, r2.fcc.value), (6, 6));
        let mm = table_row(&RowFunction::MinMax { w: 3, l: 3 }, 1).unwrap();
        assert_eq!(mm.fcc.value, 4);
        assert_eq!(mm.fcc.source, "minmax-even-weight");
        assert!(mm.lower.value <= mm.fcc.value);
        assert!(table_row(&RowFunction::Delta { k: 9, threshold: 2 }, 1).is_err());
        assert_eq!(table_row(&RowFunction::Delta { k: 9, threshold: 5 }, 2).unwrap().fcc.value, 4);
    }

    #[test]
    fn generic_row_and_rendering() {
        let r = table_row(&RowFunction::Generic { name: "or".into(), k: 3 }, 1).unwrap();
        assert_eq!((r.lower.value, r.fcc.value), (2, 2));
        assert_eq!(row_function("or:k=3", &Params::new(), None).unwrap(), r.function);
        assert_eq!(row_function("wt", &Params::new(), None).unwrap(), RowFunction::Wt { k: DEFAULT_K });
        assert_eq!(
            row_function("locally_binary:E=64", &Params::new(), Some(100)).unwrap(),
            RowFunction::LocallyBinary { k: 100, e: 64 }
        );
        assert!(row_function("parity", &Params::new(), None).is_err());
        let text = render_rows(&[r]);
        assert!(text.starts_with("function"));
        assert!(text.contains("or (k=3)"));
    }
}
