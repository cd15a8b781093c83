//! Bounds on `N(M, D)`, the shortest length of a code satisfying a
//! distance-requirement matrix, and on the parity length of
//! function-correcting codes for specific functions.
//!
//! Values are exact rationals. Only [`gv_regular_closed_form`] and
//! [`minmax_sphere_packing_bound`] go through floating point; their
//! ceilings subtract a `1e-9` guard first.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::Rational64;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::bitcore::{binomial, check_permutation, sphere_size, DistanceMatrix};
use crate::codegen;
use crate::error::{invalid, Result};

const FLOAT_GUARD: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
}

/// A bound with its exact value. `integer_value` is the ceiling of `value`
/// for lower bounds and the (integral) bound itself for upper bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundResult {
    pub value: Rational64,
    pub integer_value: i64,
    pub kind: BoundKind,
    pub source: &'static str,
}

impl BoundResult {
    pub fn lower(value: Rational64, source: &'static str) -> Self {
        BoundResult { integer_value: value.ceil().to_integer(), value, kind: BoundKind::Lower, source }
    }

    pub fn upper_int(value: i64, source: &'static str) -> Self {
        BoundResult { value: Rational64::from_integer(value), integer_value: value, kind: BoundKind::Upper, source }
    }

    fn from_float(x: f64, kind: BoundKind, source: &'static str) -> Self {
        let value = Rational64::approximate_float(x).unwrap_or_else(|| Rational64::from_integer(x.ceil() as i64));
        BoundResult { value, integer_value: (x - FLOAT_GUARD).ceil() as i64, kind, source }
    }
}

impl fmt::Display for BoundResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            BoundKind::Lower if !self.value.is_integer() => {
                write!(f, "{} (ceil {})", self.value, self.integer_value)
            }
            _ => write!(f, "{}", self.integer_value),
        }
    }
}

impl Serialize for BoundResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            value_num: i64,
            value_den: i64,
            integer_value: i64,
            kind: BoundKind,
            source: &'static str,
        }
        Repr {
            value_num: *self.value.numer(),
            value_den: *self.value.denom(),
            integer_value: self.integer_value,
            kind: self.kind,
            source: self.source,
        }
        .serialize(s)
    }
}

/// Plotkin-type lower bound for an arbitrary requirement matrix:
/// `4/M^2 * sum_{i<j} D[i][j]` for even `M`, `4/(M^2-1) * sum` for odd `M`.
pub fn plotkin_irregular(d: &DistanceMatrix) -> BoundResult {
    let m = d.dim() as i64;
    let sum = d.upper_sum() as i64;
    let den = if m % 2 == 0 { m * m } else { m * m - 1 };
    let value = if den == 0 { Rational64::zero() } else { Rational64::new(4 * sum, den) };
    BoundResult::lower(value, "irregular-plotkin")
}

/// Plotkin lower bound when every off-diagonal requirement equals `d`: `2d(M-1)/M`.
pub fn plotkin_regular(m: usize, d: u32) -> BoundResult {
    let value = if m == 0 { Rational64::zero() } else { Rational64::new(2 * i64::from(d) * (m as i64 - 1), m as i64) };
    BoundResult::lower(value, "regular-plotkin")
}

pub fn identity_order(dim: usize) -> Vec<usize> {
    (0..dim).collect()
}

/// Rows sorted by descending row sum, ties by index.
pub fn row_sum_order(d: &DistanceMatrix) -> Vec<usize> {
    let mut order = identity_order(d.dim());
    order.sort_by_key(|&i| std::cmp::Reverse(d.row_sum(i)));
    order
}

/// Smallest `r` with `2^r > max_j sum_{i<j} V(r, D[pi(i)][pi(j)] - 1)`.
///
/// At this length the greedy lexicographic construction in the same order
/// always finds a code. Zero requirements contribute nothing.
pub fn gv_irregular_threshold(d: &DistanceMatrix, order: &[usize]) -> Result<usize> {
    check_permutation(order, d.dim())?;
    let max_req = d.max_entry() as usize;
    let mut r = 0;
    loop {
        let volumes: Vec<BigUint> = (0..max_req).map(|e| sphere_size(r, e)).collect();
        let worst = (0..order.len())
            .map(|j| {
                (0..j)
                    .map(|i| d.get(order[i], order[j]) as usize)
                    .filter(|&req| req > 0)
                    .map(|req| &volumes[req - 1])
                    .sum::<BigUint>()
            })
            .max()
            .unwrap_or_default();
        if BigUint::from(1u8) << r > worst {
            return Ok(r);
        }
        r += 1;
    }
}

/// `2D` when a Sylvester-Hadamard code with at least `M` words of minimum
/// distance `D` can be built and verified, otherwise `None`.
pub fn hadamard_upper(m: usize, d: u32) -> Option<BoundResult> {
    if d == 0 || m > 4 * d as usize {
        return None;
    }
    let code = codegen::hadamard_code(d)?;
    let ok = codegen::min_distance(&code).is_ok_and(|md| md >= d as usize) && code.size() >= m;
    ok.then(|| BoundResult::upper_int(2 * i64::from(d), "hadamard"))
}

/// `ceil(2D / (1 - 2 sqrt(ln D / D)))`, valid for `D >= 10` and `M <= D^2`.
pub fn gv_regular_closed_form(m: usize, d: u32) -> Option<BoundResult> {
    if d < 10 || m as u64 > u64::from(d) * u64::from(d) {
        return None;
    }
    let df = f64::from(d);
    let x = 2.0 * df / (1.0 - 2.0 * (df.ln() / df).sqrt());
    let mut b = BoundResult::from_float(x, BoundKind::Upper, "gv-closed-form");
    b.value = Rational64::from_integer(b.integer_value);
    Some(b)
}

/// Bounds on `N(M, D)` that hold for every matrix with the same maximum entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sandwich {
    pub lower: BoundResult,
    pub upper: Option<BoundResult>,
}

/// Lower bound `D_max`; upper bound from the closed form on the regular
/// matrix with entries `D_max` when it applies.
pub fn sandwich(d: &DistanceMatrix) -> Sandwich {
    let dmax = d.max_entry();
    let lower = BoundResult::lower(Rational64::from_integer(i64::from(dmax)), "sandwich");
    let upper =
        if dmax == 0 { Some(BoundResult::upper_int(0, "sandwich")) } else { gv_regular_closed_form(d.dim(), dmax) };
    Sandwich { lower, upper }
}

/// Lower bound on the parity length for the Hamming weight function:
/// `(10t^3 + 30t^2 + 20t + 12) / (3t^2 + 12t + 12)`.
pub fn wt_lower_bound(t: u32) -> BoundResult {
    let t = i64::from(t);
    let num = 10 * t * t * t + 30 * t * t + 20 * t + 12;
    let den = 3 * t * t + 12 * t + 12;
    BoundResult::lower(Rational64::new(num, den), "weight-plotkin")
}

/// Lower bound for min-max functions with `w >= 2` parts:
/// `(4t(w^2-w-1) - 3w^2 + 7w - 5) / ((w-1)w)`.
pub fn minmax_lower_bound(w: u32, t: u32) -> Result<BoundResult> {
    if w < 2 {
        return invalid("min-max lower bound needs w >= 2");
    }
    let (w, t) = (i64::from(w), i64::from(t));
    let num = 4 * t * (w * w - w - 1) - 3 * w * w + 7 * w - 5;
    Ok(BoundResult::lower(Rational64::new(num, (w - 1) * w), "minmax-plotkin"))
}

/// Sphere-packing type lower bound for min-max functions, `w >= 3`, `t >= 2`:
/// `log2(w(w-1)) + (t-2) log2 log2(w(w-1)) - t log2 t`.
pub fn minmax_sphere_packing_bound(w: u32, t: u32) -> Result<BoundResult> {
    if w < 3 || t < 2 {
        return invalid("min-max sphere-packing bound needs w >= 3 and t >= 2");
    }
    let e = f64::from(w * (w - 1));
    let t = f64::from(t);
    let x = e.log2() + (t - 2.0) * e.log2().log2() - t * t.log2();
    Ok(BoundResult::from_float(x, BoundKind::Lower, "minmax-sphere-packing"))
}

/// Smallest `r` with `2^r - (w^2-w-1) V(r, 2t-2) - (4w-8) C(r, 2t-1) > 0`.
///
/// This is the greedy threshold for the worst row of the min-max requirement
/// matrix: `4(w-2)` entries equal `2t` and the remaining `w^2-5w+7` equal
/// `2t-1`.
pub fn minmax_gv_upper(w: u32, t: u32) -> Result<BoundResult> {
    if w < 2 || t < 1 {
        return invalid("min-max greedy bound needs w >= 2 and t >= 1");
    }
    let (w, t) = (w as usize, t as usize);
    let mut r = 0usize;
    loop {
        let phi = BigInt::from(BigUint::from(1u8) << r)
            - BigInt::from((w * w - w - 1) as u64) * BigInt::from(sphere_size(r, 2 * t - 2))
            - BigInt::from((4 * w - 8) as u64) * BigInt::from(binomial(r, 2 * t - 1));
        if phi > BigInt::zero() {
            return Ok(BoundResult::upper_int(r as i64, "minmax-gv"));
        }
        r += 1;
    }
}

fn ceil_log2(x: u64) -> u64 {
    if x <= 1 {
        0
    } else {
        u64::from(64 - (x - 1).leading_zeros())
    }
}

/// Least fixed point of `r = g(r)` for nondecreasing `g`, iterated from below.
fn least_fixed_point(start: u64, g: impl Fn(u64) -> u64) -> u64 {
    let mut r = start;
    loop {
        let next = g(r);
        if next == r {
            return r;
        }
        r = next;
    }
}

/// Redundancy estimate for protecting all `k` data bits with a `t`-error
/// correcting code: the least fixed point of `r = t * ceil(log2(k + r))`.
pub fn ecc_on_data_redundancy(k: u64, t: u64) -> u64 {
    least_fixed_point(t * ceil_log2(k), |r| t * ceil_log2(k + r))
}

/// Redundancy estimate for encoding the `E` function values with a
/// `t`-error correcting alternant code: `ceil(log2 E) + r` where
/// `r = t * ceil(log2(ceil(log2 E) + r))`. Never less than `2t + 1`, the
/// length of the shortest code with two words at distance `2t + 1`.
pub fn ecc_on_function_values_redundancy(e: u64, t: u64) -> u64 {
    let data = ceil_log2(e);
    let r = least_fixed_point(0, |r| t * ceil_log2(data + r));
    (data + r).max(2 * t + 1)
}

/// `ceil(log2 x)` for `x >= 1`.
pub fn ceil_log2_u64(x: u64) -> u64 {
    ceil_log2(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `[2t + 1 - |i - j|]^+` over weight classes `0..=k`.
    fn weight_matrix(k: usize, t: u32) -> DistanceMatrix {
        DistanceMatrix::from_fn(k + 1, |i, j| (2 * t + 1).saturating_sub((j - i) as u32))
    }

    #[test]
    fn plotkin_on_weight_matrix() {
        let d = weight_matrix(6, 2);
        assert_eq!(d.upper_sum(), 50);
        let b = plotkin_irregular(&d);
        assert_eq!(b.value, Rational64::new(25, 6));
        assert_eq!(b.integer_value, 5);
        assert_eq!(b.to_string(), "25/6 (ceil 5)");
    }

    #[test]
    fn plotkin_regular_values() {
        assert_eq!(plotkin_regular(4, 4).integer_value, 6);
        assert_eq!(plotkin_regular(4, 4).value, Rational64::from_integer(6));
        // Regular matrices agree with the irregular form.
        for m in 2..9 {
            for d in 0..6 {
                let irr = plotkin_irregular(&DistanceMatrix::regular(m, d));
                let reg = plotkin_regular(m, d);
                if m % 2 == 0 {
                    assert_eq!(irr.value, reg.value);
                } else {
                    assert!(irr.value >= reg.value);
                }
            }
        }
    }

    #[test]
    fn gv_threshold_examples() {
        let zero = DistanceMatrix::regular(5, 0);
        assert_eq!(gv_irregular_threshold(&zero, &identity_order(5)).unwrap(), 0);
        let two = DistanceMatrix::regular(2, 2);
        assert_eq!(gv_irregular_threshold(&two, &identity_order(2)).unwrap(), 2);
        assert!(gv_irregular_threshold(&two, &[0, 0]).is_err());
        let d = weight_matrix(4, 1);
        let order = row_sum_order(&d);
        assert_eq!(order, vec![2, 1, 3, 0, 4]);
    }

    #[test]
    fn hadamard_and_closed_form_applicability() {
        assert_eq!(hadamard_upper(8, 2).unwrap().integer_value, 4);
        assert!(hadamard_upper(9, 2).is_none());
        assert!(hadamard_upper(4, 3).is_none());
        assert!(gv_regular_closed_form(10, 9).is_none());
        assert!(gv_regular_closed_form(101, 10).is_none());
        // 20 / (1 - 2 sqrt(ln 10 / 10)) = 496.4...
        assert_eq!(gv_regular_closed_form(100, 10).unwrap().integer_value, 497);
    }

    #[test]
    fn sandwich_of_zero_matrix() {
        let s = sandwich(&DistanceMatrix::regular(3, 0));
        assert_eq!(s.lower.integer_value, 0);
        assert_eq!(s.upper.unwrap().integer_value, 0);
        let s = sandwich(&DistanceMatrix::regular(3, 4));
        assert_eq!(s.lower.integer_value, 4);
        assert!(s.upper.is_none());
    }

    #[test]
    fn weight_lower_bounds() {
        assert_eq!(wt_lower_bound(1).value, Rational64::new(8, 3));
        assert_eq!(wt_lower_bound(1).integer_value, 3);
        assert_eq!(wt_lower_bound(2).value, Rational64::new(21, 4));
        assert_eq!(wt_lower_bound(2).integer_value, 6);
    }

    #[test]
    fn minmax_bounds() {
        let b = minmax_lower_bound(3, 1).unwrap();
        assert_eq!((b.value, b.integer_value), (Rational64::new(3, 2), 2));
        let b = minmax_lower_bound(4, 2).unwrap();
        assert_eq!((b.value, b.integer_value), (Rational64::new(63, 12), 6));
        // log2 6 + 0 - 2 log2 2 = 0.585
        assert_eq!(minmax_sphere_packing_bound(3, 2).unwrap().integer_value, 1);
        assert!(minmax_sphere_packing_bound(3, 1).is_err());
        assert!(minmax_sphere_packing_bound(2, 2).is_err());
    }

    #[test]
    fn minmax_gv_matches_direct_evaluation() {
        // 2^r - 5 - 4r > 0 first at r = 5.
        assert_eq!(minmax_gv_upper(3, 1).unwrap().integer_value, 5);
        // Adding the binomial term back instead would give r = 1, below the
        // floor of 2t that holds for every non-constant function.
        let printed = (0..).find(|&r: &i64| (1i64 << r) - 5 + 4 * r > 0).unwrap();
        assert_eq!(printed, 1);
    }

    #[test]
    fn ecc_redundancy_fixed_points() {
        assert_eq!(ecc_on_data_redundancy(1024, 1), 11);
        assert_eq!(ecc_on_data_redundancy(2, 1), 2);
        assert_eq!(ecc_on_function_values_redundancy(2, 1), 3);
        assert_eq!(ecc_on_function_values_redundancy(2, 3), 7);
        // 20 data bits: r = ceil(log2 25) = 5.
        assert_eq!(ecc_on_function_values_redundancy(1 << 20, 1), 25);
    }

    #[test]
    fn json_shape() {
        let json = serde_json::to_value(plotkin_irregular(&weight_matrix(6, 2))).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"value_num":25,"value_den":6,"integer_value":5,"kind":"lower","source":"irregular-plotkin"})
        );
    }
}
