//! Numerical scans for inequalities that are settled by direct computation.

use serde::Serialize;

use super::expected::eq1_lhs;
use super::phase::p0;
use crate::error::{invalid, Result};

pub const PROP8_DEFAULT_MAX: usize = 200;
pub const PROP8_FULL_MAX: usize = 3947;
pub const CLAIM4_DEFAULT_MAX: usize = 1000;

/// Result of a scan: whether every case passed, the first failing case and its value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScanOutcome {
    pub holds: bool,
    pub checked: u64,
    /// `(ell, k)` for the binomial scan, `(k, 0)` for the `phi` scan.
    pub first_failure: Option<(usize, usize)>,
    pub failing_value: Option<f64>,
}

/// `C(k,ell) (1 - (ell/k)^(1/ell))^(k-ell)`, multiplied out one factor pair at a time.
pub fn prop8_value(ell: usize, k: usize) -> f64 {
    let shrink = 1.0 - (ell as f64 / k as f64).powf(1.0 / ell as f64);
    let mut result = 1.0;
    for i in 0..k - ell {
        result *= (k - i) as f64 / (i + 1) as f64;
        result *= shrink;
    }
    result
}

/// Checks `prop8_value(ell, k) < 1` for `2 <= ell <= ell_max` and
/// `floor(1.5 ell) <= k <= 29 ell`.
pub fn verify_prop8(ell_max: usize) -> Result<ScanOutcome> {
    if ell_max < 2 {
        return invalid(format!("ell_max must be at least 2, got {ell_max}"));
    }
    let mut checked = 0;
    for ell in 2..=ell_max {
        for k in (3 * ell / 2)..=29 * ell {
            checked += 1;
            let v = prop8_value(ell, k);
            if v >= 1.0 {
                return Ok(ScanOutcome {
                    holds: false,
                    checked,
                    first_failure: Some((ell, k)),
                    failing_value: Some(v),
                });
            }
        }
    }
    Ok(ScanOutcome { holds: true, checked, first_failure: None, failing_value: None })
}

/// `k^2 p^2 (1-p)^(k-2) (1 + (k-2) p)`.
pub fn phi(k: usize, p: f64) -> f64 {
    let k_f = k as f64;
    k_f * k_f * p * p * (1.0 - p).powf(k_f - 2.0) * (1.0 + (k_f - 2.0) * p)
}

/// Checks `phi(k, p0(k)) > 1` for `3 <= k <= k_max`.
pub fn verify_claim4(k_max: usize) -> Result<ScanOutcome> {
    if k_max < 3 {
        return invalid(format!("k_max must be at least 3, got {k_max}"));
    }
    for k in 3..=k_max {
        let v = phi(k, p0(k));
        if v <= 1.0 {
            return Ok(ScanOutcome {
                holds: false,
                checked: (k - 2) as u64,
                first_failure: Some((k, 0)),
                failing_value: Some(v),
            });
        }
    }
    Ok(ScanOutcome {
        holds: true,
        checked: (k_max - 2) as u64,
        first_failure: None,
        failing_value: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Prop1Check {
    pub k: usize,
    pub upper_x: f64,
    pub lhs_at_upper: f64,
    pub lhs_at_lower: f64,
    pub holds: bool,
}

/// `eq1_lhs(k, min(1, 5/k)) < 1` and `eq1_lhs(k, 1/k) > 1`.
pub fn prop1_bound_check(k: usize) -> Result<Prop1Check> {
    if k < 3 {
        return invalid(format!("k must be at least 3, got {k}"));
    }
    let upper_x = (5.0 / k as f64).min(1.0);
    let lhs_at_upper = eq1_lhs(k, upper_x);
    let lhs_at_lower = eq1_lhs(k, 1.0 / k as f64);
    Ok(Prop1Check {
        k,
        upper_x,
        lhs_at_upper,
        lhs_at_lower,
        holds: lhs_at_upper < 1.0 && lhs_at_lower > 1.0,
    })
}

/// Limit of `eq1_lhs(k, 5/k)` as `k` grows: `10 e^-5 + 25 e^(-10/3)`.
pub fn prop1_limit_constant() -> f64 {
    10.0 * (-5.0f64).exp() + 25.0 * (-10.0f64 / 3.0).exp()
}

/// Limit of `phi(k, p0(k))`: `2 e^(-sqrt 2) (1 + sqrt 2)`.
pub fn claim4_limit_constant() -> f64 {
    let r2 = 2f64.sqrt();
    2.0 * (-r2).exp() * (1.0 + r2)
}
