//! Phase transition points and regime classification.

use std::fmt;

use serde::Serialize;

use super::expected::{check_p, eq1_lhs, t_ell, u_ell, MAX_K};
use crate::error::{invalid, Result};

/// Default bisection accuracy for [`p2_star`].
pub const SOLVER_TOL: f64 = 1e-12;
/// Default boundary tolerance for the classifiers.
pub const CLASSIFY_TOL: f64 = 1e-9;

const MAX_BISECTIONS: usize = 200;

fn check_k(k: usize, min: usize) -> Result<()> {
    if k < min || k > MAX_K {
        return invalid(format!("k must be in {min}..={MAX_K}, got {k}"));
    }
    Ok(())
}

/// Minimiser of `U(2)` on `(0, 1)`: `1 / (1 + sqrt(k(k-1)/2))`.
pub fn p0(k: usize) -> f64 {
    let k_f = k as f64;
    1.0 / (1.0 + (k_f * (k_f - 1.0) / 2.0).sqrt())
}

/// Largest root of `eq1_lhs(k, x) = 1`, by bisection on `[p0(k), 1]`.
pub fn p2_star(k: usize, tol: f64) -> Result<f64> {
    check_k(k, 2)?;
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // also rejects NaN
    if !(tol > 0.0) {
        return invalid(format!("tolerance must be positive, got {tol}"));
    }
    if k == 2 {
        return Ok(0.5);
    }
    let (mut lo, mut hi) = (p0(k), 1.0);
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if eq1_lhs(k, mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhaseReport {
    pub k: usize,
    pub p1_star: f64,
    pub p2_star: f64,
    pub p0: f64,
    pub tolerance: f64,
}

impl PhaseReport {
    pub fn new(k: usize, tol: f64) -> Result<Self> {
        Ok(PhaseReport {
            k,
            p1_star: 1.0 / k as f64,
            p2_star: p2_star(k, tol)?,
            p0: p0(k),
            tolerance: tol,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Regime {
    ExistsWHP,
    NotExistsWHP,
    Boundary,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Regime::ExistsWHP => "ExistsWHP",
            Regime::NotExistsWHP => "NotExistsWHP",
            Regime::Boundary => "Boundary",
        };
        f.write_str(s)
    }
}

/// A regime plus the `ell` (and its `u_ell`) that decided it, when one did.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub regime: Regime,
    pub ell: Option<usize>,
    pub u_ell: Option<f64>,
}

impl Classification {
    fn bare(regime: Regime) -> Self {
        Classification { regime, ell: None, u_ell: None }
    }
}

/// Regime from the two transition points `1/k` and `p2_star(k)`.
pub fn classify_theorem(k: usize, p: f64, tol: f64) -> Result<Classification> {
    check_k(k, 1)?;
    check_p(p)?;
    if k == 1 {
        return Ok(Classification::bare(Regime::ExistsWHP));
    }
    let p1 = 1.0 / k as f64;
    let p2 = p2_star(k, SOLVER_TOL.min(tol))?;
    let regime = if (p - p1).abs() <= tol || (p - p2).abs() <= tol {
        Regime::Boundary
    } else if p > p1 && p < p2 {
        Regime::NotExistsWHP
    } else {
        Regime::ExistsWHP
    };
    Ok(Classification { regime, ell: Some(1), u_ell: u_ell(k, 1, p) })
}

/// Regime from the signs of `u_ell - ell` over every `ell <= min(k, m-k)`
/// with `p^ell >= ell/k`.
pub fn classify_lemma(k: usize, m: usize, p: f64, tol: f64) -> Result<Classification> {
    check_k(k, 1)?;
    check_p(p)?;
    if m <= k {
        return invalid(format!("need m > k, got m={m}, k={k}"));
    }
    let active: Vec<usize> = (1..=k.min(m - k))
        .filter(|&ell| t_ell(k, ell, p).is_some())
        .collect();
    if active.is_empty() || p == 1.0 {
        return Ok(Classification::bare(Regime::ExistsWHP));
    }
    let values: Vec<(usize, f64)> = active
        .iter()
        .map(|&ell| (ell, u_ell(k, ell, p).expect("t_ell present")))
        .collect();
    if let Some(&(ell, u)) = values.iter().find(|&&(ell, u)| u < ell as f64 - tol) {
        return Ok(Classification { regime: Regime::NotExistsWHP, ell: Some(ell), u_ell: Some(u) });
    }
    if let Some(&(ell, u)) = values.iter().find(|&&(ell, u)| u <= ell as f64 + tol) {
        return Ok(Classification { regime: Regime::Boundary, ell: Some(ell), u_ell: Some(u) });
    }
    let &(ell, u) = values
        .iter()
        .min_by(|a, b| (a.1 - a.0 as f64).total_cmp(&(b.1 - b.0 as f64)))
        .expect("nonempty");
    Ok(Classification { regime: Regime::ExistsWHP, ell: Some(ell), u_ell: Some(u) })
}
