//! Expected worst-group satisfaction under the Erdős–Rényi model, as a fraction of `n`.
//!
//! For a candidate set `L` of size `ell` disjoint from the committee, a random
//! voter approves all of `L` and exactly `t` committee members with probability
//! `C(k,t) p^(ell+t) (1-p)^(k-t)`.

use std::io::Write;

use serde::Serialize;

use crate::error::{invalid, Result};

/// Largest committee size supported by the analytic functions.
pub const MAX_K: usize = 64;

/// Slack in the cumulative-mass comparison that picks `t_ell`.
pub const T_ELL_SLACK: f64 = 1e-15;

pub(crate) fn check_k_ell_p(k: usize, ell: usize, p: f64) -> Result<()> {
    if k == 0 || k > MAX_K {
        return invalid(format!("k must be in 1..={MAX_K}, got {k}"));
    }
    if ell == 0 || ell > k {
        return invalid(format!("ell must be in 1..={k}, got {ell}"));
    }
    check_p(p)
}

pub(crate) fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return invalid(format!("p must be in [0, 1], got {p}"));
    }
    Ok(())
}

pub fn binomial(n: usize, r: usize) -> f64 {
    if r > n {
        return 0.0;
    }
    let r = r.min(n - r);
    (0..r).fold(1.0, |c, i| c * (n - i) as f64 / (i + 1) as f64)
}

/// `C(k,t) · p^(ell+t) · (1-p)^(k-t)`.
pub fn binom_term(k: usize, t: usize, ell: usize, p: f64) -> f64 {
    binomial(k, t) * p.powi((ell + t) as i32) * (1.0 - p).powi((k - t) as i32)
}

fn terms(k: usize, ell: usize, p: f64) -> Vec<f64> {
    (0..=k).map(|t| binom_term(k, t, ell, p)).collect()
}

/// Smallest `t` whose cumulative mass reaches `ell/k`, with that mass.
/// `None` when even `t = k` falls short (`p^ell < ell/k`).
pub fn t_ell(k: usize, ell: usize, p: f64) -> Option<(usize, f64)> {
    first_crossing(&terms(k, ell, p), 0, ell as f64 / k as f64)
}

fn first_crossing(terms: &[f64], start: usize, target: f64) -> Option<(usize, f64)> {
    let mut cum = 0.0;
    for (t, &b) in terms.iter().enumerate().skip(start) {
        cum += b;
        if cum + T_ELL_SLACK >= target {
            return Some((t, cum));
        }
    }
    None
}

/// Expected average utility of the worst `ell`-cohesive group.
pub fn u_ell(k: usize, ell: usize, p: f64) -> Option<f64> {
    let bt = terms(k, ell, p);
    let (t, n_ratio) = first_crossing(&bt, 0, ell as f64 / k as f64)?;
    Some(truncated_average(&bt, 0, t, n_ratio, k, ell))
}

fn truncated_average(bt: &[f64], start: usize, t: usize, n_ratio: f64, k: usize, ell: usize) -> f64 {
    let mass = ell as f64 / k as f64;
    let weighted: f64 = (start..=t).map(|s| s as f64 * bt[s]).sum();
    (weighted - t as f64 * (n_ratio - mass)) / mass
}

/// `U(T) = T - (k/ell) Σ_{t<=T} (T-t) C(k,t) p^(ell+t) (1-p)^(k-t)`.
pub fn cap_u(k: usize, ell: usize, p: f64, big_t: usize) -> f64 {
    let s: f64 = (0..=big_t)
        .map(|t| (big_t - t) as f64 * binom_term(k, t, ell, p))
        .sum();
    big_t as f64 - k as f64 / ell as f64 * s
}

/// `(argmax T, max U(T))` over `T = 1..=k`; ties go to the smallest `T`.
pub fn cap_u_argmax(k: usize, ell: usize, p: f64) -> (usize, f64) {
    (1..=k)
        .map(|t| (t, cap_u(k, ell, p, t)))
        .fold((0, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best })
}

/// `max_T U(T)`; `None` where `u_ell` is undefined.
pub fn u_via_max(k: usize, ell: usize, p: f64) -> Option<f64> {
    t_ell(k, ell, p)?;
    Some(cap_u_argmax(k, ell, p).1)
}

/// `d U(2) / dp` for `ell = 1`.
pub fn du2_dp(k: usize, p: f64) -> f64 {
    let k_f = k as f64;
    k_f * (1.0 - p).powi(k as i32 - 2) * (k_f * (k_f - 1.0) * p * p - 2.0 * (1.0 - p).powi(2))
}

/// `d U(T) / dp` for `ell = 1`.
pub fn du_dp(k: usize, big_t: usize, p: f64) -> f64 {
    let s: f64 = (0..big_t)
        .map(|t| {
            binomial(k, t)
                * p.powi(t as i32)
                * (1.0 - p).powi((k - t) as i32 - 1)
                * ((big_t - t) as f64 * (1.0 - p) - (k - t) as f64 * p)
        })
        .sum();
    -(k as f64) * s
}

/// `k (2x(1-x)^k + k x^2 (1-x)^(k-1))`, equal to `2 - U(2)` at `ell = 1`.
pub fn eq1_lhs(k: usize, x: f64) -> f64 {
    let k_f = k as f64;
    k_f * (2.0 * x * (1.0 - x).powi(k as i32) + k_f * x * x * (1.0 - x).powi(k as i32 - 1))
}

/// `(ell/k)^(1/ell)`, the smallest `p` at which `u_ell` is defined.
pub fn threshold_p(k: usize, ell: usize) -> f64 {
    (ell as f64 / k as f64).powf(1.0 / ell as f64)
}

/// `(ell k^(ell-1))^(1/ell)`, the value of `u_ell` at [`threshold_p`].
pub fn threshold_u(k: usize, ell: usize) -> f64 {
    (ell as f64 * (k as f64).powi(ell as i32 - 1)).powf(1.0 / ell as f64)
}

/// Expected worst-group average for groups towards `L` with `|L ∩ W| = h`.
pub fn overlap_expected_avg(k: usize, ell: usize, h: usize, p: f64) -> Result<f64> {
    check_k_ell_p(k, ell, p)?;
    if h == 0 || h >= ell {
        return invalid(format!("h must be in 1..{ell}, got {h}"));
    }
    let bt: Vec<f64> = (0..=k)
        .map(|t| {
            if t < h {
                0.0
            } else {
                binomial(k - h, t - h)
                    * p.powi((ell + t - h) as i32)
                    * (1.0 - p).powi((k - t) as i32)
            }
        })
        .collect();
    match first_crossing(&bt, h, ell as f64 / k as f64) {
        Some((t, n_ratio)) => Ok(truncated_average(&bt, h, t, n_ratio, k, ell)),
        None => invalid(format!("p^ell < ell/k for k={k}, ell={ell}, p={p}")),
    }
}

/// `t_ell`, `n_ell / n` and `u_ell` at one parameter point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TheoryPoint {
    pub k: usize,
    pub ell: usize,
    pub p: f64,
    pub t_ell: Option<usize>,
    /// Cumulative mass at `t_ell`, or `p^ell` when `t_ell` is absent.
    pub n_ratio: f64,
    pub u_ell: Option<f64>,
}

impl TheoryPoint {
    pub fn new(k: usize, ell: usize, p: f64) -> Result<Self> {
        check_k_ell_p(k, ell, p)?;
        let bt = terms(k, ell, p);
        let point = match first_crossing(&bt, 0, ell as f64 / k as f64) {
            Some((t, n_ratio)) => TheoryPoint {
                k,
                ell,
                p,
                t_ell: Some(t),
                n_ratio,
                u_ell: Some(truncated_average(&bt, 0, t, n_ratio, k, ell)),
            },
            None => TheoryPoint {
                k,
                ell,
                p,
                t_ell: None,
                n_ratio: bt.iter().sum(),
                u_ell: None,
            },
        };
        Ok(point)
    }
}

/// Writes `k,ell,p,T,U` rows for every `p` in `ps` and `T = 1..=k`.
pub fn write_u_curves<W: Write>(out: &mut W, k: usize, ell: usize, ps: &[f64]) -> Result<()> {
    check_k_ell_p(k, ell, 0.0)?;
    for &p in ps {
        check_p(p)?;
    }
    writeln!(out, "k,ell,p,T,U")?;
    for &p in ps {
        for t in 1..=k {
            writeln!(out, "{k},{ell},{p:.6},{t},{:.12}", cap_u(k, ell, p, t))?;
        }
    }
    Ok(())
}
