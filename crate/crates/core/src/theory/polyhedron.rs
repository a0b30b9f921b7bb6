//! Linear constraint systems over ballot-type histograms `x_S`.
//!
//! Every row reads `coeffs · x REL constant`, where the coefficient vector has
//! one entry per ballot type (mask order) and already includes the
//! `total = Σ_S x_S` terms.

use serde::Serialize;

use super::expected::{binomial, check_p, t_ell, MAX_K};
use crate::election::{subsets_of_size, CandidateSet};
use crate::error::{invalid, Result};

/// Largest `m` for which dense rows are built.
pub const MAX_POLY_CANDIDATES: usize = 10;

pub const MEMBERSHIP_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PolyhedronCase {
    /// Every committee has an underrepresented group towards its `L_W`.
    Negative { ell: usize },
    /// The fixed committee `{0..k-1}` is not underrepresented by any disjoint `L`.
    Positive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    Le,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstraintRow {
    pub committee: CandidateSet,
    pub group: CandidateSet,
    pub ell: usize,
    pub t_ell: usize,
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub constant: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolyhedronSpec {
    pub m: usize,
    pub k: usize,
    pub p: f64,
    pub case: PolyhedronCase,
    pub rows: Vec<ConstraintRow>,
}

impl PolyhedronSpec {
    pub fn dimension(&self) -> usize {
        1 << self.m
    }

    /// The same rows with every constant set to zero.
    pub fn characteristic_cone(&self) -> PolyhedronSpec {
        let mut cone = self.clone();
        for row in &mut cone.rows {
            row.constant = 0.0;
        }
        cone
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MembershipMode {
    /// Constants treated as zero.
    Cone,
    Full,
}

fn check_dims(m: usize, k: usize) -> Result<()> {
    if m == 0 || m > MAX_POLY_CANDIDATES {
        return invalid(format!("m must be in 1..={MAX_POLY_CANDIDATES}, got {m}"));
    }
    if k == 0 || k > m || k > MAX_K {
        return invalid(format!("k must be in 1..=m ({m}), got {k}"));
    }
    Ok(())
}

/// Lexicographically smallest `ell`-subset of the candidates outside `w`.
fn first_outside(m: usize, w: CandidateSet, ell: usize) -> CandidateSet {
    CandidateSet::from_indices((0..m).filter(|&c| !w.contains(c)).take(ell))
}

fn group_rows(
    m: usize,
    k: usize,
    w: CandidateSet,
    l: CandidateSet,
    ell: usize,
    t: usize,
    negative: bool,
) -> [ConstraintRow; 3] {
    let dim = 1usize << m;
    let mass = ell as f64 / k as f64;
    let t_f = t as f64;
    let mut r1 = vec![-mass; dim];
    let mut r2 = vec![-mass; dim];
    let mut r3 = vec![t_f * mass - ell as f64 * mass; dim];
    for (s, ((c1, c2), c3)) in r1.iter_mut().zip(r2.iter_mut()).zip(r3.iter_mut()).enumerate() {
        let s = CandidateSet::from_mask(s as u32);
        if !l.is_subset_of(s) {
            continue;
        }
        let u = s.intersection_len(w);
        if u <= t {
            *c1 += 1.0;
            *c3 += u as f64 - t_f;
        }
        if u < t {
            *c2 += 1.0;
        }
    }
    let row = |coeffs, relation, constant| ConstraintRow {
        committee: w,
        group: l,
        ell,
        t_ell: t,
        coeffs,
        relation,
        constant,
    };
    let third = if negative {
        row(r3, Relation::Le, -t_f - 1.0 / k as f64)
    } else {
        row(r3, Relation::Ge, 0.0)
    };
    [row(r1, Relation::Ge, 0.0), row(r2, Relation::Le, 0.0), third]
}

pub fn build_polyhedron(m: usize, k: usize, p: f64, case: PolyhedronCase) -> Result<PolyhedronSpec> {
    check_dims(m, k)?;
    check_p(p)?;
    let mut rows = Vec::new();
    match case {
        PolyhedronCase::Negative { ell } => {
            if ell == 0 || ell > k || m < k + ell {
                return invalid(format!("need 1 <= ell <= k and m >= k + ell, got m={m}, k={k}, ell={ell}"));
            }
            let Some((t, _)) = t_ell(k, ell, p) else {
                return invalid(format!("u_ell undefined: p^ell < ell/k for k={k}, ell={ell}, p={p}"));
            };
            for w in subsets_of_size(m, k) {
                let l = first_outside(m, w, ell);
                rows.extend(group_rows(m, k, w, l, ell, t, true));
            }
        }
        PolyhedronCase::Positive => {
            let w = CandidateSet::from_indices(0..k);
            for ell in 1..=k.min(m - k) {
                let Some((t, _)) = t_ell(k, ell, p) else { continue };
                for l in subsets_of_size(m, ell).filter(|l| l.is_disjoint(w)) {
                    rows.extend(group_rows(m, k, w, l, ell, t, false));
                }
            }
        }
    }
    Ok(PolyhedronSpec { m, k, p, case, rows })
}

/// Per-row slack: `constant - coeffs·x` for `Le` rows, `coeffs·x - constant`
/// for `Ge` rows. Nonnegative means satisfied.
pub fn row_slacks(point: &[f64], spec: &PolyhedronSpec, mode: MembershipMode) -> Result<Vec<f64>> {
    if point.len() != spec.dimension() {
        return invalid(format!(
            "point has dimension {}, polyhedron has {}",
            point.len(),
            spec.dimension()
        ));
    }
    Ok(spec
        .rows
        .iter()
        .map(|row| {
            let value: f64 = row.coeffs.iter().zip(point).map(|(a, x)| a * x).sum();
            let constant = match mode {
                MembershipMode::Cone => 0.0,
                MembershipMode::Full => row.constant,
            };
            match row.relation {
                Relation::Le => constant - value,
                Relation::Ge => value - constant,
            }
        })
        .collect())
}

/// Non-strict: every slack `>= -MEMBERSHIP_TOL`. Strict: every slack `> MEMBERSHIP_TOL`.
pub fn polyhedron_membership(
    point: &[f64],
    spec: &PolyhedronSpec,
    mode: MembershipMode,
    strict: bool,
) -> Result<bool> {
    let slacks = row_slacks(point, spec, mode)?;
    Ok(if strict {
        slacks.iter().all(|&s| s > MEMBERSHIP_TOL)
    } else {
        slacks.iter().all(|&s| s >= -MEMBERSHIP_TOL)
    })
}

/// `π_S = p^|S| (1-p)^(m-|S|)`.
pub fn expectation_vector(m: usize, p: f64) -> Result<Vec<f64>> {
    check_p(p)?;
    if m > MAX_POLY_CANDIDATES {
        return invalid(format!("m must be at most {MAX_POLY_CANDIDATES}, got {m}"));
    }
    Ok((0..1u32 << m)
        .map(|s| {
            let size = s.count_ones() as i32;
            p.powi(size) * (1.0 - p).powi(m as i32 - size)
        })
        .collect())
}

/// Integer histogram with L1 norm `n` built from `n·π` by the case's shift
/// recipe, then rounded by largest remainder.
pub fn inner_point(m: usize, k: usize, p: f64, n: u64, case: PolyhedronCase) -> Result<Vec<u64>> {
    check_dims(m, k)?;
    let dim = 1usize << m;
    let big = dim as f64;
    let mut x: Vec<f64> = expectation_vector(m, p)?.iter().map(|pi| pi * n as f64).collect();
    match case {
        PolyhedronCase::Negative { ell } => {
            if ell == 0 || ell > m {
                return invalid(format!("ell must be in 1..={m}, got {ell}"));
            }
            let Some((t, _)) = t_ell(k, ell, p) else {
                return invalid(format!("u_ell undefined: p^ell < ell/k for k={k}, ell={ell}, p={p}"));
            };
            let shift = t as f64 * big;
            for (s, xs) in x.iter_mut().enumerate() {
                if s.count_ones() as usize == ell {
                    *xs += shift;
                }
            }
            x[0] -= shift * binomial(m, ell);
        }
        PolyhedronCase::Positive => {
            let k_f = k as f64;
            x[0] -= k_f * (big - 1.0);
            for xs in x.iter_mut().skip(1) {
                *xs += k_f;
            }
            let w = CandidateSet::from_indices(0..k);
            let moved = k_f * k_f * big;
            for s in 0..dim {
                let set = CandidateSet::from_mask(s as u32);
                if !set.is_disjoint(w) {
                    continue;
                }
                for j in w.iter() {
                    x[s] -= moved;
                    x[s | (1 << j)] += moved;
                }
            }
        }
    }
    if let Some(s) = x.iter().position(|&v| v < 0.0) {
        return invalid(format!(
            "n = {n} too small: entry {} would be {:.3}",
            CandidateSet::from_mask(s as u32).to_bits(m),
            x[s]
        ));
    }
    Ok(round_to_total(&x, n))
}

/// Floors every entry, then adds one to the entries with the largest
/// fractional parts (lowest index first on ties) until the sum is `n`.
fn round_to_total(x: &[f64], n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = x.iter().map(|v| v.floor() as u64).collect();
    let assigned: u64 = out.iter().sum();
    let missing = n.saturating_sub(assigned) as usize;
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| (x[b] - x[b].floor()).total_cmp(&(x[a] - x[a].floor())).then(a.cmp(&b)));
    for &i in order.iter().take(missing) {
        out[i] += 1;
    }
    let mut excess = out.iter().sum::<u64>().saturating_sub(n);
    for &i in order.iter().rev() {
        if excess == 0 {
            break;
        }
        if out[i] > 0 {
            out[i] -= 1;
            excess -= 1;
        }
    }
    out
}
