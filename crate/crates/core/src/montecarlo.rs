//! Random Erdős–Rényi profiles and AJR-existence frequency estimates.
//!
//! Approval bits come from a ChaCha8 keystream: for a given seed, trial `i`
//! reads stream `i`, and the bit of voter `v` for candidate `c` is drawn from
//! word `v·m + c`. Results therefore do not depend on thread count.

use std::io::Write;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::axioms::first_ajr_committee;
use crate::election::{ApprovalProfile, BallotHistogram, CandidateSet, ElectionSpec};
use crate::error::{invalid, Result};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959963984540054;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleConfig {
    pub spec: ElectionSpec,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
}

impl SampleConfig {
    pub fn new(spec: ElectionSpec, p: f64, trials: u64, seed: u64) -> Result<Self> {
        check_probability(p)?;
        if trials == 0 {
            return invalid("trials must be at least 1");
        }
        Ok(SampleConfig { spec, p, trials, seed })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EstimateResult {
    pub trials: u64,
    pub exists_count: u64,
    pub frequency: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub elapsed: Duration,
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return invalid(format!("p must be in [0, 1], got {p}"));
    }
    Ok(())
}

fn stream(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn draw_ballot(rng: &mut ChaCha8Rng, m: usize, p: f64) -> CandidateSet {
    let mut mask = 0u32;
    for c in 0..m {
        if rng.gen::<f64>() < p {
            mask |= 1 << c;
        }
    }
    CandidateSet::from_mask(mask)
}

/// Profile of trial 0 for `seed`.
pub fn sample_profile(spec: ElectionSpec, p: f64, seed: u64) -> Result<ApprovalProfile> {
    sample_trial_profile(spec, p, seed, 0)
}

/// The profile used by trial `trial` of an estimate with `seed`.
pub fn sample_trial_profile(
    spec: ElectionSpec,
    p: f64,
    seed: u64,
    trial: u64,
) -> Result<ApprovalProfile> {
    check_probability(p)?;
    let mut rng = stream(seed, trial);
    let ballots = (0..spec.n()).map(|_| draw_ballot(&mut rng, spec.m(), p)).collect();
    ApprovalProfile::new(spec, ballots)
}

fn sample_histogram(spec: &ElectionSpec, p: f64, seed: u64, trial: u64) -> BallotHistogram {
    let mut rng = stream(seed, trial);
    let mut counts = vec![0u64; spec.ballot_types()];
    for _ in 0..spec.n() {
        counts[draw_ballot(&mut rng, spec.m(), p).mask() as usize] += 1;
    }
    BallotHistogram::from_counts(spec.m(), counts)
}

/// 95% Wilson score interval, widened if needed to contain `successes / trials`.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    let n = trials as f64;
    let f = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (f + z2 / (2.0 * n)) / denom;
    let half = Z95 / denom * (f * (1.0 - f) / n + z2 / (4.0 * n * n)).sqrt();
    let low = (center - half).min(f).max(0.0);
    let high = (center + half).max(f).min(1.0);
    (low, high)
}

/// Fraction of `trials` random profiles that admit an AJR committee.
pub fn estimate_existence(config: &SampleConfig) -> EstimateResult {
    let start = Instant::now();
    let SampleConfig { spec, p, trials, seed } = *config;
    let exists_count = (0..trials)
        .into_par_iter()
        .filter(|&i| first_ajr_committee(&sample_histogram(&spec, p, seed, i), &spec).is_some())
        .count() as u64;
    let (ci_low, ci_high) = wilson_interval(exists_count, trials);
    EstimateResult {
        trials,
        exists_count,
        frequency: exists_count as f64 / trials as f64,
        ci_low,
        ci_high,
        elapsed: start.elapsed(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRecord {
    pub spec: ElectionSpec,
    pub p: f64,
    pub seed: u64,
    pub result: EstimateResult,
}

pub const SWEEP_HEADER: &str = "k,m,n,p,trials,exists_count,frequency,ci_low,ci_high,seed";

impl SweepRecord {
    pub fn csv_row(&self) -> String {
        let r = &self.result;
        format!(
            "{},{},{},{:.6},{},{},{:.6},{:.6},{:.6},{}",
            self.spec.k(),
            self.spec.m(),
            self.spec.n(),
            self.p,
            r.trials,
            r.exists_count,
            r.frequency,
            r.ci_low,
            r.ci_high,
            self.seed
        )
    }
}

/// One estimate per `p` (same seed for every `p`), written as CSV rows in `p` order.
pub fn sweep<W: Write>(
    spec: ElectionSpec,
    p_values: &[f64],
    trials: u64,
    seed: u64,
    out: &mut W,
) -> Result<Vec<SweepRecord>> {
    if p_values.is_empty() {
        return invalid("p grid is empty");
    }
    let configs = p_values
        .iter()
        .map(|&p| SampleConfig::new(spec, p, trials, seed))
        .collect::<Result<Vec<_>>>()?;
    writeln!(out, "{SWEEP_HEADER}")?;
    let mut records = Vec::with_capacity(configs.len());
    for config in configs {
        let record = SweepRecord {
            spec,
            p: config.p,
            seed,
            result: estimate_existence(&config),
        };
        writeln!(out, "{}", record.csv_row())?;
        records.push(record);
    }
    Ok(records)
}

/// Parses `start:stop:step` into `start + i·step` for every value not above `stop`.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return invalid(format!("grid must be start:stop:step, got {text:?}"));
    }
    let mut vals = [0.0f64; 3];
    for (v, part) in vals.iter_mut().zip(&parts) {
        *v = part
            .trim()
            .parse()
            .map_err(|_| crate::error::Error::InvalidArgument(format!("bad number {part:?} in grid")))?;
    }
    let [start, stop, step] = vals;
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // also rejects NaN
    if !(step > 0.0) || !start.is_finite() || !stop.is_finite() {
        return invalid(format!("grid step must be positive, got {text:?}"));
    }
    if stop < start {
        return invalid(format!("grid stop is below start: {text:?}"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}
