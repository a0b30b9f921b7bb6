//! Exact representation axioms on concrete profiles.
//!
//! Every check works on the ballot histogram. For a candidate set `L` of size
//! `ell` with at least `quota(ell)` approvers, the worst group is made of the
//! `quota(ell)` approvers with the lowest utility; its total decides AJR and
//! PJR, and the count of approvers with utility below `ell` decides EJR.

use std::fmt;

use num_rational::Ratio;

use crate::election::{
    enumerate_committees, quota_unchecked, subsets_of_size, utility_buckets, ApprovalProfile,
    BallotHistogram, CandidateSet, Committee, ElectionSpec,
};
use crate::error::{invalid, Result};

pub type Rational = Ratio<i128>;

/// An `ell`-cohesive group towards `candidates` whose average utility is below `ell`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub ell: usize,
    pub candidates: CandidateSet,
    pub group_size: u64,
    pub total_utility: u64,
    pub average_utility: Rational,
}

/// A deviation `deviation` of size `size` that `improvers` voters strictly prefer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockingCoalition {
    pub size: usize,
    pub deviation: CandidateSet,
    pub improvers: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub ajr: bool,
    pub jr: bool,
    pub ejr: bool,
    pub pjr: bool,
    pub core: bool,
    pub ajr_witness: Option<Witness>,
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ajr={}", self.ajr)?;
        writeln!(f, "jr={}", self.jr)?;
        writeln!(f, "ejr={}", self.ejr)?;
        writeln!(f, "pjr={}", self.pjr)?;
        write!(f, "core={}", self.core)?;
        if let Some(w) = &self.ajr_witness {
            writeln!(f)?;
            writeln!(f, "witness_ell={}", w.ell)?;
            writeln!(f, "witness_candidates={}", w.candidates)?;
            writeln!(f, "witness_group_size={}", w.group_size)?;
            writeln!(f, "witness_total_utility={}", w.total_utility)?;
            write!(f, "witness_average_utility={}", w.average_utility)?;
        }
        Ok(())
    }
}

/// Cohesive candidate sets of a histogram, grouped by size.
pub(crate) struct CohesiveSets {
    /// `levels[ell - 1]` = (quota, sets of size `ell` with at least quota approvers),
    /// sets in lexicographic order.
    levels: Vec<(u64, Vec<CandidateSet>)>,
}

impl CohesiveSets {
    pub(crate) fn new(hist: &BallotHistogram, spec: &ElectionSpec) -> Self {
        let sup = hist.superset_counts();
        let levels = (1..=spec.k())
            .map(|ell| {
                let q = quota_unchecked(ell, spec);
                let sets = subsets_of_size(spec.m(), ell)
                    .filter(|l| sup[l.mask() as usize] >= q)
                    .collect();
                (q, sets)
            })
            .collect();
        CohesiveSets { levels }
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.levels.iter().all(|(_, sets)| sets.is_empty())
    }

    fn iter(&self) -> impl Iterator<Item = (usize, u64, CandidateSet)> + '_ {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(i, (q, sets))| sets.iter().map(move |&l| (i + 1, *q, l)))
    }
}

/// Total utility of the `q` lowest-utility voters in `buckets`.
fn lowest_total(buckets: &[u64], q: u64) -> u64 {
    let mut remaining = q;
    let mut total = 0;
    for (u, &c) in buckets.iter().enumerate() {
        let take = c.min(remaining);
        total += u as u64 * take;
        remaining -= take;
        if remaining == 0 {
            break;
        }
    }
    total
}

fn check_ell(ell: usize, group: CandidateSet, spec: &ElectionSpec) -> Result<()> {
    if ell == 0 || ell > spec.k() {
        return invalid(format!("ell must be in 1..={}, got {ell}", spec.k()));
    }
    if group.len() != ell {
        return invalid(format!("|L| = {} but ell = {ell}", group.len()));
    }
    Ok(())
}

/// Average utility of the `quota(ell)` approvers of `group` with the lowest
/// utilities, or `None` if `group` has fewer approvers than the quota.
pub fn min_average_satisfaction(
    hist: &BallotHistogram,
    spec: &ElectionSpec,
    committee: &Committee,
    ell: usize,
    group: CandidateSet,
) -> Result<Option<Rational>> {
    check_ell(ell, group, spec)?;
    let q = quota_unchecked(ell, spec);
    let buckets = utility_buckets(hist, group, committee.members());
    if buckets.iter().sum::<u64>() < q {
        return Ok(None);
    }
    Ok(Some(Rational::new(lowest_total(&buckets, q) as i128, q as i128)))
}

fn witness_in(
    cohesive: &CohesiveSets,
    hist: &BallotHistogram,
    committee: CandidateSet,
) -> Option<Witness> {
    for (ell, q, l) in cohesive.iter() {
        if l.is_subset_of(committee) {
            continue;
        }
        let buckets = utility_buckets(hist, l, committee);
        let total = lowest_total(&buckets, q);
        if total < ell as u64 * q {
            return Some(Witness {
                ell,
                candidates: l,
                group_size: q,
                total_utility: total,
                average_utility: Rational::new(total as i128, q as i128),
            });
        }
    }
    None
}

/// First `(ell, L)` (ell ascending, `L` lexicographic) whose worst cohesive group
/// is underrepresented; `None` iff `committee` provides AJR.
pub fn find_ajr_witness(profile: &ApprovalProfile, committee: &Committee) -> Option<Witness> {
    let hist = profile.histogram();
    let cohesive = CohesiveSets::new(&hist, profile.spec());
    witness_in(&cohesive, &hist, committee.members())
}

/// Lexicographically first AJR committee of a histogram.
pub fn first_ajr_committee(hist: &BallotHistogram, spec: &ElectionSpec) -> Option<Committee> {
    let cohesive = CohesiveSets::new(hist, spec);
    if cohesive.is_empty() {
        return enumerate_committees(spec).next();
    }
    enumerate_committees(spec).find(|w| witness_in(&cohesive, hist, w.members()).is_none())
}

/// `(number of AJR committees, lexicographically first one)`.
pub fn ajr_committee_count(profile: &ApprovalProfile) -> (usize, Option<Committee>) {
    let hist = profile.histogram();
    let cohesive = CohesiveSets::new(&hist, profile.spec());
    let mut count = 0;
    let mut first = None;
    for w in enumerate_committees(profile.spec()) {
        if witness_in(&cohesive, &hist, w.members()).is_none() {
            count += 1;
            first.get_or_insert(w);
        }
    }
    (count, first)
}

/// Existence mode of [`ajr_committee_count`]: stops at the first AJR committee.
pub fn ajr_committee_exists(profile: &ApprovalProfile) -> Option<Committee> {
    first_ajr_committee(&profile.histogram(), profile.spec())
}

fn ejr_in(cohesive: &CohesiveSets, hist: &BallotHistogram, committee: CandidateSet, max_ell: usize) -> bool {
    cohesive
        .iter()
        .filter(|&(ell, _, _)| ell <= max_ell)
        .all(|(ell, q, l)| {
            let buckets = utility_buckets(hist, l, committee);
            buckets[..ell.min(buckets.len())].iter().sum::<u64>() < q
        })
}

fn pjr_in(cohesive: &CohesiveSets, hist: &BallotHistogram, committee: CandidateSet) -> bool {
    cohesive.iter().all(|(ell, q, l)| {
        let buckets = utility_buckets(hist, l, committee);
        lowest_total(&buckets, q) >= ell as u64
    })
}

/// No `ell`-cohesive group in which every member has utility below `ell`.
pub fn satisfies_ejr(profile: &ApprovalProfile, committee: &Committee) -> bool {
    let hist = profile.histogram();
    let cohesive = CohesiveSets::new(&hist, profile.spec());
    ejr_in(&cohesive, &hist, committee.members(), usize::MAX)
}

/// No 1-cohesive group with every member at utility zero.
pub fn satisfies_jr(profile: &ApprovalProfile, committee: &Committee) -> bool {
    let hist = profile.histogram();
    let cohesive = CohesiveSets::new(&hist, profile.spec());
    ejr_in(&cohesive, &hist, committee.members(), 1)
}

/// Every `ell`-cohesive group has total utility at least `ell`.
pub fn satisfies_pjr(profile: &ApprovalProfile, committee: &Committee) -> bool {
    let hist = profile.histogram();
    let cohesive = CohesiveSets::new(&hist, profile.spec());
    pjr_in(&cohesive, &hist, committee.members())
}

/// First `(s, W')` with `k · #{v : U_v(W') > U_v(W)} >= s · n`, by `s` then `W'`.
pub fn find_blocking_coalition(
    profile: &ApprovalProfile,
    committee: &Committee,
) -> Option<BlockingCoalition> {
    blocking_in(&profile.histogram(), profile.spec(), committee.members())
}

fn blocking_in(
    hist: &BallotHistogram,
    spec: &ElectionSpec,
    committee: CandidateSet,
) -> Option<BlockingCoalition> {
    let n = spec.n() as u64;
    let k = spec.k() as u64;
    for s in 1..=spec.k() {
        for dev in subsets_of_size(spec.m(), s) {
            let improvers: u64 = hist
                .support()
                .iter()
                .filter(|(b, _)| b.intersection_len(dev) > b.intersection_len(committee))
                .map(|&(_, c)| c)
                .sum();
            if k * improvers >= s as u64 * n {
                return Some(BlockingCoalition { size: s, deviation: dev, improvers });
            }
        }
    }
    None
}

pub fn satisfies_core(profile: &ApprovalProfile, committee: &Committee) -> bool {
    find_blocking_coalition(profile, committee).is_none()
}

/// All checks for one committee.
pub fn evaluate(profile: &ApprovalProfile, committee: &Committee) -> AxiomReport {
    let hist = profile.histogram();
    let spec = profile.spec();
    let cohesive = CohesiveSets::new(&hist, spec);
    evaluate_with(&cohesive, &hist, spec, committee.members())
}

/// [`evaluate`] for every committee, lexicographically.
pub fn evaluate_all(profile: &ApprovalProfile) -> Vec<(Committee, AxiomReport)> {
    let hist = profile.histogram();
    let spec = profile.spec();
    let cohesive = CohesiveSets::new(&hist, spec);
    enumerate_committees(spec)
        .map(|w| (w, evaluate_with(&cohesive, &hist, spec, w.members())))
        .collect()
}

fn evaluate_with(
    cohesive: &CohesiveSets,
    hist: &BallotHistogram,
    spec: &ElectionSpec,
    w: CandidateSet,
) -> AxiomReport {
    let ajr_witness = witness_in(cohesive, hist, w);
    AxiomReport {
        ajr: ajr_witness.is_none(),
        jr: ejr_in(cohesive, hist, w, 1),
        ejr: ejr_in(cohesive, hist, w, usize::MAX),
        pjr: pjr_in(cohesive, hist, w),
        core: blocking_in(hist, spec, w).is_none(),
        ajr_witness,
    }
}

/// `lcm(1..=k)`, so that `scale · H(j)` is an integer for `j <= k`.
fn harmonic_scale(k: usize) -> i128 {
    (1..=k as i128).fold(1, lcm)
}

fn lcm(a: i128, b: i128) -> i128 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

fn scaled_pav(hist: &BallotHistogram, w: CandidateSet, harmonic: &[i128]) -> i128 {
    hist.support()
        .iter()
        .map(|&(s, c)| c as i128 * harmonic[s.intersection_len(w)])
        .sum()
}

fn scaled_harmonics(k: usize) -> (i128, Vec<i128>) {
    let scale = harmonic_scale(k);
    let mut h = vec![0i128; k + 1];
    for j in 1..=k {
        h[j] = h[j - 1] + scale / j as i128;
    }
    (scale, h)
}

/// `Σ_v H(U_v(W))` with `H(j) = 1 + 1/2 + … + 1/j`.
pub fn pav_score(profile: &ApprovalProfile, committee: &Committee) -> Rational {
    let (scale, h) = scaled_harmonics(profile.spec().k());
    Rational::new(scaled_pav(&profile.histogram(), committee.members(), &h), scale)
}

/// Lexicographically first committee of maximum PAV score.
pub fn pav_committee(profile: &ApprovalProfile) -> Committee {
    let (_, h) = scaled_harmonics(profile.spec().k());
    let hist = profile.histogram();
    let mut best: Option<(i128, Committee)> = None;
    for w in enumerate_committees(profile.spec()) {
        let score = scaled_pav(&hist, w.members(), &h);
        if best.as_ref().is_none_or(|&(b, _)| score > b) {
            best = Some((score, w));
        }
    }
    best.expect("at least one committee").1
}

/// Entry `ell - 1` is the lowest worst-group average over all `L` of size
/// `ell`, or `None` if no `ell`-cohesive group exists.
pub fn proportionality_profile(
    profile: &ApprovalProfile,
    committee: &Committee,
) -> Vec<Option<Rational>> {
    let hist = profile.histogram();
    let cohesive = CohesiveSets::new(&hist, profile.spec());
    cohesive
        .levels
        .iter()
        .map(|(q, sets)| {
            sets.iter()
                .map(|&l| {
                    let buckets = utility_buckets(&hist, l, committee.members());
                    Rational::new(lowest_total(&buckets, *q) as i128, *q as i128)
                })
                .min()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, *};

    fn committee(p: &ApprovalProfile, members: &[usize]) -> Committee {
        Committee::from_indices(members.iter().copied(), p.spec()).unwrap()
    }

    #[test]
    fn fig1_left_group_average_is_half() {
        let p = fixtures::fig1();
        let w = committee(&p, &[TOP, RIGHT, BOTTOM]);
        let avg = min_average_satisfaction(
            &p.histogram(),
            p.spec(),
            &w,
            1,
            CandidateSet::from_indices([LEFT]),
        )
        .unwrap();
        assert_eq!(avg, Some(Rational::new(1, 2)));
    }

    #[test]
    fn unapproved_group_has_no_average() {
        let p = fixtures::fig1();
        let w = committee(&p, &[TOP, RIGHT, BOTTOM]);
        let l = CandidateSet::from_indices([LEFT, RIGHT]);
        assert_eq!(
            min_average_satisfaction(&p.histogram(), p.spec(), &w, 2, l).unwrap(),
            None
        );
        assert!(min_average_satisfaction(&p.histogram(), p.spec(), &w, 1, l).is_err());
    }

    #[test]
    fn example1_column_group_average_is_one() {
        let p = fixtures::example1(3);
        let w = committee(&p, &[row(0), row(1), row(2)]);
        let l = CandidateSet::from_indices([column(3, 0)]);
        assert_eq!(
            min_average_satisfaction(&p.histogram(), p.spec(), &w, 1, l).unwrap(),
            Some(Rational::from_integer(1))
        );
    }

    #[test]
    fn fig1_has_no_ajr_committee() {
        let p = fixtures::fig1();
        for w in enumerate_committees(p.spec()) {
            let wit = find_ajr_witness(&p, &w).expect("witness");
            assert_eq!(wit.ell, 1);
            assert_eq!(wit.average_utility, Rational::new(1, 2));
        }
        assert_eq!(ajr_committee_count(&p), (0, None));
        assert_eq!(ajr_committee_exists(&p), None);
    }

    #[test]
    fn example1_has_two_ajr_committees() {
        let p = fixtures::example1(3);
        let rows = committee(&p, &[row(0), row(1), row(2)]);
        let cols = committee(&p, &[column(3, 0), column(3, 1), column(3, 2)]);
        assert_eq!(find_ajr_witness(&p, &rows), None);
        assert_eq!(find_ajr_witness(&p, &cols), None);
        assert_eq!(ajr_committee_count(&p), (2, Some(rows)));
    }

    #[test]
    fn core_example_ajr_but_blocked() {
        let p = fixtures::core_example();
        let w = committee(&p, &[X1, X2, X3, X4]);
        assert_eq!(find_ajr_witness(&p, &w), None);
        assert_eq!(
            find_blocking_coalition(&p, &w),
            Some(BlockingCoalition {
                size: 3,
                deviation: CandidateSet::from_indices([X1, Y, Z]),
                improvers: 6,
            })
        );
        assert!(!satisfies_core(&p, &w));
    }

    #[test]
    fn empty_profile_satisfies_everything() {
        let spec = ElectionSpec::new(5, 4, 2).unwrap();
        let p = fixtures::empty(spec);
        let (count, first) = ajr_committee_count(&p);
        assert_eq!(count, 6);
        assert_eq!(first.unwrap().members(), CandidateSet::from_indices([0, 1]));
        for w in enumerate_committees(&spec) {
            let r = evaluate(&p, &w);
            assert!(r.ajr && r.ejr && r.pjr && r.jr && r.core);
            assert_eq!(pav_score(&p, &w), Rational::from_integer(0));
            assert_eq!(proportionality_profile(&p, &w), vec![None, None]);
        }
        assert_eq!(pav_committee(&p).members(), CandidateSet::from_indices([0, 1]));
    }

    #[test]
    fn example1_every_committee_is_ejr() {
        let p = fixtures::example1(3);
        let all: Vec<_> = enumerate_committees(p.spec()).collect();
        assert_eq!(all.len(), 20);
        for w in all {
            assert!(satisfies_ejr(&p, &w));
            assert!(satisfies_pjr(&p, &w));
            assert!(satisfies_jr(&p, &w));
        }
    }

    #[test]
    fn fig1_is_jr_pjr_and_core() {
        let p = fixtures::fig1();
        let w = committee(&p, &[TOP, RIGHT, BOTTOM]);
        assert!(satisfies_jr(&p, &w));
        assert!(satisfies_pjr(&p, &w));
        for w in enumerate_committees(p.spec()) {
            assert!(satisfies_core(&p, &w));
        }
    }

    #[test]
    fn pav_examples() {
        let p = fixtures::example1(3);
        let w = committee(&p, &[row(0), row(1), row(2)]);
        assert_eq!(pav_score(&p, &w), Rational::from_integer(9));

        let spec = ElectionSpec::new(1, 2, 1).unwrap();
        let p = ApprovalProfile::new(spec, vec![CandidateSet::from_indices([0])]).unwrap();
        assert_eq!(pav_committee(&p).members(), CandidateSet::from_indices([0]));
    }

    #[test]
    fn pav_score_harmonic() {
        let spec = ElectionSpec::new(2, 3, 3).unwrap();
        let p = ApprovalProfile::new(
            spec,
            vec![CandidateSet::full(3), CandidateSet::from_indices([1])],
        )
        .unwrap();
        let w = Committee::from_indices([0, 1, 2], &spec).unwrap();
        assert_eq!(pav_score(&p, &w), Rational::new(17, 6));
    }

    #[test]
    fn proportionality_profiles() {
        let p = fixtures::fig1();
        let w = committee(&p, &[TOP, RIGHT, BOTTOM]);
        assert_eq!(
            proportionality_profile(&p, &w),
            vec![Some(Rational::new(1, 2)), None, None]
        );
        let p = fixtures::example1(3);
        let w = committee(&p, &[row(0), row(1), row(2)]);
        assert_eq!(
            proportionality_profile(&p, &w),
            vec![Some(Rational::from_integer(1)), None, None]
        );
    }

    #[test]
    fn report_format() {
        let p = fixtures::fig1();
        let w = committee(&p, &[TOP, RIGHT, BOTTOM]);
        let text = evaluate(&p, &w).to_string();
        assert!(text.starts_with("ajr=false\njr=true\nejr=true\npjr=true\ncore=true\n"));
        assert!(text.contains("witness_ell=1\n"));
        assert!(text.contains("witness_candidates={0}\n"));
        assert!(text.ends_with("witness_average_utility=1/2"));
    }
}
