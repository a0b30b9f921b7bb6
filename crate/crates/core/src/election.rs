//! Profiles, ballots, histograms and committees.
//!
//! Candidates are indexed `0..m` and every candidate subset is a `u32` bitmask
//! (bit `i` set means candidate `i` is in the set). With `m <= 24` the full
//! ballot-type histogram has at most 2^24 entries.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported number of candidates.
pub const MAX_CANDIDATES: usize = 24;

/// Number of voters `n`, candidates `m` and committee size `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ElectionSpec {
    n: usize,
    m: usize,
    k: usize,
}

impl ElectionSpec {
    pub fn new(n: usize, m: usize, k: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("n must be at least 1".into()));
        }
        if m == 0 || m > MAX_CANDIDATES {
            return Err(Error::InvalidSpec(format!(
                "m must be in 1..={MAX_CANDIDATES}, got {m}"
            )));
        }
        if k == 0 || k > m {
            return Err(Error::InvalidSpec(format!(
                "k must be in 1..=m ({m}), got {k}"
            )));
        }
        Ok(ElectionSpec { n, m, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of ballot types, `2^m`.
    pub fn ballot_types(&self) -> usize {
        1 << self.m
    }
}

/// A subset of candidates stored as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct CandidateSet(u32);

impl CandidateSet {
    pub const EMPTY: CandidateSet = CandidateSet(0);

    pub fn from_mask(mask: u32) -> Self {
        CandidateSet(mask)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        CandidateSet(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    /// All candidates `0..m`.
    pub fn full(m: usize) -> Self {
        CandidateSet(((1u64 << m) - 1) as u32)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, candidate: usize) -> bool {
        candidate < 32 && self.0 & (1 << candidate) != 0
    }

    pub fn is_subset_of(self, other: CandidateSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: CandidateSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: CandidateSet) -> CandidateSet {
        CandidateSet(self.0 | other.0)
    }

    pub fn intersection_len(self, other: CandidateSet) -> usize {
        (self.0 & other.0).count_ones() as usize
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// Parses an `m`-character `0`/`1` string; character `j` is candidate `j`.
    pub fn parse_bits(bits: &str, m: usize) -> Option<Self> {
        if bits.len() != m || m > MAX_CANDIDATES {
            return None;
        }
        let mut mask = 0u32;
        for (j, ch) in bits.bytes().enumerate() {
            match ch {
                b'0' => {}
                b'1' => mask |= 1 << j,
                _ => return None,
            }
        }
        Some(CandidateSet(mask))
    }

    pub fn to_bits(self, m: usize) -> String {
        (0..m)
            .map(|j| if self.contains(j) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Display for CandidateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (pos, c) in self.iter().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// Serialized as the sorted member list.
impl Serialize for CandidateSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// A winning committee: exactly `k` candidates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Committee(CandidateSet);

impl Committee {
    pub fn new(members: CandidateSet, spec: &ElectionSpec) -> Result<Self> {
        if members.len() != spec.k() {
            return Err(Error::InvalidArgument(format!(
                "committee {members} has {} members, expected k = {}",
                members.len(),
                spec.k()
            )));
        }
        if !members.is_subset_of(CandidateSet::full(spec.m())) {
            return Err(Error::InvalidArgument(format!(
                "committee {members} contains candidates outside 0..{}",
                spec.m()
            )));
        }
        Ok(Committee(members))
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(
        indices: I,
        spec: &ElectionSpec,
    ) -> Result<Self> {
        Committee::new(CandidateSet::from_indices(indices), spec)
    }

    pub fn from_bits(bits: &str, spec: &ElectionSpec) -> Result<Self> {
        let members = CandidateSet::parse_bits(bits, spec.m()).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "committee must be {} characters of 0/1, got {bits:?}",
                spec.m()
            ))
        })?;
        Committee::new(members, spec)
    }

    pub fn members(&self) -> CandidateSet {
        self.0
    }
}

impl fmt::Display for Committee {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `n` approval ballots over `m` candidates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApprovalProfile {
    spec: ElectionSpec,
    ballots: Vec<CandidateSet>,
}

impl ApprovalProfile {
    pub fn new(spec: ElectionSpec, ballots: Vec<CandidateSet>) -> Result<Self> {
        if ballots.len() != spec.n() {
            return Err(Error::InvalidSpec(format!(
                "expected {} ballots, got {}",
                spec.n(),
                ballots.len()
            )));
        }
        let full = CandidateSet::full(spec.m());
        if let Some(v) = ballots.iter().position(|b| !b.is_subset_of(full)) {
            return Err(Error::InvalidSpec(format!(
                "ballot of voter {v} approves a candidate outside 0..{}",
                spec.m()
            )));
        }
        Ok(ApprovalProfile { spec, ballots })
    }

    /// Parses the text profile format: a header line `n m k`, then `n` lines of
    /// exactly `m` characters from `{0,1}`.
    pub fn parse(text: &str) -> Result<Self> {
        let parse_err = |line: usize, message: String| Error::Parse { line, message };

        let body = text.strip_suffix('\n').unwrap_or(text);
        let mut lines = body.split('\n');
        let header = lines.next().unwrap_or("");
        let fields: Vec<&str> = header.split(' ').collect();
        if fields.len() != 3 {
            return Err(parse_err(
                1,
                format!("header must be \"n m k\", got {header:?}"),
            ));
        }
        let mut nums = [0usize; 3];
        for (slot, field) in nums.iter_mut().zip(&fields) {
            if field.is_empty() || !field.bytes().all(|b| b.is_ascii_digit()) {
                return Err(parse_err(1, format!("not a decimal integer: {field:?}")));
            }
            *slot = field
                .parse()
                .map_err(|_| parse_err(1, format!("integer out of range: {field:?}")))?;
        }
        let [n, m, k] = nums;
        let spec = ElectionSpec::new(n, m, k).map_err(|e| parse_err(1, e.to_string()))?;

        let mut ballots = Vec::with_capacity(n);
        for (i, line) in lines.enumerate() {
            let line_no = i + 2;
            if ballots.len() == n {
                return Err(parse_err(line_no, "trailing content after last ballot".into()));
            }
            if line.len() != m {
                return Err(parse_err(
                    line_no,
                    format!("ballot must have exactly {m} characters, got {}", line.len()),
                ));
            }
            let ballot = CandidateSet::parse_bits(line, m).ok_or_else(|| {
                parse_err(line_no, format!("ballot contains characters outside {{0,1}}: {line:?}"))
            })?;
            ballots.push(ballot);
        }
        if ballots.len() != n {
            return Err(parse_err(
                ballots.len() + 2,
                format!("expected {n} ballot lines, found {}", ballots.len()),
            ));
        }
        Ok(ApprovalProfile { spec, ballots })
    }

    /// Serializes to the profile text format; `parse(p.to_text()) == p`.
    pub fn to_text(&self) -> String {
        let m = self.spec.m();
        let mut out = String::with_capacity((m + 1) * (self.ballots.len() + 1));
        out.push_str(&format!("{} {} {}\n", self.spec.n(), m, self.spec.k()));
        for b in &self.ballots {
            out.push_str(&b.to_bits(m));
            out.push('\n');
        }
        out
    }

    pub fn spec(&self) -> &ElectionSpec {
        &self.spec
    }

    pub fn ballots(&self) -> &[CandidateSet] {
        &self.ballots
    }

    /// `|A(v) ∩ W|`.
    pub fn utility(&self, voter: usize, committee: &Committee) -> Result<usize> {
        let ballot = self.ballots.get(voter).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "voter index {voter} out of range 0..{}",
                self.ballots.len()
            ))
        })?;
        Ok(ballot.intersection_len(committee.members()))
    }

    pub fn histogram(&self) -> BallotHistogram {
        let mut counts = vec![0u64; self.spec.ballot_types()];
        for b in &self.ballots {
            counts[b.mask() as usize] += 1;
        }
        BallotHistogram::from_counts(self.spec.m(), counts)
    }
}

impl fmt::Display for ApprovalProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Voter count per ballot type; `counts[S]` is the number of voters whose
/// ballot is exactly `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallotHistogram {
    m: usize,
    counts: Vec<u64>,
    /// Nonzero entries in increasing mask order.
    support: Vec<(CandidateSet, u64)>,
}

impl BallotHistogram {
    /// # Panics
    /// If `counts.len() != 2^m`.
    pub fn from_counts(m: usize, counts: Vec<u64>) -> Self {
        assert_eq!(counts.len(), 1usize << m, "histogram length must be 2^m");
        let support = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(s, &c)| (CandidateSet::from_mask(s as u32), c))
            .collect();
        BallotHistogram { m, counts, support }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, ballot: CandidateSet) -> u64 {
        self.counts[ballot.mask() as usize]
    }

    pub fn support(&self) -> &[(CandidateSet, u64)] {
        &self.support
    }

    pub fn total(&self) -> u64 {
        self.support.iter().map(|&(_, c)| c).sum()
    }

    /// Number of voters approving every candidate of `group`.
    pub fn approvers_of_all(&self, group: CandidateSet) -> u64 {
        self.support
            .iter()
            .filter(|(s, _)| group.is_subset_of(*s))
            .map(|&(_, c)| c)
            .sum()
    }

    /// `out[L] = Σ_{S ⊇ L} counts[S]` for every mask `L` (superset-sum transform).
    pub fn superset_counts(&self) -> Vec<u64> {
        let mut acc = self.counts.clone();
        for bit in 0..self.m {
            let b = 1usize << bit;
            for mask in 0..acc.len() {
                if mask & b == 0 {
                    acc[mask] += acc[mask | b];
                }
            }
        }
        acc
    }
}

/// `⌈ell·n/k⌉`, the smallest integer group size that is `ell`-cohesive.
pub fn quota(ell: usize, spec: &ElectionSpec) -> Result<u64> {
    if ell == 0 || ell > spec.k() {
        return Err(Error::InvalidArgument(format!(
            "ell must be in 1..={}, got {ell}",
            spec.k()
        )));
    }
    Ok(quota_unchecked(ell, spec))
}

pub(crate) fn quota_unchecked(ell: usize, spec: &ElectionSpec) -> u64 {
    let num = ell as u64 * spec.n() as u64;
    let k = spec.k() as u64;
    num.div_ceil(k)
}

/// Size-`size` subsets of `0..m` in lexicographic order of their sorted member lists.
pub fn subsets_of_size(m: usize, size: usize) -> Combinations {
    Combinations {
        m,
        idx: (0..size).collect(),
        done: size > m,
    }
}

pub struct Combinations {
    m: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Iterator for Combinations {
    type Item = CandidateSet;

    fn next(&mut self) -> Option<CandidateSet> {
        if self.done {
            return None;
        }
        let current = CandidateSet::from_indices(self.idx.iter().copied());
        let size = self.idx.len();
        match (0..size).rev().find(|&i| self.idx[i] < self.m - size + i) {
            Some(i) => {
                self.idx[i] += 1;
                for j in i + 1..size {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
            }
            None => self.done = true,
        }
        Some(current)
    }
}

/// All `C(m,k)` committees, lexicographically.
pub fn enumerate_committees(spec: &ElectionSpec) -> impl Iterator<Item = Committee> {
    subsets_of_size(spec.m(), spec.k()).map(Committee)
}

/// Utility distribution of the voters approving all of `group`:
/// `(utility, count)` pairs with nonzero count, ascending by utility.
pub fn utility_multiset(
    hist: &BallotHistogram,
    group: CandidateSet,
    committee: &Committee,
) -> Vec<(usize, u64)> {
    utility_buckets(hist, group, committee.members())
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .collect()
}

/// `buckets[u]` = number of approvers of `group` with `|S ∩ committee| = u`.
pub(crate) fn utility_buckets(
    hist: &BallotHistogram,
    group: CandidateSet,
    committee: CandidateSet,
) -> Vec<u64> {
    let mut buckets = vec![0u64; committee.len() + 1];
    for &(s, c) in hist.support() {
        if group.is_subset_of(s) {
            buckets[s.intersection_len(committee)] += c;
        }
    }
    buckets
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parses_minimal_and_direct_encodings() {
        let p = ApprovalProfile::parse("1 1 1\n1\n").unwrap();
        assert_eq!(p.spec().n(), 1);
        assert_eq!(p.ballots(), &[CandidateSet::from_indices([0])]);

        let p = ApprovalProfile::parse("2 3 2\n101\n010\n").unwrap();
        assert_eq!(
            p.ballots(),
            &[CandidateSet::from_indices([0, 2]), CandidateSet::from_indices([1])]
        );
    }

    #[test]
    fn fig1_profile_parses() {
        let text = fixtures::fig1().to_text();
        assert!(text.starts_with("12 4 3\n"));
        let p = ApprovalProfile::parse(&text).unwrap();
        assert_eq!((p.spec().n(), p.spec().m(), p.spec().k()), (12, 4, 3));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let line_of = |text: &str| match ApprovalProfile::parse(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(line_of("2 3\n101\n010\n"), 1);
        assert_eq!(line_of("2 3 x\n101\n010\n"), 1);
        assert_eq!(line_of("2 3 4\n101\n010\n"), 1); // k > m
        assert_eq!(line_of("2 3 2\n101\n"), 3); // missing ballot
        assert_eq!(line_of("2 3 2\n101\n0a0\n"), 3);
        assert_eq!(line_of("2 3 2\n1011\n010\n"), 2);
        assert_eq!(line_of("2 3 2\n101\n010\n111\n"), 4);
        assert_eq!(line_of("2 3 2\n101\n010\n\n"), 4);
        assert_eq!(line_of("0 3 2\n"), 1);
    }

    #[test]
    fn utility_on_fig1() {
        let p = fixtures::fig1();
        // candidates: 0 = Left, 1 = Top, 2 = Right, 3 = Bottom
        let w = Committee::from_indices([0, 1, 3], p.spec()).unwrap();
        let corner = p
            .ballots()
            .iter()
            .position(|&b| b == CandidateSet::from_indices([0, 1]))
            .unwrap();
        assert_eq!(p.utility(corner, &w).unwrap(), 2);
        assert!(p.utility(12, &w).is_err());
    }

    #[test]
    fn empty_and_full_ballots() {
        let spec = ElectionSpec::new(2, 4, 2).unwrap();
        let p = ApprovalProfile::new(spec, vec![CandidateSet::EMPTY, CandidateSet::full(4)])
            .unwrap();
        for w in enumerate_committees(&spec) {
            assert_eq!(p.utility(0, &w).unwrap(), 0);
            assert_eq!(p.utility(1, &w).unwrap(), 2);
        }
    }

    #[test]
    fn histogram_of_fig1() {
        let h = fixtures::fig1().histogram();
        let nonzero: Vec<_> = h.support().to_vec();
        assert_eq!(nonzero.len(), 8);
        for (s, c) in nonzero {
            match s.len() {
                1 => assert_eq!(c, 2),
                2 => assert_eq!(c, 1),
                _ => panic!("unexpected ballot {s}"),
            }
        }
        assert_eq!(h.total(), 12);
    }

    #[test]
    fn histogram_single_and_uniform() {
        let spec = ElectionSpec::new(5, 3, 1).unwrap();
        let s = CandidateSet::from_indices([1, 2]);
        let h = ApprovalProfile::new(spec, vec![s; 5]).unwrap().histogram();
        assert_eq!(h.count(s), 5);
        assert_eq!(h.support().len(), 1);
    }

    #[test]
    fn quota_values() {
        let spec = ElectionSpec::new(12, 4, 3).unwrap();
        assert_eq!(quota(1, &spec).unwrap(), 4);
        assert_eq!(quota(3, &spec).unwrap(), 12);
        let spec = ElectionSpec::new(7, 4, 3).unwrap();
        assert_eq!(quota(1, &spec).unwrap(), 3);
        assert!(quota(0, &spec).is_err());
        assert!(quota(4, &spec).is_err());
    }

    #[test]
    fn committee_enumeration_counts_and_order() {
        let spec = ElectionSpec::new(1, 4, 3).unwrap();
        let all: Vec<_> = enumerate_committees(&spec).map(|w| w.members()).collect();
        assert_eq!(
            all,
            vec![
                CandidateSet::from_indices([0, 1, 2]),
                CandidateSet::from_indices([0, 1, 3]),
                CandidateSet::from_indices([0, 2, 3]),
                CandidateSet::from_indices([1, 2, 3]),
            ]
        );
        let spec = ElectionSpec::new(1, 6, 3).unwrap();
        assert_eq!(enumerate_committees(&spec).count(), 20);
        let spec = ElectionSpec::new(1, 5, 5).unwrap();
        assert_eq!(enumerate_committees(&spec).count(), 1);
    }

    #[test]
    fn multiset_on_fig1() {
        let p = fixtures::fig1();
        let w = Committee::from_indices([1, 2, 3], p.spec()).unwrap();
        let h = p.histogram();
        let left = CandidateSet::from_indices([0]);
        assert_eq!(utility_multiset(&h, left, &w), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn multiset_for_unapproved_group_is_empty() {
        let p = fixtures::fig1();
        let w = Committee::from_indices([1, 2, 3], p.spec()).unwrap();
        // nobody approves Left and Right together
        let l = CandidateSet::from_indices([0, 2]);
        assert!(utility_multiset(&p.histogram(), l, &w).is_empty());
    }

    #[test]
    fn group_inside_committee_has_high_utility() {
        let p = fixtures::fig1();
        let w = Committee::from_indices([0, 1, 2], p.spec()).unwrap();
        let l = CandidateSet::from_indices([0, 1]);
        for (u, _) in utility_multiset(&p.histogram(), l, &w) {
            assert!(u >= 2);
        }
    }

    #[test]
    fn bits_roundtrip() {
        let s = CandidateSet::from_indices([0, 3]);
        assert_eq!(s.to_bits(5), "10010");
        assert_eq!(CandidateSet::parse_bits("10010", 5), Some(s));
        assert_eq!(CandidateSet::parse_bits("1001", 5), None);
        assert_eq!(s.to_string(), "{0,3}");
    }
}
