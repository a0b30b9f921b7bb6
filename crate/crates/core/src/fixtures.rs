//! Small hand-built profiles with known axiom behaviour.

use crate::election::{ApprovalProfile, CandidateSet, ElectionSpec};

pub const LEFT: usize = 0;
pub const TOP: usize = 1;
pub const RIGHT: usize = 2;
pub const BOTTOM: usize = 3;

/// Square instance: 12 voters, 4 candidates, k = 3. Two voters approve only
/// each side, one voter approves each pair of adjacent sides. No committee
/// provides AJR, yet every committee is core stable.
pub fn fig1() -> ApprovalProfile {
    let mut ballots = Vec::with_capacity(12);
    for side in [LEFT, TOP, RIGHT, BOTTOM] {
        ballots.push(CandidateSet::from_indices([side]));
        ballots.push(CandidateSet::from_indices([side]));
    }
    for pair in [[LEFT, TOP], [TOP, RIGHT], [LEFT, BOTTOM], [RIGHT, BOTTOM]] {
        ballots.push(CandidateSet::from_indices(pair));
    }
    let spec = ElectionSpec::new(12, 4, 3).expect("valid spec");
    ApprovalProfile::new(spec, ballots).expect("valid profile")
}

/// Row candidate `r_i` (0-based `i`).
pub fn row(i: usize) -> usize {
    i
}

/// Column candidate `c_j` for a grid of size `k`.
pub fn column(k: usize, j: usize) -> usize {
    k + j
}

/// `k × k` grid: voter `v_ij` approves `r_i` and `c_j`; `m = 2k`, `n = k²`.
/// Only the all-rows and all-columns committees provide AJR.
pub fn example1(k: usize) -> ApprovalProfile {
    let mut ballots = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            ballots.push(CandidateSet::from_indices([row(i), column(k, j)]));
        }
    }
    let spec = ElectionSpec::new(k * k, 2 * k, k).expect("valid spec");
    ApprovalProfile::new(spec, ballots).expect("valid profile")
}

pub const X1: usize = 0;
pub const X2: usize = 1;
pub const X3: usize = 2;
pub const X4: usize = 3;
pub const Y: usize = 4;
pub const Z: usize = 5;

/// 8 voters, k = 4: `{x1,x2,x3,x4}` provides AJR but is blocked by the six
/// voters approving `x1` together with `y` or `z`.
pub fn core_example() -> ApprovalProfile {
    let mut ballots = Vec::with_capacity(8);
    ballots.extend(std::iter::repeat_n(CandidateSet::from_indices([X1, Y]), 3));
    ballots.extend(std::iter::repeat_n(CandidateSet::from_indices([X1, Z]), 3));
    ballots.extend(std::iter::repeat_n(CandidateSet::from_indices([X2, X3, X4]), 2));
    let spec = ElectionSpec::new(8, 6, 4).expect("valid spec");
    ApprovalProfile::new(spec, ballots).expect("valid profile")
}

/// `n` empty ballots.
pub fn empty(spec: ElectionSpec) -> ApprovalProfile {
    ApprovalProfile::new(spec, vec![CandidateSet::EMPTY; spec.n()]).expect("valid profile")
}
