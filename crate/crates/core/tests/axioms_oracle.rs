//! Axiom checkers against literal brute force over voter subsets.

use ajr::axioms::{
    ajr_committee_count, evaluate, evaluate_all, find_ajr_witness, find_blocking_coalition,
    pav_committee, pav_score, proportionality_profile, satisfies_ejr, Rational,
};
use ajr::election::{enumerate_committees, subsets_of_size, ApprovalProfile, CandidateSet, ElectionSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_profile(rng: &mut ChaCha8Rng, max_n: usize, max_m: usize) -> ApprovalProfile {
    let n = rng.gen_range(1..=max_n);
    let m = rng.gen_range(1..=max_m);
    let k = rng.gen_range(1..=m);
    let p: f64 = rng.gen_range(0.05..0.95);
    let ballots = (0..n)
        .map(|_| CandidateSet::from_indices((0..m).filter(|_| rng.gen::<f64>() < p)))
        .collect();
    ApprovalProfile::new(ElectionSpec::new(n, m, k).unwrap(), ballots).unwrap()
}

fn utilities(p: &ApprovalProfile, w: CandidateSet) -> Vec<usize> {
    p.ballots().iter().map(|b| b.intersection_len(w)).collect()
}

fn members(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask & (1 << i) != 0)
}

fn common_approvals(p: &ApprovalProfile, voters: u32) -> CandidateSet {
    members(voters).fold(CandidateSet::full(p.spec().m()), |acc, v| {
        CandidateSet::from_mask(acc.mask() & p.ballots()[v].mask())
    })
}

/// Smallest `ell` for which some voter set `V` with `k|V| >= ell n` and
/// `|∩ A(v)| >= ell` satisfies `pred(ell, utilities of V)`.
fn brute_min_ell(
    p: &ApprovalProfile,
    w: CandidateSet,
    pred: impl Fn(usize, &[usize]) -> bool,
) -> Option<usize> {
    let (n, k) = (p.spec().n(), p.spec().k());
    let u = utilities(p, w);
    (1..=k).find(|&ell| {
        (1u32..(1 << n)).any(|voters| {
            let size = voters.count_ones() as usize;
            if k * size < ell * n || common_approvals(p, voters).len() < ell {
                return false;
            }
            let us: Vec<usize> = members(voters).map(|v| u[v]).collect();
            pred(ell, &us)
        })
    })
}

fn brute_ajr_fail(p: &ApprovalProfile, w: CandidateSet) -> Option<usize> {
    brute_min_ell(p, w, |ell, us| us.iter().sum::<usize>() < ell * us.len())
}

fn brute_ejr_fail(p: &ApprovalProfile, w: CandidateSet) -> bool {
    brute_min_ell(p, w, |ell, us| us.iter().all(|&u| u < ell)).is_some()
}

fn brute_pjr_fail(p: &ApprovalProfile, w: CandidateSet) -> bool {
    brute_min_ell(p, w, |ell, us| us.iter().sum::<usize>() < ell).is_some()
}

fn brute_jr_fail(p: &ApprovalProfile, w: CandidateSet) -> bool {
    brute_min_ell(p, w, |ell, us| ell == 1 && us.iter().all(|&u| u == 0)).is_some()
}

/// Some coalition `V` and committee `W'` of size `floor(k|V|/n) >= 1` that
/// every member of `V` strictly prefers.
fn brute_core_blocked(p: &ApprovalProfile, w: CandidateSet) -> bool {
    let (n, m, k) = (p.spec().n(), p.spec().m(), p.spec().k());
    let u = utilities(p, w);
    (1u32..(1 << n)).any(|voters| {
        let s = k * voters.count_ones() as usize / n;
        s >= 1
            && subsets_of_size(m, s.min(m)).any(|dev| {
                members(voters).all(|v| p.ballots()[v].intersection_len(dev) > u[v])
            })
    })
}

#[test]
fn witness_matches_subset_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut with_witness = 0;
    for _ in 0..200 {
        let p = random_profile(&mut rng, 12, 5);
        for w in enumerate_committees(p.spec()) {
            let found = find_ajr_witness(&p, &w);
            assert_eq!(
                found.as_ref().map(|x| x.ell),
                brute_ajr_fail(&p, w.members()),
                "profile:\n{}committee {}",
                p,
                w
            );
            with_witness += found.is_some() as usize;
        }
    }
    assert!(with_witness > 0);
}

#[test]
fn other_axioms_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..150 {
        let p = random_profile(&mut rng, 10, 5);
        for (w, r) in evaluate_all(&p) {
            let m = w.members();
            assert_eq!(r.ejr, !brute_ejr_fail(&p, m), "ejr\n{p}{w}");
            assert_eq!(r.pjr, !brute_pjr_fail(&p, m), "pjr\n{p}{w}");
            assert_eq!(r.jr, !brute_jr_fail(&p, m), "jr\n{p}{w}");
            assert_eq!(r.core, !brute_core_blocked(&p, m), "core\n{p}{w}");
        }
    }
}

#[test]
fn witnesses_revalidate() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut seen = 0;
    for _ in 0..300 {
        let p = random_profile(&mut rng, 40, 6);
        let (n, k) = (p.spec().n(), p.spec().k());
        for w in enumerate_committees(p.spec()) {
            let Some(wit) = find_ajr_witness(&p, &w) else { continue };
            seen += 1;
            assert_eq!(wit.candidates.len(), wit.ell);
            assert_eq!(wit.group_size as usize, (wit.ell * n).div_ceil(k));
            let mut us: Vec<usize> = p
                .ballots()
                .iter()
                .filter(|b| wit.candidates.is_subset_of(**b))
                .map(|b| b.intersection_len(w.members()))
                .collect();
            assert!(us.len() >= wit.group_size as usize);
            us.sort_unstable();
            let total: usize = us[..wit.group_size as usize].iter().sum();
            assert_eq!(total as u64, wit.total_utility);
            assert_eq!(
                wit.average_utility,
                Rational::new(total as i128, wit.group_size as i128)
            );
            assert!(wit.average_utility < Rational::from_integer(wit.ell as i128));
        }
    }
    assert!(seen > 100);
}

#[test]
fn implication_chain_on_ten_thousand_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut pairs = 0;
    let mut ajr_true = 0;
    while pairs < 10_000 {
        let p = random_profile(&mut rng, 60, 7);
        for (_, r) in evaluate_all(&p) {
            pairs += 1;
            ajr_true += r.ajr as usize;
            assert!(!r.ajr || r.ejr, "AJR without EJR\n{p}");
            assert!(!r.ejr || r.pjr, "EJR without PJR\n{p}");
            assert!(!r.pjr || r.jr, "PJR without JR\n{p}");
        }
    }
    assert!(ajr_true > 0 && ajr_true < pairs);
}

#[test]
fn pav_is_ejr() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..200 {
        let p = random_profile(&mut rng, 40, 6);
        let w = pav_committee(&p);
        assert!(satisfies_ejr(&p, &w), "PAV committee {w} not EJR\n{p}");
        let best = pav_score(&p, &w);
        for other in enumerate_committees(p.spec()) {
            assert!(pav_score(&p, &other) <= best);
        }
    }
}

#[test]
fn proportionality_profile_decides_ajr() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..100 {
        let p = random_profile(&mut rng, 30, 6);
        for w in enumerate_committees(p.spec()) {
            let prof = proportionality_profile(&p, &w);
            let ajr = prof
                .iter()
                .enumerate()
                .all(|(i, v)| v.is_none_or(|v| v >= Rational::from_integer(i as i128 + 1)));
            assert_eq!(ajr, evaluate(&p, &w).ajr);
        }
    }
}

#[test]
fn count_matches_per_committee_checks() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..100 {
        let p = random_profile(&mut rng, 30, 6);
        let ajr: Vec<_> = enumerate_committees(p.spec())
            .filter(|w| find_ajr_witness(&p, w).is_none())
            .collect();
        assert_eq!(ajr_committee_count(&p), (ajr.len(), ajr.first().copied()));
    }
}

#[test]
fn blocker_satisfies_counting_condition() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for _ in 0..100 {
        let p = random_profile(&mut rng, 30, 6);
        let (n, k) = (p.spec().n() as u64, p.spec().k() as u64);
        for w in enumerate_committees(p.spec()) {
            if let Some(b) = find_blocking_coalition(&p, &w) {
                let improvers = p
                    .ballots()
                    .iter()
                    .filter(|x| x.intersection_len(b.deviation) > x.intersection_len(w.members()))
                    .count() as u64;
                assert_eq!(improvers, b.improvers);
                assert_eq!(b.deviation.len(), b.size);
                assert!(k * improvers >= b.size as u64 * n);
            }
        }
    }
}
