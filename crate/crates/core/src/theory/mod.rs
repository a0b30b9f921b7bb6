//! Closed-form analytics for random approval profiles.

pub mod appendix;
pub mod expected;
pub mod phase;
pub mod polyhedron;

pub use expected::{
    binom_term, cap_u, cap_u_argmax, du2_dp, du_dp, eq1_lhs, overlap_expected_avg, t_ell,
    threshold_p, threshold_u, u_ell, u_via_max, write_u_curves, TheoryPoint, MAX_K,
};
pub use phase::{
    classify_lemma, classify_theorem, p0, p2_star, Classification, PhaseReport, Regime,
    CLASSIFY_TOL, SOLVER_TOL,
};
