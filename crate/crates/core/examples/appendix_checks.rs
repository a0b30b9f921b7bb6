//! Numeric scans behind the asymptotic bounds.

use ajr::theory::appendix::{
    claim4_limit_constant, prop1_bound_check, prop1_limit_constant, verify_claim4, verify_prop8,
    CLAIM4_DEFAULT_MAX, PROP8_DEFAULT_MAX,
};

fn main() {
    let start = std::time::Instant::now();
    let prop8 = verify_prop8(PROP8_DEFAULT_MAX).unwrap();
    println!("binomial bound, ell <= {PROP8_DEFAULT_MAX}: {prop8:?} ({:.1?})", start.elapsed());
    let claim4 = verify_claim4(CLAIM4_DEFAULT_MAX).unwrap();
    println!("phi(k, p0) > 1 for k <= {CLAIM4_DEFAULT_MAX}: {claim4:?}");
    println!("phi limit {:.6}", claim4_limit_constant());
    let bad = (3..=64).map(|k| prop1_bound_check(k).unwrap()).filter(|c| !c.holds).count();
    println!("bracket [1/k, min(1, 5/k)] fails for {bad} of k in 3..=64; limit {:.6}", prop1_limit_constant());
}
