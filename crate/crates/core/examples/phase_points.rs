//! Transition points p1* = 1/k and p2* for a range of committee sizes.

use ajr::theory::{PhaseReport, SOLVER_TOL};

fn main() {
    println!("k,p1,p0,p2");
    for k in [2, 3, 4, 5, 6, 8, 10, 16, 32, 64] {
        let r = PhaseReport::new(k, SOLVER_TOL).unwrap();
        println!("{k},{:.6},{:.6},{:.6}", r.p1_star, r.p0, r.p2_star);
    }
}
