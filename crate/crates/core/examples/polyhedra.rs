//! Expected histograms and inner points against the constraint polyhedra.

use ajr::theory::polyhedron::{
    build_polyhedron, expectation_vector, inner_point, polyhedron_membership, row_slacks,
    MembershipMode, PolyhedronCase,
};

fn main() {
    let (m, k) = (5, 4);
    let p = 1.0 / k as f64;
    for case in [PolyhedronCase::Negative { ell: 1 }, PolyhedronCase::Positive] {
        let poly = build_polyhedron(m, k, p, case).unwrap();
        let e = expectation_vector(m, p).unwrap();
        let in_cone = polyhedron_membership(&e, &poly, MembershipMode::Cone, false).unwrap();
        println!("{case:?}: {} rows, expectation in cone: {in_cone}", poly.rows.len());
        for n in [100_000u64, 1_000_000] {
            let x: Vec<f64> = inner_point(m, k, p, n, case).unwrap().iter().map(|&v| v as f64).collect();
            let strict = polyhedron_membership(&x, &poly, MembershipMode::Full, true).unwrap();
            let slack = row_slacks(&x, &poly, MembershipMode::Full).unwrap();
            let min = slack.iter().copied().fold(f64::INFINITY, f64::min);
            println!("  n={n}: strict member {strict}, min slack {min:.3}");
        }
    }
}
