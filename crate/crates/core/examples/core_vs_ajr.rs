//! AJR does not imply core: {x1..x4} provides AJR but six voters block it.

use ajr::axioms::{evaluate, find_blocking_coalition, pav_committee, proportionality_profile};
use ajr::election::Committee;
use ajr::fixtures::{core_example, X1, X2, X3, X4};

fn main() {
    let profile = core_example();
    let w = Committee::from_indices([X1, X2, X3, X4], profile.spec()).unwrap();
    println!("{}", evaluate(&profile, &w));
    let block = find_blocking_coalition(&profile, &w).expect("blocked");
    println!("blocked by {} voters who prefer {}", block.improvers, block.deviation);
    let levels: Vec<String> = proportionality_profile(&profile, &w)
        .iter()
        .map(|v| v.map_or("-".into(), |r| r.to_string()))
        .collect();
    println!("min average satisfaction per ell: {}", levels.join(" "));
    let pav = pav_committee(&profile);
    println!("PAV picks {pav}: core={}", evaluate(&profile, &pav).core);
}
