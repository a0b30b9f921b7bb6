//! The square instance: every committee is core stable, none provides AJR.

use ajr::axioms::{ajr_committee_count, evaluate_all, find_ajr_witness};
use ajr::fixtures::fig1;

fn main() {
    let profile = fig1();
    print!("{profile}");
    for (w, report) in evaluate_all(&profile) {
        let witness = find_ajr_witness(&profile, &w).expect("no committee provides AJR here");
        println!(
            "{w}: core={} ejr={} witness ell={} on {} (average {} over {} voters)",
            report.core, report.ejr, witness.ell, witness.candidates, witness.average_utility, witness.group_size
        );
    }
    let (count, _) = ajr_committee_count(&profile);
    println!("committees providing AJR: {count}");
}
