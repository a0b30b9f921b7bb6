//! On the k x k grid only the all-rows and all-columns committees provide AJR.

use ajr::axioms::{ajr_committee_count, evaluate_all};
use ajr::fixtures::example1;

fn main() {
    let k: usize = std::env::args().nth(1).map_or(3, |s| s.parse().expect("k"));
    let profile = example1(k);
    for (w, report) in evaluate_all(&profile).into_iter().filter(|(_, r)| r.ajr) {
        println!("{w} provides AJR (ejr={})", report.ejr);
    }
    let (count, first) = ajr_committee_count(&profile);
    println!("k={k}: {count} committees, first {}", first.map_or("none".into(), |w| w.to_string()));
}
