//! Regimes predicted for a few (k, m, p).

use ajr::theory::{classify_lemma, classify_theorem, CLASSIFY_TOL};

fn main() {
    for (k, m) in [(3, 6), (4, 10), (6, 12)] {
        for p in [0.1, 1.0 / k as f64, 0.4, 0.6, 0.9] {
            let t = classify_theorem(k, p, CLASSIFY_TOL).unwrap();
            let l = classify_lemma(k, m, p, CLASSIFY_TOL).unwrap();
            println!("k={k} m={m} p={p:.4}: theorem {} lemma {} (ell={:?})", t.regime, l.regime, l.ell);
        }
    }
}
