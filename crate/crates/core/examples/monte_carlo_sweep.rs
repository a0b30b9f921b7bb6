//! Empirical AJR-existence frequency across p, CSV on stdout.

use ajr::election::ElectionSpec;
use ajr::montecarlo::{parse_grid, sweep};

fn main() {
    let spec = ElectionSpec::new(3000, 6, 3).unwrap();
    let ps = parse_grid("0.1:0.6:0.05").unwrap();
    sweep(spec, &ps, 200, 42, &mut std::io::stdout()).unwrap();
}
