//! U(T) and u_ell over p, as CSV on stdout. Args: k ell (default 4 1).

use ajr::montecarlo::parse_grid;
use ajr::theory::{t_ell, u_ell, write_u_curves};

fn main() {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>().expect("integer"));
    let k = args.next().unwrap_or(4);
    let ell = args.next().unwrap_or(1);
    let ps = parse_grid("0.05:0.95:0.05").unwrap();
    write_u_curves(&mut std::io::stdout(), k, ell, &ps).unwrap();
    for p in [0.2, 0.5, 0.8] {
        match (t_ell(k, ell, p), u_ell(k, ell, p)) {
            (Some((t, _)), Some(u)) => eprintln!("p={p}: t_ell={t} u_ell={u:.6}"),
            _ => eprintln!("p={p}: p^ell < ell/k, u_ell undefined"),
        }
    }
}
