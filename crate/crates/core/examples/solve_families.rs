//! Every proper biharmonic radius configuration of the three families for
//! small n, with exact surd values.
//!
//! ```bash
//! cargo run --example solve_families -- 5
//! ```

use biharmonic_tori::families::{enumerate_solutions, Family};

fn main() {
    let n_max: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    for family in Family::ALL {
        println!("== {family} (n <= {n_max})");
        for sol in enumerate_solutions(family, n_max).unwrap() {
            let radii: Vec<String> = sol
                .squared_radii
                .iter()
                .map(|e| format!("{}²={} (x{})", e.label, e.value, e.multiplicity))
                .collect();
            println!(
                "n={} p={} q={} {:<6} {}",
                sol.params.n,
                sol.params.p,
                sol.params.q,
                sol.branch.slug(),
                radii.join("  ")
            );
        }
    }
}
