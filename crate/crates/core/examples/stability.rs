//! Second variation of the bienergy along H for every proper Lagrangian
//! torus with 2 <= n <= 6.

use biharmonic_tori::families::{enumerate_solutions, Family};
use biharmonic_tori::verifier::{stability_report, VerifyConfig};

fn main() {
    for sol in enumerate_solutions(Family::CpnLagrangianTorus, 6).unwrap() {
        if sol.params.n < 2 {
            continue;
        }
        let r = stability_report(&sol, &VerifyConfig::default()).unwrap();
        println!(
            "n={} p={} q={} {:<5}  closed {:>14.6}  numeric {:>14.6}  rel {:.1e}  {}",
            sol.params.n,
            sol.params.p,
            sol.params.q,
            sol.branch.slug(),
            r.closed_form_value,
            r.numeric_value,
            r.relative_agreement,
            r.sign_verdict.slug()
        );
    }
}
