//! Rebuilds the two printed radius tables and adjudicates the hypersurface
//! one with the CPⁿ finite-difference oracle.

use biharmonic_tori::families::{reconstruct_paper_table, TableId};
use biharmonic_tori::verifier::{adjudicate_hypersurface_table, VerifyConfig};

fn main() {
    for id in [TableId::LagrangianN4, TableId::HypersurfaceN5] {
        let table = reconstruct_paper_table(id).unwrap();
        println!("== {} : {}/{} rows reproduced by the solver", id.slug(), table.solver_matches(), table.rows.len());
        for row in &table.rows {
            println!(
                "  (p,q)=({},{})  r²={:<16} s²={:<16} solver={} variant={}",
                row.params.p,
                row.params.q,
                row.r_squared.to_string(),
                row.s_squared.to_string(),
                row.solver_match(),
                row.variant_match()
            );
        }
    }

    let report = adjudicate_hypersurface_table(5, &VerifyConfig::default()).unwrap();
    println!("== adjudication, n = 5");
    for row in &report.rows {
        println!(
            "  ({},{}) printed: ‖B̃‖²-14 = {:+.3}  |τ₂| = {:.2e}   equation: r²={}  |τ₂| = {:.2e}  -> {}",
            row.row.params.p,
            row.row.params.q,
            row.equation_one_residual,
            row.paper_oracle.max_tau,
            row.equation_one_solution.squared_radii[0].value,
            row.equation_one_oracle.max_tau,
            row.endorsed.slug()
        );
    }
}
