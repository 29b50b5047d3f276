//! Relations between a fiber-invariant submanifold of S^{2n+1} and its image
//! in CPⁿ, measured by finite differences.

use biharmonic_tori::cpn::lift_identities_check;
use biharmonic_tori::differential::sample_points;
use biharmonic_tori::sphere::{clifford_hypersurface_chart, flat_torus_chart};

fn main() {
    let torus = flat_torus_chart(&[0.6, 0.48, 0.64]).unwrap();
    for theta in sample_points(&torus, 3, 0) {
        let r = lift_identities_check(&torus, &theta).unwrap();
        println!("torus        max residual {:.2e}  B̃(ν,ν) = {:.2e}", r.max_residual(), r.nu_nu);
    }
    let hyper = clifford_hypersurface_chart(3, 1, 1, 0.6, 0.8).unwrap();
    for theta in sample_points(&hyper, 3, 0) {
        let r = lift_identities_check(&hyper, &theta).unwrap();
        println!(
            "hypersurface max residual {:.2e}  ‖B‖² = {:.6} ‖B̃‖² = {:.6}",
            r.max_residual(),
            r.norm_b_sq_down,
            r.norm_b_sq_up
        );
    }
}
