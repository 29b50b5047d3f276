//! Finite-difference bitension field of flat tori in S^{2n+1}: a biharmonic
//! torus, a perturbed one, and the lifted torus in S³.

use biharmonic_tori::differential::sample_points;
use biharmonic_tori::sphere::{bitension_sphere, flat_torus_chart};

fn max_tau(radii: &[f64]) -> f64 {
    let chart = flat_torus_chart(radii).unwrap();
    sample_points(&chart, 10, 0)
        .iter()
        .map(|t| bitension_sphere(&chart, t).unwrap().norm)
        .fold(0.0, f64::max)
}

fn normalized(b: &[f64]) -> Vec<f64> {
    let total: f64 = b.iter().sum();
    b.iter().map(|x| (x / total).sqrt()).collect()
}

fn main() {
    // (n,p,q) = (2,1,2): b = 1/2 once and 1/4 twice.
    let b = [0.5, 0.25, 0.25];
    println!("biharmonic        max|τ₂| = {:.3e}", max_tau(&normalized(&b)));

    let perturbed = [0.5 * 1.05, 0.25, 0.25];
    println!("b₁ + 5%           max|τ₂| = {:.3e}", max_tau(&normalized(&perturbed)));

    let s2 = 2f64.sqrt();
    let lift = [((2.0 + s2) / 4.0f64).sqrt(), ((2.0 - s2) / 4.0f64).sqrt()];
    println!("lift in S³        max|τ₂| = {:.3e}", max_tau(&lift));
}
