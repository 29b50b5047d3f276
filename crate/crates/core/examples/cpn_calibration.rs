//! Checks of the projector model of CPⁿ: curvature, Einstein constant and
//! the Hopf submersion.

use biharmonic_tori::cpn::{
    hopf_differential, hopf_project, horizontal_basis, ricci, sectional_curvature, sectional_curvature_fd,
    tangent_basis, CVector, C64,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> CVector {
    let z = CVector::from_fn(n + 1, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let len = z.norm();
    z / C64::new(len, 0.0)
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let n = 3;
    let z = random_unit(&mut rng, n);
    let p = hopf_project(&z).unwrap();
    let basis = tangent_basis(&z);

    let x = &basis[0];
    let jx = &basis[1];
    println!("K(X, JX)      = {:.15}", sectional_curvature(p.matrix(), x, jx));
    println!("K(X, Y) real  = {:.15}", sectional_curvature(p.matrix(), &basis[0], &basis[2]));
    println!("Ric(X, X)     = {:.15}  (2(n+1) = {})", ricci(p.matrix(), x, x), 2 * (n + 1));

    let h = horizontal_basis(&z);
    let u = &h[0];
    let iu = u * C64::new(0.0, 1.0);
    println!("K by FD       = {:.10}", sectional_curvature_fd(&z, u, &iu, 1e-3));

    let image = hopf_differential(&z, u).unwrap();
    println!("|dπ(u)|       = {:.15}", biharmonic_tori::cpn::norm(&image.image));
}
