//! Exact arithmetic in Q(√d): normalization, field operations, quadratic
//! roots and correctly rounded decimals.

use biharmonic_tori::surd::{quad_solve, rat, sqrt_rational, QuadSurd};

fn main() {
    // (11 - √65)/28, the p = 1 squared radius of the n = 4 Lagrangian torus.
    let r2 = QuadSurd::new(rat(11, 28), rat(-1, 28), 65);
    println!("r²        = {r2}  ≈ {}", r2.to_scientific(15));
    println!("conjugate = {}", r2.conjugate());
    println!("norm      = {}", r2.norm());
    println!("1/r²      = {}", r2.recip().unwrap());

    // √8 normalizes to 2√2.
    let root8 = sqrt_rational(&rat(8, 1)).unwrap();
    println!("√8        = {root8}");

    // Mixing radicands is an error, never a silent float.
    let mixed = QuadSurd::sqrt_of(2).checked_add(&QuadSurd::sqrt_of(3));
    println!("√2 + √3   -> {}", mixed.unwrap_err());

    // x² - 14x + 9 = 0: x = (s/r)² for the (p,q) = (0,4) hypersurface in CP⁵.
    let roots = quad_solve(&QuadSurd::one(), &QuadSurd::from_integer(-14), &QuadSurd::from_integer(9)).unwrap();
    for x in &roots.roots {
        println!("x = {:<10} ≈ {}", x.to_string(), x.eval(20));
    }
    println!("discriminant = {:?}", roots.discriminant.map(|d| d.to_string()));
}
