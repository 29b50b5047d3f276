//! `CPⁿ` as rank-one Hermitian projectors `P = zz*`.
//!
//! Hermitian matrices are flattened to real vectors `[Re P, Im P]` (row-major),
//! and the metric is `⟨X, Y⟩ = ½ Re tr(XY)`, i.e. half the Euclidean dot
//! product of the flattened vectors. With this scale the Hopf map from the
//! unit sphere is a Riemannian submersion and the holomorphic sectional
//! curvature is 4.

use nalgebra::{Complex, DMatrix, DVector};

use crate::differential::{
    orthonormalize, Ambient, Bitension, Chart, Geometry, GeomError, Vector,
};
use crate::sphere::{UnitSphere, STEP_CHANGE_LIMIT};

pub type C64 = Complex<f64>;
pub type CVector = DVector<C64>;
pub type CMatrix = DMatrix<C64>;

const I: C64 = Complex { re: 0.0, im: 1.0 };

/// Interleaved real coordinates `(Re z_0, Im z_0, …)` to a complex vector.
pub fn to_complex(x: &Vector) -> CVector {
    CVector::from_fn(x.len() / 2, |j, _| Complex::new(x[2 * j], x[2 * j + 1]))
}

pub fn to_real(z: &CVector) -> Vector {
    Vector::from_fn(2 * z.len(), |k, _| if k % 2 == 0 { z[k / 2].re } else { z[k / 2].im })
}

pub fn flatten(m: &CMatrix) -> Vector {
    let (rows, cols) = m.shape();
    let n2 = rows * cols;
    Vector::from_fn(2 * n2, |k, _| {
        let e = m[((k % n2) / cols, k % cols)];
        if k < n2 {
            e.re
        } else {
            e.im
        }
    })
}

pub fn unflatten(v: &Vector) -> CMatrix {
    let n2 = v.len() / 2;
    let n = (n2 as f64).sqrt().round() as usize;
    CMatrix::from_fn(n, n, |i, j| Complex::new(v[i * n + j], v[n2 + i * n + j]))
}

/// `⟨X, Y⟩ = ½ Re tr(XY)` for Hermitian `X`, `Y`.
pub fn inner(x: &CMatrix, y: &CMatrix) -> f64 {
    0.5 * x.iter().zip(y.iter()).map(|(a, b)| (a * b.conj()).re).sum::<f64>()
}

pub fn norm(x: &CMatrix) -> f64 {
    inner(x, x).max(0.0).sqrt()
}

/// Real inner product `Re(u* v)` on `C^{n+1} = R^{2n+2}`.
pub fn real_dot(u: &CVector, v: &CVector) -> f64 {
    u.dotc(v).re
}

/// A point of `CPⁿ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectorPoint {
    p: CMatrix,
}

impl ProjectorPoint {
    pub fn matrix(&self) -> &CMatrix {
        &self.p
    }

    pub fn n(&self) -> usize {
        self.p.nrows() - 1
    }

    /// A unit vector `z` with `P = zz*`, normalized so its largest entry is real.
    pub fn representative(&self) -> CVector {
        representative(&self.p)
    }
}

fn representative(p: &CMatrix) -> CVector {
    let k = (0..p.nrows())
        .max_by(|&a, &b| p[(a, a)].re.total_cmp(&p[(b, b)].re))
        .unwrap_or(0);
    let scale = p[(k, k)].re.max(f64::MIN_POSITIVE).sqrt();
    p.column(k).map(|c| c / scale)
}

fn outer(u: &CVector, v: &CVector) -> CMatrix {
    u * v.adjoint()
}

/// `π(z) = zz*`.
pub fn hopf_project(z: &CVector) -> Result<ProjectorPoint, GeomError> {
    let len = z.norm();
    if len == 0.0 {
        return Err(GeomError::Domain("zero vector".into()));
    }
    if (len - 1.0).abs() > 1e-12 {
        return Err(GeomError::Domain(format!("|z| = {len}, not 1")));
    }
    Ok(ProjectorPoint { p: outer(z, z) })
}

#[derive(Clone, Debug)]
pub struct HopfDifferential {
    /// `dπ(v) = vz* + zv*`.
    pub image: CMatrix,
    pub horizontal: CVector,
    /// Component along the fiber direction `iz`.
    pub vertical: CVector,
}

pub fn hopf_differential(z: &CVector, v: &CVector) -> Result<HopfDifferential, GeomError> {
    let radial = real_dot(z, v);
    if radial.abs() > 1e-10 {
        return Err(GeomError::NotTangent(format!("Re⟨z, v⟩ = {radial:.3e}")));
    }
    let iz = z * I;
    let vertical = &iz * Complex::from(real_dot(&iz, v));
    Ok(HopfDifferential {
        image: outer(v, z) + outer(z, v),
        horizontal: v - &vertical,
        vertical,
    })
}

/// Horizontal lift of a tangent vector `X` at `π(z)`.
pub fn horizontal_lift(z: &CVector, x: &CMatrix) -> CVector {
    x * z
}

/// `JX = i(PX - XP)`.
pub fn complex_structure(p: &CMatrix, x: &CMatrix) -> CMatrix {
    (p * x - x * p) * I
}

/// Orthogonal projection of a Hermitian `V` onto `T_P CPⁿ`:
/// `PV(1-P) + (1-P)VP`.
pub fn tangent_projection(p: &CMatrix, v: &CMatrix) -> CMatrix {
    let z = representative(p);
    let u = v * &z;
    let zu = z.dotc(&u);
    outer(&z, &u) + outer(&u, &z) - outer(&z, &z) * (zu * 2.0)
}

/// Space-form tensor of holomorphic sectional curvature 4:
/// `⟨Y,Z⟩X - ⟨X,Z⟩Y + ⟨JY,Z⟩JX - ⟨JX,Z⟩JY - 2⟨JX,Y⟩JZ`.
pub fn fs_curvature(p: &CMatrix, x: &CMatrix, y: &CMatrix, z: &CMatrix) -> CMatrix {
    let jx = complex_structure(p, x);
    let jy = complex_structure(p, y);
    let jz = complex_structure(p, z);
    x * Complex::from(inner(y, z)) - y * Complex::from(inner(x, z)) + &jx * Complex::from(inner(&jy, z))
        - &jy * Complex::from(inner(&jx, z))
        - jz * Complex::from(2.0 * inner(&jx, y))
}

/// Complex-orthonormal basis of `z^⊥`.
pub fn horizontal_basis(z: &CVector) -> Vec<CVector> {
    let dim = z.len();
    let mut basis: Vec<CVector> = Vec::with_capacity(dim - 1);
    let mut seen = vec![z.clone()];
    for k in 0..dim {
        let mut v = CVector::from_fn(dim, |i, _| if i == k { Complex::from(1.0) } else { Complex::from(0.0) });
        for w in &seen {
            let c = w.dotc(&v);
            v -= w * c;
        }
        let len = v.norm();
        if len > 1e-6 {
            v /= Complex::from(len);
            seen.push(v.clone());
            basis.push(v);
        }
        if basis.len() + 1 == dim {
            break;
        }
    }
    basis
}

/// Orthonormal real basis `dπ(u_k), dπ(iu_k)` of `T_P CPⁿ`.
pub fn tangent_basis(z: &CVector) -> Vec<CMatrix> {
    horizontal_basis(z)
        .into_iter()
        .flat_map(|u| {
            let iu = &u * I;
            [outer(&u, z) + outer(z, &u), outer(&iu, z) + outer(z, &iu)]
        })
        .collect()
}

/// `Ric(V, W) = Σ_α ⟨R(e_α, V)W, e_α⟩`.
pub fn ricci(p: &CMatrix, v: &CMatrix, w: &CMatrix) -> f64 {
    tangent_basis(&representative(p))
        .iter()
        .map(|e| inner(&fs_curvature(p, e, v, w), e))
        .sum()
}

/// `Σ_a R(e_a, H) e_a` over the given frame.
pub fn curvature_trace(p: &CMatrix, frame: &[CMatrix], h: &CMatrix) -> CMatrix {
    let n1 = p.nrows();
    frame
        .iter()
        .fold(CMatrix::zeros(n1, n1), |acc, e| acc + fs_curvature(p, e, h, e))
}

/// `⟨R(X,Y)Y, X⟩` from the closed-form tensor.
pub fn sectional_curvature(p: &CMatrix, x: &CMatrix, y: &CMatrix) -> f64 {
    let k = inner(&fs_curvature(p, x, y, y), x);
    k / (inner(x, x) * inner(y, y) - inner(x, y).powi(2))
}

// Sixth-order first-derivative stencil.
const D1: [(i32, f64); 6] = [
    (-3, -1.0 / 60.0),
    (-2, 9.0 / 60.0),
    (-1, -45.0 / 60.0),
    (1, 45.0 / 60.0),
    (2, -9.0 / 60.0),
    (3, 1.0 / 60.0),
];

/// `II(dπ(u), Y) = (D_{dπ(u)} T) Y`, differentiating the tangent projector
/// along `t ↦ π((z + tu)/|z + tu|)`.
pub fn projector_second_form_fd(z: &CVector, u: &CVector, y: &CMatrix, h: f64) -> CMatrix {
    let n1 = z.len();
    let mut acc = CMatrix::zeros(n1, n1);
    for (k, c) in D1 {
        let w = z + u * Complex::from(k as f64 * h);
        let w = &w / Complex::from(w.norm());
        acc += tangent_projection(&outer(&w, &w), y) * Complex::from(c);
    }
    acc / Complex::from(h)
}

/// Sectional curvature of the plane `dπ(u) ∧ dπ(w)` from the Gauss equation
/// of the projector embedding, with finite-difference second fundamental form.
pub fn sectional_curvature_fd(z: &CVector, u: &CVector, w: &CVector, h: f64) -> f64 {
    let x = outer(u, z) + outer(z, u);
    let y = outer(w, z) + outer(z, w);
    let ii_xx = projector_second_form_fd(z, u, &x, h);
    let ii_yy = projector_second_form_fd(z, w, &y, h);
    let ii_xy = projector_second_form_fd(z, u, &y, h);
    let num = inner(&ii_xx, &ii_yy) - inner(&ii_xy, &ii_xy);
    num / (inner(&x, &x) * inner(&y, &y) - inner(&x, &y).powi(2))
}

/// `CPⁿ` on flattened Hermitian matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComplexProjective {
    pub n: usize,
}

impl Ambient for ComplexProjective {
    fn flat_dim(&self) -> usize {
        2 * (self.n + 1) * (self.n + 1)
    }

    fn intrinsic_dim(&self) -> usize {
        2 * self.n
    }

    fn inner(&self, u: &Vector, v: &Vector) -> f64 {
        0.5 * u.dot(v)
    }

    fn project(&self, x: &Vector, v: &Vector) -> Vector {
        flatten(&tangent_projection(&unflatten(x), &unflatten(v)))
    }

    fn curvature(&self, x: &Vector, a: &Vector, b: &Vector, c: &Vector) -> Vector {
        flatten(&fs_curvature(&unflatten(x), &unflatten(a), &unflatten(b), &unflatten(c)))
    }
}

/// Image under `π` of a fiber-closed sphere chart, with the fiber coordinate
/// frozen at zero.
#[derive(Clone, Debug)]
pub struct QuotientChart<C> {
    base: C,
    fixed: usize,
    n: usize,
}

impl<C: Chart> QuotientChart<C> {
    pub fn base(&self) -> &C {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn fixed_coordinate(&self) -> usize {
        self.fixed
    }

    /// Base-chart coordinates of a quotient point.
    pub fn lift_coordinates(&self, theta: &[f64]) -> Vec<f64> {
        let mut full = theta.to_vec();
        full.insert(self.fixed, 0.0);
        full
    }

    /// Quotient coordinates of a base point (the fiber coordinate is dropped).
    pub fn drop_coordinate(&self, theta: &[f64]) -> Vec<f64> {
        let mut out = theta.to_vec();
        out.remove(self.fixed);
        out
    }

    pub fn ambient(&self) -> ComplexProjective {
        ComplexProjective { n: self.n }
    }
}

impl<C: Chart> Chart for QuotientChart<C> {
    fn dim(&self) -> usize {
        self.base.dim() - 1
    }

    fn eval(&self, theta: &[f64]) -> Vector {
        let z = to_complex(&self.base.eval(&self.lift_coordinates(theta)));
        flatten(&outer(&z, &z))
    }

    fn sample_box(&self) -> Vec<(f64, f64)> {
        let mut b = self.base.sample_box();
        b.remove(self.fixed);
        b
    }
}

/// Passes to the `S¹` quotient of a sphere chart that is a union of fibers.
pub fn cpn_chart<C: Chart>(base: C) -> Result<QuotientChart<C>, GeomError> {
    let (Some(dir), Some(fixed)) = (base.fiber_direction(), base.fiber_coordinate()) else {
        return Err(GeomError::FiberClosure("chart declares no fiber direction".into()));
    };
    let theta: Vec<f64> = base.sample_box().iter().map(|(lo, hi)| 0.5 * (lo + hi)).collect();
    let x = base.eval(&theta);
    let sphere = UnitSphere::for_flat_dim(x.len());
    let v = Geometry::new(&sphere, &base).first_derivative(&theta, &dir);
    let z = to_complex(&x);
    let image = hopf_differential(&z, &to_complex(&v))?.image;
    if norm(&image) > 1e-10 {
        return Err(GeomError::FiberClosure(format!("|dπ(fiber)| = {:.3e}", norm(&image))));
    }
    Ok(QuotientChart {
        base,
        fixed,
        n: sphere.n,
    })
}

/// `τ₂ = trace ∇dH - Σ_a R(e_a, H)e_a` in `CPⁿ`, with the step-halving check.
pub fn bitension_cpn<C: Chart>(chart: &QuotientChart<C>, theta: &[f64]) -> Result<Bitension, GeomError> {
    let ambient = chart.ambient();
    Geometry::new(&ambient, chart).bitension_checked(theta, STEP_CHANGE_LIMIT)
}

/// Residuals relating a fiber-closed `M̃ ⊂ S^{2n+1}` to `M = π(M̃) ⊂ CPⁿ`.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftReport {
    /// `|dπ(H̃) - H|`.
    pub mean_curvature_lift: f64,
    /// `‖B‖² - (‖B̃‖² - 2)` for hypersurfaces of `CPⁿ`.
    pub norm_relation: Option<f64>,
    /// `|B̃(ν, ν)|`.
    pub nu_nu: f64,
    /// `|2Σ_i B̃(f_i,ν)⟨B̃(f_i,ν),H̃⟩ + B̃(ν,ν)⟨B̃(ν,ν),H̃⟩ - 2H̃|`.
    pub correction: f64,
    /// `|dπ(Σ̃ - 2H̃) - Σ|` with `Σ = Σ_{ab} B_ab⟨B_ab, H⟩`.
    pub contraction_lift: f64,
    pub norm_b_sq_up: f64,
    pub norm_b_sq_down: f64,
    pub mean_curvature_sq: f64,
}

impl LiftReport {
    pub fn max_residual(&self) -> f64 {
        [
            self.mean_curvature_lift,
            self.norm_relation.unwrap_or(0.0).abs(),
            self.nu_nu,
            self.correction,
            self.contraction_lift,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Evaluates the lift identities at the base-chart point `theta` (its fiber
/// coordinate is reset to zero so it matches the quotient chart).
pub fn lift_identities_check<C: Chart + Clone>(chart: &C, theta: &[f64]) -> Result<LiftReport, GeomError> {
    let quotient = cpn_chart(chart.clone())?;
    let down_theta = quotient.drop_coordinate(theta);
    let up_theta = quotient.lift_coordinates(&down_theta);
    let w = chart.fiber_direction().expect("checked by cpn_chart");

    let sphere = UnitSphere::new(quotient.n());
    let up = Geometry::new(&sphere, chart);
    let forms_up = up.fundamental_forms(&up_theta)?;
    let h_up = &forms_up.mean_curvature;
    let sigma_up = forms_up.contraction(&sphere);

    let nu = up.first_derivative(&up_theta, &w);
    let mut columns = vec![(w.clone(), nu)];
    columns.extend(up.coordinate_partials(&up_theta));
    let split = orthonormalize(&sphere, &forms_up.point, columns, true)?;
    let b_nu_nu = up.normal_part(&forms_up.frame, &up.second_derivative(&up_theta, &w));
    let mut correction = &b_nu_nu * b_nu_nu.dot(h_up) - h_up * 2.0;
    for a in 1..split.dim() {
        let b = up.second_form_pair(&up_theta, &forms_up.frame, &split.coeff_row(a), &w);
        correction += &b * (2.0 * b.dot(h_up));
    }

    let cpn = quotient.ambient();
    let down = Geometry::new(&cpn, &quotient);
    let forms_down = down.fundamental_forms(&down_theta)?;
    let z = to_complex(&forms_up.point);
    let lift_image = |v: &Vector| -> Result<Vector, GeomError> {
        Ok(flatten(&hopf_differential(&z, &to_complex(v))?.image))
    };
    let h_image = lift_image(h_up)?;
    let mean_curvature_lift = cpn.norm(&(&h_image - &forms_down.mean_curvature));
    let sigma_image = lift_image(&(&sigma_up - h_up * 2.0))?;
    let contraction_lift = cpn.norm(&(&sigma_image - forms_down.contraction(&cpn)));
    let hypersurface = quotient.dim() + 1 == cpn.intrinsic_dim();

    Ok(LiftReport {
        mean_curvature_lift,
        norm_relation: hypersurface.then(|| forms_down.norm_b_sq - (forms_up.norm_b_sq - 2.0)),
        nu_nu: b_nu_nu.norm(),
        correction: correction.norm(),
        contraction_lift,
        norm_b_sq_up: forms_up.norm_b_sq,
        norm_b_sq_down: forms_down.norm_b_sq,
        mean_curvature_sq: h_up.norm_squared(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::differential::sample_points;
    use crate::sphere::{clifford_hypersurface_chart, flat_torus_chart};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> CVector {
        let v = CVector::from_fn(dim, |_, _| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let len = v.norm();
        v / Complex::from(len)
    }

    fn random_horizontal(rng: &mut ChaCha8Rng, z: &CVector) -> CVector {
        let v = random_unit(rng, z.len());
        let h = &v - z * z.dotc(&v);
        let len = h.norm();
        h / Complex::from(len)
    }

    #[test]
    fn projection_examples() {
        let e0 = CVector::from_fn(3, |i, _| Complex::from((i == 0) as u8 as f64));
        let p = hopf_project(&e0).unwrap();
        assert_eq!(p.matrix()[(0, 0)], Complex::from(1.0));
        assert_eq!(norm(p.matrix()), FRAC_1_SQRT_2);

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let z = random_unit(&mut rng, 4);
        let phase = Complex::from_polar(1.0, PI / 3.0);
        let a = hopf_project(&z).unwrap();
        let b = hopf_project(&(&z * phase)).unwrap();
        assert!((a.matrix() - b.matrix()).norm() < 1e-15);

        let half = CVector::from_element(2, Complex::from(FRAC_1_SQRT_2));
        let p = hopf_project(&half).unwrap();
        assert!(p.matrix().iter().all(|e| (e - Complex::from(0.5)).norm() < 1e-15));

        assert!(hopf_project(&CVector::zeros(3)).is_err());
    }

    #[test]
    fn projector_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..1000 {
            let dim = 1 + rng.gen_range(1..6);
            let z = random_unit(&mut rng, dim);
            let p = hopf_project(&z).unwrap().matrix().clone();
            assert!((&p * &p - &p).norm() < 1e-12);
            assert!((p.trace() - Complex::from(1.0)).norm() < 1e-12);
            assert!((&p - p.adjoint()).norm() < 1e-15);
        }
    }

    #[test]
    fn hopf_differential_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let z = random_unit(&mut rng, 4);
            let iz = &z * I;
            assert!(norm(&hopf_differential(&z, &iz).unwrap().image) < 1e-15);
            let u = random_horizontal(&mut rng, &z);
            let d = hopf_differential(&z, &u).unwrap();
            assert!((norm(&d.image) - 1.0).abs() < 1e-10);
            let mixed = hopf_differential(&z, &(&u + &iz * Complex::from(0.7))).unwrap();
            assert!(norm(&(&mixed.image - &d.image)) < 1e-14);
            assert!((&mixed.horizontal - &u).norm() < 1e-14);
            assert!((horizontal_lift(&z, &d.image) - &u).norm() < 1e-14);
        }
        let z = random_unit(&mut rng, 3);
        assert!(matches!(hopf_differential(&z, &z), Err(GeomError::NotTangent(_))));
    }

    #[test]
    fn complex_structure_is_isometric() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let z = random_unit(&mut rng, 5);
            let p = outer(&z, &z);
            let x = hopf_differential(&z, &random_horizontal(&mut rng, &z)).unwrap().image;
            let jx = complex_structure(&p, &x);
            assert!((norm(&jx) - norm(&x)).abs() < 1e-12);
            assert!(norm(&(complex_structure(&p, &jx) + &x)) < 1e-12);
            assert!(norm(&(tangent_projection(&p, &jx) - &jx)) < 1e-12);
        }
    }

    #[test]
    fn curvature_calibration() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..5 {
            let z = random_unit(&mut rng, n + 1);
            let p = outer(&z, &z);
            let u = random_horizontal(&mut rng, &z);
            let x = hopf_differential(&z, &u).unwrap().image;
            let jx = complex_structure(&p, &x);
            assert!((sectional_curvature(&p, &x, &jx) - 4.0).abs() < 1e-12);
            assert!(norm(&fs_curvature(&p, &x, &x, &jx)) < 1e-15);
            let iu = &u * I;
            assert!((sectional_curvature_fd(&z, &u, &iu, 1e-3) - 4.0).abs() < 1e-5);
            let basis = tangent_basis(&z);
            for v in &basis {
                for w in &basis {
                    let expected = 2.0 * (n as f64 + 1.0) * inner(v, w);
                    assert!((ricci(&p, v, w) - expected).abs() < 1e-8);
                }
            }
            if n >= 2 {
                let hb = horizontal_basis(&z);
                let y = hopf_differential(&z, &hb[1]).unwrap().image;
                let x = hopf_differential(&z, &hb[0]).unwrap().image;
                assert!((sectional_curvature(&p, &x, &y) - 1.0).abs() < 1e-8);
                assert!((sectional_curvature_fd(&z, &hb[0], &hb[1], 1e-3) - 1.0).abs() < 1e-5);
            }
        }
    }

    #[test]
    fn curvature_traces() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for n in 1..6usize {
            let z = random_unit(&mut rng, n + 1);
            let p = outer(&z, &z);
            let hb = horizontal_basis(&z);
            let lag: Vec<CMatrix> = hb.iter().map(|u| outer(u, &z) + outer(&z, u)).collect();
            let normals: Vec<CMatrix> = hb.iter().map(|u| complex_structure(&p, &(outer(u, &z) + outer(&z, u)))).collect();
            let h = normals
                .iter()
                .enumerate()
                .fold(CMatrix::zeros(n + 1, n + 1), |acc, (k, v)| acc + v * Complex::from(k as f64 + 0.5));
            let trace = curvature_trace(&p, &lag, &h);
            assert!(norm(&(trace + &h * Complex::from(n as f64 + 3.0))) < 1e-8);

            let basis = tangent_basis(&z);
            let nu = basis[1].clone();
            let frame: Vec<CMatrix> = basis.iter().enumerate().filter(|(k, _)| *k != 1).map(|(_, e)| e.clone()).collect();
            let h = &nu * Complex::from(1.7);
            let trace = curvature_trace(&p, &frame, &h);
            assert!(norm(&(trace + &h * Complex::from(2.0 * (n as f64 + 1.0)))) < 1e-8);
        }
    }

    #[test]
    fn quotient_charts() {
        let t = flat_torus_chart(&[FRAC_1_SQRT_2, 0.5, 0.5]).unwrap();
        let q = cpn_chart(t).unwrap();
        assert_eq!(q.dim(), 2);
        let c = clifford_hypersurface_chart(1, 0, 0, 0.6, 0.8).unwrap();
        let q = cpn_chart(c).unwrap();
        assert_eq!(q.dim(), 1);
        let c = clifford_hypersurface_chart(3, 1, 1, 0.6, 0.8).unwrap();
        assert_eq!(cpn_chart(c).unwrap().dim(), 5);
        let x = q.eval(&[0.3]);
        let p = unflatten(&x);
        assert!((&p * &p - &p).norm() < 1e-14);
    }

    #[test]
    fn minimal_images_have_zero_bitension() {
        let t = flat_torus_chart(&[0.2f64.sqrt(); 5]).unwrap();
        let q = cpn_chart(t).unwrap();
        let bt = bitension_cpn(&q, &[0.3, 1.1, 2.0, 4.0]).unwrap();
        assert!(bt.norm < 1e-4, "{}", bt.norm);

        // Lawson radius r² = (2p+1)/(2n).
        let (n, p, q) = (3, 1, 1);
        let r2 = (2 * p + 1) as f64 / (2 * n) as f64;
        let c = clifford_hypersurface_chart(n, p, q, r2.sqrt(), (1.0 - r2).sqrt()).unwrap();
        let qc = cpn_chart(c).unwrap();
        let theta = sample_points(&qc, 1, 9).remove(0);
        let bt = bitension_cpn(&qc, &theta).unwrap();
        assert!(bt.norm < 1e-4, "{}", bt.norm);
    }

    #[test]
    fn lift_identities() {
        let c = clifford_hypersurface_chart(2, 0, 1, FRAC_1_SQRT_2, FRAC_1_SQRT_2).unwrap();
        let report = lift_identities_check(&c, &[0.4, 0.6, 1.0, 2.0]).unwrap();
        assert!(report.mean_curvature_lift < 1e-6, "{report:?}");
        assert!(report.norm_relation.unwrap().abs() < 1e-6, "{report:?}");
        assert!(report.correction < 1e-6, "{report:?}");
        assert!(report.contraction_lift < 1e-6, "{report:?}");

        let t = flat_torus_chart(&[FRAC_1_SQRT_2, 0.5, 0.5]).unwrap();
        let report = lift_identities_check(&t, &[0.3, 1.2, 2.5]).unwrap();
        assert!(report.nu_nu < 1e-8, "{report:?}");
        assert!(report.correction < 1e-6, "{report:?}");
        assert!(report.mean_curvature_lift < 1e-6, "{report:?}");
        assert!(report.contraction_lift < 1e-6, "{report:?}");
        assert!(report.norm_relation.is_none());
    }
}
