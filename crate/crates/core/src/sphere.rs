//! Charts and geometry in the unit sphere `S^{2n+1} ⊂ C^{n+1} = R^{2n+2}`.
//!
//! Complex coordinate `z_j` occupies the real slots `2j` and `2j+1`.

use std::f64::consts::TAU;

use crate::differential::{Ambient, Bitension, Chart, FundamentalForms, Geometry, GeomError, Vector};

/// Step-halving limit applied by the sphere and `CPⁿ` oracles.
pub const STEP_CHANGE_LIMIT: f64 = 1e-3;

/// `S^{2n+1}` with its round metric.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnitSphere {
    pub n: usize,
}

impl UnitSphere {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    /// The sphere whose flat space has the given dimension `2n+2`.
    pub fn for_flat_dim(flat: usize) -> Self {
        Self { n: flat / 2 - 1 }
    }
}

impl Ambient for UnitSphere {
    fn flat_dim(&self) -> usize {
        2 * self.n + 2
    }

    fn intrinsic_dim(&self) -> usize {
        2 * self.n + 1
    }

    fn inner(&self, u: &Vector, v: &Vector) -> f64 {
        u.dot(v)
    }

    fn project(&self, x: &Vector, v: &Vector) -> Vector {
        v - x * x.dot(v)
    }

    fn curvature(&self, _x: &Vector, a: &Vector, b: &Vector, c: &Vector) -> Vector {
        a * b.dot(c) - b * a.dot(c)
    }
}

/// Multiplication by `i` on `C^{n+1}`.
pub fn complex_structure(v: &Vector) -> Vector {
    Vector::from_fn(v.len(), |k, _| if k % 2 == 0 { -v[k + 1] } else { v[k - 1] })
}

fn check_unit(sq: f64, what: &str) -> Result<(), GeomError> {
    if (sq - 1.0).abs() > 1e-12 {
        return Err(GeomError::Domain(format!("{what} squares sum to {sq}, not 1")));
    }
    Ok(())
}

/// `T^{n+1} = {|z_j| = a_j}` with angles `θ_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct FlatTorusChart {
    radii: Vec<f64>,
}

pub fn flat_torus_chart(radii: &[f64]) -> Result<FlatTorusChart, GeomError> {
    if radii.is_empty() {
        return Err(GeomError::Domain("no radii".into()));
    }
    if let Some(a) = radii.iter().find(|&&a| !(a > 0.0)) {
        return Err(GeomError::Domain(format!("radius {a} is not positive")));
    }
    check_unit(radii.iter().map(|a| a * a).sum(), "radii")?;
    Ok(FlatTorusChart {
        radii: radii.to_vec(),
    })
}

impl FlatTorusChart {
    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn n(&self) -> usize {
        self.radii.len() - 1
    }
}

impl Chart for FlatTorusChart {
    fn dim(&self) -> usize {
        self.radii.len()
    }

    fn eval(&self, theta: &[f64]) -> Vector {
        let mut x = Vector::zeros(2 * self.radii.len());
        for (j, (a, t)) in self.radii.iter().zip(theta).enumerate() {
            x[2 * j] = a * t.cos();
            x[2 * j + 1] = a * t.sin();
        }
        x
    }

    fn sample_box(&self) -> Vec<(f64, f64)> {
        vec![(0.0, TAU); self.radii.len()]
    }

    fn fiber_direction(&self) -> Option<Vec<f64>> {
        Some(vec![1.0; self.radii.len()])
    }

    fn fiber_coordinate(&self) -> Option<usize> {
        Some(self.radii.len() - 1)
    }
}

/// Half-width of the sampled window around the balanced orthant point.
const ORTHANT_HALF_WIDTH: f64 = 0.25;

/// Modulus angles at which all `k+1` moduli equal `1/√(k+1)`.
fn balanced_angles(k: usize) -> Vec<f64> {
    (0..k).map(|i| (1.0 / ((k + 1 - i) as f64).sqrt()).acos()).collect()
}

fn orthant_moduli(angles: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(angles.len() + 1);
    let mut prefix = 1.0;
    for b in angles {
        out.push(prefix * b.cos());
        prefix *= b.sin();
    }
    out.push(prefix);
    out
}

/// `M_{p,q}(r,s) = S^{2p+1}(r) × S^{2q+1}(s)`, a hypersurface of `S^{2n+1}`
/// with `n = p + q + 1`.
///
/// Coordinates: `p` modulus angles and `p+1` phases of the first factor, then
/// `q` modulus angles and `q+1` phases of the second.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordHypersurfaceChart {
    pub p: usize,
    pub q: usize,
    pub r: f64,
    pub s: f64,
}

pub fn clifford_hypersurface_chart(
    n: usize,
    p: usize,
    q: usize,
    r: f64,
    s: f64,
) -> Result<CliffordHypersurfaceChart, GeomError> {
    if p + q + 1 != n {
        return Err(GeomError::Domain(format!("p + q = {} but n - 1 = {}", p + q, n as i64 - 1)));
    }
    if !(r > 0.0 && s > 0.0) {
        return Err(GeomError::Domain("r and s must be positive".into()));
    }
    check_unit(r * r + s * s, "r, s")?;
    Ok(CliffordHypersurfaceChart { p, q, r, s })
}

impl CliffordHypersurfaceChart {
    pub fn n(&self) -> usize {
        self.p + self.q + 1
    }

    fn factor(&self, coords: &[f64], k: usize, radius: f64, out: &mut Vec<f64>) {
        let moduli = orthant_moduli(&coords[..k]);
        for (rho, alpha) in moduli.iter().zip(&coords[k..]) {
            out.push(radius * rho * alpha.cos());
            out.push(radius * rho * alpha.sin());
        }
    }

    /// Modulus angles stay near the balanced point so no modulus gets small;
    /// phases range over the full circle.
    fn factor_box(k: usize) -> impl Iterator<Item = (f64, f64)> {
        balanced_angles(k)
            .into_iter()
            .map(|b| (b - ORTHANT_HALF_WIDTH, b + ORTHANT_HALF_WIDTH))
            .chain(std::iter::repeat((0.0, TAU)).take(k + 1))
    }

    /// Closed-form principal curvatures for the normal `(-s·u, r·v)`.
    pub fn principal_curvatures(&self) -> Vec<f64> {
        let mut out = vec![self.s / self.r; 2 * self.p + 1];
        out.extend(std::iter::repeat(-self.r / self.s).take(2 * self.q + 1));
        out
    }
}

impl Chart for CliffordHypersurfaceChart {
    fn dim(&self) -> usize {
        2 * self.n()
    }

    fn eval(&self, theta: &[f64]) -> Vector {
        let split = 2 * self.p + 1;
        let mut out = Vec::with_capacity(2 * self.n() + 2);
        self.factor(&theta[..split], self.p, self.r, &mut out);
        self.factor(&theta[split..], self.q, self.s, &mut out);
        Vector::from_vec(out)
    }

    fn sample_box(&self) -> Vec<(f64, f64)> {
        Self::factor_box(self.p).chain(Self::factor_box(self.q)).collect()
    }

    fn fiber_direction(&self) -> Option<Vec<f64>> {
        let mut dir = vec![0.0; self.p];
        dir.extend(vec![1.0; self.p + 1]);
        dir.extend(vec![0.0; self.q]);
        dir.extend(vec![1.0; self.q + 1]);
        Some(dir)
    }

    fn fiber_coordinate(&self) -> Option<usize> {
        Some(self.dim() - 1)
    }

    fn normal_hint(&self, theta: &[f64]) -> Option<Vector> {
        let x = self.eval(theta);
        let split = 2 * (self.p + 1);
        Some(Vector::from_fn(x.len(), |k, _| {
            if k < split {
                -x[k] * self.s / self.r
            } else {
                x[k] * self.r / self.s
            }
        }))
    }
}

/// The totally geodesic `S² ⊂ S³` (last coordinate zero).
#[derive(Clone, Copy, Debug, Default)]
pub struct GreatSphereChart;

impl Chart for GreatSphereChart {
    fn dim(&self) -> usize {
        2
    }

    fn eval(&self, t: &[f64]) -> Vector {
        Vector::from_vec(vec![t[0].cos() * t[1].cos(), t[0].cos() * t[1].sin(), t[0].sin(), 0.0])
    }

    fn sample_box(&self) -> Vec<(f64, f64)> {
        vec![(-1.2, 1.2), (0.0, TAU)]
    }
}

fn sphere_of<C: Chart + ?Sized>(chart: &C) -> UnitSphere {
    UnitSphere::for_flat_dim(chart.eval(&vec![0.0; chart.dim()]).len())
}

/// Finite-difference fundamental forms inside the unit sphere.
pub fn fundamental_forms<C: Chart + ?Sized>(chart: &C, theta: &[f64]) -> Result<FundamentalForms, GeomError> {
    let sphere = sphere_of(chart);
    Geometry::new(&sphere, chart).fundamental_forms(theta)
}

/// `τ₂ = trace ∇dH + mH` by finite differences, with the step-halving check.
pub fn bitension_sphere<C: Chart + ?Sized>(chart: &C, theta: &[f64]) -> Result<Bitension, GeomError> {
    let sphere = sphere_of(chart);
    Geometry::new(&sphere, chart).bitension_checked(theta, STEP_CHANGE_LIMIT)
}

/// `max_a |∇⊥_{e_a} H|` over an orthonormal frame.
pub fn parallel_mean_curvature_check<C: Chart + ?Sized>(chart: &C, theta: &[f64]) -> Result<f64, GeomError> {
    let sphere = sphere_of(chart);
    Geometry::new(&sphere, chart).normal_derivative_of_h(theta)
}

/// Closed-form geometry of a flat torus.
#[derive(Clone, Debug)]
pub struct AnalyticTorusForms {
    pub point: Vector,
    /// `e_j = i·x_j`.
    pub frame: Vec<Vector>,
    /// Diagonal entries `B_jj = -x_j/a_j + x`; off-diagonal entries vanish.
    pub second_form: Vec<Vector>,
    pub mean_curvature: Vector,
    pub norm_b_sq: f64,
    /// `d = Σ 1/a_j²`.
    pub d: f64,
    /// `Σ_{jk} B_jk ⟨B_jk, H⟩`.
    pub contraction: Vector,
    /// `Σ_j (a_j d - 1/a_j³) x_j - (n+1) H`.
    pub contraction_closed_form: Vector,
}

pub fn analytic_flat_torus_forms(radii: &[f64], theta: &[f64]) -> Result<AnalyticTorusForms, GeomError> {
    let chart = flat_torus_chart(radii)?;
    let dim = 2 * radii.len();
    let np1 = radii.len() as f64;
    let point = chart.eval(theta);
    let unit: Vec<Vector> = theta
        .iter()
        .enumerate()
        .map(|(j, t)| {
            let mut v = Vector::zeros(dim);
            v[2 * j] = t.cos();
            v[2 * j + 1] = t.sin();
            v
        })
        .collect();
    let frame = unit.iter().map(complex_structure).collect();
    let second_form: Vec<Vector> = unit
        .iter()
        .zip(radii)
        .map(|(xj, a)| &point - xj / *a)
        .collect();
    let mut mean_curvature = Vector::zeros(dim);
    for (xj, a) in unit.iter().zip(radii) {
        mean_curvature += xj * (np1 * a - 1.0 / a);
    }
    let d: f64 = radii.iter().map(|a| 1.0 / (a * a)).sum();
    let mut contraction = Vector::zeros(dim);
    for b in &second_form {
        contraction += b * b.dot(&mean_curvature);
    }
    let mut contraction_closed_form = -&mean_curvature * np1;
    for (xj, a) in unit.iter().zip(radii) {
        contraction_closed_form += xj * (a * d - 1.0 / (a * a * a));
    }
    Ok(AnalyticTorusForms {
        point,
        frame,
        norm_b_sq: second_form.iter().map(|b| b.norm_squared()).sum(),
        second_form,
        mean_curvature,
        d,
        contraction,
        contraction_closed_form,
    })
}
