//! Finite-difference extrinsic geometry of parametrized submanifolds.
//!
//! A [`Chart`] maps angles `θ ∈ Rᵐ` into the flat space carrying an
//! [`Ambient`] manifold (the unit sphere in `R^{2n+2}`, or the projector model
//! of `CPⁿ` inside Hermitian matrices). Covariant derivatives of the ambient
//! are Euclidean derivatives followed by tangential projection, so everything
//! here is plain linear algebra on top of central differences.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub type Vector = DVector<f64>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("singular chart: {0}")]
    SingularChart(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("finite-difference step {0} underflows")]
    StepUnderflow(f64),
    #[error("step halving changed the bitension by {change:.3e} (limit {limit:.1e})")]
    StepConsistency { change: f64, limit: f64 },
    #[error("not tangent: {0}")]
    NotTangent(String),
    #[error("chart is not closed under the fiber action: {0}")]
    FiberClosure(String),
}

/// A Riemannian manifold isometrically embedded in a flat real vector space.
pub trait Ambient {
    fn flat_dim(&self) -> usize;
    fn intrinsic_dim(&self) -> usize;
    fn inner(&self, u: &Vector, v: &Vector) -> f64;
    /// Orthogonal projection onto the tangent space at `x`.
    fn project(&self, x: &Vector, v: &Vector) -> Vector;
    /// Curvature tensor `R(a, b)c` at `x`.
    fn curvature(&self, x: &Vector, a: &Vector, b: &Vector, c: &Vector) -> Vector;

    fn norm(&self, v: &Vector) -> f64 {
        self.inner(v, v).max(0.0).sqrt()
    }
}

/// A smooth parametrization of a submanifold.
pub trait Chart {
    fn dim(&self) -> usize;
    fn eval(&self, theta: &[f64]) -> Vector;
    /// Interior box that sampling draws from.
    fn sample_box(&self) -> Vec<(f64, f64)>;
    /// Chart direction generating the Hopf fiber `x ↦ e^{it}x`, at unit speed.
    fn fiber_direction(&self) -> Option<Vec<f64>> {
        None
    }
    /// Coordinate fixed to zero when passing to the `S¹` quotient.
    fn fiber_coordinate(&self) -> Option<usize> {
        None
    }
    /// A vector whose normal component fixes the unit-normal orientation.
    fn normal_hint(&self, _theta: &[f64]) -> Option<Vector> {
        None
    }
}

impl<C: Chart + ?Sized> Chart for &C {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn eval(&self, theta: &[f64]) -> Vector {
        (**self).eval(theta)
    }
    fn sample_box(&self) -> Vec<(f64, f64)> {
        (**self).sample_box()
    }
    fn fiber_direction(&self) -> Option<Vec<f64>> {
        (**self).fiber_direction()
    }
    fn fiber_coordinate(&self) -> Option<usize> {
        (**self).fiber_coordinate()
    }
    fn normal_hint(&self, theta: &[f64]) -> Option<Vector> {
        (**self).normal_hint(theta)
    }
}

/// Seeded uniform samples from the chart's interior box.
pub fn sample_points<C: Chart + ?Sized>(chart: &C, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bounds = chart.sample_box();
    (0..count)
        .map(|_| bounds.iter().map(|&(lo, hi)| rng.gen_range(lo..hi)).collect())
        .collect()
}

/// Finite-difference steps: `inner` for derivatives of the immersion,
/// `outer` for the nested derivatives of the mean curvature field.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Steps {
    pub inner: f64,
    pub outer: f64,
}

impl Default for Steps {
    fn default() -> Self {
        Self {
            inner: 2e-2,
            outer: 5e-2,
        }
    }
}

impl Steps {
    pub fn halved(self) -> Self {
        Self {
            inner: self.inner / 2.0,
            outer: self.outer / 2.0,
        }
    }

    fn check(self) -> Result<(), GeomError> {
        for h in [self.inner, self.outer] {
            if !(h > 1e-8) {
                return Err(GeomError::StepUnderflow(h));
            }
        }
        Ok(())
    }
}

// Sixth-order central stencils.
const D1: [(i32, f64); 6] = [
    (-3, -1.0 / 60.0),
    (-2, 9.0 / 60.0),
    (-1, -45.0 / 60.0),
    (1, 45.0 / 60.0),
    (2, -9.0 / 60.0),
    (3, 1.0 / 60.0),
];
const D2: [(i32, f64); 7] = [
    (-3, 2.0 / 180.0),
    (-2, -27.0 / 180.0),
    (-1, 270.0 / 180.0),
    (0, -490.0 / 180.0),
    (1, 270.0 / 180.0),
    (2, -27.0 / 180.0),
    (3, 2.0 / 180.0),
];

fn shifted(theta: &[f64], dir: &[f64], t: f64) -> Vec<f64> {
    theta.iter().zip(dir).map(|(a, d)| a + t * d).collect()
}

/// Splits `dir` into a unit chart direction and its length, so that steps
/// are taken at a fixed size in chart coordinates.
fn unit_direction(dir: &[f64]) -> (Vec<f64>, f64) {
    let len = dir.iter().map(|d| d * d).sum::<f64>().sqrt();
    if len == 0.0 {
        return (dir.to_vec(), 0.0);
    }
    (dir.iter().map(|d| d / len).collect(), len)
}

/// Orthonormal frame at a point, with `e_a = Σ_i coeffs[(a, i)] ∂_i`.
#[derive(Clone, Debug)]
pub struct Frame {
    pub point: Vector,
    pub coeffs: DMatrix<f64>,
    pub vectors: Vec<Vector>,
}

impl Frame {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn coeff_row(&self, a: usize) -> Vec<f64> {
        self.coeffs.row(a).iter().copied().collect()
    }
}

/// Modified Gram–Schmidt on `(chart coefficients, ambient vector)` columns
/// in the given order. Dependent columns are dropped when `skip_dependent`,
/// otherwise they raise [`GeomError::SingularChart`].
pub fn orthonormalize<A: Ambient + ?Sized>(
    ambient: &A,
    point: &Vector,
    columns: Vec<(Vec<f64>, Vector)>,
    skip_dependent: bool,
) -> Result<Frame, GeomError> {
    let m = columns.first().map(|c| c.0.len()).unwrap_or(0);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut vectors: Vec<Vector> = Vec::new();
    for (i, (mut coeff, mut v)) in columns.into_iter().enumerate() {
        let scale = ambient.norm(&v);
        for (row, e) in rows.iter().zip(&vectors) {
            let c = ambient.inner(e, &v);
            v -= e * c;
            for (x, r) in coeff.iter_mut().zip(row) {
                *x -= c * r;
            }
        }
        let len = ambient.norm(&v);
        if !(scale > 1e-12) || len < 1e-7 * scale {
            if skip_dependent {
                continue;
            }
            return Err(GeomError::SingularChart(format!(
                "column {i} is dependent (residual {len:.2e})"
            )));
        }
        rows.push(coeff.iter().map(|x| x / len).collect());
        vectors.push(v / len);
    }
    let coeffs = DMatrix::from_fn(rows.len(), m, |a, i| rows[a][i]);
    Ok(Frame {
        point: point.clone(),
        coeffs,
        vectors,
    })
}

#[derive(Clone, Debug)]
pub struct FundamentalForms {
    pub point: Vector,
    pub frame: Frame,
    /// `second_form[a][b] = B(e_a, e_b)`.
    pub second_form: Vec<Vec<Vector>>,
    /// Unnormalized trace of `B`.
    pub mean_curvature: Vector,
    pub norm_b_sq: f64,
    /// Principal curvatures, descending, for hypersurfaces of the ambient.
    pub shape_spectrum: Option<Vec<f64>>,
    pub unit_normal: Option<Vector>,
}

impl FundamentalForms {
    /// `Σ_{ab} B_ab ⟨B_ab, H⟩`.
    pub fn contraction<A: Ambient + ?Sized>(&self, ambient: &A) -> Vector {
        let h = &self.mean_curvature;
        let mut out = Vector::zeros(h.len());
        for row in &self.second_form {
            for b in row {
                out += b * ambient.inner(b, h);
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct MeanCurvature {
    pub frame: Frame,
    pub h: Vector,
    /// `Σ_a D²_{e_a} x`, whose tangential part is `Σ_a ∇_{e_a} e_a`.
    pub acceleration: Vector,
}

#[derive(Clone, Debug)]
pub struct Bitension {
    pub tau: Vector,
    pub tangential: Vector,
    pub normal: Vector,
    /// `trace ∇dH`.
    pub rough_laplacian: Vector,
    /// `Σ_a R(e_a, H) e_a`.
    pub curvature_trace: Vector,
    pub norm: f64,
    pub tangential_norm: f64,
    pub normal_norm: f64,
    /// `|τ₂(h) - τ₂(h/2)|` when the halving check ran.
    pub step_change: Option<f64>,
}

/// Finite-difference evaluator for one chart in one ambient.
pub struct Geometry<'a, A: ?Sized, C: ?Sized> {
    pub ambient: &'a A,
    pub chart: &'a C,
    pub steps: Steps,
}

impl<'a, A: Ambient + ?Sized, C: Chart + ?Sized> Geometry<'a, A, C> {
    pub fn new(ambient: &'a A, chart: &'a C) -> Self {
        Self {
            ambient,
            chart,
            steps: Steps::default(),
        }
    }

    pub fn with_steps(mut self, steps: Steps) -> Self {
        self.steps = steps;
        self
    }

    pub fn first_derivative(&self, theta: &[f64], dir: &[f64]) -> Vector {
        let (dir, len) = unit_direction(dir);
        let h = self.steps.inner;
        let mut acc = Vector::zeros(self.ambient.flat_dim());
        for (k, c) in D1 {
            acc += self.chart.eval(&shifted(theta, &dir, k as f64 * h)) * c;
        }
        acc * (len / h)
    }

    pub fn second_derivative(&self, theta: &[f64], dir: &[f64]) -> Vector {
        let (dir, len) = unit_direction(dir);
        let h = self.steps.inner;
        let mut acc = Vector::zeros(self.ambient.flat_dim());
        for (k, c) in D2 {
            acc += self.chart.eval(&shifted(theta, &dir, k as f64 * h)) * c;
        }
        acc * (len * len / (h * h))
    }

    /// Mixed second derivative `D_u D_v x` by polarization.
    pub fn mixed_derivative(&self, theta: &[f64], u: &[f64], v: &[f64]) -> Vector {
        let plus: Vec<f64> = u.iter().zip(v).map(|(a, b)| a + b).collect();
        let minus: Vec<f64> = u.iter().zip(v).map(|(a, b)| a - b).collect();
        (self.second_derivative(theta, &plus) - self.second_derivative(theta, &minus)) / 4.0
    }

    pub fn coordinate_partials(&self, theta: &[f64]) -> Vec<(Vec<f64>, Vector)> {
        let m = self.chart.dim();
        (0..m)
            .map(|i| {
                let mut dir = vec![0.0; m];
                dir[i] = 1.0;
                let d = self.first_derivative(theta, &dir);
                (dir, d)
            })
            .collect()
    }

    pub fn frame(&self, theta: &[f64]) -> Result<Frame, GeomError> {
        self.steps.check()?;
        let point = self.chart.eval(theta);
        let columns = self.coordinate_partials(theta);
        orthonormalize(self.ambient, &point, columns, false)
    }

    /// Component normal to the submanifold inside the ambient.
    pub fn normal_part(&self, frame: &Frame, v: &Vector) -> Vector {
        let mut out = self.ambient.project(&frame.point, v);
        for e in &frame.vectors {
            out -= e * self.ambient.inner(e, v);
        }
        out
    }

    pub fn tangent_part(&self, frame: &Frame, v: &Vector) -> Vector {
        let mut out = Vector::zeros(v.len());
        for e in &frame.vectors {
            out += e * self.ambient.inner(e, v);
        }
        out
    }

    /// Second fundamental form `B(u, v)` for chart directions `u`, `v`.
    pub fn second_form_pair(&self, theta: &[f64], frame: &Frame, u: &[f64], v: &[f64]) -> Vector {
        self.normal_part(frame, &self.mixed_derivative(theta, u, v))
    }

    pub fn mean_curvature(&self, theta: &[f64]) -> Result<MeanCurvature, GeomError> {
        let frame = self.frame(theta)?;
        let mut acceleration = Vector::zeros(self.ambient.flat_dim());
        for a in 0..frame.dim() {
            acceleration += self.second_derivative(theta, &frame.coeff_row(a));
        }
        let h = self.normal_part(&frame, &acceleration);
        Ok(MeanCurvature {
            frame,
            h,
            acceleration,
        })
    }

    pub fn fundamental_forms(&self, theta: &[f64]) -> Result<FundamentalForms, GeomError> {
        let frame = self.frame(theta)?;
        let m = frame.dim();
        let rows: Vec<Vec<f64>> = (0..m).map(|a| frame.coeff_row(a)).collect();
        let mut second_form = vec![vec![Vector::zeros(self.ambient.flat_dim()); m]; m];
        for a in 0..m {
            second_form[a][a] = self.normal_part(&frame, &self.second_derivative(theta, &rows[a]));
            for b in 0..a {
                let bab = self.second_form_pair(theta, &frame, &rows[a], &rows[b]);
                second_form[a][b] = bab.clone();
                second_form[b][a] = bab;
            }
        }
        let mut mean_curvature = Vector::zeros(self.ambient.flat_dim());
        let mut norm_b_sq = 0.0;
        for a in 0..m {
            mean_curvature += &second_form[a][a];
            for b in 0..m {
                norm_b_sq += self.ambient.inner(&second_form[a][b], &second_form[a][b]);
            }
        }
        let (shape_spectrum, unit_normal) = if self.ambient.intrinsic_dim() == m + 1 {
            let xi = self.unit_normal(theta, &frame)?;
            let shape = DMatrix::from_fn(m, m, |a, b| self.ambient.inner(&second_form[a][b], &xi));
            let mut spectrum: Vec<f64> = SymmetricEigen::new(shape).eigenvalues.iter().copied().collect();
            spectrum.sort_by(|a, b| b.total_cmp(a));
            (Some(spectrum), Some(xi))
        } else {
            (None, None)
        };
        Ok(FundamentalForms {
            point: frame.point.clone(),
            frame,
            second_form,
            mean_curvature,
            norm_b_sq,
            shape_spectrum,
            unit_normal,
        })
    }

    fn unit_normal(&self, theta: &[f64], frame: &Frame) -> Result<Vector, GeomError> {
        let candidate = match self.chart.normal_hint(theta) {
            Some(hint) => self.normal_part(frame, &hint),
            None => (0..self.ambient.flat_dim())
                .map(|k| self.normal_part(frame, &Vector::from_fn(self.ambient.flat_dim(), |i, _| (i == k) as u8 as f64)))
                .max_by(|a, b| self.ambient.norm(a).total_cmp(&self.ambient.norm(b)))
                .unwrap_or_else(|| Vector::zeros(0)),
        };
        let len = self.ambient.norm(&candidate);
        if !(len > 1e-8) {
            return Err(GeomError::SingularChart("no normal direction".into()));
        }
        Ok(candidate / len)
    }

    /// `∇_{dir} H` as an ambient tangent vector, `dir` in chart coordinates.
    pub fn derivative_of_h(&self, theta: &[f64], dir: &[f64]) -> Result<Vector, GeomError> {
        let (dir, len) = unit_direction(dir);
        let h = self.steps.outer;
        let mut acc = Vector::zeros(self.ambient.flat_dim());
        for (k, c) in D1 {
            acc += self.mean_curvature(&shifted(theta, &dir, k as f64 * h))?.h * c;
        }
        Ok(self.ambient.project(&self.chart.eval(theta), &(acc * (len / h))))
    }

    /// `max_a |∇⊥_{e_a} H|`.
    pub fn normal_derivative_of_h(&self, theta: &[f64]) -> Result<f64, GeomError> {
        let frame = self.frame(theta)?;
        let mut worst: f64 = 0.0;
        for a in 0..frame.dim() {
            let d = self.derivative_of_h(theta, &frame.coeff_row(a))?;
            worst = worst.max(self.ambient.norm(&self.normal_part(&frame, &d)));
        }
        Ok(worst)
    }

    /// `τ₂ = trace ∇dH - Σ_a R(e_a, H) e_a` at one step size.
    pub fn bitension(&self, theta: &[f64]) -> Result<Bitension, GeomError> {
        self.steps.check()?;
        let here = self.mean_curvature(theta)?;
        let frame = &here.frame;
        let x0 = &frame.point;
        let h = self.steps.outer;
        let flat = self.ambient.flat_dim();
        let mut laplacian = Vector::zeros(flat);
        for a in 0..frame.dim() {
            let (dir, len) = unit_direction(&frame.coeff_row(a));
            // H and the base point at offsets -6..=6 along dir.
            let mut samples = Vec::with_capacity(13);
            for k in -6..=6 {
                if k == 0 {
                    samples.push((x0.clone(), here.h.clone()));
                } else {
                    let mc = self.mean_curvature(&shifted(theta, &dir, k as f64 * h))?;
                    samples.push((mc.frame.point, mc.h));
                }
            }
            let at = |k: i32| &samples[(k + 6) as usize];
            let mut outer = Vector::zeros(flat);
            for (k, ck) in D1 {
                let mut inner = Vector::zeros(flat);
                for (j, cj) in D1 {
                    inner += &at(k + j).1 * cj;
                }
                outer += self.ambient.project(&at(k).0, &(inner / h)) * ck;
            }
            laplacian += self.ambient.project(x0, &(outer * (len * len / h)));
        }
        // Subtract ∇_{Σ ∇_{e_a} e_a} H.
        let m = frame.dim();
        let mut c = vec![0.0; m];
        for a in 0..m {
            let w = self.ambient.inner(&frame.vectors[a], &here.acceleration);
            for (ci, e) in c.iter_mut().zip(frame.coeffs.row(a).iter()) {
                *ci += w * e;
            }
        }
        let scale = c.iter().map(|v| v * v).sum::<f64>().sqrt();
        if scale > 1e-14 {
            let unit: Vec<f64> = c.iter().map(|v| v / scale).collect();
            laplacian -= self.derivative_of_h(theta, &unit)? * scale;
        }
        let mut curvature_trace = Vector::zeros(flat);
        for e in &frame.vectors {
            curvature_trace += self.ambient.curvature(x0, e, &here.h, e);
        }
        let tau = &laplacian - &curvature_trace;
        let tangential = self.tangent_part(frame, &tau);
        let normal = self.normal_part(frame, &tau);
        Ok(Bitension {
            norm: self.ambient.norm(&tau),
            tangential_norm: self.ambient.norm(&tangential),
            normal_norm: self.ambient.norm(&normal),
            tau,
            tangential,
            normal,
            rough_laplacian: laplacian,
            curvature_trace,
            step_change: None,
        })
    }

    /// [`Self::bitension`] plus a step-halving consistency check, relative to
    /// `max(1, |τ₂|)`.
    pub fn bitension_checked(&self, theta: &[f64], limit: f64) -> Result<Bitension, GeomError> {
        let mut coarse = self.bitension(theta)?;
        let fine = Geometry {
            ambient: self.ambient,
            chart: self.chart,
            steps: self.steps.halved(),
        }
        .bitension(theta)?;
        let change = self.ambient.norm(&(&coarse.tau - &fine.tau)) / coarse.norm.max(1.0);
        if change > limit {
            return Err(GeomError::StepConsistency { change, limit });
        }
        coarse.step_change = Some(change);
        Ok(coarse)
    }
}

/// Euclidean `R^N` with the zero curvature tensor.
#[derive(Clone, Copy, Debug)]
pub struct Euclidean(pub usize);

impl Ambient for Euclidean {
    fn flat_dim(&self) -> usize {
        self.0
    }
    fn intrinsic_dim(&self) -> usize {
        self.0
    }
    fn inner(&self, u: &Vector, v: &Vector) -> f64 {
        u.dot(v)
    }
    fn project(&self, _x: &Vector, v: &Vector) -> Vector {
        v.clone()
    }
    fn curvature(&self, _x: &Vector, a: &Vector, _b: &Vector, _c: &Vector) -> Vector {
        Vector::zeros(a.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Circle of radius ρ in the plane: κ = 1/ρ, H = -x/ρ², and
    /// `trace ∇dH = -H/ρ²`.
    struct Circle(f64);

    impl Chart for Circle {
        fn dim(&self) -> usize {
            1
        }
        fn eval(&self, t: &[f64]) -> Vector {
            Vector::from_vec(vec![self.0 * t[0].cos(), self.0 * t[0].sin()])
        }
        fn sample_box(&self) -> Vec<(f64, f64)> {
            vec![(0.0, std::f64::consts::TAU)]
        }
    }

    /// Graph of z = x² + y² near the origin.
    struct Paraboloid;

    impl Chart for Paraboloid {
        fn dim(&self) -> usize {
            2
        }
        fn eval(&self, t: &[f64]) -> Vector {
            Vector::from_vec(vec![t[0], t[1], t[0] * t[0] + t[1] * t[1]])
        }
        fn sample_box(&self) -> Vec<(f64, f64)> {
            vec![(-0.1, 0.1); 2]
        }
    }

    struct Degenerate;

    impl Chart for Degenerate {
        fn dim(&self) -> usize {
            2
        }
        fn eval(&self, t: &[f64]) -> Vector {
            Vector::from_vec(vec![t[0] + t[1], 0.0])
        }
        fn sample_box(&self) -> Vec<(f64, f64)> {
            vec![(0.0, 1.0); 2]
        }
    }

    #[test]
    fn circle_curvature_and_bitension() {
        let rho = 0.7;
        let chart = Circle(rho);
        let g = Geometry::new(&Euclidean(2), &chart);
        let theta = [0.4];
        let mc = g.mean_curvature(&theta).unwrap();
        let x = chart.eval(&theta);
        let expected = -&x / (rho * rho);
        assert!((&mc.h - &expected).norm() < 1e-9);
        let bt = g.bitension(&theta).unwrap();
        // H = -x/ρ² so ∇dH along the unit-speed circle is -H/ρ².
        let lap = -&expected / (rho * rho);
        assert!((&bt.rough_laplacian - &lap).norm() < 1e-6, "{}", bt.rough_laplacian);
        let forms = g.fundamental_forms(&theta).unwrap();
        let spectrum = forms.shape_spectrum.unwrap();
        assert!((spectrum[0].abs() - 1.0 / rho).abs() < 1e-8);
    }

    #[test]
    fn paraboloid_forms_at_origin() {
        let g = Geometry::new(&Euclidean(3), &Paraboloid);
        let forms = g.fundamental_forms(&[0.0, 0.0]).unwrap();
        let spectrum = forms.shape_spectrum.unwrap();
        for k in spectrum {
            assert!((k.abs() - 2.0).abs() < 1e-7, "{k}");
        }
        assert!((forms.norm_b_sq - 8.0).abs() < 1e-6);
        assert!((forms.mean_curvature[2] - 4.0).abs() < 1e-6);
    }

    #[test]
    fn dependent_columns_are_reported() {
        let g = Geometry::new(&Euclidean(2), &Degenerate);
        assert!(matches!(g.frame(&[0.1, 0.2]), Err(GeomError::SingularChart(_))));
    }

    #[test]
    fn sampling_is_seeded() {
        let a = sample_points(&Paraboloid, 5, 7);
        let b = sample_points(&Paraboloid, 5, 7);
        let c = sample_points(&Paraboloid, 5, 8);
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.iter().flatten().all(|v| v.abs() <= 0.1));
    }

    #[test]
    fn step_underflow() {
        let g = Geometry::new(&Euclidean(2), &Circle(1.0)).with_steps(Steps {
            inner: 1e-12,
            outer: 1e-2,
        });
        assert!(matches!(g.frame(&[0.0]), Err(GeomError::StepUnderflow(_))));
    }
}
