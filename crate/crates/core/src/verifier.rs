//! Criterion residuals, oracle verdicts, table adjudication and stability.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::cpn::{bitension_cpn, cpn_chart};
use crate::differential::{sample_points, Chart, Geometry, GeomError, Vector};
use crate::families::{
    clifford_norm_b_sq, clifford_norm_b_sq_exact, exact_scaled_residual, reconstruct_paper_table,
    residual_lagrangian, solve_hypersurface_radii, Branch, Family, FamilyParams, RadiiSolution,
    SolveError, TableId, TableRow,
};
use crate::sphere::{
    analytic_flat_torus_forms, bitension_sphere, clifford_hypersurface_chart, complex_structure,
    flat_torus_chart, parallel_mean_curvature_check, CliffordHypersurfaceChart, FlatTorusChart,
    UnitSphere,
};
use crate::surd::QuadSurd;

/// `∇⊥H` bound required before the reduced criteria apply.
pub const PARALLEL_TOLERANCE: f64 = 1e-6;
/// Radii must solve the Lagrangian criterion this well for a stability report.
pub const STABILITY_PRECONDITION: f64 = 1e-10;
/// Relative agreement required between the two stability evaluations.
pub const STABILITY_AGREEMENT: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("oracle {0} does not apply to {1}")]
    Inapplicable(Oracle, Family),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Biharmonic,
    NotBiharmonic,
    Inconclusive,
}

impl Verdict {
    pub fn slug(self) -> &'static str {
        match self {
            Verdict::Biharmonic => "biharmonic",
            Verdict::NotBiharmonic => "not-biharmonic",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    /// Biharmonic only if every part is; any failure dominates inconclusive.
    pub fn combine(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut out = Verdict::Biharmonic;
        for v in verdicts {
            out = match (out, v) {
                (Verdict::NotBiharmonic, _) | (_, Verdict::NotBiharmonic) => Verdict::NotBiharmonic,
                (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
                _ => Verdict::Biharmonic,
            };
        }
        out
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub pass: f64,
    pub fail: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            pass: 1e-4,
            fail: 1e-2,
        }
    }
}

impl Tolerances {
    /// Overrides the pass threshold, widening the fail threshold if needed.
    pub fn with_pass(pass: f64) -> Self {
        let base = Self::default();
        Self {
            pass,
            fail: base.fail.max(pass),
        }
    }

    pub fn verdict(&self, value: f64) -> Verdict {
        if value < self.pass {
            Verdict::Biharmonic
        } else if value > self.fail {
            Verdict::NotBiharmonic
        } else {
            Verdict::Inconclusive
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Oracle {
    Algebraic,
    SphereFd,
    CpnFd,
}

impl Oracle {
    pub fn slug(self) -> &'static str {
        match self {
            Oracle::Algebraic => "algebraic",
            Oracle::SphereFd => "fd-sphere",
            Oracle::CpnFd => "fd-cpn",
        }
    }

    pub fn applies_to(self, family: Family) -> bool {
        !(self == Oracle::CpnFd && family == Family::SphereFlatTorus)
    }
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for Oracle {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "algebraic" => Ok(Oracle::Algebraic),
            "fd-sphere" => Ok(Oracle::SphereFd),
            "fd-cpn" => Ok(Oracle::CpnFd),
            other => Err(VerifyError::Precondition(format!("unknown oracle `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub points: usize,
    pub tolerances: Tolerances,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            points: 10,
            tolerances: Tolerances::default(),
        }
    }
}

/// Sphere chart of `M̃`: the flat torus, or `S^{2p+1}(r) × S^{2q+1}(s)`.
#[derive(Clone, Debug)]
pub enum SphereChart {
    Torus(FlatTorusChart),
    Hypersurface(CliffordHypersurfaceChart),
}

impl Chart for SphereChart {
    fn dim(&self) -> usize {
        match self {
            SphereChart::Torus(c) => c.dim(),
            SphereChart::Hypersurface(c) => c.dim(),
        }
    }
    fn eval(&self, theta: &[f64]) -> Vector {
        match self {
            SphereChart::Torus(c) => c.eval(theta),
            SphereChart::Hypersurface(c) => c.eval(theta),
        }
    }
    fn sample_box(&self) -> Vec<(f64, f64)> {
        match self {
            SphereChart::Torus(c) => c.sample_box(),
            SphereChart::Hypersurface(c) => c.sample_box(),
        }
    }
    fn fiber_direction(&self) -> Option<Vec<f64>> {
        match self {
            SphereChart::Torus(c) => c.fiber_direction(),
            SphereChart::Hypersurface(c) => c.fiber_direction(),
        }
    }
    fn fiber_coordinate(&self) -> Option<usize> {
        match self {
            SphereChart::Torus(c) => c.fiber_coordinate(),
            SphereChart::Hypersurface(c) => c.fiber_coordinate(),
        }
    }
    fn normal_hint(&self, theta: &[f64]) -> Option<Vector> {
        match self {
            SphereChart::Torus(c) => c.normal_hint(theta),
            SphereChart::Hypersurface(c) => c.normal_hint(theta),
        }
    }
}

fn hypersurface_r2_s2(solution: &RadiiSolution) -> Result<(f64, f64), VerifyError> {
    let get = |label| {
        solution
            .entry(label)
            .map(|e| e.value.to_f64())
            .ok_or_else(|| VerifyError::Precondition(format!("missing {label}²")))
    };
    Ok((get("r")?, get("s")?))
}

/// The chart of `M̃ ⊂ S^{2n+1}` for a solution (the lift, for `CPⁿ` families).
pub fn sphere_chart(solution: &RadiiSolution) -> Result<SphereChart, VerifyError> {
    let p = &solution.params;
    Ok(match p.family {
        Family::CpnHypersurface => {
            let (r2, s2) = hypersurface_r2_s2(solution)?;
            SphereChart::Hypersurface(clifford_hypersurface_chart(
                p.n as usize,
                p.p as usize,
                p.q as usize,
                r2.sqrt(),
                s2.sqrt(),
            )?)
        }
        _ => SphereChart::Torus(flat_torus_chart(&solution.radii_vec())?),
    })
}

/// Residual of the reduced algebraic criterion for a parallel-`H` instance.
#[derive(Clone, Debug, PartialEq)]
pub struct CriterionResidual {
    pub family: Family,
    /// Torus families: ambient components; hypersurfaces: one scalar.
    pub values: Vec<f64>,
    pub max_abs: f64,
    /// `max |∇⊥H|` measured before applying the criterion.
    pub parallel_residual: f64,
    /// `Some(true)` when an exact evaluation shows the residual is zero.
    pub exact_zero: Option<bool>,
}

/// Reduced criteria: `Σ B⟨B,H⟩ = (n+1)H` for sphere tori, `‖B̃‖² - 2 = 2(n+1)`
/// for hypersurfaces, and `Σ̃ B̃⟨B̃,H̃⟩ = (n+5)H̃` for Lagrangian tori.
pub fn criterion_residual(solution: &RadiiSolution) -> Result<CriterionResidual, VerifyError> {
    let p = &solution.params;
    let chart = sphere_chart(solution)?;
    let probe: Vec<f64> = chart.sample_box().iter().map(|(lo, hi)| lo + 0.37 * (hi - lo)).collect();
    let parallel_residual = parallel_mean_curvature_check(&chart, &probe)?;
    if parallel_residual > PARALLEL_TOLERANCE {
        return Err(VerifyError::Precondition(format!(
            "∇⊥H = {parallel_residual:.3e}; the reduced criterion does not apply"
        )));
    }
    let n = p.n as f64;
    let (values, exact_zero) = match p.family {
        Family::CpnHypersurface => {
            let (r2, s2) = hypersurface_r2_s2(solution)?;
            let exact = match (
                solution.entry("r").and_then(|e| e.value.exact()),
                solution.entry("s").and_then(|e| e.value.exact()),
            ) {
                (Some(r2), Some(s2)) => Some(
                    clifford_norm_b_sq_exact(p.p, p.q, r2, s2)?
                        == QuadSurd::from_integer(2 * (p.n as i64 + 2)),
                ),
                _ => None,
            };
            (vec![clifford_norm_b_sq(p.p, p.q, r2, s2) - 2.0 - 2.0 * (n + 1.0)], exact)
        }
        Family::SphereFlatTorus | Family::CpnLagrangianTorus => {
            let forms = analytic_flat_torus_forms(&solution.radii_vec(), &probe)?;
            let coefficient = if p.family == Family::SphereFlatTorus { n + 1.0 } else { n + 5.0 };
            let residual = &forms.contraction - &forms.mean_curvature * coefficient;
            let exact = if solution.exact {
                Some(exact_scaled_residual(solution)?.iter().all(QuadSurd::is_zero))
            } else {
                None
            };
            (residual.iter().copied().collect(), exact)
        }
    };
    let max_abs = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(CriterionResidual {
        family: p.family,
        values,
        max_abs,
        parallel_residual,
        exact_zero,
    })
}

/// Seeded oracle run over sample points.
#[derive(Clone, Debug, PartialEq)]
pub struct BitensionReport {
    pub params: FamilyParams,
    pub branch: Branch,
    pub oracle: Oracle,
    pub points: usize,
    pub seed: u64,
    /// `max |τ₂|` (or the lifted criterion residual for `fd-sphere` on `CPⁿ` families).
    pub max_tau: f64,
    pub max_tangential: f64,
    pub max_normal: f64,
    /// Largest step-halving change relative to `max(1, |τ₂|)`; points that
    /// exceed the limit make the verdict inconclusive.
    pub max_step_change: f64,
    pub tolerances: Tolerances,
    pub verdict: Verdict,
}

fn report(
    solution: &RadiiSolution,
    oracle: Oracle,
    config: &VerifyConfig,
    samples: impl IntoIterator<Item = Result<(f64, f64, f64, f64), VerifyError>>,
) -> Result<BitensionReport, VerifyError> {
    let (mut tau, mut tan, mut nor, mut step) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut unstable_steps = false;
    for s in samples {
        let (a, b, c, d) = match s {
            Err(VerifyError::Geom(GeomError::StepConsistency { change, .. })) => {
                unstable_steps = true;
                step = step.max(change);
                continue;
            }
            other => other?,
        };
        tau = tau.max(a);
        tan = tan.max(b);
        nor = nor.max(c);
        step = step.max(d);
    }
    Ok(BitensionReport {
        params: solution.params,
        branch: solution.branch,
        oracle,
        points: config.points,
        seed: config.seed,
        max_tau: tau,
        max_tangential: tan,
        max_normal: nor,
        max_step_change: step,
        tolerances: config.tolerances,
        verdict: if unstable_steps {
            Verdict::Inconclusive
        } else {
            config.tolerances.verdict(tau)
        },
    })
}

/// `τ₂` of the flat torus in `S^{2n+1}` by finite differences.
pub fn sphere_oracle(solution: &RadiiSolution, config: &VerifyConfig) -> Result<BitensionReport, VerifyError> {
    let chart = sphere_chart(solution)?;
    let points = sample_points(&chart, config.points, config.seed);
    match solution.params.family {
        Family::SphereFlatTorus => report(
            solution,
            Oracle::SphereFd,
            config,
            points.iter().map(|theta| {
                let bt = bitension_sphere(&chart, theta)?;
                Ok((bt.norm, bt.tangential_norm, bt.normal_norm, bt.step_change.unwrap_or(0.0)))
            }),
        ),
        family => {
            // Lifted reduced criterion from finite-difference forms of M̃.
            let sphere = UnitSphere::new(solution.params.n as usize);
            let geometry = Geometry::new(&sphere, &chart);
            let n = solution.params.n as f64;
            report(
                solution,
                Oracle::SphereFd,
                config,
                points.iter().map(|theta| {
                    let parallel = geometry.normal_derivative_of_h(theta)?;
                    if parallel > PARALLEL_TOLERANCE {
                        return Err(VerifyError::Precondition(format!("∇⊥H = {parallel:.3e}")));
                    }
                    let forms = geometry.fundamental_forms(theta)?;
                    let value = if family == Family::CpnHypersurface {
                        (forms.norm_b_sq - 2.0 - 2.0 * (n + 1.0)).abs()
                    } else {
                        (forms.contraction(&sphere) - &forms.mean_curvature * (n + 5.0)).norm()
                    };
                    Ok((value, 0.0, value, 0.0))
                }),
            )
        }
    }
}

/// `τ₂` of `π(M̃) ⊂ CPⁿ` by finite differences on the quotient chart.
pub fn cpn_oracle(solution: &RadiiSolution, config: &VerifyConfig) -> Result<BitensionReport, VerifyError> {
    let family = solution.params.family;
    if !Oracle::CpnFd.applies_to(family) {
        return Err(VerifyError::Inapplicable(Oracle::CpnFd, family));
    }
    let chart = cpn_chart(sphere_chart(solution)?)?;
    let points = sample_points(&chart, config.points, config.seed);
    report(
        solution,
        Oracle::CpnFd,
        config,
        points.iter().map(|theta| {
            let bt = bitension_cpn(&chart, theta)?;
            Ok((bt.norm, bt.tangential_norm, bt.normal_norm, bt.step_change.unwrap_or(0.0)))
        }),
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicReport {
    pub residual: CriterionResidual,
    pub tolerances: Tolerances,
    pub verdict: Verdict,
}

pub fn algebraic_oracle(solution: &RadiiSolution, config: &VerifyConfig) -> Result<AlgebraicReport, VerifyError> {
    let residual = criterion_residual(solution)?;
    let verdict = match residual.exact_zero {
        Some(true) => Verdict::Biharmonic,
        _ => config.tolerances.verdict(residual.max_abs),
    };
    Ok(AlgebraicReport {
        residual,
        tolerances: config.tolerances,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompositeReport {
    pub solution: RadiiSolution,
    pub algebraic: Option<AlgebraicReport>,
    pub oracles: Vec<BitensionReport>,
    pub verdict: Verdict,
}

/// Runs every requested oracle; the verdict is biharmonic only if all pass.
pub fn verify_solution(
    solution: &RadiiSolution,
    oracles: &[Oracle],
    config: &VerifyConfig,
) -> Result<CompositeReport, VerifyError> {
    if oracles.is_empty() {
        return Err(VerifyError::Precondition("no oracle requested".into()));
    }
    if let Some(&o) = oracles.iter().find(|o| !o.applies_to(solution.params.family)) {
        return Err(VerifyError::Inapplicable(o, solution.params.family));
    }
    let mut sorted = oracles.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut algebraic = None;
    let mut reports = Vec::new();
    for oracle in sorted {
        match oracle {
            Oracle::Algebraic => algebraic = Some(algebraic_oracle(solution, config)?),
            Oracle::SphereFd => reports.push(sphere_oracle(solution, config)?),
            Oracle::CpnFd => reports.push(cpn_oracle(solution, config)?),
        }
    }
    let verdict = Verdict::combine(
        algebraic
            .iter()
            .map(|a| a.verdict)
            .chain(reports.iter().map(|r| r.verdict)),
    );
    Ok(CompositeReport {
        solution: solution.clone(),
        algebraic,
        oracles: reports,
        verdict,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endorsement {
    PaperTable,
    EquationOne,
    Neither,
    Both,
    Inconclusive,
}

impl Endorsement {
    pub fn slug(self) -> &'static str {
        match self {
            Endorsement::PaperTable => "paper-table",
            Endorsement::EquationOne => "equation-one",
            Endorsement::Neither => "neither",
            Endorsement::Both => "both",
            Endorsement::Inconclusive => "inconclusive",
        }
    }

    pub fn from_verdicts(paper: Verdict, equation: Verdict) -> Self {
        use Verdict::*;
        match (paper, equation) {
            (Biharmonic, Biharmonic) => Endorsement::Both,
            (Biharmonic, _) => Endorsement::PaperTable,
            (_, Biharmonic) => Endorsement::EquationOne,
            (NotBiharmonic, NotBiharmonic) => Endorsement::Neither,
            _ => Endorsement::Inconclusive,
        }
    }

    /// Whether the printed row is confirmed.
    pub fn confirms_printed(self) -> bool {
        matches!(self, Endorsement::PaperTable | Endorsement::Both)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdjudicationRow {
    pub row: TableRow,
    /// `‖B̃‖² - 2(n+2)` at the printed radii.
    pub equation_one_residual: f64,
    /// `(2p+1)(r/s)² + (2q+1)(s/r)² - 2(n+1)` at the printed radii.
    pub variant_residual: f64,
    /// The solution of the hypersurface equation paired with this row.
    pub equation_one_solution: RadiiSolution,
    pub equation_one_solution_residual: f64,
    pub paper_oracle: BitensionReport,
    pub equation_one_oracle: BitensionReport,
    pub endorsed: Endorsement,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdjudicationReport {
    pub n: u32,
    pub rows: Vec<AdjudicationRow>,
    /// Equation-only mode (no printed table for this `n`).
    pub equation_only: Vec<BitensionReport>,
}

impl AdjudicationReport {
    pub fn all_confirmed(&self) -> bool {
        self.rows.iter().all(|r| r.endorsed.confirms_printed())
    }
}

fn equation_residuals(p: u32, q: u32, n: u32, r2: f64, s2: f64) -> (f64, f64) {
    let b = clifford_norm_b_sq(p, q, r2, s2);
    let variant = clifford_norm_b_sq(p, q, s2, r2);
    (b - 2.0 * (n as f64 + 2.0), variant - 2.0 * (n as f64 + 1.0))
}

/// Runs the `CPⁿ` oracle on the printed `n = 5` rows and on the solutions of
/// the hypersurface equation; other `n` run the equation side only.
pub fn adjudicate_hypersurface_table(n: u32, config: &VerifyConfig) -> Result<AdjudicationReport, VerifyError> {
    if n != TableId::HypersurfaceN5.n() {
        let mut equation_only = Vec::new();
        for params in FamilyParams::admissible(Family::CpnHypersurface, n) {
            for sol in solve_hypersurface_radii(&params)?.proper() {
                equation_only.push(cpn_oracle(sol, config)?);
            }
        }
        return Ok(AdjudicationReport {
            n,
            rows: Vec::new(),
            equation_only,
        });
    }
    let table = reconstruct_paper_table(TableId::HypersurfaceN5)?;
    let mut rows = Vec::new();
    for row in table.rows {
        let params = row.params;
        let r2 = row.r_squared.to_f64();
        let s2 = row.s_squared.to_f64();
        let (equation_one_residual, variant_residual) = equation_residuals(params.p, params.q, n, r2, s2);

        // Pair with the equation's solution of the same r² rank.
        let variant = crate::families::solve_variant_hypersurface(&params)?;
        let mut variant_r2: Vec<QuadSurd> = variant
            .solutions
            .iter()
            .filter_map(|s| s.entry("r")?.value.exact().cloned())
            .collect();
        variant_r2.sort();
        let rank = variant_r2.iter().position(|v| *v == row.r_squared).unwrap_or(0);
        let mut candidates: Vec<RadiiSolution> = solve_hypersurface_radii(&params)?.proper().cloned().collect();
        candidates.sort_by(|a, b| {
            let key = |s: &RadiiSolution| s.entry("r").and_then(|e| e.value.exact().cloned());
            key(a).cmp(&key(b))
        });
        let equation_one_solution = candidates
            .get(rank.min(candidates.len().saturating_sub(1)))
            .cloned()
            .ok_or_else(|| VerifyError::Precondition(format!("no solution of the hypersurface equation for {params}")))?;
        let (er2, es2) = hypersurface_r2_s2(&equation_one_solution)?;
        let equation_one_solution_residual = equation_residuals(params.p, params.q, n, er2, es2).0;

        let printed = row.as_solution()?;
        let paper_oracle = cpn_oracle(&printed, config)?;
        let equation_one_oracle = cpn_oracle(&equation_one_solution, config)?;
        let endorsed = Endorsement::from_verdicts(paper_oracle.verdict, equation_one_oracle.verdict);
        rows.push(AdjudicationRow {
            row,
            equation_one_residual,
            variant_residual,
            equation_one_solution,
            equation_one_solution_residual,
            paper_oracle,
            equation_one_oracle,
            endorsed,
        });
    }
    Ok(AdjudicationReport {
        n,
        rows,
        equation_only: Vec::new(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignVerdict {
    /// Negative second variation along `H`: unstable.
    Unstable,
    NotNegative,
}

impl SignVerdict {
    pub fn slug(self) -> &'static str {
        match self {
            SignVerdict::Unstable => "unstable",
            SignVerdict::NotNegative => "not-negative",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityReport {
    pub params: FamilyParams,
    pub branch: Branch,
    pub squared_radii: Vec<f64>,
    pub d: f64,
    pub sum_inv_a4: f64,
    /// `|H|²` measured from finite-difference forms.
    pub mean_curvature_sq: f64,
    /// `d - (n+1)²`.
    pub mean_curvature_sq_closed_form: f64,
    /// Per unit volume.
    pub closed_form_value: f64,
    /// Per unit volume.
    pub numeric_value: f64,
    pub relative_agreement: f64,
    pub agrees: bool,
    pub sign_verdict: SignVerdict,
    pub sample_point: Vec<f64>,
}

/// `-4([d-(n+1)²]² + 3[2(n+1)³ + Σ1/a⁴ - 3(n+1)d])`.
pub fn stability_closed_form(squared_radii: &[f64], n: u32) -> f64 {
    let np1 = n as f64 + 1.0;
    let d: f64 = squared_radii.iter().map(|b| 1.0 / b).sum();
    let inv4: f64 = squared_radii.iter().map(|b| 1.0 / (b * b)).sum();
    -4.0 * ((d - np1 * np1).powi(2) + 3.0 * (2.0 * np1.powi(3) + inv4 - 3.0 * np1 * d))
}

/// Second variation of the bienergy along `H` for a biharmonic Lagrangian
/// torus, per unit volume, evaluated both ways.
pub fn stability_report(solution: &RadiiSolution, config: &VerifyConfig) -> Result<StabilityReport, VerifyError> {
    let params = solution.params;
    if params.family != Family::CpnLagrangianTorus {
        return Err(VerifyError::Inapplicable(Oracle::Algebraic, params.family));
    }
    let b = solution.squared_radii_vec();
    let residual = residual_lagrangian(&b, params.n)?;
    let worst = residual.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if worst > STABILITY_PRECONDITION {
        return Err(VerifyError::Precondition(format!(
            "radii miss the Lagrangian criterion by {worst:.3e}"
        )));
    }
    let chart = flat_torus_chart(&solution.radii_vec())?;
    let theta = sample_points(&chart, 1, config.seed).remove(0);
    let sphere = UnitSphere::new(params.n as usize);
    let forms = Geometry::new(&sphere, &chart).fundamental_forms(&theta)?;
    let h = &forms.mean_curvature;
    let j_dot_h: Vec<f64> = forms.frame.vectors.iter().map(|e| complex_structure(e).dot(h)).collect();
    let mut cubic = 0.0;
    for (a, row) in forms.second_form.iter().enumerate() {
        for (c, bac) in row.iter().enumerate() {
            cubic += j_dot_h[a] * bac.dot(h) * j_dot_h[c];
        }
    }
    let h2 = h.norm_squared();
    let numeric_value = -4.0 * (h2 * h2 + 3.0 * cubic);
    let closed_form_value = stability_closed_form(&b, params.n);
    let np1 = params.n as f64 + 1.0;
    let d: f64 = b.iter().map(|x| 1.0 / x).sum();
    let relative_agreement = (numeric_value - closed_form_value).abs() / closed_form_value.abs().max(1e-300);
    Ok(StabilityReport {
        params,
        branch: solution.branch,
        sum_inv_a4: b.iter().map(|x| 1.0 / (x * x)).sum(),
        squared_radii: b,
        d,
        mean_curvature_sq: h2,
        mean_curvature_sq_closed_form: d - np1 * np1,
        closed_form_value,
        numeric_value,
        relative_agreement,
        agrees: relative_agreement <= STABILITY_AGREEMENT,
        sign_verdict: if numeric_value < 0.0 {
            SignVerdict::Unstable
        } else {
            SignVerdict::NotNegative
        },
        sample_point: theta,
    })
}

/// `|H|` from closed forms: `√(d - (n+1)²)` for tori, `|(2p+1)s/r - (2q+1)r/s|`
/// for hypersurfaces.
pub fn mean_curvature_norm(solution: &RadiiSolution) -> Result<f64, VerifyError> {
    let p = &solution.params;
    Ok(match p.family {
        Family::CpnHypersurface => {
            let (r2, s2) = hypersurface_r2_s2(solution)?;
            let (r, s) = (r2.sqrt(), s2.sqrt());
            ((2 * p.p + 1) as f64 * s / r - (2 * p.q + 1) as f64 * r / s).abs()
        }
        _ => {
            let radii = solution.radii_vec();
            let theta = vec![0.0; radii.len()];
            analytic_flat_torus_forms(&radii, &theta)?.mean_curvature.norm()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{solve, solve_flat_torus_radii, RadiusValue};
    use crate::surd::{rat, Decimal};

    fn params(family: Family, n: u32, p: u32, q: u32) -> FamilyParams {
        FamilyParams::new(family, n, p, q).unwrap()
    }

    fn quick() -> VerifyConfig {
        VerifyConfig {
            points: 2,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn criterion_examples() {
        let sol = solve_flat_torus_radii(&params(Family::SphereFlatTorus, 2, 1, 2)).unwrap();
        let proper = sol.proper().next().unwrap();
        let res = criterion_residual(proper).unwrap();
        assert!(res.max_abs < 1e-12);
        assert_eq!(res.exact_zero, Some(true));

        let sol = solve(&params(Family::CpnHypersurface, 5, 2, 2)).unwrap();
        for s in &sol.solutions {
            let res = criterion_residual(s).unwrap();
            assert!(res.max_abs < 1e-9);
            assert_eq!(res.exact_zero, Some(true));
        }

        let table = reconstruct_paper_table(TableId::HypersurfaceN5).unwrap();
        let row = table.rows.iter().find(|r| r.params.p == 2).unwrap();
        let res = criterion_residual(&row.as_solution().unwrap()).unwrap();
        assert!((res.values[0] + 2.0).abs() < 1e-9);
        assert_eq!(res.exact_zero, Some(false));
    }

    #[test]
    fn verdict_thresholds() {
        let t = Tolerances::default();
        assert_eq!(t.verdict(1e-5), Verdict::Biharmonic);
        assert_eq!(t.verdict(1e-3), Verdict::Inconclusive);
        assert_eq!(t.verdict(0.1), Verdict::NotBiharmonic);
        assert_eq!(
            Verdict::combine([Verdict::Biharmonic, Verdict::Inconclusive]),
            Verdict::Inconclusive
        );
        assert_eq!(
            Verdict::combine([Verdict::Inconclusive, Verdict::NotBiharmonic]),
            Verdict::NotBiharmonic
        );
    }

    #[test]
    fn verify_controls() {
        let sol = solve_flat_torus_radii(&params(Family::SphereFlatTorus, 2, 1, 2)).unwrap();
        let proper = sol.proper().next().unwrap().clone();
        let report = verify_solution(&proper, &[Oracle::Algebraic, Oracle::SphereFd], &quick()).unwrap();
        assert_eq!(report.verdict, Verdict::Biharmonic);

        let mut a: Vec<Decimal> = proper
            .radii_vec()
            .iter()
            .map(|a| format!("{a:.15}").parse().unwrap())
            .collect();
        let b1 = a[0].mul(&a[0]).mul(&"1.05".parse().unwrap());
        a[0] = b1.rescale(40).sqrt().unwrap();
        let perturbed = RadiiSolution::from_radii(proper.params, &a).unwrap();
        let report = verify_solution(&perturbed, &[Oracle::Algebraic, Oracle::SphereFd], &quick()).unwrap();
        assert_eq!(report.verdict, Verdict::NotBiharmonic);

        assert!(matches!(
            verify_solution(&proper, &[Oracle::CpnFd], &quick()),
            Err(VerifyError::Inapplicable(..))
        ));
        assert!(verify_solution(&proper, &[], &quick()).is_err());
    }

    #[test]
    fn lagrangian_row_is_biharmonic_in_cpn() {
        let table = reconstruct_paper_table(TableId::LagrangianN4).unwrap();
        let sol = table.rows[0].as_solution().unwrap();
        let report = verify_solution(&sol, &[Oracle::Algebraic, Oracle::CpnFd], &quick()).unwrap();
        assert_eq!(report.verdict, Verdict::Biharmonic, "{report:?}");
    }

    #[test]
    fn stability_reference_value() {
        let sol = solve(&params(Family::CpnLagrangianTorus, 4, 1, 4)).unwrap();
        let plus = sol.solutions.iter().find(|s| s.branch == Branch::Plus).unwrap();
        let rep = stability_report(plus, &VerifyConfig::default()).unwrap();
        assert!((rep.d - 27.407).abs() < 1e-3, "{}", rep.d);
        assert!((rep.sum_inv_a4 - 170.72).abs() < 0.01, "{}", rep.sum_inv_a4);
        assert!((rep.closed_form_value / -138.6 - 1.0).abs() < 5e-3, "{}", rep.closed_form_value);
        assert!((rep.mean_curvature_sq - rep.mean_curvature_sq_closed_form).abs() < 1e-8);
        assert!(rep.agrees, "{rep:?}");
        assert_eq!(rep.sign_verdict, SignVerdict::Unstable);

        let minimal = RadiiSolution::from_radii(
            params(Family::CpnLagrangianTorus, 3, 2, 2),
            &vec![Decimal::from_integer(1, 0); 4],
        )
        .unwrap();
        assert!(!minimal.proper);
        assert!(mean_curvature_norm(&minimal).unwrap() < 1e-12);
    }

    #[test]
    fn mean_curvature_of_solutions() {
        let sol = solve(&params(Family::CpnHypersurface, 5, 0, 4)).unwrap();
        for s in &sol.solutions {
            assert!(mean_curvature_norm(s).unwrap() > 1e-3);
        }
        let lawson = RadiiSolution {
            squared_radii: vec![
                crate::families::SquaredRadius {
                    label: "r",
                    value: RadiusValue::Exact(QuadSurd::from_rational(rat(1, 10))),
                    multiplicity: 1,
                },
                crate::families::SquaredRadius {
                    label: "s",
                    value: RadiusValue::Exact(QuadSurd::from_rational(rat(9, 10))),
                    multiplicity: 1,
                },
            ],
            ..sol.solutions[0].clone()
        };
        assert!(mean_curvature_norm(&lawson).unwrap() < 1e-12);
    }
}
