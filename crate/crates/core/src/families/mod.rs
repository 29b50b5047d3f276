//! Exact solvers for the three Clifford-type families.
//!
//! * [`Family::CpnHypersurface`]: Hopf images of `S^{2p+1}(r) × S^{2q+1}(s)`
//!   in `CPⁿ`, with `p + q = n - 1`.
//! * [`Family::SphereFlatTorus`]: flat tori `{|z_i| = a_i}` in `S^{2n+1}`.
//! * [`Family::CpnLagrangianTorus`]: their `S¹` quotients, Lagrangian in `CPⁿ`.
//!
//! The two torus families carry exactly two distinct squared radii with
//! multiplicities `p` and `q`, `p + q = n + 1`. Everything is solved over
//! quadratic surds; solutions are stored as squared radii `b_i = a_i²`.

mod tables;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::surd::{quad_solve, Decimal, QuadSurd, Rational, SurdError};

pub use tables::{
    reconstruct_paper_table, solve_variant_hypersurface, PaperTable, TableId, TableRow,
};

/// Working precision of the numeric fallback for radii outside a single field.
pub const NUMERIC_DIGITS: u32 = 60;
/// Residual bound accepted for numerically represented radii.
pub const NUMERIC_RESIDUAL_DIGITS: u32 = 45;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
    #[error("exact arithmetic failed: {0}")]
    Surd(#[from] SurdError),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("internal identity violated: {0}")]
    Identity(String),
    #[error("unknown table `{0}`")]
    UnknownTable(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    CpnHypersurface,
    SphereFlatTorus,
    CpnLagrangianTorus,
}

impl Family {
    pub const ALL: [Family; 3] = [
        Family::CpnHypersurface,
        Family::SphereFlatTorus,
        Family::CpnLagrangianTorus,
    ];

    pub fn slug(self) -> &'static str {
        match self {
            Family::CpnHypersurface => "hypersurface",
            Family::SphereFlatTorus => "sphere-torus",
            Family::CpnLagrangianTorus => "lagrangian-torus",
        }
    }

    pub fn is_torus(self) -> bool {
        !matches!(self, Family::CpnHypersurface)
    }

    pub fn in_cpn(self) -> bool {
        !matches!(self, Family::SphereFlatTorus)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for Family {
    type Err = SolveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.slug() == s)
            .ok_or_else(|| SolveError::Inadmissible(format!("unknown family `{s}`")))
    }
}

/// One family instance `(family, n, p, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyParams {
    pub family: Family,
    pub n: u32,
    pub p: u32,
    pub q: u32,
}

impl FamilyParams {
    pub fn new(family: Family, n: u32, p: u32, q: u32) -> Result<Self, SolveError> {
        if n == 0 {
            return Err(SolveError::Inadmissible("n must be positive".into()));
        }
        match family {
            Family::CpnHypersurface if p + q + 1 != n => Err(SolveError::Inadmissible(format!(
                "hypersurface family needs p + q = n - 1, got p={p}, q={q}, n={n}"
            ))),
            Family::SphereFlatTorus | Family::CpnLagrangianTorus if p == 0 || q == 0 => Err(
                SolveError::Inadmissible("torus multiplicities must be at least 1".into()),
            ),
            Family::SphereFlatTorus | Family::CpnLagrangianTorus if p + q != n + 1 => {
                Err(SolveError::Inadmissible(format!(
                    "torus families need p + q = n + 1, got p={p}, q={q}, n={n}"
                )))
            }
            _ => Ok(Self { family, n, p, q }),
        }
    }

    /// Dimension of the submanifold.
    pub fn dim(&self) -> u32 {
        match self.family {
            Family::CpnHypersurface => 2 * self.n - 1,
            Family::SphereFlatTorus => self.n + 1,
            Family::CpnLagrangianTorus => self.n,
        }
    }

    pub fn swapped(&self) -> Self {
        Self {
            p: self.q,
            q: self.p,
            ..*self
        }
    }

    /// All admissible `(p, q)` with `p ≤ q` for this `n`.
    pub fn admissible(family: Family, n: u32) -> Vec<Self> {
        let total = match family {
            Family::CpnHypersurface => n.checked_sub(1),
            _ => Some(n + 1),
        };
        let Some(total) = total else { return Vec::new() };
        let start = if family.is_torus() { 1 } else { 0 };
        (start..=total / 2)
            .filter_map(|p| Self::new(family, n, p, total - p).ok())
            .collect()
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={}, p={}, q={})", self.family, self.n, self.p, self.q)
    }
}

/// Which root of the family's outer quadratic a solution comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Minus,
    Plus,
    /// The root that forces all radii equal (zero mean curvature).
    MinimalExcluded,
    /// Radii supplied by the caller rather than solved.
    Given,
}

impl Branch {
    pub fn slug(self) -> &'static str {
        match self {
            Branch::Minus => "minus",
            Branch::Plus => "plus",
            Branch::MinimalExcluded => "minimal",
            Branch::Given => "given",
        }
    }
}

impl FromStr for Branch {
    type Err = SolveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "minus" => Ok(Branch::Minus),
            "plus" => Ok(Branch::Plus),
            other => Err(SolveError::Inadmissible(format!("unknown branch `{other}`"))),
        }
    }
}

/// A squared radius, exact when it lies in a single quadratic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RadiusValue {
    Exact(QuadSurd),
    Numeric(Decimal),
}

impl RadiusValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            RadiusValue::Exact(x) => x.to_f64(),
            RadiusValue::Numeric(x) => x.to_f64(),
        }
    }

    pub fn exact(&self) -> Option<&QuadSurd> {
        match self {
            RadiusValue::Exact(x) => Some(x),
            RadiusValue::Numeric(_) => None,
        }
    }

    pub fn to_decimal(&self, scale: u32) -> Decimal {
        match self {
            RadiusValue::Exact(x) => x.eval(scale),
            RadiusValue::Numeric(x) => x.rescale(scale),
        }
    }

    pub fn to_scientific(&self, sig: u32) -> String {
        match self {
            RadiusValue::Exact(x) => x.to_scientific(sig),
            RadiusValue::Numeric(x) => x.to_scientific(sig),
        }
    }

    /// `true` when the value is zero (exactly, or below the numeric bound).
    pub fn vanishes(&self) -> bool {
        match self {
            RadiusValue::Exact(x) => x.is_zero(),
            RadiusValue::Numeric(x) => x.below_exp10(NUMERIC_RESIDUAL_DIGITS),
        }
    }
}

impl fmt::Display for RadiusValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadiusValue::Exact(x) => write!(f, "{x}"),
            RadiusValue::Numeric(x) => write!(f, "≈{}", x.rescale(20)),
        }
    }
}

/// A squared radius together with how many coordinates carry it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquaredRadius {
    /// `"r"` for the entry with multiplicity `p`, `"s"` for `q`.
    pub label: &'static str,
    pub value: RadiusValue,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadiiSolution {
    pub params: FamilyParams,
    pub branch: Branch,
    pub squared_radii: Vec<SquaredRadius>,
    /// `Σ multiplicity / value`.
    pub d: RadiusValue,
    /// Outer quadratic root; absent for the hypersurface family.
    pub t: Option<QuadSurd>,
    pub proper: bool,
    /// `false` when any radius is only known numerically.
    pub exact: bool,
}

impl RadiiSolution {
    /// Squared radii expanded by multiplicity, `r` entries first.
    pub fn squared_radii_vec(&self) -> Vec<f64> {
        self.squared_radii
            .iter()
            .flat_map(|e| std::iter::repeat(e.value.to_f64()).take(e.multiplicity as usize))
            .collect()
    }

    pub fn radii_vec(&self) -> Vec<f64> {
        self.squared_radii_vec().into_iter().map(f64::sqrt).collect()
    }

    pub fn entry(&self, label: &str) -> Option<&SquaredRadius> {
        self.squared_radii.iter().find(|e| e.label == label)
    }

    /// Multiset of `(value, multiplicity)` pairs, sorted by value.
    pub fn multiset(&self) -> Vec<(RadiusValue, u32)> {
        let mut v: Vec<_> = self
            .squared_radii
            .iter()
            .map(|e| (e.value.clone(), e.multiplicity))
            .collect();
        v.sort_by(|a, b| {
            a.0.to_decimal(NUMERIC_DIGITS)
                .mantissa()
                .cmp(b.0.to_decimal(NUMERIC_DIGITS).mantissa())
        });
        v
    }

    /// Builds a solution from caller-supplied radii `a_i` (not squared).
    ///
    /// Radii are renormalized so that `Σ a_i² = 1` and stored numerically.
    pub fn from_radii(params: FamilyParams, radii: &[Decimal]) -> Result<Self, SolveError> {
        let expected = match params.family {
            Family::CpnHypersurface => 2,
            _ => params.n as usize + 1,
        };
        if radii.len() != expected {
            return Err(SolveError::Inadmissible(format!(
                "{} needs {expected} radii, got {}",
                params.family,
                radii.len()
            )));
        }
        if radii.iter().any(|a| !a.is_positive()) {
            return Err(SolveError::Domain("radii must be positive".into()));
        }
        let scale = NUMERIC_DIGITS;
        let squares: Vec<Decimal> = radii
            .iter()
            .map(|a| a.rescale(scale).mul(&a.rescale(scale)))
            .collect();
        let total = squares.iter().fold(Decimal::from_integer(0, scale), |s, b| s.add(b));
        let normalized: Vec<Decimal> = squares
            .iter()
            .map(|b| b.div(&total))
            .collect::<Result<_, _>>()?;
        let labels = ["r", "s"];
        let squared_radii: Vec<SquaredRadius> = normalized
            .into_iter()
            .enumerate()
            .map(|(i, b)| SquaredRadius {
                label: labels.get(i).copied().unwrap_or("a"),
                value: RadiusValue::Numeric(b),
                multiplicity: 1,
            })
            .collect();
        let d = weighted_reciprocal_sum(&squared_radii)?;
        let proper = match params.family {
            Family::CpnHypersurface => !hypersurface_is_minimal(&params, &squared_radii)?,
            _ => !torus_is_minimal(params.n, &squared_radii)?,
        };
        Ok(Self {
            params,
            branch: Branch::Given,
            squared_radii,
            d,
            t: None,
            proper,
            exact: false,
        })
    }
}

/// Result of one family solver call.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySolve {
    pub params: FamilyParams,
    /// Discriminant of the outer quadratic (in `x` for the hypersurface
    /// family, in `t` for the tori).
    pub discriminant: Rational,
    pub solutions: Vec<RadiiSolution>,
    pub diagnostic: Option<String>,
}

impl FamilySolve {
    pub fn proper(&self) -> impl Iterator<Item = &RadiiSolution> {
        self.solutions.iter().filter(|s| s.proper)
    }
}

fn int(v: i64) -> QuadSurd {
    QuadSurd::from_integer(v)
}

fn ratio(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn weighted_reciprocal_sum(entries: &[SquaredRadius]) -> Result<RadiusValue, SolveError> {
    if entries.iter().all(|e| e.value.exact().is_some()) {
        let mut d = QuadSurd::zero();
        for e in entries {
            let v = e.value.exact().expect("checked");
            d = d.checked_add(&v.recip()?.scale(&ratio(e.multiplicity as i64)))?;
        }
        Ok(RadiusValue::Exact(d))
    } else {
        let one = Decimal::from_integer(1, NUMERIC_DIGITS);
        let mut d = Decimal::from_integer(0, NUMERIC_DIGITS);
        for e in entries {
            let inv = one.div(&e.value.to_decimal(NUMERIC_DIGITS))?;
            d = d.add(&inv.mul(&Decimal::from_integer(e.multiplicity as i64, NUMERIC_DIGITS)));
        }
        Ok(RadiusValue::Numeric(d))
    }
}

/// `H = 0` for a torus iff every `b_i = 1/(n+1)`.
fn torus_is_minimal(n: u32, entries: &[SquaredRadius]) -> Result<bool, SolveError> {
    let np1 = (n + 1) as i64;
    for e in entries {
        let vanishes = match &e.value {
            RadiusValue::Exact(b) => b.scale(&ratio(np1)).add_rational(&-Rational::one()).is_zero(),
            RadiusValue::Numeric(b) => b
                .mul(&Decimal::from_integer(np1, NUMERIC_DIGITS))
                .sub(&Decimal::from_integer(1, NUMERIC_DIGITS))
                .below_exp10(NUMERIC_RESIDUAL_DIGITS),
        };
        if !vanishes {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `H = 0` for `M_{p,q}(r,s)` iff `(2p+1)s² = (2q+1)r²`.
fn hypersurface_is_minimal(
    params: &FamilyParams,
    entries: &[SquaredRadius],
) -> Result<bool, SolveError> {
    let (r2, s2) = match entries {
        [r, s] => (&r.value, &s.value),
        _ => return Err(SolveError::Domain("hypersurface needs exactly r and s".into())),
    };
    let k1 = (2 * params.p + 1) as i64;
    let k2 = (2 * params.q + 1) as i64;
    Ok(match (r2, s2) {
        (RadiusValue::Exact(r2), RadiusValue::Exact(s2)) => s2
            .scale(&ratio(k1))
            .checked_sub(&r2.scale(&ratio(k2)))?
            .is_zero(),
        _ => {
            let lhs = s2.to_decimal(NUMERIC_DIGITS).mul(&Decimal::from_integer(k1, NUMERIC_DIGITS));
            let rhs = r2.to_decimal(NUMERIC_DIGITS).mul(&Decimal::from_integer(k2, NUMERIC_DIGITS));
            lhs.sub(&rhs).below_exp10(NUMERIC_RESIDUAL_DIGITS)
        }
    })
}

/// Real roots of `t·b² - 2·lin·b + 1 = 0`, i.e. `b = (lin ± √(lin² - t)) / t`.
///
/// Roots are exact when `√(lin² - t)` lies in the field of `t`; otherwise
/// they are computed to [`NUMERIC_DIGITS`] places and the polynomial residual
/// is checked below `10^-45`.
pub fn solve_radius_quadratic(t: &QuadSurd, lin: i64) -> Result<(Vec<RadiusValue>, bool), SolveError> {
    if !t.is_positive() {
        return Err(SolveError::Domain(format!("t = {t} must be positive")));
    }
    let disc = int(lin * lin).checked_sub(t)?;
    match disc.signum() {
        Ordering::Less => return Ok((Vec::new(), true)),
        Ordering::Equal => {
            let b = int(lin).checked_div(t)?;
            return Ok((vec![RadiusValue::Exact(b)], true));
        }
        Ordering::Greater => {}
    }
    if let Some(root) = disc.sqrt_in_field() {
        if let (Ok(lo), Ok(hi)) = (int(lin).checked_sub(&root), int(lin).checked_add(&root)) {
            let mut roots = vec![lo.checked_div(t)?, hi.checked_div(t)?];
            roots.sort();
            return Ok((roots.into_iter().map(RadiusValue::Exact).collect(), true));
        }
    }
    let scale = NUMERIC_DIGITS;
    let root = disc.eval(scale + 10).sqrt()?.rescale(scale);
    let t_dec = t.eval(scale);
    let lin_dec = Decimal::from_integer(lin, scale);
    let mut roots = vec![
        lin_dec.sub(&root).div(&t_dec)?,
        lin_dec.add(&root).div(&t_dec)?,
    ];
    roots.sort_by(|a, b| a.mantissa().cmp(b.mantissa()));
    for b in &roots {
        let two_lin = Decimal::from_integer(2 * lin, scale);
        let residual = t_dec
            .mul(&b.mul(b))
            .sub(&two_lin.mul(b))
            .add(&Decimal::from_integer(1, scale));
        if !residual.below_exp10(NUMERIC_RESIDUAL_DIGITS) {
            return Err(SolveError::Identity(format!(
                "numeric radius root residual {residual} above 1e-{NUMERIC_RESIDUAL_DIGITS}"
            )));
        }
    }
    Ok((roots.into_iter().map(RadiusValue::Numeric).collect(), false))
}

/// Distributes multiplicities `p`, `q` over the roots so that `Σ mult·b = 1`.
fn assign_multiplicities(
    roots: &[RadiusValue],
    p: u32,
    q: u32,
) -> Result<Vec<SquaredRadius>, SolveError> {
    let unit_sum = |pairs: &[(&RadiusValue, u32)]| -> Result<bool, SolveError> {
        if pairs.iter().all(|(v, _)| v.exact().is_some()) {
            let mut s = QuadSurd::zero();
            for (v, m) in pairs {
                s = s.checked_add(&v.exact().expect("checked").scale(&ratio(*m as i64)))?;
            }
            Ok(s == QuadSurd::one())
        } else {
            let s = pairs.iter().fold(Decimal::from_integer(0, NUMERIC_DIGITS), |acc, (v, m)| {
                acc.add(&v.to_decimal(NUMERIC_DIGITS).mul(&Decimal::from_integer(*m as i64, NUMERIC_DIGITS)))
            });
            Ok(s.sub(&Decimal::from_integer(1, NUMERIC_DIGITS))
                .below_exp10(NUMERIC_RESIDUAL_DIGITS))
        }
    };
    match roots {
        [b] => {
            if unit_sum(&[(b, p + q)])? {
                Ok(vec![SquaredRadius {
                    label: "r",
                    value: b.clone(),
                    multiplicity: p + q,
                }])
            } else {
                Err(SolveError::Identity(format!("double root {b} violates Σb = 1")))
            }
        }
        [lo, hi] => {
            for (for_p, for_q) in [(lo, hi), (hi, lo)] {
                if unit_sum(&[(for_p, p), (for_q, q)])? {
                    return Ok(vec![
                        SquaredRadius {
                            label: "r",
                            value: for_p.clone(),
                            multiplicity: p,
                        },
                        SquaredRadius {
                            label: "s",
                            value: for_q.clone(),
                            multiplicity: q,
                        },
                    ]);
                }
            }
            Err(SolveError::Identity(format!(
                "no multiplicity assignment of ({lo}, {hi}) with p={p}, q={q} sums to 1"
            )))
        }
        _ => Err(SolveError::Identity("radius quadratic has no real roots".into())),
    }
}

fn require(params: &FamilyParams, family: Family) -> Result<(), SolveError> {
    if params.family != family {
        return Err(SolveError::Inadmissible(format!(
            "expected family {family}, got {}",
            params.family
        )));
    }
    FamilyParams::new(params.family, params.n, params.p, params.q).map(|_| ())
}

/// Solves `(2p+1)(s/r)² + (2q+1)(r/s)² = 2(n+2)` with `r² + s² = 1`.
///
/// With `x = (s/r)²` this is `(2p+1)x² - 2(n+2)x + (2q+1) = 0`, and
/// `r² = 1/(1+x)`, `s² = x/(1+x)`.
pub fn solve_hypersurface_radii(params: &FamilyParams) -> Result<FamilySolve, SolveError> {
    require(params, Family::CpnHypersurface)?;
    let (n, p, q) = (params.n as i64, params.p as i64, params.q as i64);
    let roots = quad_solve(&int(2 * p + 1), &int(-2 * (n + 2)), &int(2 * q + 1))?;
    let discriminant = roots.discriminant.clone().unwrap_or_else(Rational::zero);
    let mut solutions = Vec::new();
    let positive: Vec<_> = roots.roots.iter().filter(|x| x.is_positive()).collect();
    let branches = if positive.len() == 1 {
        vec![Branch::Minus]
    } else {
        vec![Branch::Minus, Branch::Plus]
    };
    for (x, branch) in positive.into_iter().zip(branches) {
        let one_plus = x.add_rational(&Rational::one());
        let r2 = one_plus.recip()?;
        let s2 = x.checked_div(&one_plus)?;
        let squared_radii = vec![
            SquaredRadius {
                label: "r",
                value: RadiusValue::Exact(r2),
                multiplicity: 1,
            },
            SquaredRadius {
                label: "s",
                value: RadiusValue::Exact(s2),
                multiplicity: 1,
            },
        ];
        let proper = !hypersurface_is_minimal(params, &squared_radii)?;
        solutions.push(RadiiSolution {
            params: *params,
            branch,
            d: weighted_reciprocal_sum(&squared_radii)?,
            squared_radii,
            t: None,
            proper,
            exact: true,
        });
    }
    let diagnostic = solutions
        .is_empty()
        .then(|| format!("no positive root; discriminant {discriminant}"));
    Ok(FamilySolve {
        params: *params,
        discriminant,
        solutions,
        diagnostic,
    })
}

/// Shared torus pipeline: solve the `t`-quadratic, then the radius quadratic
/// `t·b² - 2·lin·b + 1 = 0` on each `t`-root.
fn solve_torus(
    params: &FamilyParams,
    t_linear: i64,
    t_constant: i64,
    lin: i64,
    expected_disc: i64,
    d_offset: i64,
    minimal_t: &QuadSurd,
) -> Result<FamilySolve, SolveError> {
    let roots = quad_solve(&int(1), &int(-t_linear), &int(t_constant))?;
    let discriminant = roots.discriminant.clone().unwrap_or_else(Rational::zero);
    if discriminant != ratio(expected_disc) {
        return Err(SolveError::Identity(format!(
            "t-discriminant {discriminant} differs from {expected_disc}"
        )));
    }
    let branches: &[Branch] = match roots.roots.len() {
        1 => &[Branch::Minus],
        _ => &[Branch::Minus, Branch::Plus],
    };
    let mut solutions = Vec::new();
    for (t, &branch) in roots.roots.iter().zip(branches) {
        let branch = if t == minimal_t { Branch::MinimalExcluded } else { branch };
        let (b_roots, exact) = solve_radius_quadratic(t, lin)?;
        let squared_radii = assign_multiplicities(&b_roots, params.p, params.q)?;
        let d = weighted_reciprocal_sum(&squared_radii)?;
        // d = d_offset - t follows from the definition of t.
        let d_expected = t.neg().add_rational(&ratio(d_offset));
        let d_ok = match &d {
            RadiusValue::Exact(x) => *x == d_expected,
            RadiusValue::Numeric(x) => x
                .sub(&d_expected.eval(NUMERIC_DIGITS))
                .below_exp10(NUMERIC_RESIDUAL_DIGITS - 5),
        };
        if !d_ok {
            return Err(SolveError::Identity(format!("d = {d} but {d_offset} - t = {d_expected}")));
        }
        let minimal = torus_is_minimal(params.n, &squared_radii)?;
        if branch == Branch::MinimalExcluded && !minimal {
            return Err(SolveError::Identity(format!(
                "t = {t} should force equal radii for {params}"
            )));
        }
        solutions.push(RadiiSolution {
            params: *params,
            branch,
            // Exact fallback: d is known exactly from t even when b is not.
            d: if exact { d } else { RadiusValue::Exact(d_expected) },
            squared_radii,
            t: Some(t.clone()),
            proper: !minimal,
            exact,
        });
    }
    Ok(FamilySolve {
        params: *params,
        discriminant,
        solutions,
        diagnostic: None,
    })
}

/// Flat tori in `S^{2n+1}`: `(2(n+1)² - d)b² - 2(n+1)b + 1 = 0` with
/// `t = 2(n+1)² - d` solving `t² - (2(n+1)² - (p-q)²)t + 4pq(n+1)² = 0`.
pub fn solve_flat_torus_radii(params: &FamilyParams) -> Result<FamilySolve, SolveError> {
    require(params, Family::SphereFlatTorus)?;
    let (n, p, q) = (params.n as i64, params.p as i64, params.q as i64);
    let np1 = n + 1;
    let k = p - q;
    solve_torus(
        params,
        2 * np1 * np1 - k * k,
        4 * p * q * np1 * np1,
        np1,
        k.pow(4),
        2 * np1 * np1,
        &int(np1 * np1),
    )
}

/// Lagrangian tori in `CPⁿ`: `t·b² - 2(n+3)b + 1 = 0` with
/// `t = 2(n+1)(n+3) - d` solving `t² - (2(n+1)(n+3) - (p-q)²)t + 4pq(n+3)² = 0`.
pub fn solve_lagrangian_radii(params: &FamilyParams) -> Result<FamilySolve, SolveError> {
    require(params, Family::CpnLagrangianTorus)?;
    let (n, p, q) = (params.n as i64, params.p as i64, params.q as i64);
    let (np1, np3) = (n + 1, n + 3);
    let k = p - q;
    solve_torus(
        params,
        2 * np1 * np3 - k * k,
        4 * p * q * np3 * np3,
        np3,
        k.pow(4) + 8 * np3 * k * k,
        2 * np1 * np3,
        // Equal radii need t = (n+1)(n+5), which is never a root here.
        &int(np1 * (n + 5)),
    )
}

pub fn solve(params: &FamilyParams) -> Result<FamilySolve, SolveError> {
    match params.family {
        Family::CpnHypersurface => solve_hypersurface_radii(params),
        Family::SphereFlatTorus => solve_flat_torus_radii(params),
        Family::CpnLagrangianTorus => solve_lagrangian_radii(params),
    }
}

fn check_torus_input(b: &[f64], n: u32) -> Result<(), SolveError> {
    if b.len() != n as usize + 1 {
        return Err(SolveError::Domain(format!(
            "expected {} squared radii, got {}",
            n + 1,
            b.len()
        )));
    }
    if let Some(bad) = b.iter().find(|&&x| !(x > 0.0)) {
        return Err(SolveError::Domain(format!("squared radius {bad} is not positive")));
    }
    let total: f64 = b.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(SolveError::Domain(format!("squared radii sum to {total}, not 1")));
    }
    Ok(())
}

fn torus_residual(b: &[f64], n: u32, constant: f64) -> Result<Vec<f64>, SolveError> {
    check_torus_input(b, n)?;
    let np1 = (n + 1) as f64;
    let d: f64 = b.iter().map(|x| 1.0 / x).sum();
    Ok(b.iter()
        .map(|&bi| {
            let a = bi.sqrt();
            a * d - 1.0 / (a * a * a) - constant * (np1 * a - 1.0 / a)
        })
        .collect())
}

/// Per-coordinate residual of `a_i d - 1/a_i³ = 2(n+1)((n+1)a_i - 1/a_i)`.
pub fn residual_flat_torus(squared_radii: &[f64], n: u32) -> Result<Vec<f64>, SolveError> {
    torus_residual(squared_radii, n, 2.0 * (n + 1) as f64)
}

/// Per-coordinate residual of `a_i d - 1/a_i³ = 2(n+3)((n+1)a_i - 1/a_i)`.
pub fn residual_lagrangian(squared_radii: &[f64], n: u32) -> Result<Vec<f64>, SolveError> {
    torus_residual(squared_radii, n, 2.0 * (n + 3) as f64)
}

/// Torus residuals multiplied by `a_i`, evaluated exactly:
/// `b d - 1/b - c((n+1)b - 1)` per distinct squared radius, where `c` is
/// `2(n+1)` for sphere tori and `2(n+3)` for Lagrangian tori.
pub fn exact_scaled_residual(solution: &RadiiSolution) -> Result<Vec<QuadSurd>, SolveError> {
    let n = solution.params.n as i64;
    let c = match solution.params.family {
        Family::SphereFlatTorus => 2 * (n + 1),
        Family::CpnLagrangianTorus => 2 * (n + 3),
        Family::CpnHypersurface => {
            return Err(SolveError::Inadmissible("torus families only".into()))
        }
    };
    let d = solution
        .d
        .exact()
        .ok_or_else(|| SolveError::Domain("solution is not exact".into()))?;
    solution
        .squared_radii
        .iter()
        .map(|e| {
            let b = e
                .value
                .exact()
                .ok_or_else(|| SolveError::Domain("solution is not exact".into()))?;
            let lhs = b.checked_mul(d)?.checked_sub(&b.recip()?)?;
            let rhs = b.scale(&ratio(n + 1)).add_rational(&ratio(-1)).scale(&ratio(c));
            Ok(lhs.checked_sub(&rhs)?)
        })
        .collect()
}

/// `‖B̃‖² = (2p+1)(s/r)² + (2q+1)(r/s)²` of `S^{2p+1}(r) × S^{2q+1}(s)`.
pub fn clifford_norm_b_sq(p: u32, q: u32, r2: f64, s2: f64) -> f64 {
    (2 * p + 1) as f64 * s2 / r2 + (2 * q + 1) as f64 * r2 / s2
}

/// Exact `‖B̃‖²` for exact squared radii.
pub fn clifford_norm_b_sq_exact(
    p: u32,
    q: u32,
    r2: &QuadSurd,
    s2: &QuadSurd,
) -> Result<QuadSurd, SolveError> {
    let x = s2.checked_div(r2)?;
    Ok(x.scale(&ratio((2 * p + 1) as i64))
        .checked_add(&x.recip()?.scale(&ratio((2 * q + 1) as i64)))?)
}

/// All proper solutions with `n ≤ n_max`, sorted by `(n, p, q, branch)`.
pub fn enumerate_solutions(family: Family, n_max: u32) -> Result<Vec<RadiiSolution>, SolveError> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for params in FamilyParams::admissible(family, n) {
            out.extend(solve(&params)?.solutions.into_iter().filter(|s| s.proper));
        }
    }
    out.sort_by(|a, b| (a.params, a.branch).cmp(&(b.params, b.branch)));
    Ok(out)
}
