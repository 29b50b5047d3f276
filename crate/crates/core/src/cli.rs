//! The `bht` command line: `solve`, `verify`, `table` and `stability`.
//!
//! Every command builds one JSON document; CSV and markdown are renderings
//! of the same payload.

use std::collections::BTreeSet;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::families::{
    reconstruct_paper_table, residual_lagrangian, solve, Branch, Family, FamilyParams, FamilySolve,
    RadiiSolution, RadiusValue, SolveError, TableId,
};
use crate::surd::{Decimal, QuadSurd, Rational};
use crate::verifier::{
    adjudicate_hypersurface_table, mean_curvature_norm, stability_report, verify_solution, AdjudicationReport,
    BitensionReport, CompositeReport, Oracle, StabilityReport, Tolerances, Verdict, VerifyConfig, VerifyError,
};

pub const SCHEMA_VERSION: &str = "bht-1";
pub const DEFAULT_PRECISION: u32 = 12;
pub const PRECISION_ENV: &str = "BHT_PRECISION";

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NO_PROPER: i32 = 2;
pub const EXIT_NOT_BIHARMONIC: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;
pub const EXIT_DISAGREES: i32 = 5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("{0}")]
    Usage(String),
}

#[derive(Parser, Debug)]
#[command(name = "bht", version, about = "Biharmonic Clifford-type tori: solve, verify, reproduce tables")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve the radius equations of a family.
    Solve(SolveArgs),
    /// Run the algebraic and finite-difference oracles on a solution.
    Verify(VerifyArgs),
    /// Reconstruct a printed table (`lagrangian-n4`, `hypersurface-n5`).
    Table(TableArgs),
    /// Second variation of the bienergy for a Lagrangian torus.
    Stability(StabilityArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct SolveArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub q: Option<u32>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub q: Option<u32>,
    /// Radii `a_i` (not squared), comma separated; renormalized to unit sum of squares.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub radii: Option<Vec<String>>,
    #[arg(long)]
    pub branch: Option<String>,
    /// Comma separated; defaults to every oracle that applies.
    #[arg(long, value_delimiter = ',')]
    pub oracle: Option<Vec<String>>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10)]
    pub points: usize,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Clone)]
pub struct TableArgs {
    pub table: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10)]
    pub points: usize,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Clone)]
pub struct StabilityArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub branch: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

/// What the binary prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (including the program name) and runs the command, reading
/// the digit count from `BHT_PRECISION`.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let precision = std::env::var(PRECISION_ENV).ok();
    run_with_precision(args, precision.as_deref())
}

pub fn run_with_precision<I, T>(args: I, precision: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { stdout: String::new(), stderr: text, code }
            } else {
                Outcome { stdout: text, stderr: String::new(), code }
            };
        }
    };
    let digits = match parse_precision(precision) {
        Ok(d) => d,
        Err(e) => return failure(e),
    };
    match execute(&cli.command, digits) {
        Ok((doc, code)) => Outcome {
            stdout: render(&doc, format_of(&cli.command)),
            stderr: String::new(),
            code,
        },
        Err(e) => failure(e),
    }
}

fn failure(e: CliError) -> Outcome {
    Outcome {
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
        code: EXIT_ERROR,
    }
}

fn parse_precision(raw: Option<&str>) -> Result<u32, CliError> {
    match raw {
        None => Ok(DEFAULT_PRECISION),
        Some(s) => match s.trim().parse::<u32>() {
            Ok(d) if (1..=40).contains(&d) => Ok(d),
            _ => Err(CliError::Usage(format!("{PRECISION_ENV} must be an integer in 1..=40, got `{s}`"))),
        },
    }
}

fn format_of(command: &Command) -> Format {
    match command {
        Command::Solve(a) => a.output.format,
        Command::Verify(a) => a.output.format,
        Command::Table(a) => a.output.format,
        Command::Stability(a) => a.output.format,
    }
}

/// Runs a parsed command and returns the document and exit code.
pub fn execute(command: &Command, digits: u32) -> Result<(Value, i32), CliError> {
    let fmt = Fmt { digits };
    match command {
        Command::Solve(a) => cmd_solve(a, fmt),
        Command::Verify(a) => cmd_verify(a, fmt),
        Command::Table(a) => cmd_table(a, fmt),
        Command::Stability(a) => cmd_stability(a, fmt),
    }
}

#[derive(Clone, Copy)]
struct Fmt {
    digits: u32,
}

impl Fmt {
    fn num(&self, x: f64) -> Value {
        Value::String(if x.is_finite() {
            format!("{:.*e}", self.digits as usize - 1, x)
        } else {
            x.to_string()
        })
    }

    fn surd(&self, x: &QuadSurd) -> Value {
        json!({ "surd": x.to_string(), "decimal": x.to_scientific(self.digits) })
    }

    fn decimal(&self, x: &Decimal) -> Value {
        json!({ "surd": Value::Null, "decimal": x.to_scientific(self.digits) })
    }

    fn radius_value(&self, v: &RadiusValue) -> Value {
        match v {
            RadiusValue::Exact(s) => self.surd(s),
            RadiusValue::Numeric(d) => self.decimal(d),
        }
    }

    fn rational(&self, r: &Rational) -> Value {
        self.surd(&QuadSurd::from_rational(r.clone()))
    }

    fn tolerances(&self, t: &Tolerances) -> Value {
        json!({ "pass": self.num(t.pass), "fail": self.num(t.fail) })
    }
}

/// `√(x)` written with the largest square pulled out of the denominator,
/// e.g. `(11-√65)/28` becomes `√((11-√65)/7)/2`.
pub fn sqrt_surd_string(x: &QuadSurd) -> String {
    if let Some(root) = x.sqrt_in_field() {
        return root.to_string();
    }
    let den = x.a().denom().lcm(x.b().denom());
    let mut k = num_bigint::BigInt::one();
    let mut f = num_bigint::BigInt::from(2);
    let mut rest = den.clone();
    while &f * &f <= rest {
        while (&rest % (&f * &f)).is_zero() {
            rest /= &f * &f;
            k *= &f;
        }
        f += 1;
    }
    let inner = x.scale(&Rational::from_integer(&k * &k));
    if k.is_one() {
        format!("√({inner})")
    } else {
        format!("√({inner})/{k}")
    }
}

fn solution_json(s: &RadiiSolution, fmt: Fmt) -> Result<Value, CliError> {
    let squared: Vec<Value> = s
        .squared_radii
        .iter()
        .map(|e| {
            let radius = match &e.value {
                RadiusValue::Exact(x) => {
                    let root = Decimal::from_surd(x, crate::families::NUMERIC_DIGITS).sqrt().map_err(SolveError::from)?;
                    json!({ "surd": sqrt_surd_string(x), "decimal": root.to_scientific(fmt.digits) })
                }
                RadiusValue::Numeric(d) => {
                    let root = d.rescale(crate::families::NUMERIC_DIGITS).sqrt().map_err(SolveError::from)?;
                    fmt.decimal(&root)
                }
            };
            Ok(json!({
                "label": e.label,
                "multiplicity": e.multiplicity,
                "squared": fmt.radius_value(&e.value),
                "radius": radius,
            }))
        })
        .collect::<Result<_, CliError>>()?;
    Ok(json!({
        "family": s.params.family.slug(),
        "n": s.params.n,
        "p": s.params.p,
        "q": s.params.q,
        "branch": s.branch.slug(),
        "proper": s.proper,
        "exact": s.exact,
        "radii": squared,
        "d": fmt.radius_value(&s.d),
        "t": s.t.as_ref().map(|t| fmt.surd(t)).unwrap_or(Value::Null),
        "mean_curvature_norm": fmt.num(mean_curvature_norm(s)?),
    }))
}

fn solve_json(s: &FamilySolve, fmt: Fmt) -> Value {
    json!({
        "p": s.params.p,
        "q": s.params.q,
        "discriminant": fmt.rational(&s.discriminant),
        "proper_count": s.proper().count(),
        "diagnostic": s.diagnostic.clone().map(Value::String).unwrap_or(Value::Null),
    })
}

fn document(command: &str, params: Value, results: Value, seed: Option<u64>, tolerances: Option<Value>, fmt: Fmt) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "params": params,
        "results": results,
        "seed": seed.map(|s| Value::String(s.to_string())).unwrap_or(Value::Null),
        "tolerances": tolerances.unwrap_or(Value::Null),
        "precision": fmt.digits,
    })
}

fn params_for(family: Family, n: u32, p: Option<u32>, q: Option<u32>) -> Result<Vec<FamilyParams>, CliError> {
    match (p, q) {
        (Some(p), Some(q)) => Ok(vec![FamilyParams::new(family, n, p, q)?]),
        (None, None) => {
            let all = FamilyParams::admissible(family, n);
            if all.is_empty() {
                Err(SolveError::Inadmissible(format!("{family} has no admissible (p, q) for n = {n}")).into())
            } else {
                Ok(all)
            }
        }
        _ => Err(CliError::Usage("--p and --q must be given together".into())),
    }
}

fn parse_branch(raw: &Option<String>) -> Result<Option<Branch>, CliError> {
    raw.as_deref()
        .map(|b| b.parse::<Branch>().map_err(CliError::from))
        .transpose()
}

fn cmd_solve(a: &SolveArgs, fmt: Fmt) -> Result<(Value, i32), CliError> {
    let mut solves = Vec::new();
    let mut solutions = Vec::new();
    for params in params_for(a.family, a.n, a.p, a.q)? {
        let s = solve(&params)?;
        for sol in &s.solutions {
            solutions.push(solution_json(sol, fmt)?);
        }
        solves.push(s);
    }
    let proper = solves.iter().map(|s| s.proper().count()).sum::<usize>();
    let results = json!({
        "solutions": solutions,
        "solves": solves.iter().map(|s| solve_json(s, fmt)).collect::<Vec<_>>(),
        "proper_count": proper,
    });
    let params = json!({ "family": a.family.slug(), "n": a.n, "p": a.p, "q": a.q });
    let code = if proper == 0 { EXIT_NO_PROPER } else { EXIT_OK };
    Ok((document("solve", params, results, None, None, fmt), code))
}

fn config(seed: u64, points: usize, tolerance: Option<f64>) -> Result<VerifyConfig, CliError> {
    if points == 0 {
        return Err(CliError::Usage("--points must be positive".into()));
    }
    let tolerances = match tolerance {
        Some(t) if t.is_finite() && t > 0.0 => Tolerances::with_pass(t),
        Some(t) => return Err(CliError::Usage(format!("--tolerance must be positive, got {t}"))),
        None => Tolerances::default(),
    };
    Ok(VerifyConfig { seed, points, tolerances })
}

fn oracle_json(r: &BitensionReport, fmt: Fmt) -> Value {
    json!({
        "oracle": r.oracle.slug(),
        "points": r.points,
        "seed": r.seed.to_string(),
        "max_tau": fmt.num(r.max_tau),
        "max_tangential": fmt.num(r.max_tangential),
        "max_normal": fmt.num(r.max_normal),
        "max_step_change": fmt.num(r.max_step_change),
        "verdict": r.verdict.slug(),
    })
}

fn composite_json(r: &CompositeReport, fmt: Fmt) -> Result<Value, CliError> {
    let algebraic = r.algebraic.as_ref().map(|a| {
        json!({
            "residuals": a.residual.values.iter().map(|v| fmt.num(*v)).collect::<Vec<_>>(),
            "max_abs": fmt.num(a.residual.max_abs),
            "parallel_residual": fmt.num(a.residual.parallel_residual),
            "exact_zero": a.residual.exact_zero,
            "verdict": a.verdict.slug(),
        })
    });
    Ok(json!({
        "solution": solution_json(&r.solution, fmt)?,
        "algebraic": algebraic,
        "oracles": r.oracles.iter().map(|o| oracle_json(o, fmt)).collect::<Vec<_>>(),
        "verdict": r.verdict.slug(),
    }))
}

fn cmd_verify(a: &VerifyArgs, fmt: Fmt) -> Result<(Value, i32), CliError> {
    let cfg = config(a.seed, a.points, a.tolerance)?;
    let oracles: Vec<Oracle> = match &a.oracle {
        Some(list) => list.iter().map(|s| s.trim().parse()).collect::<Result<_, _>>()?,
        None => [Oracle::Algebraic, Oracle::SphereFd, Oracle::CpnFd]
            .into_iter()
            .filter(|o| o.applies_to(a.family))
            .collect(),
    };
    let branch = parse_branch(&a.branch)?;
    let targets: Vec<RadiiSolution> = match &a.radii {
        Some(raw) => {
            let radii: Vec<Decimal> = raw
                .iter()
                .map(|s| s.trim().parse::<Decimal>())
                .collect::<Result<_, _>>()
                .map_err(|e| CliError::Usage(format!("bad --radii: {e}")))?;
            let params = match (a.family, a.p, a.q) {
                (_, Some(p), Some(q)) => FamilyParams::new(a.family, a.n, p, q)?,
                (Family::CpnHypersurface, _, _) => {
                    return Err(CliError::Usage("hypersurface radii need --p and --q".into()))
                }
                _ => FamilyParams::new(a.family, a.n, 1, a.n)?,
            };
            vec![RadiiSolution::from_radii(params, &radii)?]
        }
        None => {
            let mut out = Vec::new();
            for params in params_for(a.family, a.n, a.p, a.q)? {
                out.extend(
                    solve(&params)?
                        .proper()
                        .filter(|s| branch.map_or(true, |b| s.branch == b))
                        .cloned(),
                );
            }
            out
        }
    };
    let params = json!({
        "family": a.family.slug(),
        "n": a.n,
        "p": a.p,
        "q": a.q,
        "radii": a.radii,
        "branch": a.branch,
        "oracles": oracles.iter().map(|o| o.slug()).collect::<Vec<_>>(),
        "points": cfg.points,
    });
    let tol = Some(fmt.tolerances(&cfg.tolerances));
    if targets.is_empty() {
        let results = json!({ "reports": [], "verdict": Value::Null });
        return Ok((document("verify", params, results, Some(cfg.seed), tol, fmt), EXIT_NO_PROPER));
    }
    let mut reports = Vec::new();
    let mut verdicts = Vec::new();
    for s in &targets {
        let r = verify_solution(s, &oracles, &cfg)?;
        verdicts.push(r.verdict);
        reports.push(composite_json(&r, fmt)?);
    }
    let verdict = Verdict::combine(verdicts);
    let code = match verdict {
        Verdict::Biharmonic => EXIT_OK,
        Verdict::NotBiharmonic => EXIT_NOT_BIHARMONIC,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    };
    let results = json!({ "reports": reports, "verdict": verdict.slug() });
    Ok((document("verify", params, results, Some(cfg.seed), tol, fmt), code))
}

fn adjudication_json(r: &AdjudicationReport, fmt: Fmt) -> Result<Value, CliError> {
    let rows = r
        .rows
        .iter()
        .map(|row| {
            Ok(json!({
                "p": row.row.params.p,
                "q": row.row.params.q,
                "equation_one_residual": fmt.num(row.equation_one_residual),
                "variant_residual": fmt.num(row.variant_residual),
                "equation_one_solution": solution_json(&row.equation_one_solution, fmt)?,
                "equation_one_solution_residual": fmt.num(row.equation_one_solution_residual),
                "paper_oracle": oracle_json(&row.paper_oracle, fmt),
                "equation_one_oracle": oracle_json(&row.equation_one_oracle, fmt),
                "endorsement": row.endorsed.slug(),
                "confirms_printed": row.endorsed.confirms_printed(),
            }))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(json!({
        "n": r.n,
        "rows": rows,
        "all_confirmed": r.all_confirmed(),
    }))
}

fn cmd_table(a: &TableArgs, fmt: Fmt) -> Result<(Value, i32), CliError> {
    let id: TableId = a.table.parse()?;
    let cfg = config(a.seed, a.points, a.tolerance)?;
    let table = reconstruct_paper_table(id)?;
    let rows = table
        .rows
        .iter()
        .map(|row| {
            let residual = match id {
                TableId::LagrangianN4 => {
                    let p = &row.params;
                    let mut b = vec![row.r_squared.to_f64(); p.p as usize];
                    b.extend(vec![row.s_squared.to_f64(); p.q as usize]);
                    let r = residual_lagrangian(&b, p.n)?;
                    r.iter().fold(0.0f64, |m, v| m.max(v.abs()))
                }
                TableId::HypersurfaceN5 => crate::verifier::criterion_residual(&row.as_solution()?)?.max_abs,
            };
            Ok(json!({
                "p": row.params.p,
                "q": row.params.q,
                "printed_r": row.printed_r,
                "printed_s": row.printed_s,
                "r_squared": fmt.surd(&row.r_squared),
                "s_squared": fmt.surd(&row.s_squared),
                "solver_match": row.solver_match(),
                "solver_branch": row.solver_branch.map(|b| b.slug()),
                "variant_match": row.variant_match(),
                "variant_branch": row.variant_branch.map(|b| b.slug()),
                "criterion_residual": fmt.num(residual),
            }))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let discriminants: Vec<Value> = table.solver_output.iter().map(|s| fmt.rational(&s.discriminant)).collect();
    let mut results = json!({
        "table": id.slug(),
        "family": id.family().slug(),
        "n": id.n(),
        "rows": rows,
        "row_count": table.rows.len(),
        "solver_matches": table.solver_matches(),
        "discriminants": discriminants,
    });
    let (code, seed, tol) = match id {
        TableId::LagrangianN4 => {
            let all = table.solver_matches() == table.rows.len();
            (if all { EXIT_OK } else { EXIT_DISAGREES }, None, None)
        }
        TableId::HypersurfaceN5 => {
            let report = adjudicate_hypersurface_table(id.n(), &cfg)?;
            results["adjudication"] = adjudication_json(&report, fmt)?;
            let code = if report.all_confirmed() { EXIT_OK } else { EXIT_DISAGREES };
            (code, Some(cfg.seed), Some(fmt.tolerances(&cfg.tolerances)))
        }
    };
    let params = json!({ "table": id.slug() });
    Ok((document("table", params, results, seed, tol, fmt), code))
}

fn stability_json(r: &StabilityReport, s: &RadiiSolution, fmt: Fmt) -> Result<Value, CliError> {
    Ok(json!({
        "solution": solution_json(s, fmt)?,
        "d": fmt.num(r.d),
        "sum_inv_a4": fmt.num(r.sum_inv_a4),
        "mean_curvature_sq": fmt.num(r.mean_curvature_sq),
        "mean_curvature_sq_closed_form": fmt.num(r.mean_curvature_sq_closed_form),
        "closed_form_value": fmt.num(r.closed_form_value),
        "numeric_value": fmt.num(r.numeric_value),
        "relative_agreement": fmt.num(r.relative_agreement),
        "agrees": r.agrees,
        "sign_verdict": r.sign_verdict.slug(),
        "sample_point": r.sample_point.iter().map(|x| fmt.num(*x)).collect::<Vec<_>>(),
    }))
}

fn cmd_stability(a: &StabilityArgs, fmt: Fmt) -> Result<(Value, i32), CliError> {
    let params = FamilyParams::new(Family::CpnLagrangianTorus, a.n, a.p, a.q)?;
    let branch = parse_branch(&a.branch)?;
    let cfg = VerifyConfig { seed: a.seed, ..VerifyConfig::default() };
    let sol = solve(&params)?;
    let chosen: Vec<&RadiiSolution> = sol
        .proper()
        .filter(|s| branch.map_or(true, |b| s.branch == b))
        .collect();
    if chosen.is_empty() {
        return Err(CliError::Usage(format!(
            "no proper Lagrangian solution for n = {}, p = {}, q = {}{}",
            a.n,
            a.p,
            a.q,
            a.branch.as_deref().map(|b| format!(", branch {b}")).unwrap_or_default()
        )));
    }
    let mut reports = Vec::new();
    let mut negative = true;
    let mut agree = true;
    for s in chosen {
        let r = stability_report(s, &cfg)?;
        negative &= r.numeric_value < 0.0;
        agree &= r.agrees;
        reports.push(stability_json(&r, s, fmt)?);
    }
    let code = if !negative {
        EXIT_DISAGREES
    } else if !agree {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    };
    let echo = json!({ "n": a.n, "p": a.p, "q": a.q, "branch": a.branch });
    let results = json!({ "reports": reports, "all_negative": negative, "all_agree": agree });
    Ok((document("stability", echo, results, Some(a.seed), None, fmt), code))
}

/// Serializes a document in the requested format.
pub fn render(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("JSON values always serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let (header, rows) = tabulate(doc);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header).expect("in-memory write");
            for row in rows {
                w.write_record(&row).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV of UTF-8 input")
        }
        Format::Md => {
            let (header, rows) = tabulate(doc);
            let cell = |s: &String| s.replace('|', "\\|");
            let mut out = format!(
                "## bht {} ({})\n\n",
                doc["command"].as_str().unwrap_or_default(),
                doc["schema_version"].as_str().unwrap_or_default()
            );
            out.push_str(&format!("| {} |\n", header.iter().map(cell).collect::<Vec<_>>().join(" | ")));
            out.push_str(&format!("|{}\n", " --- |".repeat(header.len())));
            for row in rows {
                out.push_str(&format!("| {} |\n", row.iter().map(cell).collect::<Vec<_>>().join(" | ")));
            }
            out
        }
    }
}

/// One row per primary result item, nested fields flattened to dotted keys.
fn tabulate(doc: &Value) -> (Vec<String>, Vec<Vec<String>>) {
    let results = &doc["results"];
    let items: Vec<Value> = match doc["command"].as_str() {
        Some("solve") => results["solutions"].as_array().cloned().unwrap_or_default(),
        Some("table") => {
            let mut rows = results["rows"].as_array().cloned().unwrap_or_default();
            if let Some(adj) = results["adjudication"]["rows"].as_array() {
                for (row, extra) in rows.iter_mut().zip(adj) {
                    row["adjudication"] = extra.clone();
                }
            }
            rows
        }
        _ => results["reports"].as_array().cloned().unwrap_or_default(),
    };
    let flat: Vec<Map<String, Value>> = items
        .iter()
        .map(|item| {
            let mut m = Map::new();
            flatten_into("", item, &mut m);
            m
        })
        .collect();
    let header: Vec<String> = flat
        .iter()
        .flat_map(|m| m.keys().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let rows = flat
        .iter()
        .map(|m| header.iter().map(|k| m.get(k).map(scalar).unwrap_or_default()).collect())
        .collect();
    (header, rows)
}

fn flatten_into(prefix: &str, v: &Value, out: &mut Map<String, Value>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten_into(&key(k), x, out);
            }
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in xs.iter().enumerate() {
                flatten_into(&key(&i.to_string()), x, out);
            }
        }
        Value::Array(xs) => {
            out.insert(prefix.to_string(), Value::String(xs.iter().map(scalar).collect::<Vec<_>>().join(";")));
        }
        other => {
            out.insert(prefix.to_string(), other.clone());
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}
