//! Command-line front end: classify fields, query single quantities, run the
//! claim verifier, scan for critical fields and export the catalog.
//!
//! Exit codes: 0 on success, 1 when an asserted claim is refuted, 2 on
//! malformed input.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use lorentz_harmonic::algebra::{einstein_factor, koszul_connection};
use lorentz_harmonic::catalog::{self, build_case, rational_witnesses, CaseParams};
use lorentz_harmonic::expr::{Expr, NoVars};
use lorentz_harmonic::format::{catalog_json, parse_algebra};
use lorentz_harmonic::harmonicity as h;
use lorentz_harmonic::verifier::{
    brute_force_critical_scan, render_markdown, run_full_verification, GridSpec, VerifyConfig,
    SCHEMA,
};
use lorentz_harmonic::{
    ConnectionCoefficients, InvariantVector, MetricLieAlgebra, Mode, Scalar, Tolerance,
};

#[derive(Parser)]
#[command(
    name = "lorentz-harmonic",
    version,
    about = "Harmonicity of left-invariant vector fields on Lorentzian Lie groups"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Arithmetic: exact rationals where possible, or f64 throughout.
    #[arg(long, global = true, default_value = "exact")]
    mode: Mode,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Relative tolerance for float comparisons.
    #[arg(long, global = true)]
    tol_rel: Option<f64>,
    /// Absolute tolerance floor for float comparisons.
    #[arg(long, global = true)]
    tol_abs: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Args)]
struct Source {
    /// Catalog case 1..16.
    #[arg(long, conflicts_with = "algebra", required_unless_present = "algebra")]
    case: Option<u8>,
    /// Case parameters, e.g. `A=5,B=3,eps=1`; defaults to the first witness.
    #[arg(long, requires = "case")]
    params: Option<String>,
    /// JSON algebra file.
    #[arg(long)]
    algebra: Option<PathBuf>,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    source: Source,
    /// Coefficients `a,b,c,d` (frame coordinates for cases 12-16).
    #[arg(long, allow_hyphen_values = true)]
    vector: String,
}

#[derive(Subcommand)]
enum Command {
    /// Full classification report for one vector field.
    Classify(PointArgs),
    /// Rough Laplacian and its collinearity with V.
    Laplacian(PointArgs),
    /// Energy density n/2 + |∇V|²/2.
    Energy(PointArgs),
    /// Trace of R(∇.V, V).
    CurvatureTrace(PointArgs),
    /// Check the claims database against the engine.
    Verify {
        /// Restrict to these cases (repeatable).
        #[arg(long)]
        case: Vec<u8>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Random parameter draws per claim.
        #[arg(long, default_value_t = 5)]
        draws: usize,
    },
    /// Brute-force search for critical fields on a coefficient grid.
    Scan {
        #[command(flatten)]
        source: Source,
        /// `min:max:step` on every axis.
        #[arg(long, default_value = "-2:2:0.25", allow_hyphen_values = true)]
        grid: GridSpec,
        /// Include every critical grid point in the output.
        #[arg(long)]
        points: bool,
    },
    /// Catalog export.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// All cases, constraints, witnesses and claims.
    Dump,
}

/// An algebra ready for computation.
struct Loaded {
    alg: MetricLieAlgebra,
    conn: ConnectionCoefficients,
    header: Value,
}

impl Global {
    fn tolerance(&self) -> Result<Tolerance> {
        let mut tol = Tolerance::default();
        if let Some(r) = self.tol_rel {
            if !(r > 0.0 && r.is_finite()) {
                bail!("--tol-rel must be positive");
            }
            tol.rel = r;
        }
        if let Some(a) = self.tol_abs {
            if !(a > 0.0 && a.is_finite()) {
                bail!("--tol-abs must be positive");
            }
            tol.abs = a;
        }
        Ok(tol)
    }
}

fn load(source: &Source, global: &Global, tol: &Tolerance) -> Result<Loaded> {
    let (alg, header) = match (&source.case, &source.algebra) {
        (Some(id), _) => {
            let params = match &source.params {
                Some(p) => CaseParams::parse(*id, p)?,
                None => rational_witnesses(*id)?
                    .into_iter()
                    .next()
                    .context("case has no witness")?,
            };
            let built = build_case(&params)?;
            let header = json!({ "case": id, "params": params });
            (built.working, header)
        }
        (None, Some(path)) => {
            let src =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            (
                parse_algebra(&src, tol)?,
                json!({ "algebra": path.display().to_string() }),
            )
        }
        (None, None) => bail!("either --case or --algebra is required"),
    };
    let alg = match global.mode {
        Mode::Float => alg.to_mode(Mode::Float),
        Mode::Exact => alg,
    };
    let conn = koszul_connection(&alg)?;
    Ok(Loaded { alg, conn, header })
}

fn parse_vector(src: &str, dim: usize, mode: Mode) -> Result<InvariantVector> {
    let coeffs = src
        .split(',')
        .map(|s| Expr::parse(s.trim()).and_then(|e| e.eval(&NoVars)))
        .collect::<lorentz_harmonic::Result<Vec<Scalar>>>()?;
    if coeffs.len() != dim {
        bail!("--vector needs {dim} coefficients, found {}", coeffs.len());
    }
    let v = InvariantVector::new(coeffs);
    Ok(match mode {
        Mode::Float => v.to_mode(Mode::Float),
        Mode::Exact => v,
    })
}

fn with_header(header: &Value, body: Value, mode: Mode) -> Value {
    let mut out = json!({ "schema": SCHEMA, "mode": mode });
    let obj = out.as_object_mut().expect("object");
    for src in [header, &body] {
        if let Some(map) = src.as_object() {
            obj.extend(map.clone());
        }
    }
    out
}

fn effective_mode(alg: &MetricLieAlgebra, v: &InvariantVector) -> Mode {
    if alg.is_exact() && v.is_exact() {
        Mode::Exact
    } else {
        Mode::Float
    }
}

/// Flattens a JSON object into `key,value` rows.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, x, out);
            }
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = items.iter().map(scalar_text).collect();
            out.push((prefix.to_string(), parts.join(" ")));
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), x, out);
            }
        }
        other => out.push((prefix.to_string(), scalar_text(other))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn write_csv_rows<S: Serialize>(
    header: &[&str],
    rows: impl IntoIterator<Item = S>,
) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn emit(value: &Value, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(value)? + "\n",
        Format::Csv => {
            let mut rows = Vec::new();
            flatten("", value, &mut rows);
            write_csv_rows(&["key", "value"], rows)?
        }
        Format::Markdown => {
            let mut rows = Vec::new();
            flatten("", value, &mut rows);
            let mut s = String::from("| Quantity | Value |\n|---|---|\n");
            for (k, v) in rows {
                s.push_str(&format!("| {} | {} |\n", k, v.replace('|', "\\|")));
            }
            s
        }
    })
}

fn point_command(
    cmd: &Command,
    args: &PointArgs,
    global: &Global,
    tol: &Tolerance,
) -> Result<String> {
    let l = load(&args.source, global, tol)?;
    let v = parse_vector(&args.vector, l.alg.dim(), global.mode)?;
    if v.is_zero() {
        bail!("--vector must be nonzero");
    }
    let mode = effective_mode(&l.alg, &v);
    let (alg, conn) = (&l.alg, &l.conn);
    let body = match cmd {
        Command::Classify(_) => {
            let report = h::classify(alg, conn, &v, tol)?;
            let einstein = einstein_factor(alg, conn, tol);
            json!({ "vector": v, "einstein": einstein, "report": report })
        }
        Command::Laplacian(_) => json!({
            "vector": v,
            "laplacian": h::rough_laplacian(alg, conn, &v)?,
            "collinearity": h::collinearity_test(alg, conn, &v, tol)?,
        }),
        Command::Energy(_) => json!({
            "vector": v,
            "energy_density": h::energy_density(alg, conn, &v)?,
        }),
        Command::CurvatureTrace(_) => json!({
            "vector": v,
            "curvature_trace": h::curvature_trace(alg, conn, &v)?,
        }),
        _ => unreachable!("not a point command"),
    };
    emit(&with_header(&l.header, body, mode), global.format)
}

#[derive(Serialize)]
struct OutcomeRow<'a> {
    claim: &'a str,
    case: u8,
    kind: &'a str,
    status: String,
    cell: &'a str,
    params: String,
    mode: String,
    verdict: String,
    matched: String,
    computed: &'a str,
    residual: f64,
    bound: f64,
}

fn enum_text<T: Serialize>(x: &T) -> String {
    scalar_text(&serde_json::to_value(x).expect("enum serializes"))
}

fn verify(
    cases: &[u8],
    seed: u64,
    draws: usize,
    global: &Global,
    tol: &Tolerance,
) -> Result<(String, bool)> {
    let config = VerifyConfig {
        seed,
        mode: global.mode,
        tol: *tol,
        cases: cases.to_vec(),
        random_draws: draws,
        ..VerifyConfig::default()
    };
    let report = run_full_verification(&config)?;
    let text = match global.format {
        Format::Json => report.to_json() + "\n",
        Format::Markdown => render_markdown(&report),
        Format::Csv => write_csv_rows(
            &[
                "claim", "case", "kind", "status", "cell", "params", "mode", "verdict", "matched",
                "computed", "residual", "bound",
            ],
            report.outcomes.iter().map(|o| OutcomeRow {
                claim: &o.claim,
                case: o.case,
                kind: o.kind.name(),
                status: enum_text(&o.status),
                cell: &o.cell,
                params: o.params.to_string(),
                mode: o.mode.to_string(),
                verdict: enum_text(&o.verdict),
                matched: o.matched.join("; "),
                computed: &o.computed,
                residual: o.residual,
                bound: o.bound,
            }),
        )?,
    };
    Ok((text, report.passed()))
}

fn scan(
    source: &Source,
    grid: &GridSpec,
    points: bool,
    global: &Global,
    tol: &Tolerance,
) -> Result<String> {
    let l = load(source, global, tol)?;
    let mut result = brute_force_critical_scan(&l.alg, &l.conn, grid, tol)?;
    if global.format == Format::Csv {
        let rows = result.critical.iter().map(|p| {
            let mut r: Vec<String> = p.coeffs.iter().map(|x| x.to_string()).collect();
            r.push(enum_text(&p.kind));
            r.push(p.lambda.as_ref().map(|x| x.to_string()).unwrap_or_default());
            r
        });
        return write_csv_rows(&["a", "b", "c", "d", "kind", "lambda"], rows);
    }
    if !points {
        result.critical.clear();
    }
    let body = serde_json::to_value(&result)?;
    emit(
        &with_header(&l.header, json!({ "scan": body }), global.mode),
        global.format,
    )
}

fn catalog_dump(format: Format) -> Result<String> {
    let value = catalog_json()?;
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&value)? + "\n",
        Format::Csv => {
            let mut rows = Vec::new();
            for id in 1..=catalog::CASE_COUNT {
                for c in catalog::claims_for(id)? {
                    rows.push((
                        c.id.clone(),
                        c.case_id,
                        c.kind.name(),
                        enum_text(&c.status),
                        c.statement(),
                    ));
                }
            }
            write_csv_rows(&["id", "case", "kind", "status", "statement"], rows)?
        }
        Format::Markdown => {
            let mut s = String::from(
                "| Case | Type | Brackets | Constraints | Witnesses |\n|---|---|---|---|---|\n",
            );
            for def in catalog::cases() {
                let brackets: Vec<String> = def
                    .brackets
                    .iter()
                    .map(|b| {
                        let c: Vec<String> = b.coeffs.iter().map(|x| x.to_string()).collect();
                        format!("[e{},e{}] = ({})", b.i, b.j, c.join(", "))
                    })
                    .collect();
                let witnesses: Vec<String> = rational_witnesses(def.id)?
                    .iter()
                    .map(|w| w.to_string())
                    .collect();
                s.push_str(&format!(
                    "| {} | {} | {} | {} | {} |\n",
                    def.id,
                    def.family,
                    brackets.join("; "),
                    def.constraint_strings().join("; "),
                    witnesses.join("; ")
                ));
            }
            s
        }
    })
}

fn run(cli: Cli) -> Result<(String, ExitCode)> {
    let tol = cli.global.tolerance()?;
    let global = &cli.global;
    let ok = ExitCode::SUCCESS;
    Ok(match &cli.command {
        cmd @ (Command::Classify(args)
        | Command::Laplacian(args)
        | Command::Energy(args)
        | Command::CurvatureTrace(args)) => (point_command(cmd, args, global, &tol)?, ok),
        Command::Verify { case, seed, draws } => {
            let (text, passed) = verify(case, *seed, *draws, global, &tol)?;
            (text, if passed { ok } else { ExitCode::from(1) })
        }
        Command::Scan {
            source,
            grid,
            points,
        } => (scan(source, grid, *points, global, &tol)?, ok),
        Command::Catalog {
            action: CatalogAction::Dump,
        } => (catalog_dump(global.format)?, ok),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, code)) => {
            let mut out = io::stdout().lock();
            if out
                .write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
