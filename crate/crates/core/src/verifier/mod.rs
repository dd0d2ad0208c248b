//! Cross-checks the claims database against the engine.
//!
//! A *cell* is one claim at one parameter set: every case witness, every
//! threshold witness of the claim, and a number of seeded random draws.
//! Witness cells draw their sample vectors from a seed-independent stream,
//! so their verdicts do not depend on the run seed.

mod render;
pub mod scan;
pub mod subspace;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{
    koszul_connection, ConnectionCoefficients, InvariantVector, MetricLieAlgebra,
};
use crate::catalog::{
    self, build_case, claims_for, random_admissible, rational_witnesses, BuiltCase, CaseParams,
    ClaimKind, ClaimRecord, ClaimStatus, ClaimVariant, Family,
};
use crate::error::{Error, Result};
use crate::expr::{Env, Var};
use crate::harmonicity::{self as h, CollinearityResult};
use crate::linalg::vec;
use crate::scalar::{Mode, Scalar, Tolerance};

pub use render::render_markdown;
pub use scan::{brute_force_critical_scan, GridSpec, ScanResult};

pub const SCHEMA: &str = "v1";

/// Gray-zone width: residuals in `(bound, GRAY_FACTOR · bound]` are rerun.
const GRAY_FACTOR: f64 = 10.0;
const SPAN_REL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Arithmetic for witness cells; random draws are always float.
    pub mode: Mode,
    pub tol: Tolerance,
    /// Cases to include, all when empty.
    pub cases: Vec<u8>,
    pub random_draws: usize,
    /// Samples on (and off) the family per cell.
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 42,
            mode: Mode::Exact,
            tol: Tolerance::default(),
            cases: Vec::new(),
            random_draws: 5,
            samples: 5,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Confirmed,
    Refuted,
    ConflictingResolved,
    NotApplicable,
}

/// The verdict for one claim at one parameter set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationOutcome {
    pub claim: String,
    pub case: u8,
    pub kind: ClaimKind,
    pub status: ClaimStatus,
    /// `witness k`, `threshold k` or `draw k`.
    pub cell: String,
    pub params: CaseParams,
    pub mode: Mode,
    pub verdict: Verdict,
    /// Variant labels consistent with the computation (conflicting claims).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub matched: Vec<String>,
    pub computed: String,
    pub residual: f64,
    pub bound: f64,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Parameters of the exact re-run, when the float verdict was borderline.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gray_zone_rerun: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub cells: usize,
    pub confirmed: usize,
    pub refuted: usize,
    pub conflicting_resolved: usize,
    pub not_applicable: usize,
    /// Refuted cells of asserted (non-conflicting) claims; the gate.
    pub refuted_asserted: usize,
}

impl Summary {
    fn of(outcomes: &[VerificationOutcome]) -> Summary {
        let mut s = Summary {
            cells: outcomes.len(),
            ..Summary::default()
        };
        for o in outcomes {
            match o.verdict {
                Verdict::Confirmed => s.confirmed += 1,
                Verdict::Refuted => {
                    s.refuted += 1;
                    if o.status == ClaimStatus::Asserted {
                        s.refuted_asserted += 1;
                    }
                }
                Verdict::ConflictingResolved => s.conflicting_resolved += 1,
                Verdict::NotApplicable => s.not_applicable += 1,
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportMeta {
    pub seed: u64,
    pub mode: Mode,
    pub tolerances: Tolerance,
    pub random_draws: usize,
    pub samples: usize,
    pub cases: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub meta: ReportMeta,
    pub outcomes: Vec<VerificationOutcome>,
    pub summary: Summary,
}

impl VerificationReport {
    /// No asserted claim was refuted.
    pub fn passed(&self) -> bool {
        self.summary.refuted_asserted == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Result of checking one variant in one cell.
#[derive(Clone, Debug)]
struct VariantEval {
    applicable: bool,
    pass: bool,
    computed: String,
    residual: f64,
    bound: f64,
    samples: usize,
    gray: bool,
    detail: Option<String>,
}

impl VariantEval {
    fn not_applicable() -> Self {
        VariantEval {
            applicable: false,
            pass: false,
            computed: String::new(),
            residual: 0.0,
            bound: 0.0,
            samples: 0,
            gray: false,
            detail: None,
        }
    }
}

/// Accumulates sample measurements into a variant verdict.
struct Tally {
    pass: bool,
    residual: f64,
    bound: f64,
    samples: usize,
    gray: bool,
    computed: Option<String>,
    detail: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            pass: true,
            residual: 0.0,
            bound: 0.0,
            samples: 0,
            gray: false,
            computed: None,
            detail: None,
        }
    }

    fn measure(&mut self, residual: f64, bound: f64) {
        if residual > bound && residual <= GRAY_FACTOR * bound {
            self.gray = true;
        }
    }

    /// Records one sample; the first failure fixes residual and detail.
    fn record(&mut self, ok: bool, residual: f64, bound: f64, computed: String, detail: String) {
        self.samples += 1;
        if self.pass && !ok {
            self.pass = false;
            self.residual = residual;
            self.bound = bound;
            self.computed = Some(computed);
            self.detail = Some(detail);
        } else if self.pass {
            if residual >= self.residual {
                self.residual = residual;
                self.bound = bound;
            }
            self.computed.get_or_insert(computed);
        }
    }

    fn finish(self) -> VariantEval {
        VariantEval {
            applicable: true,
            pass: self.pass,
            computed: self.computed.unwrap_or_default(),
            residual: self.residual,
            bound: self.bound,
            samples: self.samples,
            gray: self.gray,
            detail: self.detail,
        }
    }
}

fn vec_f64(v: &[Scalar]) -> Vec<f64> {
    v.iter().map(Scalar::to_f64).collect()
}

/// Linearly independent generators, as exact-or-float scalars.
fn independent(gens: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    let mut out: Vec<Vec<Scalar>> = Vec::new();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for g in gens {
        let f = vec_f64(&g);
        if f.iter().all(|x| *x == 0.0) {
            continue;
        }
        if rows.is_empty() || !subspace::in_span(&rows, &f, SPAN_REL) {
            rows.push(f);
            out.push(g);
        }
    }
    out
}

/// Draws sample coefficients: small integers in exact cells, floats
/// otherwise.
struct Sampler {
    rng: ChaCha8Rng,
    exact: bool,
}

impl Sampler {
    fn coefficient(&mut self) -> Scalar {
        if self.exact {
            Scalar::int(self.rng.random_range(-5..=5))
        } else {
            Scalar::float(self.rng.random_range(-2.0..2.0))
        }
    }

    fn combination(&mut self, gens: &[Vec<Scalar>]) -> Option<Vec<Scalar>> {
        if gens.is_empty() {
            return None;
        }
        for _ in 0..100 {
            let mut v = vec::zeros(4);
            for g in gens {
                let t = self.coefficient();
                vec::axpy(&mut v, &t, g);
            }
            if !vec::is_zero(&v) && vec::max_abs(&v) > 1e-3 {
                return Some(v);
            }
        }
        None
    }

    /// A point of `domain` outside `family`.
    fn outside(&mut self, domain: &[Vec<Scalar>], family: &[Vec<Scalar>]) -> Option<Vec<Scalar>> {
        let rows: Vec<Vec<f64>> = family
            .iter()
            .map(|g| g.iter().map(Scalar::to_f64).collect())
            .collect();
        if !domain.is_empty() {
            let dom: Vec<Vec<f64>> = domain
                .iter()
                .map(|g| g.iter().map(Scalar::to_f64).collect())
                .collect();
            let mut joint = rows.clone();
            joint.extend(dom.iter().cloned());
            if subspace::rank(&joint, SPAN_REL) == subspace::rank(&rows, SPAN_REL)
                && !rows.is_empty()
            {
                return None;
            }
        }
        for _ in 0..200 {
            let v = self.combination(domain)?;
            let f: Vec<f64> = v.iter().map(Scalar::to_f64).collect();
            if rows.is_empty() || !subspace::in_span(&rows, &f, SPAN_REL) {
                return Some(v);
            }
        }
        None
    }
}

/// Parameters and coordinates `a, b, c, d` together.
struct PointEnv<'a> {
    params: &'a CaseParams,
    v: &'a [Scalar],
}

impl Env for PointEnv<'_> {
    fn lookup(&self, var: Var) -> Option<Scalar> {
        match var {
            Var::Coord(i) => self.v.get(i).cloned(),
            other => self.params.lookup(other),
        }
    }
}

struct Geometry<'a> {
    alg: &'a MetricLieAlgebra,
    conn: &'a ConnectionCoefficients,
    tol: &'a Tolerance,
}

impl Geometry<'_> {
    fn collinear_measure(t: &mut Tally, r: &CollinearityResult) {
        t.measure(r.residual, r.bound);
        t.measure(r.magnitude, r.zero_bound);
    }

    /// Evaluates a predicate kind; returns (holds, residual, bound).
    fn predicate(
        &self,
        kind: ClaimKind,
        v: &InvariantVector,
        t: &mut Tally,
    ) -> Result<(bool, f64, f64)> {
        let (alg, conn, tol) = (self.alg, self.conn, self.tol);
        Ok(match kind {
            ClaimKind::CriticalFamily => {
                let r = h::collinearity_test(alg, conn, v, tol)?;
                Self::collinear_measure(t, &r);
                (r.is_collinear(), r.residual, r.bound)
            }
            ClaimKind::SpatiallyHarmonicCondition => {
                let r = h::is_spatially_harmonic(alg, conn, v, tol)?;
                Self::collinear_measure(t, &r);
                (r.is_collinear(), r.residual, r.bound)
            }
            ClaimKind::HarmonicMapThreshold => {
                let r = h::defines_harmonic_map(alg, conn, v, tol)?;
                t.measure(r.laplacian_residual, r.laplacian_bound);
                t.measure(r.curvature_trace_residual, r.curvature_trace_bound);
                let worst = if r.laplacian_residual / r.laplacian_bound
                    >= r.curvature_trace_residual / r.curvature_trace_bound
                {
                    (r.laplacian_residual, r.laplacian_bound)
                } else {
                    (r.curvature_trace_residual, r.curvature_trace_bound)
                };
                (r.holds, worst.0, worst.1)
            }
            ClaimKind::HarmonicSection
            | ClaimKind::GeodesicFamily
            | ClaimKind::KillingCondition
            | ClaimKind::ParallelFamily => {
                let c = match kind {
                    ClaimKind::HarmonicSection => h::is_harmonic_section(alg, conn, v, tol)?,
                    ClaimKind::GeodesicFamily => h::is_geodesic(alg, conn, v, tol)?,
                    ClaimKind::KillingCondition => h::is_killing(alg, v, tol)?,
                    _ => h::is_parallel(alg, conn, v, tol)?,
                };
                t.measure(c.residual, c.bound);
                (c.holds, c.residual, c.bound)
            }
            ClaimKind::Eigenvalue | ClaimKind::EnergyFormula => unreachable!("not a predicate"),
        })
    }
}

fn eval_variant(
    claim: &ClaimRecord,
    variant: &ClaimVariant,
    built: &BuiltCase,
    geo: &Geometry<'_>,
    sampler: &mut Sampler,
    samples: usize,
) -> Result<VariantEval> {
    let params = &built.params;
    for c in &variant.requires {
        if !c.holds(params, geo.tol)? {
            return Ok(VariantEval::not_applicable());
        }
    }
    let domain = independent(variant.domain.generators(params)?);
    let family = match &variant.family {
        Family::All => domain.clone(),
        f => independent(f.generators(params)?),
    };
    let mut t = Tally::new();
    match claim.kind {
        ClaimKind::Eigenvalue => {
            let expected = variant
                .expected
                .as_ref()
                .expect("eigenvalue claim")
                .eval(params)?;
            for _ in 0..samples {
                let Some(v) = sampler.combination(&domain) else {
                    break;
                };
                let v = InvariantVector::new(v);
                let r = h::collinearity_test(geo.alg, geo.conn, &v, geo.tol)?;
                Geometry::collinear_measure(&mut t, &r);
                match r.factor() {
                    Some(lambda) => {
                        let diff = (&lambda - &expected).abs_f64();
                        let scale = (1.0 + expected.abs_f64()).max(geo.conn.scale().powi(2));
                        let ok = geo.tol.is_negligible(&(&lambda - &expected), scale);
                        let bound = geo.tol.bound(scale);
                        t.measure(diff, bound);
                        t.record(
                            ok,
                            diff,
                            bound,
                            format!("lambda = {lambda}"),
                            format!("at V = {v}: lambda = {lambda}, expected {expected}"),
                        );
                    }
                    None => t.record(
                        false,
                        r.residual,
                        r.bound,
                        "not collinear".into(),
                        format!("at V = {v}: Laplacian not collinear to V"),
                    ),
                }
            }
        }
        ClaimKind::EnergyFormula => {
            let expr = variant.expected.as_ref().expect("energy claim");
            for _ in 0..samples {
                let Some(v) = sampler.combination(&domain) else {
                    break;
                };
                let expected = expr.eval(&PointEnv { params, v: &v })?;
                let v = InvariantVector::new(v);
                let energy = h::energy_density(geo.alg, geo.conn, &v)?;
                let diff = &energy - &expected;
                let scale = (1.0 + vec::norm(&v.coeffs)).powi(2) * geo.conn.scale().powi(2);
                let ok = geo.tol.is_negligible(&diff, scale);
                let bound = geo.tol.bound(scale);
                t.measure(diff.abs_f64(), bound);
                t.record(
                    ok,
                    diff.abs_f64(),
                    bound,
                    format!("E = {energy} at V = {v}"),
                    format!("at V = {v}: energy {energy}, expected {expected}"),
                );
            }
        }
        kind => {
            let mut when = true;
            for c in &variant.when {
                when &= c.holds(params, geo.tol)?;
            }
            let mut points: Vec<(Vec<Scalar>, bool)> = Vec::new();
            for _ in 0..samples {
                if let Some(v) = sampler.combination(&family) {
                    points.push((v, when));
                }
            }
            for _ in 0..samples {
                if let Some(v) = sampler.outside(&domain, &family) {
                    points.push((v, false));
                }
            }
            // Random combinations almost never hit an isolated direction
            // (e.g. a coordinate eigenvector), so the domain generators
            // outside the family are always probed as well.
            let rows: Vec<Vec<f64>> = family.iter().map(|g| vec_f64(g)).collect();
            for g in &domain {
                if rows.is_empty() || !subspace::in_span(&rows, &vec_f64(g), SPAN_REL) {
                    points.push((g.clone(), false));
                }
            }
            let mut agree = 0;
            for (v, expect) in &points {
                let v = InvariantVector::new(v.clone());
                let (holds, residual, bound) = geo.predicate(kind, &v, &mut t)?;
                agree += usize::from(holds == *expect);
                t.record(
                    holds == *expect,
                    residual,
                    bound,
                    String::new(),
                    format!("at V = {v}: expected {expect}, computed {holds}"),
                );
            }
            let total = points.len();
            let eval = t.finish();
            return Ok(VariantEval {
                computed: format!(
                    "{agree}/{total} samples agree{}",
                    if when {
                        ""
                    } else {
                        " (parameter condition fails)"
                    }
                ),
                ..eval
            });
        }
    }
    Ok(t.finish())
}

/// Verdict and the variant evaluations it was derived from.
fn evaluate(
    claim: &ClaimRecord,
    built: &BuiltCase,
    tol: &Tolerance,
    sample_seed: u64,
    samples: usize,
    exact_samples: bool,
) -> Result<(Verdict, Vec<String>, Option<VariantEval>, bool)> {
    let conn = koszul_connection(&built.working)?;
    let geo = Geometry {
        alg: &built.working,
        conn: &conn,
        tol,
    };
    let mut evals = Vec::with_capacity(claim.variants.len());
    for variant in &claim.variants {
        // Every variant sees the same sample stream.
        let mut sampler = Sampler {
            rng: ChaCha8Rng::seed_from_u64(sample_seed),
            exact: exact_samples,
        };
        evals.push(eval_variant(
            claim,
            variant,
            built,
            &geo,
            &mut sampler,
            samples,
        )?);
    }
    let gray = evals.iter().any(|e| e.gray);
    let applicable: Vec<(usize, &VariantEval)> = evals
        .iter()
        .enumerate()
        .filter(|(_, e)| e.applicable)
        .collect();
    if applicable.is_empty() {
        return Ok((Verdict::NotApplicable, Vec::new(), None, false));
    }
    let matched: Vec<String> = applicable
        .iter()
        .filter(|(_, e)| e.pass)
        .map(|(i, _)| claim.variants[*i].label.clone())
        .collect();
    let representative = applicable
        .iter()
        .find(|(_, e)| e.pass)
        .or(applicable.first())
        .map(|(_, e)| (*e).clone());
    let verdict = match (claim.status, matched.is_empty()) {
        (_, true) => Verdict::Refuted,
        (ClaimStatus::Asserted, false) => Verdict::Confirmed,
        (ClaimStatus::Conflicting, false) => Verdict::ConflictingResolved,
    };
    let matched = if claim.is_conflicting() {
        matched
    } else {
        Vec::new()
    };
    Ok((verdict, matched, representative, gray))
}

fn outcome(
    claim: &ClaimRecord,
    cell: String,
    built: &BuiltCase,
    result: (Verdict, Vec<String>, Option<VariantEval>, bool),
    gray_zone_rerun: Option<String>,
) -> VerificationOutcome {
    let (verdict, matched, eval, _) = result;
    let eval = eval.unwrap_or_else(VariantEval::not_applicable);
    VerificationOutcome {
        claim: claim.id.clone(),
        case: claim.case_id,
        kind: claim.kind,
        status: claim.status,
        cell,
        params: built.params.clone(),
        mode: if built.exact {
            Mode::Exact
        } else {
            Mode::Float
        },
        verdict,
        matched,
        computed: eval.computed,
        residual: eval.residual,
        bound: eval.bound,
        samples: eval.samples,
        detail: eval.detail,
        gray_zone_rerun,
    }
}

/// First exact witness (case or claim threshold) at which some variant of
/// the claim applies.
fn exact_witness(claim: &ClaimRecord, tol: &Tolerance) -> Result<Option<BuiltCase>> {
    let mut all = rational_witnesses(claim.case_id)?;
    for w in &claim.witnesses {
        all.push(CaseParams::parse(claim.case_id, w)?);
    }
    for p in all {
        let built = build_case(&p)?;
        if !built.exact {
            continue;
        }
        let mut applies = false;
        for v in &claim.variants {
            let mut ok = true;
            for c in &v.requires {
                ok &= c.holds(&p, tol)?;
            }
            applies |= ok;
        }
        if applies {
            return Ok(Some(built));
        }
    }
    Ok(None)
}

fn run_cell(
    claim: &ClaimRecord,
    cell: String,
    built: &BuiltCase,
    config: &VerifyConfig,
    sample_seed: u64,
    exact_samples: bool,
) -> Result<VerificationOutcome> {
    let result = evaluate(
        claim,
        built,
        &config.tol,
        sample_seed,
        config.samples,
        exact_samples,
    )?;
    if result.3 && !built.exact {
        if let Some(witness) = exact_witness(claim, &config.tol)? {
            let rerun = evaluate(
                claim,
                &witness,
                &config.tol,
                sample_seed,
                config.samples,
                true,
            )?;
            let note = witness.params.to_string();
            return Ok(outcome(claim, cell, &witness, rerun, Some(note)));
        }
    }
    Ok(outcome(claim, cell, built, result, None))
}

/// SplitMix64-style mixing of the cell coordinates into one seed.
fn mix(parts: &[u64]) -> u64 {
    let mut h: u64 = 0x9E37_79B9_7F4A_7C15;
    for &p in parts {
        h ^= p
            .wrapping_add(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(h << 6)
            .wrapping_add(h >> 2);
        h = (h ^ (h >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        h = (h ^ (h >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        h ^= h >> 31;
    }
    h
}

const WITNESS_STREAM: u64 = 1;
const THRESHOLD_STREAM: u64 = 2;
const DRAW_STREAM: u64 = 3;

/// Verifies one claim at one parameter set, with a fixed sample stream.
pub fn verify_claim(
    claim: &ClaimRecord,
    params: &CaseParams,
    tol: &Tolerance,
) -> Result<VerificationOutcome> {
    if params.case_id != claim.case_id {
        return Err(Error::InadmissibleParams {
            case: claim.case_id,
            constraint: format!("parameters belong to case {}", params.case_id),
        });
    }
    let built = build_case(params)?;
    let config = VerifyConfig {
        tol: *tol,
        ..VerifyConfig::default()
    };
    let seed = mix(&[
        0,
        u64::from(claim.case_id),
        claim.index as u64,
        WITNESS_STREAM,
    ]);
    run_cell(
        claim,
        "given".into(),
        &built,
        &config,
        seed,
        params.is_exact(),
    )
}

struct Cell<'a> {
    claim: &'a ClaimRecord,
    label: String,
    params: CaseParams,
    sample_seed: u64,
    exact_samples: bool,
}

fn cells_for<'a>(claim: &'a ClaimRecord, config: &VerifyConfig) -> Result<Vec<Cell<'a>>> {
    let (case, idx) = (u64::from(claim.case_id), claim.index as u64);
    let exact = config.mode == Mode::Exact;
    let witness = |p: CaseParams| if exact { p } else { p.to_mode(Mode::Float) };
    let mut out = Vec::new();
    for (k, p) in rational_witnesses(claim.case_id)?.into_iter().enumerate() {
        out.push(Cell {
            claim,
            label: format!("witness {}", k + 1),
            params: witness(p),
            sample_seed: mix(&[0, case, idx, WITNESS_STREAM, k as u64]),
            exact_samples: exact,
        });
    }
    for (k, src) in claim.witnesses.iter().enumerate() {
        out.push(Cell {
            claim,
            label: format!("threshold {}", k + 1),
            params: witness(CaseParams::parse(claim.case_id, src)?),
            sample_seed: mix(&[0, case, idx, THRESHOLD_STREAM, k as u64]),
            exact_samples: exact,
        });
    }
    let pins = claim.pins();
    for k in 0..config.random_draws {
        let mut rng =
            ChaCha8Rng::seed_from_u64(mix(&[config.seed, case, idx, DRAW_STREAM, k as u64]));
        let params = random_admissible(claim.case_id, &mut rng, &pins)?;
        out.push(Cell {
            claim,
            label: format!("draw {}", k + 1),
            params,
            sample_seed: rng.random(),
            exact_samples: false,
        });
    }
    Ok(out)
}

/// Runs every claim of the selected cases over all of its cells.
pub fn run_full_verification(config: &VerifyConfig) -> Result<VerificationReport> {
    let cases: Vec<u8> = if config.cases.is_empty() {
        catalog::cases().iter().map(|c| c.id).collect()
    } else {
        for &id in &config.cases {
            catalog::case(id)?;
        }
        config.cases.clone()
    };
    let mut cells = Vec::new();
    for &id in &cases {
        for claim in claims_for(id)? {
            cells.extend(cells_for(claim, config)?);
        }
    }
    let outcomes = cells
        .par_iter()
        .map(|c| {
            let built = build_case(&c.params)?;
            run_cell(
                c.claim,
                c.label.clone(),
                &built,
                config,
                c.sample_seed,
                c.exact_samples,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport {
        schema: SCHEMA,
        meta: ReportMeta {
            seed: config.seed,
            mode: config.mode,
            tolerances: config.tol,
            random_draws: config.random_draws,
            samples: config.samples,
            cases,
        },
        summary: Summary::of(&outcomes),
        outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn claim(case: u8, kind: ClaimKind) -> &'static ClaimRecord {
        claims_for(case)
            .unwrap()
            .iter()
            .find(|c| c.kind == kind)
            .unwrap()
    }

    #[test]
    fn case2_eigenvalue_confirmed_exactly() {
        let p = CaseParams::parse(2, "A=5, B=3, eps=-1, del=1").unwrap();
        let o = verify_claim(claim(2, ClaimKind::Eigenvalue), &p, &Tolerance::default()).unwrap();
        assert_eq!(o.verdict, Verdict::Confirmed, "{o:?}");
        assert_eq!(o.computed, "lambda = -48");
        assert_eq!(o.mode, Mode::Exact);
    }

    #[test]
    fn case7_sign_is_adjudicated() {
        let p = CaseParams::parse(7, "A=1, B=10").unwrap();
        let o = verify_claim(claim(7, ClaimKind::Eigenvalue), &p, &Tolerance::default()).unwrap();
        assert_eq!(o.verdict, Verdict::ConflictingResolved);
        assert_eq!(o.matched, vec!["derivation".to_string()]);
        assert_eq!(o.computed, "lambda = 69");
    }

    #[test]
    fn case4_eigenvalue_is_refuted() {
        // The Laplacian is -A^2 times the identity; the stated B^2 - A^2 drops
        // the e2-terms of the connection.
        let p = CaseParams::parse(4, "A=5, B=3, eps=1").unwrap();
        let o = verify_claim(claim(4, ClaimKind::Eigenvalue), &p, &Tolerance::default()).unwrap();
        assert_eq!(o.verdict, Verdict::Refuted);
        assert_eq!(o.computed, "lambda = -25");
    }

    #[test]
    fn requirements_make_cells_inapplicable() {
        let p = CaseParams::parse(1, "A=1, eps=-1, del=1").unwrap();
        let o = verify_claim(
            claim(1, ClaimKind::CriticalFamily),
            &p,
            &Tolerance::default(),
        )
        .unwrap();
        assert_eq!(o.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn mismatched_case_is_rejected() {
        let p = CaseParams::parse(2, "A=5, B=3, eps=-1, del=1").unwrap();
        assert!(verify_claim(claim(4, ClaimKind::Eigenvalue), &p, &Tolerance::default()).is_err());
    }

    #[test]
    fn mixing_is_order_sensitive() {
        assert_ne!(mix(&[1, 2]), mix(&[2, 1]));
        assert_eq!(mix(&[7, 3, 1]), mix(&[7, 3, 1]));
    }
}
