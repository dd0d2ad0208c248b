//! The sixteen four-dimensional Lorentzian Einstein cases, their parameter
//! constraints, rational witnesses and the published claims about them.
//!
//! Cases 1–11 use the pseudo-orthonormal metric `diag(1,1,-1,1)`. Cases
//! 12–16 use the null-pair metric `g(e_1,e_1) = g(e_2,e_2) = g(e_3,e_4) = 1`;
//! they are built natively and then moved to the pseudo-orthonormal frame
//! `e_3' = -e_3/2 + e_4`, `e_4' = e_3/2 + e_4`. Vector coordinates
//! `(a, b, c, d)` always refer to the *working* basis: the native one for
//! 1–11, the frame for 12–16 (where `u = e_3' - e_4' = (0,0,1,-1)`).

mod cases;
pub mod claims;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use rand::Rng;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::algebra::{BasisChange, MetricLieAlgebra};
use crate::error::{Error, Result};
use crate::expr::{Constraint, Env, Expr, NoVars, Var};
use crate::linalg::Matrix;
use crate::scalar::{Mode, Scalar};

pub use claims::{
    claims_for, ClaimKind, ClaimRecord, ClaimStatus, ClaimVariant, Condition, Family,
};

pub const CASE_COUNT: u8 = 16;

/// Which of the two metric matrices a case uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    /// `diag(1, 1, -1, 1)`.
    Lorentz,
    /// `g(e_3, e_4) = 1`, `g(e_3, e_3) = g(e_4, e_4) = 0`.
    NullPair,
}

impl MetricKind {
    pub fn matrix(self) -> Matrix {
        match self {
            MetricKind::Lorentz => Matrix::diag(&[1, 1, -1, 1].map(Scalar::int)),
            MetricKind::NullPair => {
                Matrix::from_ints(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]])
                    .expect("4x4 literal")
            }
        }
    }
}

/// `[e_i, e_j] = Σ_k coeffs[k] e_k`, indices 1-based.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bracket {
    pub i: usize,
    pub j: usize,
    pub coeffs: [Expr; 4],
}

impl Bracket {
    pub fn new(i: usize, j: usize, coeffs: [&str; 4]) -> Self {
        Bracket {
            i,
            j,
            coeffs: coeffs.map(crate::expr::e),
        }
    }
}

/// Declarative description of one catalog case.
#[derive(Clone, Debug, Serialize)]
pub struct CaseDefinition {
    pub id: u8,
    /// `a1`, `a2`, `c1` or `c2`.
    pub family: &'static str,
    pub metric: MetricKind,
    pub params: Vec<Var>,
    pub brackets: Vec<Bracket>,
    /// The bracket table exactly as published, when it differs from
    /// `brackets`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub printed: Option<Vec<Bracket>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub correction: Option<&'static str>,
    #[serde(skip)]
    witness_src: Vec<&'static str>,
}

impl CaseDefinition {
    fn new(id: u8, family: &'static str, metric: MetricKind) -> Self {
        CaseDefinition {
            id,
            family,
            metric,
            params: Vec::new(),
            brackets: Vec::new(),
            printed: None,
            correction: None,
            witness_src: Vec::new(),
        }
    }

    fn brackets(mut self, brackets: Vec<Bracket>) -> Self {
        let mut vars = BTreeSet::new();
        for b in &brackets {
            for c in &b.coeffs {
                vars.extend(c.vars());
            }
        }
        self.params = vars.into_iter().collect();
        self.brackets = brackets;
        self
    }

    fn printed(mut self, brackets: Vec<Bracket>, note: &'static str) -> Self {
        self.printed = Some(brackets);
        self.correction = Some(note);
        self
    }

    fn witnesses(mut self, src: &[&'static str]) -> Self {
        self.witness_src = src.to_vec();
        self
    }

    pub fn uses(&self, var: Var) -> bool {
        self.params.contains(&var)
    }

    /// Radicands and divisors of the bracket table, deduplicated.
    pub fn constraints(&self) -> Vec<Constraint> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for b in &self.brackets {
            for c in &b.coeffs {
                for k in c.constraints() {
                    if seen.insert(k.to_string()) {
                        out.push(k);
                    }
                }
            }
        }
        out
    }

    /// Human-readable constraint list, including the sign parameters.
    pub fn constraint_strings(&self) -> Vec<String> {
        let mut out: Vec<String> = self.constraints().iter().map(|c| c.to_string()).collect();
        for v in [Var::Eps, Var::Del] {
            if self.uses(v) {
                out.push(format!("{v} = 1 or {v} = -1"));
            }
        }
        out
    }

    pub fn metric_matrix(&self) -> Matrix {
        self.metric.matrix()
    }

    pub fn needs_frame(&self) -> bool {
        self.metric == MetricKind::NullPair
    }
}

fn definitions() -> &'static [CaseDefinition] {
    static DEFS: OnceLock<Vec<CaseDefinition>> = OnceLock::new();
    DEFS.get_or_init(cases::definitions)
}

/// All sixteen case definitions, in order.
pub fn cases() -> &'static [CaseDefinition] {
    definitions()
}

pub fn case(id: u8) -> Result<&'static CaseDefinition> {
    definitions()
        .iter()
        .find(|c| c.id == id)
        .ok_or(Error::UnknownCase(id))
}

/// Parameter values `A..F, ε, δ` for one case.
#[derive(Clone, Debug, PartialEq)]
pub struct CaseParams {
    pub case_id: u8,
    values: [Option<Scalar>; 8],
}

impl CaseParams {
    pub fn new(case_id: u8) -> Self {
        CaseParams {
            case_id,
            values: Default::default(),
        }
    }

    pub fn with(mut self, var: Var, value: impl Into<Scalar>) -> Self {
        self.set(var, value.into());
        self
    }

    /// Panics for coordinate variables, which are not parameters.
    pub fn set(&mut self, var: Var, value: Scalar) {
        let idx = var.param_index().expect("not a parameter");
        self.values[idx] = Some(value);
    }

    pub fn get(&self, var: Var) -> Option<&Scalar> {
        var.param_index().and_then(|i| self.values[i].as_ref())
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, &Scalar)> {
        Var::PARAMS
            .iter()
            .zip(&self.values)
            .filter_map(|(v, x)| x.as_ref().map(|x| (*v, x)))
    }

    /// Parses `A=5, B=3/2, eps=-1`. Values may be constant expressions such
    /// as `(-3+sqrt(13))/2`.
    pub fn parse(case_id: u8, src: &str) -> Result<Self> {
        let mut out = CaseParams::new(case_id);
        for item in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| Error::Parse {
                input: src.to_string(),
                offset: 0,
                message: format!("expected key=value, found `{item}`"),
            })?;
            let var = Var::from_name(k.trim())
                .filter(|v| v.param_index().is_some())
                .ok_or_else(|| Error::Parse {
                    input: src.to_string(),
                    offset: 0,
                    message: format!("unknown parameter `{}`", k.trim()),
                })?;
            let value = Expr::parse(v.trim())?.eval(&NoVars)?;
            out.set(var, value);
        }
        Ok(out)
    }

    pub fn is_exact(&self) -> bool {
        self.iter().all(|(_, x)| x.is_exact())
    }

    pub fn to_mode(&self, mode: Mode) -> Self {
        let mut out = self.clone();
        for slot in out.values.iter_mut().flatten() {
            *slot = slot.to_mode(mode);
        }
        out
    }
}

impl Env for CaseParams {
    fn lookup(&self, var: Var) -> Option<Scalar> {
        self.get(var).cloned()
    }
}

impl fmt::Display for CaseParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(v, x)| format!("{v}={x}")).collect();
        f.write_str(&parts.join(", "))
    }
}

impl Serialize for CaseParams {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        for (v, x) in self.iter() {
            map.serialize_entry(v.name(), x)?;
        }
        map.end()
    }
}

fn inadmissible(case: u8, constraint: impl Into<String>) -> Error {
    Error::InadmissibleParams {
        case,
        constraint: constraint.into(),
    }
}

/// Checks that exactly the parameters used by the case are present, that
/// signs are ±1 and that every radicand/divisor constraint holds. With
/// `margin = (r, d)` radicands must be `≥ r` and divisors `|·| ≥ d`.
fn check_admissible(def: &CaseDefinition, params: &CaseParams, margin: (f64, f64)) -> Result<()> {
    let id = def.id;
    for v in &def.params {
        if params.get(*v).is_none() {
            return Err(inadmissible(id, format!("parameter {v} must be given")));
        }
    }
    for (v, _) in params.iter() {
        if !def.uses(v) {
            return Err(inadmissible(
                id,
                format!("parameter {v} is not used by this case"),
            ));
        }
    }
    for v in [Var::Eps, Var::Del] {
        if let Some(x) = params.get(v) {
            if x.to_f64().abs() != 1.0 {
                return Err(inadmissible(id, format!("{v} = 1 or {v} = -1")));
            }
        }
    }
    for c in def.constraints() {
        let value = c.expr().eval(params)?;
        let ok = match &c {
            Constraint::NonNegative(_) => {
                value.signum() >= 0 && (margin.0 == 0.0 || value.to_f64() >= margin.0)
            }
            Constraint::NonZero(_) => {
                !value.is_zero() && (margin.1 == 0.0 || value.abs_f64() >= margin.1)
            }
        };
        if !ok {
            return Err(inadmissible(id, c.to_string()));
        }
    }
    Ok(())
}

pub fn check_params(params: &CaseParams) -> Result<()> {
    check_admissible(case(params.case_id)?, params, (0.0, 0.0))
}

/// A case instantiated at concrete parameters.
#[derive(Clone, Debug)]
pub struct BuiltCase {
    pub params: CaseParams,
    /// The algebra in the basis of the bracket table.
    pub native: MetricLieAlgebra,
    /// Frame change for the null-pair cases.
    pub frame: Option<BasisChange>,
    /// The pseudo-orthonormal algebra in which vector coordinates are given.
    pub working: MetricLieAlgebra,
    /// All structure constants are rational.
    pub exact: bool,
    /// Exact evaluation was requested but some radical was irrational.
    pub float_fallback: bool,
}

impl BuiltCase {
    pub fn working(&self) -> &MetricLieAlgebra {
        &self.working
    }
}

fn instantiate(
    def: &CaseDefinition,
    brackets: &[Bracket],
    params: &CaseParams,
) -> Result<BuiltCase> {
    let mut list = Vec::with_capacity(brackets.len());
    for b in brackets {
        let coeffs = b
            .coeffs
            .iter()
            .map(|c| c.eval(params))
            .collect::<Result<Vec<_>>>()?;
        list.push((b.i - 1, b.j - 1, coeffs));
    }
    let native = MetricLieAlgebra::from_brackets(def.metric_matrix(), &list)?;
    let frame = def.needs_frame().then(BasisChange::null_pair_frame);
    let working = match &frame {
        Some(p) => native.change_basis(p)?,
        None => native.clone(),
    };
    let exact = working.is_exact();
    Ok(BuiltCase {
        params: params.clone(),
        float_fallback: params.is_exact() && !exact,
        native,
        frame,
        working,
        exact,
    })
}

/// Instantiates a case, rejecting inadmissible parameters.
pub fn build_case(params: &CaseParams) -> Result<BuiltCase> {
    let def = case(params.case_id)?;
    check_admissible(def, params, (0.0, 0.0))?;
    instantiate(def, &def.brackets, params)
}

/// Instantiates the bracket table as published (identical to
/// [`build_case`] except for the corrected cases).
pub fn build_case_as_printed(params: &CaseParams) -> Result<BuiltCase> {
    let def = case(params.case_id)?;
    check_admissible(def, params, (0.0, 0.0))?;
    instantiate(def, def.printed.as_deref().unwrap_or(&def.brackets), params)
}

/// Parameter sets at which every radical of the case is rational (except
/// case 11, whose `√2` is intrinsic).
pub fn rational_witnesses(case_id: u8) -> Result<Vec<CaseParams>> {
    let def = case(case_id)?;
    def.witness_src
        .iter()
        .map(|src| CaseParams::parse(case_id, src))
        .collect()
}

const DRAW_RANGE: f64 = 3.0;
const MIN_RADICAND: f64 = 0.01;
const MIN_DIVISOR: f64 = 0.1;

/// Random float parameters, uniform in `[-3, 3]`, with radicands `≥ 0.01`
/// and divisors `|·| ≥ 0.1`. Variables in `pins` are held fixed.
pub fn random_admissible<R: Rng + ?Sized>(
    case_id: u8,
    rng: &mut R,
    pins: &[(Var, Scalar)],
) -> Result<CaseParams> {
    let def = case(case_id)?;
    for _ in 0..100_000 {
        let mut p = CaseParams::new(case_id);
        for v in &def.params {
            let value = if let Some((_, x)) = pins.iter().find(|(k, _)| k == v) {
                x.clone()
            } else if v.is_sign() {
                Scalar::int(if rng.random_bool(0.5) { 1 } else { -1 })
            } else {
                Scalar::float(rng.random_range(-DRAW_RANGE..DRAW_RANGE))
            };
            p.set(*v, value);
        }
        if check_admissible(def, &p, (MIN_RADICAND, MIN_DIVISOR)).is_ok() {
            return Ok(p);
        }
    }
    Err(inadmissible(case_id, "no admissible random draw found"))
}
