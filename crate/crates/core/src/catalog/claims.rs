//! Published assertions about the catalog, in checkable form.
//!
//! Every record describes a predicate on left-invariant fields (or a
//! closed-form value) together with the set of fields it talks about:
//!
//! * predicate kinds: for `V` in `domain`, the property holds iff `when`
//!   holds for the parameters and `V ∈ family`;
//! * `eigenvalue`: on `domain`, `∇*∇V = expected · V`;
//! * `energy_formula`: on `domain`, the energy density equals `expected`,
//!   an expression in the parameters and the coordinates `a, b, c, d`.
//!
//! Records whose published statements disagree with each other carry one
//! variant per statement and status [`ClaimStatus::Conflicting`].

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::expr::{Env, Expr, Var};
use crate::scalar::{Scalar, Tolerance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimKind {
    CriticalFamily,
    Eigenvalue,
    HarmonicMapThreshold,
    HarmonicSection,
    GeodesicFamily,
    KillingCondition,
    ParallelFamily,
    SpatiallyHarmonicCondition,
    EnergyFormula,
}

impl ClaimKind {
    pub fn name(self) -> &'static str {
        match self {
            ClaimKind::CriticalFamily => "critical_family",
            ClaimKind::Eigenvalue => "eigenvalue",
            ClaimKind::HarmonicMapThreshold => "harmonic_map_threshold",
            ClaimKind::HarmonicSection => "harmonic_section",
            ClaimKind::GeodesicFamily => "geodesic_family",
            ClaimKind::KillingCondition => "killing_condition",
            ClaimKind::ParallelFamily => "parallel_family",
            ClaimKind::SpatiallyHarmonicCondition => "spatially_harmonic_condition",
            ClaimKind::EnergyFormula => "energy_formula",
        }
    }

    pub fn is_predicate(self) -> bool {
        !matches!(self, ClaimKind::Eigenvalue | ClaimKind::EnergyFormula)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimStatus {
    Asserted,
    Conflicting,
}

/// A linear set of coefficient vectors.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    All,
    /// Span of the generators (coordinates in the working basis).
    Span(Vec<[Expr; 4]>),
    Empty,
}

impl Family {
    /// `"all"`, `"none"`, or generators separated by `;` with comma-separated
    /// coordinates.
    pub fn parse(src: &str) -> Result<Family> {
        match src.trim() {
            "all" => return Ok(Family::All),
            "none" => return Ok(Family::Empty),
            _ => {}
        }
        let mut gens = Vec::new();
        for g in src.split(';') {
            let parts = g
                .split(',')
                .map(|s| Expr::parse(s.trim()))
                .collect::<Result<Vec<_>>>()?;
            let arr: [Expr; 4] =
                parts
                    .try_into()
                    .map_err(|p: Vec<Expr>| Error::DimensionMismatch {
                        expected: 4,
                        found: p.len(),
                    })?;
            gens.push(arr);
        }
        Ok(Family::Span(gens))
    }

    /// Generators evaluated at the given parameters.
    pub fn generators(&self, env: &dyn Env) -> Result<Vec<Vec<Scalar>>> {
        match self {
            Family::All => Ok((0..4).map(|i| crate::linalg::vec::basis(4, i)).collect()),
            Family::Empty => Ok(Vec::new()),
            Family::Span(gens) => gens
                .iter()
                .map(|g| g.iter().map(|x| x.eval(env)).collect())
                .collect(),
        }
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Family::All => s.serialize_str("all"),
            Family::Empty => s.serialize_seq(Some(0))?.end(),
            Family::Span(gens) => {
                let mut seq = s.serialize_seq(Some(gens.len()))?;
                for g in gens {
                    seq.serialize_element(g)?;
                }
                seq.end()
            }
        }
    }
}

/// `lhs = rhs`, an equation in the parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct Condition {
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Condition {
    pub fn parse(src: &str) -> Result<Condition> {
        let (l, r) = src.split_once('=').ok_or_else(|| Error::Parse {
            input: src.to_string(),
            offset: 0,
            message: "expected `lhs = rhs`".into(),
        })?;
        Ok(Condition {
            lhs: Expr::parse(l.trim())?,
            rhs: Expr::parse(r.trim())?,
        })
    }

    /// Decides the equation; float values compare within `tol`.
    pub fn holds(&self, env: &dyn Env, tol: &Tolerance) -> Result<bool> {
        let l = self.lhs.eval(env)?;
        let r = self.rhs.eval(env)?;
        let scale = 1.0 + l.abs_f64() + r.abs_f64();
        Ok(tol.is_negligible(&(&l - &r), scale))
    }

    /// `Var = constant`, usable as a sampling pin.
    pub fn as_pin(&self) -> Option<(Var, Scalar)> {
        match (&self.lhs, self.rhs.is_constant()) {
            (Expr::Var(v), true) if v.param_index().is_some() => {
                self.rhs.eval(&crate::expr::NoVars).ok().map(|x| (*v, x))
            }
            _ => None,
        }
    }
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl Serialize for Condition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One published reading of a claim.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClaimVariant {
    /// Which statement this variant transcribes.
    pub label: String,
    /// Parameter restrictions under which the statement is made.
    pub requires: Vec<Condition>,
    pub domain: Family,
    pub family: Family,
    /// Parameter condition for the property (predicate kinds).
    pub when: Vec<Condition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expr>,
}

impl ClaimVariant {
    fn new(label: &str) -> Self {
        ClaimVariant {
            label: label.to_string(),
            requires: Vec::new(),
            domain: Family::All,
            family: Family::All,
            when: Vec::new(),
            expected: None,
        }
    }

    fn domain(mut self, src: &str) -> Self {
        self.domain = Family::parse(src).expect("claim domain");
        self
    }

    fn family(mut self, src: &str) -> Self {
        self.family = Family::parse(src).expect("claim family");
        self
    }

    /// Domain and family both set to `src`.
    fn on(self, src: &str) -> Self {
        self.domain(src).family(src)
    }

    fn when(mut self, src: &str) -> Self {
        self.when.extend(
            src.split(',')
                .map(|c| Condition::parse(c).expect("condition")),
        );
        self
    }

    fn requires(mut self, src: &str) -> Self {
        self.requires.extend(
            src.split(',')
                .map(|c| Condition::parse(c).expect("condition")),
        );
        self
    }

    fn expected(mut self, src: &str) -> Self {
        self.expected = Some(crate::expr::e(src));
        self
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::All => f.write_str("all V"),
            Family::Empty => f.write_str("no V"),
            Family::Span(gens) => {
                let parts: Vec<String> = gens
                    .iter()
                    .map(|g| {
                        let c: Vec<String> = g.iter().map(|x| x.to_string()).collect();
                        format!("({})", c.join(", "))
                    })
                    .collect();
                write!(f, "span{{{}}}", parts.join(", "))
            }
        }
    }
}

impl ClaimVariant {
    /// One-line human-readable form of the statement.
    pub fn describe(&self, kind: ClaimKind) -> String {
        let mut out = String::new();
        if !self.requires.is_empty() {
            let r: Vec<String> = self.requires.iter().map(|c| c.to_string()).collect();
            out.push_str(&format!("[{}] ", r.join(", ")));
        }
        let on = match self.domain {
            Family::All => String::new(),
            ref d => format!(" on {d}"),
        };
        let expected = self
            .expected
            .as_ref()
            .map(|e| e.to_string())
            .unwrap_or_default();
        match kind {
            ClaimKind::Eigenvalue => out.push_str(&format!("lambda = {expected}{on}")),
            ClaimKind::EnergyFormula => out.push_str(&format!("E = {expected}{on}")),
            _ => {
                out.push_str(&format!("holds{on} iff V in {}", self.family));
                if !self.when.is_empty() {
                    let w: Vec<String> = self.when.iter().map(|c| c.to_string()).collect();
                    out.push_str(&format!(" and {}", w.join(", ")));
                }
            }
        }
        out
    }
}

/// A published assertion about one case.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClaimRecord {
    /// Stable identifier, `"<case>.<index>"`.
    pub id: String,
    #[serde(rename = "case")]
    pub case_id: u8,
    pub index: usize,
    pub kind: ClaimKind,
    pub status: ClaimStatus,
    /// Where the statement comes from, in words.
    pub source: &'static str,
    pub variants: Vec<ClaimVariant>,
    /// Extra parameter sets sitting on the claim's threshold.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<&'static str>,
}

impl ClaimRecord {
    /// Pins shared by every variant's `requires`.
    pub fn pins(&self) -> Vec<(Var, Scalar)> {
        let Some(first) = self.variants.first() else {
            return Vec::new();
        };
        first
            .requires
            .iter()
            .filter(|c| self.variants.iter().all(|v| v.requires.contains(c)))
            .filter_map(Condition::as_pin)
            .collect()
    }

    /// All variants, `label: statement`, separated by ` | `.
    pub fn statement(&self) -> String {
        let parts: Vec<String> = self
            .variants
            .iter()
            .map(|v| {
                if self.variants.len() == 1 {
                    v.describe(self.kind)
                } else {
                    format!("{}: {}", v.label, v.describe(self.kind))
                }
            })
            .collect();
        parts.join(" | ")
    }

    pub fn is_conflicting(&self) -> bool {
        self.status == ClaimStatus::Conflicting
    }
}

struct Builder {
    case_id: u8,
    out: Vec<ClaimRecord>,
    requires: &'static str,
}

impl Builder {
    fn new(case_id: u8) -> Self {
        Builder {
            case_id,
            out: Vec::new(),
            requires: "",
        }
    }

    /// Applies to every following record of the case.
    fn requiring(mut self, src: &'static str) -> Self {
        self.requires = src;
        self
    }

    fn push(
        &mut self,
        kind: ClaimKind,
        status: ClaimStatus,
        source: &'static str,
        variants: Vec<ClaimVariant>,
        witnesses: &[&'static str],
    ) {
        let variants = variants
            .into_iter()
            .map(|v| {
                if self.requires.is_empty() {
                    v
                } else {
                    let mut v = v.requires(self.requires);
                    v.requires.rotate_right(self.requires.split(',').count());
                    v
                }
            })
            .collect();
        let index = self.out.len();
        self.out.push(ClaimRecord {
            id: format!("{}.{}", self.case_id, index + 1),
            case_id: self.case_id,
            index,
            kind,
            status,
            source,
            variants,
            witnesses: witnesses.to_vec(),
        });
    }

    fn assert(mut self, kind: ClaimKind, source: &'static str, v: ClaimVariant) -> Self {
        self.push(kind, ClaimStatus::Asserted, source, vec![v], &[]);
        self
    }

    fn assert_at(
        mut self,
        kind: ClaimKind,
        source: &'static str,
        v: ClaimVariant,
        witnesses: &[&'static str],
    ) -> Self {
        self.push(kind, ClaimStatus::Asserted, source, vec![v], witnesses);
        self
    }

    fn conflict(
        mut self,
        kind: ClaimKind,
        source: &'static str,
        variants: Vec<ClaimVariant>,
        witnesses: &[&'static str],
    ) -> Self {
        self.push(kind, ClaimStatus::Conflicting, source, variants, witnesses);
        self
    }

    fn done(self) -> Vec<ClaimRecord> {
        self.out
    }
}

fn v(label: &str) -> ClaimVariant {
    ClaimVariant::new(label)
}

use ClaimKind::*;

const CRIT: &str = "critical-point theorem";
const EQUIV: &str = "equivalence table";
const GKP: &str = "geodesic/Killing/parallel table";
const ENERGY: &str = "energy table";
const MINIMUM: &str = "energy minimum theorem";
const THRESH: &str = "harmonic-map theorem";

/// `{e1, e2, u}` with `u = e3 - e4` in the pseudo-orthonormal frame.
const E1E2U: &str = "1,0,0,0; 0,1,0,0; 0,0,1,-1";
const U: &str = "0,0,1,-1";

fn case_1() -> Vec<ClaimRecord> {
    let f = "0,1,-1,-1";
    Builder::new(1)
        .requiring("eps = 1")
        .assert(CriticalFamily, CRIT, v("stated").family(f))
        .assert(Eigenvalue, CRIT, v("stated").domain(f).expected("3*A^2"))
        .assert(GeodesicFamily, EQUIV, v("stated").on(f))
        .assert(
            HarmonicMapThreshold,
            EQUIV,
            v("stated").domain(f).family("none"),
        )
        .assert(HarmonicSection, EQUIV, v("stated").domain(f).family("none"))
        .assert(SpatiallyHarmonicCondition, EQUIV, v("stated").on(f))
        .assert(
            EnergyFormula,
            ENERGY,
            v("stated").expected(
                "2 + A^2*((a^2 + b^2 - c^2 + d^2) + 2*(d^2 - b^2) + 2*del*d*(b + c) - 2*b*c)/2",
            ),
        )
        .conflict(
            EnergyFormula,
            MINIMUM,
            vec![
                v("energy table on the family")
                    .domain(f)
                    .expected("2 + 3/2*A^2*c^2"),
                v("minimum theorem").domain(f).expected("2 - 3/2*A^2*c^2"),
            ],
            &[],
        )
        .done()
}

fn case_2() -> Vec<ClaimRecord> {
    let f = "0,1,1,-1";
    let t = &["A=1, B=-1, eps=-1, del=1"];
    Builder::new(2)
        .requiring("eps = -1, del = 1")
        .assert(CriticalFamily, CRIT, v("stated").family(f))
        .assert(Eigenvalue, CRIT, v("stated").domain(f).expected("-3/4*(A + B)^2"))
        .assert_at(HarmonicMapThreshold, THRESH, v("stated").on(f).when("A + B = 0"), t)
        .assert_at(HarmonicSection, EQUIV, v("stated").on(f).when("A + B = 0"), t)
        .assert(GeodesicFamily, EQUIV, v("stated").on(f))
        .assert_at(
            KillingCondition,
            EQUIV,
            v("stated").family("1,0,0,0; 0,1,0,0; 0,0,1,0").when("A + B = 0"),
            t,
        )
        .assert(SpatiallyHarmonicCondition, EQUIV, v("stated").on(f))
        .assert(
            EnergyFormula,
            ENERGY,
            v("stated").expected(
                "2 + (A + B)^2*((a^2 + 3*d^2)*(A + B) + (B - A)*(b - c)^2 - 2*d*(b - c)*sqrt(A^2 - B^2))/8",
            ),
        )
        .assert(EnergyFormula, MINIMUM, v("stated").domain(f).expected("2 + 3/8*(A + B)^2*c^2"))
        .done()
}

fn case_3() -> Vec<ClaimRecord> {
    let t = &["A=1, B=1, eps=1", "A=1, B=-1, eps=1"];
    let geo = "1,0,0,0; 0,-A/B,1,0; 0,0,0,1";
    Builder::new(3)
        .assert(CriticalFamily, CRIT, v("stated"))
        .assert(Eigenvalue, CRIT, v("stated").expected("-(A^2 - B^2)^2/B^2"))
        .assert_at(
            GeodesicFamily,
            EQUIV,
            v("stated").family(geo).when("A^2 - B^2 = 0"),
            t,
        )
        .assert_at(HarmonicSection, EQUIV, v("stated").when("A^2 - B^2 = 0"), t)
        .assert_at(
            HarmonicMapThreshold,
            THRESH,
            v("stated").when("A^2 - B^2 = 0"),
            t,
        )
        .assert_at(
            KillingCondition,
            EQUIV,
            v("stated")
                .family("1,0,0,0; 0,-A/B,1,0")
                .when("A^2 - B^2 = 0"),
            t,
        )
        .assert_at(
            SpatiallyHarmonicCondition,
            EQUIV,
            v("stated").family(geo).when("A^2 - B^2 = 0"),
            t,
        )
        .assert(
            EnergyFormula,
            ENERGY,
            v("stated").expected("2 + (A - B)^2*(A + B)^2/(2*B^2)*(a^2 + b^2 - c^2 + d^2)"),
        )
        .conflict(
            EnergyFormula,
            MINIMUM,
            vec![
                v("minimum theorem").expected("2 - (A^2 - B^2)^2/(2*B^2)*(a^2 + b^2 - c^2 + d^2)"),
                v("energy table").expected("2 + (A^2 - B^2)^2/(2*B^2)*(a^2 + b^2 - c^2 + d^2)"),
            ],
            &[],
        )
        .done()
}

fn case_4() -> Vec<ClaimRecord> {
    let f = "1,0,0,0; 0,1,0,0";
    let t = &["A=1, B=1, eps=1"];
    Builder::new(4)
        .assert(CriticalFamily, CRIT, v("stated").family(f))
        .assert(
            Eigenvalue,
            CRIT,
            v("stated").domain(f).expected("B^2 - A^2"),
        )
        .assert_at(
            GeodesicFamily,
            EQUIV,
            v("stated").on(f).when("A^2 - B^2 = 0"),
            t,
        )
        .assert_at(
            HarmonicSection,
            EQUIV,
            v("stated").on(f).when("A^2 - B^2 = 0"),
            t,
        )
        .assert_at(
            HarmonicMapThreshold,
            THRESH,
            v("stated").on(f).when("A^2 - B^2 = 0"),
            t,
        )
        .assert_at(
            KillingCondition,
            EQUIV,
            v("stated").on(f).when("A^2 - B^2 = 0"),
            t,
        )
        .assert_at(
            SpatiallyHarmonicCondition,
            EQUIV,
            v("stated").on(f).when("A^2 - B^2 = 0"),
            t,
        )
        .assert(
            EnergyFormula,
            ENERGY,
            v("stated").expected("2 + (A^2*(a^2 + b^2 - c^2 + d^2) - B^2*(a^2 + b^2))/2"),
        )
        .assert(
            EnergyFormula,
            MINIMUM,
            v("stated")
                .domain(f)
                .expected("2 + (A^2 - B^2)/2*(a^2 + b^2)"),
        )
        .done()
}

fn case_5() -> Vec<ClaimRecord> {
    let f = "1,0,0,0";
    let t = &["A=1, B=-1, eps=1"];
    Builder::new(5)
        .assert(CriticalFamily, CRIT, v("stated").family(f))
        .assert(
            Eigenvalue,
            CRIT,
            v("stated").domain(f).expected("-(A + B)^2"),
        )
        .assert_at(
            HarmonicMapThreshold,
            EQUIV,
            v("stated").on(f).when("A + B = 0"),
            t,
        )
        .assert_at(
            HarmonicSection,
            EQUIV,
            v("stated").on(f).when("A + B = 0"),
            t,
        )
        .assert_at(
            KillingCondition,
            EQUIV,
            v("stated").family(f).when("A + B = 0"),
            t,
        )
        .assert(
            EnergyFormula,
            ENERGY,
            v("stated").expected(
                "2 + (A + B)*(A*(a^2 - b^2) + 2*eps*b*c*sqrt(A^2 + A*B + B^2) + B*(a^2 + c^2))/2",
            ),
        )
        .assert(
            EnergyFormula,
            MINIMUM,
            v("stated").domain(f).expected("2 + (A + B)^2/2*a^2"),
        )
        .done()
}

fn case_6() -> Vec<ClaimRecord> {
    let f = "0,1,-1,0";
    Builder::new(6)
        .requiring("eps = 1")
        .assert(CriticalFamily, CRIT, v("stated").family(f))
        .assert(Eigenvalue, CRIT, v("stated").domain(f).expected("-13*A^2"))
        .assert(GeodesicFamily, EQUIV, v("stated").on(f))
        .assert(
            HarmonicMapThreshold,
            EQUIV,
            v("stated").domain(f).family("none"),
        )
        .assert(HarmonicSection, EQUIV, v("stated").domain(f).family("none"))
        .assert(SpatiallyHarmonicCondition, EQUIV, v("stated").on(f))
        .assert(
            EnergyFormula,
            ENERGY,
            v("stated").expected("2 + A^2*(4*a^2 + 12*d^2 + 17*c^2 + 24*b*c + 7*b^2)/2"),
        )
        .assert(EnergyFormula, MINIMUM, v("stated").domain(f).expected("2"))
        .done()
}

fn case_7() -> Vec<ClaimRecord> {
    let f = "0,1,1,0";
    let t = &["A=(-3+sqrt(13))/2, B=1"];
    let k = &["A=1, B=-1"];
    Builder::new(7)
        .assert(CriticalFamily, CRIT, v("stated").family(f))
        .conflict(
            Eigenvalue,
            CRIT,
            vec![
                v("derivation").domain(f).expected("B^2 - A^2 - 3*A*B"),
                v("theorem statement")
                    .domain(f)
                    .expected("B^2 - A^2 + 3*A*B"),
            ],
            &[],
        )
        .assert(GeodesicFamily, EQUIV, v("stated").on(f))
        .assert_at(
            HarmonicMapThreshold,
            EQUIV,
            v("stated").on(f).when("A^2 + 3*A*B - B^2 = 0"),
            t,
        )
        .assert_at(
            HarmonicSection,
            EQUIV,
            v("stated").on(f).when("A^2 + 3*A*B - B^2 = 0"),
            t,
        )
        .assert_at(
            KillingCondition,
            EQUIV,
            v("stated").on(f).when("A + B = 0"),
            k,
        )
        .assert(SpatiallyHarmonicCondition, EQUIV, v("stated").on(f))
        .assert(
            EnergyFormula,
            ENERGY,
            v("stated").expected("2 + (A^2*((a^2 + b^2 - c^2 + d^2) + 2*d) - B^2*(b^2 - c^2))/2"),
        )
        .assert(EnergyFormula, MINIMUM, v("stated").domain(f).expected("2"))
        .done()
}

fn case_8() -> Vec<ClaimRecord> {
    let f = "0,1,-1,0";
    let t = &["A=1, B=-1, eps=-1"];
    Builder::new(8)
        .requiring("eps = -1")
        .assert(CriticalFamily, CRIT, v("stated").family(f))
        .assert(
            Eigenvalue,
            CRIT,
            v("stated").domain(f).expected("13/36*(A + B)^2"),
        )
        .assert_at(
            GeodesicFamily,
            EQUIV,
            v("stated").on(f).when("A + B = 0"),
            t,
        )
        .assert_at(
            HarmonicMapThreshold,
            EQUIV,
            v("stated").on(f).when("A + B = 0"),
            t,
        )
        .assert_at(
            HarmonicSection,
            EQUIV,
            v("stated").on(f).when("A + B = 0"),
            t,
        )
        .assert_at(
            KillingCondition,
            EQUIV,
            v("stated")
                .family("1,0,0,0; 0,1,0,0; 0,0,1,0")
                .when("A + B = 0"),
            t,
        )
        .assert(SpatiallyHarmonicCondition, EQUIV, v("stated").on(f))
        .assert(
            EnergyFormula,
            ENERGY,
            v("stated").expected(
                "2 + (A + B)*(A*(4*a^2 - 17*b^2 - 7*c^2 + 12*d^2 - 24*b*c) \
                 + B*(4*a^2 + 7*b^2 + 17*c^2 + 12*d^2 + 24*b*c))/72",
            ),
        )
        .assert(EnergyFormula, MINIMUM, v("stated").domain(f).expected("2"))
        .done()
}

fn case_9() -> Vec<ClaimRecord> {
    let f = "1,0,1,0";
    Builder::new(9)
        .requiring("eps = 1")
        .assert(CriticalFamily, CRIT, v("stated").family(f))
        .assert(
            Eigenvalue,
            CRIT,
            v("stated").domain(f).expected("-13/4*A^2"),
        )
        .assert(GeodesicFamily, EQUIV, v("stated").on(f))
        .assert(
            HarmonicMapThreshold,
            EQUIV,
            v("stated").domain(f).family("none"),
        )
        .assert(HarmonicSection, EQUIV, v("stated").domain(f).family("none"))
        .assert(SpatiallyHarmonicCondition, EQUIV, v("stated").on(f))
        .assert(
            EnergyFormula,
            ENERGY,
            v("stated").expected("2 + A^2*(7/4*a^2 + b^2 + 17/4*c^2 + 3*d^2 - 6*a*c)/2"),
        )
        .assert(EnergyFormula, MINIMUM, v("stated").domain(f).expected("2"))
        .done()
}

fn case_10() -> Vec<ClaimRecord> {
    let f = "0,0,1,0";
    let t = &["A=3, B=5, C=0, eps=1"];
    let formula = |radicand: &str| {
        format!("2 - (A*C*(a^2 - b^2) - C^2*(a^2 + c^2) - 2*eps*a*b*sqrt({radicand})*C)/2")
    };
    Builder::new(10)
        .assert(CriticalFamily, CRIT, v("stated").family(f))
        .assert(Eigenvalue, CRIT, v("stated").domain(f).expected("-C^2"))
        .conflict(
            HarmonicMapThreshold,
            THRESH,
            vec![
                v("harmonic-map theorem").on(f).when("C = 0, B = 0"),
                v("equivalence table").on(f).when("C = 0"),
            ],
            t,
        )
        .assert_at(GeodesicFamily, EQUIV, v("stated").on(f).when("C = 0"), t)
        .assert_at(HarmonicSection, EQUIV, v("stated").on(f).when("C = 0"), t)
        .assert_at(KillingCondition, EQUIV, v("stated").on(f).when("C = 0"), t)
        .assert_at(
            SpatiallyHarmonicCondition,
            EQUIV,
            v("stated").on(f).when("C = 0"),
            t,
        )
        .conflict(
            EnergyFormula,
            ENERGY,
            vec![
                v("as printed, B = 0")
                    .requires("B = 0")
                    .expected(&formula("-A^2 - C^2 - A*C")),
                v("general B").expected(&formula("B^2 - A^2 - C^2 - A*C")),
            ],
            &["A=0, B=0, C=0, eps=1"],
        )
        .conflict(
            EnergyFormula,
            MINIMUM,
            vec![
                v("as printed, B = 0")
                    .domain(f)
                    .requires("B = 0")
                    .expected("2 - C^2/2*(a^2 + b^2 - c^2 + d^2)"),
                v("general B")
                    .domain(f)
                    .expected("2 - C^2/2*(a^2 + b^2 - c^2 + d^2)"),
            ],
            &["A=0, B=0, C=0, eps=1"],
        )
        .done()
}

fn case_11() -> Vec<ClaimRecord> {
    let f = "sqrt(2), -2/3*sqrt(2), 1, 0";
    Builder::new(11)
        .requiring("eps = -1, del = -1")
        .assert(CriticalFamily, CRIT, v("stated").family(f))
        .assert(Eigenvalue, CRIT, v("stated").domain(f).expected("5/18*A^2"))
        .assert(HarmonicMapThreshold, EQUIV, v("stated").domain(f).family("none"))
        .assert(HarmonicSection, EQUIV, v("stated").domain(f).family("none"))
        .assert(
            EnergyFormula,
            ENERGY,
            v("stated").expected(
                "2 + A^2*(3*a^2 - b^2 + 17*c^2 - 5*d^2 - 10*a*b + 9*sqrt(2)*a*c - 9*sqrt(2)*b*c)/36",
            ),
        )
        .assert(EnergyFormula, MINIMUM, v("stated").domain(f).expected("2 - 589/324*A^2*c^2"))
        .done()
}

/// Claims common to the null-pair cases 12–14.
fn type_c1(
    id: u8,
    geodesic: &str,
    killing_when: Option<&str>,
    killing_witness: &'static [&'static str],
    energy: &str,
) -> Vec<ClaimRecord> {
    let killing = |b: Builder, kind| match killing_when {
        Some(w) => b.assert_at(kind, GKP, v("stated").family(U).when(w), killing_witness),
        None => b.assert(kind, GKP, v("stated").family(U)),
    };
    let b = Builder::new(id)
        .conflict(
            CriticalFamily,
            CRIT,
            vec![
                v("all fields critical"),
                v("equivalence table").family(E1E2U),
            ],
            &[],
        )
        .assert(HarmonicMapThreshold, CRIT, v("stated").family(E1E2U))
        .assert(HarmonicSection, EQUIV, v("stated").family(E1E2U))
        .assert(
            GeodesicFamily,
            GKP,
            v("stated").domain(E1E2U).family(geodesic),
        );
    let b = killing(b, KillingCondition);
    let b = killing(b, ParallelFamily);
    b.assert(
        SpatiallyHarmonicCondition,
        EQUIV,
        v("stated").domain(E1E2U).family(geodesic),
    )
    .assert(EnergyFormula, ENERGY, v("stated").expected(energy))
    .assert(
        EnergyFormula,
        MINIMUM,
        v("stated").domain(E1E2U).expected("2"),
    )
    .done()
}

fn case_15() -> Vec<ClaimRecord> {
    Builder::new(15)
        .assert(CriticalFamily, CRIT, v("stated"))
        .assert(HarmonicMapThreshold, CRIT, v("stated"))
        .assert(HarmonicSection, EQUIV, v("stated"))
        .assert(GeodesicFamily, GKP, v("stated").family(E1E2U))
        .assert(KillingCondition, GKP, v("stated").family(U))
        .assert(ParallelFamily, GKP, v("stated").family(U))
        .assert(SpatiallyHarmonicCondition, EQUIV, v("stated").family(E1E2U))
        .assert(EnergyFormula, ENERGY, v("stated").expected("2"))
        .assert(EnergyFormula, MINIMUM, v("stated").expected("2"))
        .done()
}

fn case_16() -> Vec<ClaimRecord> {
    Builder::new(16)
        .conflict(
            CriticalFamily,
            CRIT,
            vec![
                v("all fields critical"),
                v("equivalence table").family(E1E2U),
            ],
            &[],
        )
        .assert(HarmonicMapThreshold, CRIT, v("stated").family(E1E2U))
        .assert(HarmonicSection, EQUIV, v("stated").family(E1E2U))
        .assert(
            GeodesicFamily,
            GKP,
            v("stated").family("1,-1,0,0; 0,0,1,-1"),
        )
        .assert(KillingCondition, GKP, v("stated").family("1,-1,0,0"))
        .assert(ParallelFamily, GKP, v("stated").family("none"))
        .assert(SpatiallyHarmonicCondition, EQUIV, v("stated").family(E1E2U))
        .assert(
            EnergyFormula,
            ENERGY,
            v("stated").expected("2 + ((A + B)^2 + A^2 + B^2)*(c + d)^2/2"),
        )
        .assert(
            EnergyFormula,
            MINIMUM,
            v("stated").domain(E1E2U).expected("2"),
        )
        .done()
}

fn build(case_id: u8) -> Vec<ClaimRecord> {
    match case_id {
        1 => case_1(),
        2 => case_2(),
        3 => case_3(),
        4 => case_4(),
        5 => case_5(),
        6 => case_6(),
        7 => case_7(),
        8 => case_8(),
        9 => case_9(),
        10 => case_10(),
        11 => case_11(),
        12 => type_c1(
            12,
            "0,1,0,0; 0,0,1,-1",
            Some("C = 0"),
            &["A=1, B=2, C=0, D=1, E=1, eps=1"],
            "2 + ((A + B)^2 + C^2)*(c + d)^2/2",
        ),
        13 => type_c1(
            13,
            "1,-(B - C - D)/(2*A),0,0; 0,0,1,-1",
            Some("4*A^2 = B^2 - (C + D)^2"),
            &["A=1, B=2, C=1, D=-1, E=0, F=0"],
            "2 + (B^2 + 4*A^2 - 2*C*B - 2*B*D + (C + D)^2)\
             *(B^2 + 4*A^2 + 2*C*B + 2*B*D + (C + D)^2)*(c + d)^2/(32*A^2)",
        ),
        14 => type_c1(14, U, None, &[], "2 + ((A + D)^2 + 4*B^2)*(c + d)^2/2"),
        15 => case_15(),
        16 => case_16(),
        _ => Vec::new(),
    }
}

/// The transcribed claims of one case, in a fixed order.
pub fn claims_for(case_id: u8) -> Result<&'static [ClaimRecord]> {
    use std::sync::OnceLock;
    static ALL: OnceLock<Vec<Vec<ClaimRecord>>> = OnceLock::new();
    let all = ALL.get_or_init(|| (1..=super::CASE_COUNT).map(build).collect());
    if !(1..=super::CASE_COUNT).contains(&case_id) {
        return Err(Error::UnknownCase(case_id));
    }
    Ok(&all[usize::from(case_id) - 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::CaseParams;

    #[test]
    fn every_case_has_claims() {
        for id in 1..=16 {
            assert!(!claims_for(id).unwrap().is_empty(), "case {id}");
        }
        assert!(claims_for(0).is_err());
    }

    #[test]
    fn conflicting_records() {
        let conflicting: Vec<(u8, ClaimKind)> = (1..=16)
            .flat_map(|id| claims_for(id).unwrap().iter())
            .filter(|c| c.is_conflicting())
            .map(|c| (c.case_id, c.kind))
            .collect();
        assert!(conflicting.contains(&(7, Eigenvalue)));
        assert!(conflicting.contains(&(10, EnergyFormula)));
        for id in [12, 13, 14, 16] {
            assert!(conflicting.contains(&(id, CriticalFamily)));
        }
        assert!(!conflicting.contains(&(15, CriticalFamily)));
    }

    #[test]
    fn case11_family_generator() {
        let c = &claims_for(11).unwrap()[0];
        assert_eq!(c.kind, CriticalFamily);
        let p = CaseParams::parse(11, "A=3, eps=-1, del=-1").unwrap();
        let g = c.variants[0].family.generators(&p).unwrap();
        assert!((g[0][0].to_f64() - 2f64.sqrt()).abs() < 1e-15);
        assert!((g[0][1].to_f64() + 2.0 * 2f64.sqrt() / 3.0).abs() < 1e-15);
    }

    #[test]
    fn pins_come_from_requirements() {
        let c = &claims_for(2).unwrap()[0];
        assert_eq!(
            c.pins(),
            vec![(Var::Eps, Scalar::int(-1)), (Var::Del, Scalar::int(1))]
        );
        let energy10 = claims_for(10)
            .unwrap()
            .iter()
            .find(|c| c.kind == EnergyFormula && c.is_conflicting())
            .unwrap();
        assert!(energy10.pins().is_empty());
    }

    #[test]
    fn ids_are_ordered() {
        let c = claims_for(4).unwrap();
        assert_eq!(c[0].id, "4.1");
        assert!(c.iter().enumerate().all(|(i, r)| r.index == i));
    }
}
