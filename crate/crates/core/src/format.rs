//! JSON interchange: user-supplied algebras and the catalog export.
//!
//! Algebra files list the metric and the nonzero brackets with 1-based
//! indices:
//!
//! ```json
//! { "dim": 4,
//!   "metric": [[1,0,0,0],[0,1,0,0],[0,0,-1,0],[0,0,0,1]],
//!   "brackets": [{ "i": 1, "j": 2, "coeffs": [0, "3/2", 0, 0] }] }
//! ```
//!
//! Coefficients may be integers, floats or rational strings.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::MetricLieAlgebra;
use crate::catalog::{self, claims_for, rational_witnesses};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Scalar, Tolerance};
use crate::verifier::SCHEMA;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    pub metric: Vec<Vec<Scalar>>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

impl AlgebraFile {
    pub fn from_algebra(alg: &MetricLieAlgebra) -> Self {
        let n = alg.dim();
        let c = alg.structure();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let coeffs: Vec<Scalar> = (0..n).map(|k| c.get(i, j, k).clone()).collect();
                if coeffs.iter().any(|x| !x.is_zero()) {
                    brackets.push(BracketEntry {
                        i: i + 1,
                        j: j + 1,
                        coeffs,
                    });
                }
            }
        }
        AlgebraFile {
            dim: n,
            metric: alg.metric().rows(),
            brackets,
        }
    }

    /// Builds and validates the algebra (antisymmetry is implied by the
    /// format; Jacobi and nondegeneracy are checked).
    pub fn to_algebra(&self, tol: &Tolerance) -> Result<MetricLieAlgebra> {
        let n = self.dim;
        if n == 0 {
            return Err(Error::MalformedAlgebra("dimension must be positive".into()));
        }
        if self.metric.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.metric.len(),
            });
        }
        let metric = Matrix::from_rows(self.metric.clone())?;
        let mut list = Vec::with_capacity(self.brackets.len());
        for b in &self.brackets {
            if b.i == 0 || b.j == 0 {
                return Err(Error::MalformedAlgebra(
                    "bracket indices are 1-based".into(),
                ));
            }
            list.push((b.i - 1, b.j - 1, b.coeffs.clone()));
        }
        let alg = MetricLieAlgebra::from_brackets(metric, &list)?;
        let violations = alg.validate(tol);
        if let Some(first) = violations.first() {
            return Err(match first {
                crate::algebra::Violation::DegenerateMetric { det } => Error::DegenerateMetric {
                    det: det.to_string(),
                },
                v => Error::MalformedAlgebra(format!(
                    "{v} ({} violation{} in total)",
                    violations.len(),
                    if violations.len() == 1 { "" } else { "s" }
                )),
            });
        }
        Ok(alg)
    }
}

pub fn parse_algebra(src: &str, tol: &Tolerance) -> Result<MetricLieAlgebra> {
    let file: AlgebraFile = serde_json::from_str(src).map_err(|e| Error::Parse {
        input: "algebra JSON".into(),
        offset: e.column(),
        message: e.to_string(),
    })?;
    file.to_algebra(tol)
}

pub fn algebra_to_json(alg: &MetricLieAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from_algebra(alg)).expect("algebra serializes")
}

/// Every case definition, its witnesses, and every claim.
pub fn catalog_json() -> Result<Value> {
    let mut cases = Vec::new();
    let mut claims = Vec::new();
    for def in catalog::cases() {
        let witnesses = rational_witnesses(def.id)?;
        cases.push(json!({
            "case": def.id,
            "type": def.family,
            "metric_kind": def.metric,
            "metric": def.metric_matrix(),
            "dim": 4,
            "params": def.params,
            "brackets": def.brackets,
            "constraints": def.constraint_strings(),
            "witnesses": witnesses,
            "printed": def.printed,
            "correction": def.correction,
        }));
        for c in claims_for(def.id)? {
            let first = &c.variants[0];
            claims.push(json!({
                "id": c.id,
                "case": c.case_id,
                "kind": c.kind,
                "family": first.family,
                "expected": first.expected,
                "status": c.status,
                "source": c.source,
                "statement": c.statement(),
                "variants": c.variants,
                "witnesses": c.witnesses,
            }));
        }
    }
    Ok(json!({ "schema": SCHEMA, "cases": cases, "claims": claims }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let src = r#"{"dim": 4,
            "metric": [[1,0,0,0],[0,1,0,0],[0,0,-1,0],[0,0,0,1]],
            "brackets": [{"i": 1, "j": 2, "coeffs": [4, 3, 0, 0]},
                         {"i": 3, "j": 4, "coeffs": [0, 0, "5", 0]}]}"#;
        let alg = parse_algebra(src, &Tolerance::default()).unwrap();
        assert_eq!(alg.structure().get(1, 0, 0), &Scalar::int(-4));
        let again = parse_algebra(&algebra_to_json(&alg), &Tolerance::default()).unwrap();
        assert_eq!(alg, again);
    }

    #[test]
    fn rejects_jacobi_failure_and_bad_json() {
        let src = r#"{"dim": 3, "metric": [[1,0,0],[0,1,0],[0,0,1]],
            "brackets": [{"i":1,"j":2,"coeffs":[1,0,0]}, {"i":1,"j":3,"coeffs":[0,1,0]},
                         {"i":2,"j":3,"coeffs":[1,0,0]}]}"#;
        assert!(matches!(
            parse_algebra(src, &Tolerance::default()),
            Err(Error::MalformedAlgebra(_))
        ));
        assert!(matches!(
            parse_algebra("{", &Tolerance::default()),
            Err(Error::Parse { .. })
        ));
        let degenerate = r#"{"dim": 2, "metric": [[1,1],[1,1]], "brackets": []}"#;
        assert!(matches!(
            parse_algebra(degenerate, &Tolerance::default()),
            Err(Error::DegenerateMetric { .. })
        ));
    }

    #[test]
    fn catalog_export_has_all_cases() {
        let v = catalog_json().unwrap();
        assert_eq!(v["schema"], "v1");
        assert_eq!(v["cases"].as_array().unwrap().len(), 16);
        assert_eq!(v["cases"][3]["witnesses"][0]["A"], "5");
        let claims = v["claims"].as_array().unwrap();
        assert!(claims
            .iter()
            .any(|c| c["status"] == "conflicting" && c["case"] == 7));
    }
}
