//! Brute-force discovery of critical fields on a coefficient grid.
//!
//! Independent of the claims database: every grid point is classified with
//! the collinearity test, the critical points are clustered by eigenvalue,
//! and the smallest subspace containing them is fitted by SVD.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::subspace;
use crate::algebra::{ConnectionCoefficients, MetricLieAlgebra};
use crate::error::{Error, Result};
use crate::harmonicity::{collinearity, laplacian_matrix, order_scale, CollinearityKind};
use crate::scalar::{Scalar, Tolerance};

/// Singular values below this fraction of the largest are treated as zero.
pub const RANK_THRESHOLD: f64 = 1e-6;

/// The same range and step on every axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            min: -2.0,
            max: 2.0,
            step: 0.25,
        }
    }
}

impl GridSpec {
    /// Axis values; decimal grid points are exact rationals.
    pub fn values(&self) -> Result<Vec<Scalar>> {
        if !(self.step > 0.0)
            || !(self.max >= self.min)
            || !self.min.is_finite()
            || !self.max.is_finite()
        {
            return Err(Error::EmptyGrid);
        }
        let count = ((self.max - self.min) / self.step + 1e-9).floor() as usize + 1;
        let min = Scalar::from_f64_decimal(self.min).unwrap_or(Scalar::float(self.min));
        let step = Scalar::from_f64_decimal(self.step).unwrap_or(Scalar::float(self.step));
        Ok((0..count)
            .map(|k| &min + &(&step * &Scalar::int(k as i64)))
            .collect())
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    /// `min:max:step`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |message: &str| Error::Parse {
            input: s.to_string(),
            offset: 0,
            message: message.to_string(),
        };
        let parts: Vec<f64> = s
            .split(':')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad("expected min:max:step"))?;
        let [min, max, step] = parts[..] else {
            return Err(bad("expected min:max:step"));
        };
        let g = GridSpec { min, max, step };
        g.values()?;
        Ok(g)
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.min, self.max, self.step)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanPoint {
    pub coeffs: Vec<Scalar>,
    pub kind: CollinearityKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FittedSubspace {
    pub rank: usize,
    /// Orthonormal rows.
    pub basis: Vec<Vec<f64>>,
    pub singular_values: Vec<f64>,
}

impl FittedSubspace {
    fn fit(rows: &[Vec<f64>]) -> Self {
        let basis = subspace::orthonormal_basis(rows, RANK_THRESHOLD);
        FittedSubspace {
            rank: basis.len(),
            basis,
            singular_values: subspace::singular_values(rows),
        }
    }

    /// Largest principal angle to `span(generators)`, `None` on a rank
    /// mismatch.
    pub fn angle_to(&self, generators: &[Vec<f64>]) -> Option<f64> {
        subspace::max_principal_angle(&self.basis, generators, RANK_THRESHOLD)
    }
}

/// Critical points sharing one eigenvalue (or all of the zero kind).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cluster {
    pub kind: CollinearityKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    pub count: usize,
    pub subspace: FittedSubspace,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanResult {
    pub grid: GridSpec,
    pub points_evaluated: usize,
    pub critical_count: usize,
    pub all_critical: bool,
    pub clusters: Vec<Cluster>,
    /// Smallest subspace containing every critical point.
    pub subspace: FittedSubspace,
    pub critical: Vec<ScanPoint>,
}

fn to_f64(v: &[Scalar]) -> Vec<f64> {
    v.iter().map(Scalar::to_f64).collect()
}

fn clusters(points: &[ScanPoint]) -> Vec<Cluster> {
    let mut out = Vec::new();
    let zero: Vec<Vec<f64>> = points
        .iter()
        .filter(|p| p.kind == CollinearityKind::Zero)
        .map(|p| to_f64(&p.coeffs))
        .collect();
    if !zero.is_empty() {
        out.push(Cluster {
            kind: CollinearityKind::Zero,
            lambda: None,
            count: zero.len(),
            subspace: FittedSubspace::fit(&zero),
        });
    }
    let mut eigen: Vec<(f64, Vec<f64>)> = points
        .iter()
        .filter(|p| p.kind == CollinearityKind::Eigen)
        .map(|p| {
            (
                p.lambda.as_ref().map_or(0.0, Scalar::to_f64),
                to_f64(&p.coeffs),
            )
        })
        .collect();
    eigen.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut start = 0;
    while start < eigen.len() {
        let lambda = eigen[start].0;
        let mut end = start + 1;
        while end < eigen.len() && (eigen[end].0 - lambda).abs() <= 1e-9 * (1.0 + lambda.abs()) {
            end += 1;
        }
        let rows: Vec<Vec<f64>> = eigen[start..end].iter().map(|(_, v)| v.clone()).collect();
        out.push(Cluster {
            kind: CollinearityKind::Eigen,
            lambda: Some(lambda),
            count: rows.len(),
            subspace: FittedSubspace::fit(&rows),
        });
        start = end;
    }
    out
}

/// Classifies every nonzero grid point with the collinearity test.
pub fn brute_force_critical_scan(
    alg: &MetricLieAlgebra,
    conn: &ConnectionCoefficients,
    grid: &GridSpec,
    tol: &Tolerance,
) -> Result<ScanResult> {
    let n = alg.dim();
    let axis = grid.values()?;
    let m = laplacian_matrix(conn);
    let exact = alg.is_exact();
    let axis: Vec<Scalar> = if exact {
        axis
    } else {
        axis.iter().map(|x| Scalar::float(x.to_f64())).collect()
    };
    let k = axis.len();
    let total = k.checked_pow(n as u32).ok_or(Error::EmptyGrid)?;
    let results = (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let mut v = Vec::with_capacity(n);
            for _ in 0..n {
                v.push(axis[idx % k].clone());
                idx /= k;
            }
            v.reverse();
            if v.iter().all(Scalar::is_zero) {
                return Ok(None);
            }
            let l = m.mul_vec(&v);
            let r = collinearity(&l, &v, order_scale(conn, &v, 1, 2), tol)?;
            Ok(Some((v, r)))
        })
        .collect::<Result<Vec<_>>>()?;
    let evaluated = results.iter().flatten().count();
    if evaluated == 0 {
        return Err(Error::EmptyGrid);
    }
    let critical: Vec<ScanPoint> = results
        .into_iter()
        .flatten()
        .filter(|(_, r)| r.is_collinear())
        .map(|(v, r)| ScanPoint {
            coeffs: v,
            kind: r.kind,
            lambda: r.lambda,
        })
        .collect();
    let rows: Vec<Vec<f64>> = critical.iter().map(|p| to_f64(&p.coeffs)).collect();
    Ok(ScanResult {
        grid: *grid,
        points_evaluated: evaluated,
        critical_count: critical.len(),
        all_critical: critical.len() == evaluated,
        clusters: clusters(&critical),
        subspace: FittedSubspace::fit(&rows),
        critical,
    })
}
