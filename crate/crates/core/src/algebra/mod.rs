//! Metric Lie algebras: structure constants plus an inner product.

pub(crate) mod connection;

pub use connection::{
    covariant_derivative, curvature, einstein_factor, koszul_connection, ricci, scalar_curvature,
    ConnectionCoefficients, EinsteinCheck,
};

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{vec, Matrix, Tensor3};
use crate::scalar::{Mode, Scalar, Tolerance};

/// A Lie algebra with basis `e_1..e_n`, brackets
/// `[e_i, e_j] = Σ_k c[i][j][k] e_k` and a symmetric bilinear form `g`.
///
/// Indices are 0-based in the API and 1-based in every user-facing string.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricLieAlgebra {
    structure: Tensor3,
    metric: Matrix,
}

/// One violated axiom, with 1-based indices.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Antisymmetry {
        i: usize,
        j: usize,
        k: usize,
        residual: f64,
    },
    Jacobi {
        i: usize,
        j: usize,
        l: usize,
        k: usize,
        residual: f64,
    },
    MetricAsymmetry {
        i: usize,
        j: usize,
        residual: f64,
    },
    DegenerateMetric {
        det: f64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Antisymmetry { i, j, k, residual } => {
                write!(
                    f,
                    "antisymmetry fails at ({i},{j},{k}), residual {residual:e}"
                )
            }
            Violation::Jacobi {
                i,
                j,
                l,
                k,
                residual,
            } => write!(
                f,
                "Jacobi identity fails for (e{i},e{j},e{l}) in component {k}, residual {residual:e}"
            ),
            Violation::MetricAsymmetry { i, j, residual } => {
                write!(
                    f,
                    "metric not symmetric at ({i},{j}), residual {residual:e}"
                )
            }
            Violation::DegenerateMetric { det } => write!(f, "metric is degenerate (det {det:e})"),
        }
    }
}

impl MetricLieAlgebra {
    pub fn new(structure: Tensor3, metric: Matrix) -> Result<Self> {
        if structure.dim() != metric.dim() {
            return Err(Error::DimensionMismatch {
                expected: metric.dim(),
                found: structure.dim(),
            });
        }
        Ok(MetricLieAlgebra { structure, metric })
    }

    /// Builds the structure constants from the listed brackets
    /// `(i, j, [e_i, e_j])` (0-based). Pairs not listed are zero and the
    /// reversed pair is filled in by antisymmetry.
    pub fn from_brackets(metric: Matrix, brackets: &[(usize, usize, Vec<Scalar>)]) -> Result<Self> {
        let n = metric.dim();
        let mut c = Tensor3::zeros(n);
        for (i, j, coeffs) in brackets {
            if *i >= n || *j >= n {
                return Err(Error::MalformedAlgebra(format!(
                    "bracket index ({}, {}) out of range 1..={n}",
                    i + 1,
                    j + 1
                )));
            }
            if i == j {
                return Err(Error::MalformedAlgebra(format!(
                    "bracket [e{0}, e{0}] must vanish and cannot be specified",
                    i + 1
                )));
            }
            if coeffs.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: coeffs.len(),
                });
            }
            for (k, x) in coeffs.iter().enumerate() {
                c.set(*i, *j, k, x.clone());
                c.set(*j, *i, k, -x);
            }
        }
        MetricLieAlgebra::new(c, metric)
    }

    pub fn abelian(metric: Matrix) -> Self {
        let n = metric.dim();
        MetricLieAlgebra {
            structure: Tensor3::zeros(n),
            metric,
        }
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn structure(&self) -> &Tensor3 {
        &self.structure
    }

    pub fn metric(&self) -> &Matrix {
        &self.metric
    }

    pub fn is_exact(&self) -> bool {
        self.structure.is_exact() && self.metric.is_exact()
    }

    pub fn to_mode(&self, mode: Mode) -> Self {
        let structure = self.structure.map(|x| x.to_mode(mode));
        let mut metric = self.metric.clone();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                metric.set(i, j, self.metric.get(i, j).to_mode(mode));
            }
        }
        MetricLieAlgebra { structure, metric }
    }

    pub fn metric_inverse(&self) -> Result<Matrix> {
        self.metric
            .inverse()
            .ok_or_else(|| Error::DegenerateMetric {
                det: self.metric.det().to_string(),
            })
    }

    /// Magnitude used to scale float tolerances for bracket-level checks.
    pub fn scale(&self) -> f64 {
        1.0 + self.structure.max_abs()
    }

    /// Reports every violated axiom. An empty list means the algebra is a
    /// valid metric Lie algebra.
    pub fn validate(&self, tol: &Tolerance) -> Vec<Violation> {
        let n = self.dim();
        let mut out = Vec::new();
        let s = self.scale();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let r = self.structure.get(i, j, k) + self.structure.get(j, i, k);
                    if !tol.is_negligible(&r, s) {
                        out.push(Violation::Antisymmetry {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                            residual: r.abs_f64(),
                        });
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let ei = vec::basis(n, i);
                    let ej = vec::basis(n, j);
                    let el = vec::basis(n, l);
                    let t1 = self.bracket_raw(&ei, &self.bracket_raw(&ej, &el));
                    let t2 = self.bracket_raw(&ej, &self.bracket_raw(&el, &ei));
                    let t3 = self.bracket_raw(&el, &self.bracket_raw(&ei, &ej));
                    for k in 0..n {
                        let r = &(&t1[k] + &t2[k]) + &t3[k];
                        if !tol.is_negligible(&r, s * s) {
                            out.push(Violation::Jacobi {
                                i: i + 1,
                                j: j + 1,
                                l: l + 1,
                                k: k + 1,
                                residual: r.abs_f64(),
                            });
                        }
                    }
                }
            }
        }
        let gs = 1.0 + self.metric.max_abs();
        for i in 0..n {
            for j in i + 1..n {
                let r = self.metric.get(i, j) - self.metric.get(j, i);
                if !tol.is_negligible(&r, gs) {
                    out.push(Violation::MetricAsymmetry {
                        i: i + 1,
                        j: j + 1,
                        residual: r.abs_f64(),
                    });
                }
            }
        }
        let det = self.metric.det();
        let degenerate = match &det {
            Scalar::Exact(_) => det.is_zero(),
            Scalar::Float(x) => x.abs() <= tol.abs,
        };
        if degenerate {
            out.push(Violation::DegenerateMetric { det: det.to_f64() });
        }
        out
    }

    pub(crate) fn bracket_raw(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec::zeros(n);
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() || i == j {
                    continue;
                }
                let w = &x[i] * &y[j];
                vec::axpy(&mut out, &w, self.structure.fibre(i, j));
            }
        }
        out
    }

    pub(crate) fn check_dim(&self, v: &InvariantVector) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.dim(),
            });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &InvariantVector, y: &InvariantVector) -> Result<InvariantVector> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(InvariantVector::new(self.bracket_raw(&x.coeffs, &y.coeffs)))
    }

    pub fn inner(&self, x: &InvariantVector, y: &InvariantVector) -> Result<Scalar> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.metric.bilinear(&x.coeffs, &y.coeffs))
    }

    /// The same algebra written in the basis `e'_a = Σ_i P[a][i] e_i`.
    pub fn change_basis(&self, p: &BasisChange) -> Result<Self> {
        let n = self.dim();
        if p.matrix.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.matrix.dim(),
            });
        }
        let pm = &p.matrix;
        let metric = pm.mul(&self.metric).mul(&pm.transpose());
        let mut c = Tensor3::zeros(n);
        for a in 0..n {
            for b in 0..n {
                let ea = pm.row(a);
                let eb = pm.row(b);
                let old = self.bracket_raw(ea, eb);
                c_set_fibre(&mut c, a, b, &p.inverse.vec_mul(&old));
            }
        }
        MetricLieAlgebra::new(c, metric)
    }
}

fn c_set_fibre(c: &mut Tensor3, a: usize, b: usize, values: &[Scalar]) {
    for (k, x) in values.iter().enumerate() {
        c.set(a, b, k, x.clone());
    }
}

/// Constant coefficients of a left-invariant vector field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InvariantVector {
    pub coeffs: Vec<Scalar>,
}

impl InvariantVector {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        InvariantVector { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        InvariantVector::new(coeffs.iter().map(|&x| Scalar::int(x)).collect())
    }

    pub fn from_f64(coeffs: &[f64]) -> Self {
        InvariantVector::new(coeffs.iter().map(|&x| Scalar::float(x)).collect())
    }

    pub fn zero(n: usize) -> Self {
        InvariantVector::new(vec::zeros(n))
    }

    pub fn basis(n: usize, i: usize) -> Self {
        InvariantVector::new(vec::basis(n, i))
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        vec::is_zero(&self.coeffs)
    }

    pub fn is_exact(&self) -> bool {
        vec::is_exact(&self.coeffs)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        InvariantVector::new(vec::scale(s, &self.coeffs))
    }

    /// Euclidean coefficient norm (used only for tolerance scaling).
    pub fn euclidean_norm(&self) -> f64 {
        vec::norm(&self.coeffs)
    }

    pub fn max_abs(&self) -> f64 {
        vec::max_abs(&self.coeffs)
    }

    pub fn norm_squared(&self, alg: &MetricLieAlgebra) -> Result<Scalar> {
        alg.inner(self, self)
    }

    pub fn to_mode(&self, mode: Mode) -> Self {
        InvariantVector::new(self.coeffs.iter().map(|x| x.to_mode(mode)).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(Scalar::to_f64).collect()
    }
}

impl fmt::Display for InvariantVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Add for &InvariantVector {
    type Output = InvariantVector;
    fn add(self, rhs: &InvariantVector) -> InvariantVector {
        InvariantVector::new(vec::add(&self.coeffs, &rhs.coeffs))
    }
}

impl Sub for &InvariantVector {
    type Output = InvariantVector;
    fn sub(self, rhs: &InvariantVector) -> InvariantVector {
        InvariantVector::new(vec::sub(&self.coeffs, &rhs.coeffs))
    }
}

impl Neg for &InvariantVector {
    type Output = InvariantVector;
    fn neg(self) -> InvariantVector {
        InvariantVector::new(self.coeffs.iter().map(|x| -x).collect())
    }
}

/// An invertible matrix `P` whose rows are the new basis vectors written in
/// the old basis.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisChange {
    matrix: Matrix,
    inverse: Matrix,
}

impl BasisChange {
    pub fn new(matrix: Matrix, tol: &Tolerance) -> Result<Self> {
        let det = matrix.det();
        let singular = match &det {
            Scalar::Exact(_) => det.is_zero(),
            Scalar::Float(x) => x.abs() <= tol.abs,
        };
        if singular {
            return Err(Error::SingularBasisChange {
                det: det.to_string(),
            });
        }
        let inverse = matrix.inverse().ok_or_else(|| Error::SingularBasisChange {
            det: det.to_string(),
        })?;
        Ok(BasisChange { matrix, inverse })
    }

    pub fn identity(n: usize) -> Self {
        BasisChange {
            matrix: Matrix::identity(n),
            inverse: Matrix::identity(n),
        }
    }

    /// The pseudo-orthonormal frame for the null-pair metric
    /// `g(e_3, e_4) = 1`: keeps `e_1, e_2` and sets
    /// `e_3' = -e_3/2 + e_4`, `e_4' = e_3/2 + e_4`, giving `diag(1,1,-1,1)`.
    pub fn null_pair_frame() -> Self {
        let h = Scalar::ratio(1, 2);
        let z = Scalar::zero;
        let o = Scalar::one;
        let m = Matrix::from_rows(vec![
            vec![o(), z(), z(), z()],
            vec![z(), o(), z(), z()],
            vec![z(), z(), -&h, o()],
            vec![z(), z(), h, o()],
        ])
        .expect("4x4 literal");
        BasisChange::new(m, &Tolerance::default()).expect("invertible literal")
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inverse(&self) -> &Matrix {
        &self.inverse
    }

    /// Old-basis coefficients of a vector given in the new basis (`Pᵀ v`).
    pub fn to_old(&self, v: &InvariantVector) -> InvariantVector {
        InvariantVector::new(self.matrix.vec_mul(&v.coeffs))
    }

    /// New-basis coefficients of a vector given in the old basis (`P⁻ᵀ v`).
    pub fn to_new(&self, v: &InvariantVector) -> InvariantVector {
        InvariantVector::new(self.inverse.vec_mul(&v.coeffs))
    }
}
