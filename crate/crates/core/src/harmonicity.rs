//! Variational and kinematic conditions on a left-invariant vector field.
//!
//! All traces are taken with `g⁻¹`, so every operation works in an
//! arbitrary basis (including the null-pair basis `g(e_3,e_4) = 1`) and
//! reduces to the usual `Σ ε_i (…)` form in a pseudo-orthonormal frame.
//!
//! Float thresholds scale with the size of the inputs: with `s = 1 + max|Γ|`
//! and `v = 1 + ‖V‖`, a quantity of derivative order `p` and degree `q` in
//! `V` is compared against `tol.bound(v^q · s^p)`. Exact inputs are decided
//! by exact zero tests.

use serde::Serialize;

use crate::algebra::connection::curvature_raw;
use crate::algebra::{ConnectionCoefficients, InvariantVector, MetricLieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{vec, Matrix};
use crate::scalar::{Scalar, Tolerance};

/// Boolean test together with the magnitude that decided it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Check {
    pub holds: bool,
    pub residual: f64,
    /// Float threshold the residual was compared against.
    pub bound: f64,
}

impl Check {
    fn of_vector(v: &[Scalar], scale: f64, tol: &Tolerance) -> Check {
        Check {
            holds: v.iter().all(|x| tol.is_negligible(x, scale)),
            residual: vec::max_abs(v),
            bound: tol.bound(scale),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CollinearityKind {
    Zero,
    Eigen,
    NotCollinear,
}

/// Result of testing whether a vector `L` lies on the line spanned by `V`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CollinearityResult {
    pub kind: CollinearityKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Scalar>,
    /// Largest 2×2 minor of `[L; V]`.
    pub residual: f64,
    pub bound: f64,
    /// `max|L|`, compared against `zero_bound`.
    pub magnitude: f64,
    pub zero_bound: f64,
}

impl CollinearityResult {
    pub fn is_collinear(&self) -> bool {
        self.kind != CollinearityKind::NotCollinear
    }

    /// `λ` with `L = λV`; `0` for the zero kind.
    pub fn factor(&self) -> Option<Scalar> {
        match self.kind {
            CollinearityKind::Zero => Some(Scalar::zero()),
            CollinearityKind::Eigen => self.lambda.clone(),
            CollinearityKind::NotCollinear => None,
        }
    }
}

pub(crate) fn order_scale(
    conn: &ConnectionCoefficients,
    v: &[Scalar],
    degree: i32,
    order: i32,
) -> f64 {
    (1.0 + vec::norm(v)).powi(degree) * conn.scale().powi(order)
}

/// Minor test of `l` against `span(v)`. `zero_scale` decides when `l`
/// itself counts as zero.
pub fn collinearity(
    l: &[Scalar],
    v: &[Scalar],
    zero_scale: f64,
    tol: &Tolerance,
) -> Result<CollinearityResult> {
    if vec::is_zero(v) {
        return Err(Error::ZeroVector);
    }
    let n = v.len();
    let mut residual = 0.0f64;
    let minor_scale = (1.0 + vec::norm(l)) * (1.0 + vec::norm(v));
    let mut collinear = true;
    let bound = tol.bound(minor_scale);
    let magnitude = vec::max_abs(l);
    let zero_bound = tol.bound(zero_scale);
    for i in 0..n {
        for j in i + 1..n {
            let m = &(&l[i] * &v[j]) - &(&l[j] * &v[i]);
            residual = residual.max(m.abs_f64());
            collinear &= tol.is_negligible(&m, minor_scale);
        }
    }
    if l.iter().all(|x| tol.is_negligible(x, zero_scale)) {
        return Ok(CollinearityResult {
            kind: CollinearityKind::Zero,
            lambda: None,
            residual,
            bound,
            magnitude,
            zero_bound,
        });
    }
    if !collinear {
        return Ok(CollinearityResult {
            kind: CollinearityKind::NotCollinear,
            lambda: None,
            residual,
            bound,
            magnitude,
            zero_bound,
        });
    }
    let lambda = vec::dot(l, v).checked_div(&vec::dot(v, v))?;
    Ok(CollinearityResult {
        kind: CollinearityKind::Eigen,
        lambda: Some(lambda),
        residual,
        bound,
        magnitude,
        zero_bound,
    })
}

pub(crate) fn rough_laplacian_raw(conn: &ConnectionCoefficients, v: &[Scalar]) -> Vec<Scalar> {
    let n = conn.dim();
    let mut out = vec::zeros(n);
    let grads: Vec<Vec<Scalar>> = (0..n).map(|j| conn.nabla_e(j, v)).collect();
    for (i, j, gij) in conn.inverse_terms() {
        let second = conn.nabla_e(i, &grads[j]);
        let correction = conn.nabla(conn.gamma().fibre(i, j), v);
        vec::axpy(&mut out, &gij, &vec::sub(&second, &correction));
    }
    out
}

/// `∇*∇V = Σ g^{ij}(∇_{e_i}∇_{e_j}V − ∇_{∇_{e_i}e_j}V)`.
pub fn rough_laplacian(
    alg: &MetricLieAlgebra,
    conn: &ConnectionCoefficients,
    v: &InvariantVector,
) -> Result<InvariantVector> {
    alg.check_dim(v)?;
    Ok(InvariantVector::new(rough_laplacian_raw(conn, &v.coeffs)))
}

/// Matrix of the (linear) rough Laplacian: column `j` is `∇*∇e_j`.
pub fn laplacian_matrix(conn: &ConnectionCoefficients) -> Matrix {
    let n = conn.dim();
    let mut m = Matrix::zeros(n);
    for j in 0..n {
        let col = rough_laplacian_raw(conn, &vec::basis(n, j));
        for (i, x) in col.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    m
}

/// Whether `∇*∇V` is collinear to `V`.
pub fn collinearity_test(
    alg: &MetricLieAlgebra,
    conn: &ConnectionCoefficients,
    v: &InvariantVector,
    tol: &Tolerance,
) -> Result<CollinearityResult> {
    let l = rough_laplacian(alg, conn, v)?;
    collinearity(
        &l.coeffs,
        &v.coeffs,
        order_scale(conn, &v.coeffs, 1, 2),
        tol,
    )
}

fn curvature_trace_raw(
    alg: &MetricLieAlgebra,
    conn: &ConnectionCoefficients,
    v: &[Scalar],
) -> Vec<Scalar> {
    let n = alg.dim();
    let mut out = vec::zeros(n);
    for (i, j, gij) in conn.inverse_terms() {
        let grad = conn.nabla_e(i, v);
        let r = curvature_raw(alg, conn, &grad, v, &vec::basis(n, j));
        vec::axpy(&mut out, &gij, &r);
    }
    out
}

/// `Σ g^{ij} R(∇_{e_i}V, V)e_j`.
pub fn curvature_trace(
    alg: &MetricLieAlgebra,
    conn: &ConnectionCoefficients,
    v: &InvariantVector,
) -> Result<InvariantVector> {
    alg.check_dim(v)?;
    Ok(InvariantVector::new(curvature_trace_raw(
        alg, conn, &v.coeffs,
    )))
}

pub fn is_harmonic_section(
    alg: &MetricLieAlgebra,
    conn: &ConnectionCoefficients,
    v: &InvariantVector,
    tol: &Tolerance,
) -> Result<Check> {
    let l = rough_laplacian(alg, conn, v)?;
    Ok(Check::of_vector(
        &l.coeffs,
        order_scale(conn, &v.coeffs, 1, 2),
        tol,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HarmonicMapCheck {
    pub holds: bool,
    pub curvature_trace_residual: f64,
    pub curvature_trace_bound: f64,
    pub laplacian_residual: f64,
    pub laplacian_bound: f64,
}

/// Both `tr R(∇.V, V). = 0` and `∇*∇V = 0`.
pub fn defines_harmonic_map(
    alg: &MetricLieAlgebra,
    conn: &ConnectionCoefficients,
    v: &InvariantVector,
    tol: &Tolerance,
) -> Result<HarmonicMapCheck> {
    let lap = is_harmonic_section(alg, conn, v, tol)?;
    let tr = curvature_trace(alg, conn, v)?;
    let trc = Check::of_vector(&tr.coeffs, order_scale(conn, &v.coeffs, 2, 3), tol);
    Ok(HarmonicMapCheck {
        holds: lap.holds && trc.holds,
        curvature_trace_residual: trc.residual,
        curvature_trace_bound: trc.bound,
        laplacian_residual: lap.residual,
        laplacian_bound: lap.bound,
    })
}

/// `∇_V V = 0`.
pub fn is_geodesic(
    alg: &MetricLieAlgebra,
    conn: &ConnectionCoefficients,
    v: &InvariantVector,
    tol: &Tolerance,
) -> Result<Check> {
    alg.check_dim(v)?;
    let a = conn.nabla(&v.coeffs, &v.coeffs);
    Ok(Check::of_vector(
        &a,
        order_scale(conn, &v.coeffs, 2, 1),
        tol,
    ))
}

/// `g([V,e_i],e_j) + g(e_i,[V,e_j]) = 0` for all `i ≤ j`.
pub fn is_killing(alg: &MetricLieAlgebra, v: &InvariantVector, tol: &Tolerance) -> Result<Check> {
    alg.check_dim(v)?;
    let n = alg.dim();
    let g = alg.metric();
    let ad: Vec<Vec<Scalar>> = (0..n)
        .map(|i| g.vec_mul(&alg.bracket_raw(&v.coeffs, &vec::basis(n, i))))
        .collect();
    let mut defects = Vec::new();
    for i in 0..n {
        for j in i..n {
            defects.push(&ad[i][j] + &ad[j][i]);
        }
    }
    let scale = (1.0 + vec::norm(&v.coeffs)) * alg.scale() * (1.0 + g.max_abs());
    Ok(Check::of_vector(&defects, scale, tol))
}

/// `∇_{e_i}V = 0` for every `i`.
pub fn is_parallel(
    alg: &MetricLieAlgebra,
    conn: &ConnectionCoefficients,
    v: &InvariantVector,
    tol: &Tolerance,
) -> Result<Check> {
    alg.check_dim(v)?;
    let all: Vec<Scalar> = (0..alg.dim())
        .flat_map(|i| conn.nabla_e(i, &v.coeffs))
        .collect();
    Ok(Check::of_vector(
        &all,
        order_scale(conn, &v.coeffs, 1, 1),
        tol,
    ))
}

/// `div V = Σ g^{ij} g(∇_{e_i}V, e_j)`.
pub fn divergence(
    alg: &MetricLieAlgebra,
    conn: &ConnectionCoefficients,
    v: &InvariantVector,
) -> Result<Scalar> {
    alg.check_dim(v)?;
    let g = alg.metric();
    Ok(conn
        .inverse_terms()
        .into_iter()
        .map(|(i, j, gij)| {
            let lowered = g.vec_mul(&conn.nabla_e(i, &v.coeffs));
            &gij * &lowered[j]
        })
        .sum())
}

/// `(∇V)ᵗX = Σ g^{kl} g(X, ∇_{e_k}V) e_l`, the `g`-adjoint of `W ↦ ∇_W V`.
fn adjoint_gradient(
    alg: &MetricLieAlgebra,
    conn: &ConnectionCoefficients,
    v: &[Scalar],
    x: &[Scalar],
) -> Vec<Scalar> {
    let n = alg.dim();
    let g = alg.metric();
    let gx = g.vec_mul(x);
    let mut out = vec::zeros(n);
    for (k, l, gkl) in conn.inverse_terms() {
        let pairing = vec::dot(&gx, &conn.nabla_e(k, v));
        out[l] = &out[l] + &(&gkl * &pairing);
    }
    out
}

/// `X̃_V = −∇*∇V − ∇_V∇_V V − div V · ∇_V V + (∇V)ᵗ∇_V V`.
pub fn spatial_tension(
    alg: &MetricLieAlgebra,
    conn: &ConnectionCoefficients,
    v: &InvariantVector,
) -> Result<InvariantVector> {
    alg.check_dim(v)?;
    let v = &v.coeffs;
    let lap = rough_laplacian_raw(conn, v);
    let acc = conn.nabla(v, v);
    let jerk = conn.nabla(v, &acc);
    let div = divergence(alg, conn, &InvariantVector::new(v.clone()))?;
    let adj = adjoint_gradient(alg, conn, v, &acc);
    let mut out = vec::zeros(v.len());
    vec::axpy(&mut out, &Scalar::int(-1), &lap);
    vec::axpy(&mut out, &Scalar::int(-1), &jerk);
    vec::axpy(&mut out, &-div, &acc);
    vec::axpy(&mut out, &Scalar::one(), &adj);
    Ok(InvariantVector::new(out))
}

/// `X̃_V` collinear to `V`.
pub fn is_spatially_harmonic(
    alg: &MetricLieAlgebra,
    conn: &ConnectionCoefficients,
    v: &InvariantVector,
    tol: &Tolerance,
) -> Result<CollinearityResult> {
    let x = spatial_tension(alg, conn, v)?;
    collinearity(
        &x.coeffs,
        &v.coeffs,
        order_scale(conn, &v.coeffs, 3, 2),
        tol,
    )
}

/// `‖∇V‖² = Σ g^{ij} g(∇_{e_i}V, ∇_{e_j}V)`.
pub fn gradient_norm_squared(
    alg: &MetricLieAlgebra,
    conn: &ConnectionCoefficients,
    v: &InvariantVector,
) -> Result<Scalar> {
    alg.check_dim(v)?;
    let g = alg.metric();
    let grads: Vec<Vec<Scalar>> = (0..alg.dim()).map(|i| conn.nabla_e(i, &v.coeffs)).collect();
    Ok(conn
        .inverse_terms()
        .into_iter()
        .map(|(i, j, gij)| &gij * &g.bilinear(&grads[i], &grads[j]))
        .sum())
}

/// Energy per unit volume, `n/2 + ‖∇V‖²/2`.
pub fn energy_density(
    alg: &MetricLieAlgebra,
    conn: &ConnectionCoefficients,
    v: &InvariantVector,
) -> Result<Scalar> {
    let grad = gradient_norm_squared(alg, conn, v)?;
    let half = Scalar::ratio(1, 2);
    Ok(&half * &(Scalar::int(alg.dim() as i64) + grad))
}

/// Every test at once, plus the internal-consistency audit.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub vector: InvariantVector,
    pub norm_squared: Scalar,
    pub energy_density: Scalar,
    pub divergence: Scalar,
    pub rough_laplacian: InvariantVector,
    pub curvature_trace: InvariantVector,
    pub harmonic_section: Check,
    pub critical_point: CollinearityResult,
    pub defines_harmonic_map: HarmonicMapCheck,
    pub geodesic: Check,
    pub killing: Check,
    pub parallel: Check,
    pub spatially_harmonic: CollinearityResult,
    /// Violated implications; empty on every correct evaluation.
    pub consistency_failures: Vec<String>,
}

impl ClassificationReport {
    pub fn is_consistent(&self) -> bool {
        self.consistency_failures.is_empty()
    }
}

pub fn classify(
    alg: &MetricLieAlgebra,
    conn: &ConnectionCoefficients,
    v: &InvariantVector,
    tol: &Tolerance,
) -> Result<ClassificationReport> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let report = ClassificationReport {
        vector: v.clone(),
        norm_squared: v.norm_squared(alg)?,
        energy_density: energy_density(alg, conn, v)?,
        divergence: divergence(alg, conn, v)?,
        rough_laplacian: rough_laplacian(alg, conn, v)?,
        curvature_trace: curvature_trace(alg, conn, v)?,
        harmonic_section: is_harmonic_section(alg, conn, v, tol)?,
        critical_point: collinearity_test(alg, conn, v, tol)?,
        defines_harmonic_map: defines_harmonic_map(alg, conn, v, tol)?,
        geodesic: is_geodesic(alg, conn, v, tol)?,
        killing: is_killing(alg, v, tol)?,
        parallel: is_parallel(alg, conn, v, tol)?,
        spatially_harmonic: is_spatially_harmonic(alg, conn, v, tol)?,
        consistency_failures: Vec::new(),
    };
    let failures = audit(&report);
    Ok(ClassificationReport {
        consistency_failures: failures,
        ..report
    })
}

fn audit(r: &ClassificationReport) -> Vec<String> {
    let mut out = Vec::new();
    if r.parallel.holds {
        let implied = [
            ("geodesic", r.geodesic.holds),
            ("killing", r.killing.holds),
            ("harmonic_section", r.harmonic_section.holds),
            ("critical_point", r.critical_point.is_collinear()),
            ("defines_harmonic_map", r.defines_harmonic_map.holds),
            ("spatially_harmonic", r.spatially_harmonic.is_collinear()),
        ];
        for (name, holds) in implied {
            if !holds {
                out.push(format!("parallel field is not {name}"));
            }
        }
    }
    if r.geodesic.holds && r.critical_point.is_collinear() != r.spatially_harmonic.is_collinear() {
        out.push("geodesic field: critical_point and spatially_harmonic disagree".into());
    }
    if r.defines_harmonic_map.holds && !r.harmonic_section.holds {
        out.push("harmonic map without harmonic section".into());
    }
    if r.harmonic_section.holds && r.critical_point.kind != CollinearityKind::Zero {
        out.push("harmonic section with nonzero Laplacian".into());
    }
    out
}
