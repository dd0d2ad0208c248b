//! Levi-Civita connection, curvature and Ricci tensor of a left-invariant
//! metric, all computed from the structure constants.

use serde::Serialize;

use super::{InvariantVector, MetricLieAlgebra};
use crate::error::Result;
use crate::linalg::{vec, Matrix, Tensor3};
use crate::scalar::{Scalar, Tolerance};

/// `∇_{e_i} e_j = Σ_k gamma[i][j][k] e_k`, together with `g⁻¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionCoefficients {
    gamma: Tensor3,
    metric_inv: Matrix,
}

impl ConnectionCoefficients {
    pub fn gamma(&self) -> &Tensor3 {
        &self.gamma
    }

    pub fn metric_inverse(&self) -> &Matrix {
        &self.metric_inv
    }

    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }

    /// `1 + max |Γ|`: the natural magnitude of one derivative.
    pub fn scale(&self) -> f64 {
        1.0 + self.gamma.max_abs()
    }

    /// `∇_{e_i} V` for coefficient slice `v`.
    pub(crate) fn nabla_e(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec::zeros(n);
        for (j, vj) in v.iter().enumerate() {
            vec::axpy(&mut out, vj, self.gamma.fibre(i, j));
        }
        out
    }

    /// `∇_X V` for coefficient slices.
    pub(crate) fn nabla(&self, x: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec::zeros(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            vec::axpy(&mut out, xi, &self.nabla_e(i, v));
        }
        out
    }

    /// Nonzero entries of `g⁻¹` as `(i, j, g^{ij})`.
    pub(crate) fn inverse_terms(&self) -> Vec<(usize, usize, Scalar)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let g = self.metric_inv.get(i, j);
                if !g.is_zero() {
                    out.push((i, j, g.clone()));
                }
            }
        }
        out
    }

    /// Largest entry of `∇_{e_i}e_j − ∇_{e_j}e_i − [e_i,e_j]`.
    pub fn torsion_defect(&self, alg: &MetricLieAlgebra) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let r = &(self.gamma.get(i, j, k) - self.gamma.get(j, i, k))
                        - alg.structure().get(i, j, k);
                    worst = worst.max(r.abs_f64());
                }
            }
        }
        worst
    }

    /// Largest `|g(∇_{e_i}e_j, e_l) + g(e_j, ∇_{e_i}e_l)|`.
    pub fn metric_compatibility_defect(&self, alg: &MetricLieAlgebra) -> f64 {
        let n = self.dim();
        let g = alg.metric();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let nij = g.vec_mul(self.gamma.fibre(i, j));
                for l in 0..n {
                    let nil = g.vec_mul(self.gamma.fibre(i, l));
                    let r = &nij[l] + &nil[j];
                    worst = worst.max(r.abs_f64());
                }
            }
        }
        worst
    }
}

/// Solves the Koszul formula
/// `2g(∇_X Y, Z) = g([X,Y],Z) − g([Y,Z],X) + g([Z,X],Y)` on the basis.
pub fn koszul_connection(alg: &MetricLieAlgebra) -> Result<ConnectionCoefficients> {
    let n = alg.dim();
    let g = alg.metric();
    let metric_inv = alg.metric_inverse()?;
    let c = alg.structure();
    // low[i][j][l] = g([e_i, e_j], e_l)
    let mut low = Tensor3::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let lowered = g.vec_mul(c.fibre(i, j));
            for (l, x) in lowered.into_iter().enumerate() {
                low.set(i, j, l, x);
            }
        }
    }
    let half = Scalar::ratio(1, 2);
    let mut gamma = Tensor3::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let lowered: Vec<Scalar> = (0..n)
                .map(|l| &half * &(&(low.get(i, j, l) - low.get(j, l, i)) + low.get(l, i, j)))
                .collect();
            let raised = metric_inv.mul_vec(&lowered);
            for (k, x) in raised.into_iter().enumerate() {
                gamma.set(i, j, k, x);
            }
        }
    }
    Ok(ConnectionCoefficients { gamma, metric_inv })
}

pub fn covariant_derivative(
    alg: &MetricLieAlgebra,
    conn: &ConnectionCoefficients,
    x: &InvariantVector,
    v: &InvariantVector,
) -> Result<InvariantVector> {
    alg.check_dim(x)?;
    alg.check_dim(v)?;
    Ok(InvariantVector::new(conn.nabla(&x.coeffs, &v.coeffs)))
}

pub(crate) fn curvature_raw(
    alg: &MetricLieAlgebra,
    conn: &ConnectionCoefficients,
    x: &[Scalar],
    y: &[Scalar],
    z: &[Scalar],
) -> Vec<Scalar> {
    let xy = alg.bracket_raw(x, y);
    let t1 = conn.nabla(&xy, z);
    let t2 = conn.nabla(x, &conn.nabla(y, z));
    let t3 = conn.nabla(y, &conn.nabla(x, z));
    vec::add(&vec::sub(&t1, &t2), &t3)
}

/// `R(X,Y)Z = ∇_{[X,Y]}Z − ∇_X∇_Y Z + ∇_Y∇_X Z`.
pub fn curvature(
    alg: &MetricLieAlgebra,
    conn: &ConnectionCoefficients,
    x: &InvariantVector,
    y: &InvariantVector,
    z: &InvariantVector,
) -> Result<InvariantVector> {
    alg.check_dim(x)?;
    alg.check_dim(y)?;
    alg.check_dim(z)?;
    Ok(InvariantVector::new(curvature_raw(
        alg, conn, &x.coeffs, &y.coeffs, &z.coeffs,
    )))
}

/// `Ric[j][l] = Σ_{i,k} g^{ik} g(R(e_i, e_j) e_l, e_k)`.
pub fn ricci(alg: &MetricLieAlgebra, conn: &ConnectionCoefficients) -> Matrix {
    let n = alg.dim();
    let g = alg.metric();
    let terms = conn.inverse_terms();
    let mut ric = Matrix::zeros(n);
    for j in 0..n {
        for l in 0..n {
            let mut s = Scalar::zero();
            for i in 0..n {
                let r = curvature_raw(
                    alg,
                    conn,
                    &vec::basis(n, i),
                    &vec::basis(n, j),
                    &vec::basis(n, l),
                );
                let lowered = g.vec_mul(&r);
                for (a, k, gik) in &terms {
                    if *a == i {
                        s = s + gik * &lowered[*k];
                    }
                }
            }
            ric.set(j, l, s);
        }
    }
    ric
}

/// `Σ g^{ij} Ric[i][j]`.
pub fn scalar_curvature(alg: &MetricLieAlgebra, conn: &ConnectionCoefficients) -> Scalar {
    let ric = ricci(alg, conn);
    conn.inverse_terms()
        .iter()
        .map(|(i, j, g)| g * ric.get(*i, *j))
        .sum()
}

/// Outcome of the Einstein test `Ric = λ g`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EinsteinCheck {
    Einstein { lambda: Scalar, residual: f64 },
    NotEinstein { trace_lambda: Scalar, residual: f64 },
}

impl EinsteinCheck {
    pub fn lambda(&self) -> Option<&Scalar> {
        match self {
            EinsteinCheck::Einstein { lambda, .. } => Some(lambda),
            EinsteinCheck::NotEinstein { .. } => None,
        }
    }

    pub fn residual(&self) -> f64 {
        match self {
            EinsteinCheck::Einstein { residual, .. }
            | EinsteinCheck::NotEinstein { residual, .. } => *residual,
        }
    }

    pub fn is_einstein(&self) -> bool {
        matches!(self, EinsteinCheck::Einstein { .. })
    }
}

/// Tests `Ric = λ g` with `λ = tr_g(Ric)/n`. The float threshold is
/// `tol.bound(1 + max|Ric| + max|g|)`; exact inputs require exact equality.
pub fn einstein_factor(
    alg: &MetricLieAlgebra,
    conn: &ConnectionCoefficients,
    tol: &Tolerance,
) -> EinsteinCheck {
    let n = alg.dim();
    let ric = ricci(alg, conn);
    let g = alg.metric();
    let trace: Scalar = conn
        .inverse_terms()
        .iter()
        .map(|(i, j, gij)| gij * ric.get(*i, *j))
        .sum();
    let lambda = &trace / &Scalar::int(n as i64);
    let scale = 1.0 + ric.max_abs() + g.max_abs();
    let mut residual = 0.0f64;
    let mut ok = true;
    for i in 0..n {
        for j in 0..n {
            let r = ric.get(i, j) - &(&lambda * g.get(i, j));
            residual = residual.max(r.abs_f64());
            ok &= tol.is_negligible(&r, scale);
        }
    }
    if ok {
        EinsteinCheck::Einstein { lambda, residual }
    } else {
        EinsteinCheck::NotEinstein {
            trace_lambda: lambda,
            residual,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BasisChange;

    fn lorentz() -> Matrix {
        Matrix::diag(&[1, 1, -1, 1].map(Scalar::int))
    }

    /// Case (4) at A=5, B=3, eps=1: [e1,e2]=4e1+3e2, [e3,e4]=5e3.
    fn case4() -> MetricLieAlgebra {
        let i = Scalar::int;
        MetricLieAlgebra::from_brackets(
            lorentz(),
            &[
                (0, 1, vec![i(4), i(3), i(0), i(0)]),
                (2, 3, vec![i(0), i(0), i(5), i(0)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn abelian_connection_is_flat() {
        let alg = MetricLieAlgebra::abelian(lorentz());
        let conn = koszul_connection(&alg).unwrap();
        assert_eq!(conn.gamma().max_abs(), 0.0);
        assert_eq!(ricci(&alg, &conn), Matrix::zeros(4));
        assert_eq!(
            einstein_factor(&alg, &conn, &Tolerance::default()).lambda(),
            Some(&Scalar::zero())
        );
    }

    #[test]
    fn case4_connection_table() {
        let alg = case4();
        let conn = koszul_connection(&alg).unwrap();
        let e = |i| InvariantVector::basis(4, i);
        let nab = |i, j| covariant_derivative(&alg, &conn, &e(i), &e(j)).unwrap();
        assert_eq!(nab(0, 0), InvariantVector::from_ints(&[0, -4, 0, 0]));
        assert_eq!(nab(0, 1), InvariantVector::from_ints(&[4, 0, 0, 0]));
        assert_eq!(nab(1, 0), InvariantVector::from_ints(&[0, -3, 0, 0]));
        assert_eq!(nab(1, 1), InvariantVector::from_ints(&[3, 0, 0, 0]));
        assert_eq!(nab(2, 2), InvariantVector::from_ints(&[0, 0, 0, 5]));
        assert_eq!(nab(2, 3), InvariantVector::from_ints(&[0, 0, 5, 0]));
        assert_eq!(conn.torsion_defect(&alg), 0.0);
        assert_eq!(conn.metric_compatibility_defect(&alg), 0.0);
    }

    #[test]
    fn case4_is_einstein_and_perturbation_is_not() {
        let alg = case4();
        let conn = koszul_connection(&alg).unwrap();
        let tol = Tolerance::default();
        assert!(einstein_factor(&alg, &conn, &tol).is_einstein());

        let f = Scalar::float;
        let bent = MetricLieAlgebra::from_brackets(
            lorentz(),
            &[
                (0, 1, vec![f(4.1), f(3.0), f(0.0), f(0.0)]),
                (2, 3, vec![f(0.0), f(0.0), f(5.0), f(0.0)]),
            ],
        )
        .unwrap();
        let check = einstein_factor(&bent, &koszul_connection(&bent).unwrap(), &tol);
        assert!(!check.is_einstein());
        assert!(check.residual() > 1e-3);
    }

    #[test]
    fn scalar_curvature_survives_basis_change() {
        let alg = case4();
        let conn = koszul_connection(&alg).unwrap();
        let p = BasisChange::new(
            Matrix::from_ints(&[&[1, 2, 0, 0], &[0, 1, 0, 1], &[1, 0, 1, 0], &[0, 0, 3, 1]])
                .unwrap(),
            &Tolerance::default(),
        )
        .unwrap();
        let other = alg.change_basis(&p).unwrap();
        let oconn = koszul_connection(&other).unwrap();
        assert_eq!(
            scalar_curvature(&alg, &conn),
            scalar_curvature(&other, &oconn)
        );
        let tol = Tolerance::default();
        assert_eq!(
            einstein_factor(&alg, &conn, &tol).lambda(),
            einstein_factor(&other, &oconn, &tol).lambda()
        );
    }
}
