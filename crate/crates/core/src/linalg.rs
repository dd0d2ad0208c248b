//! Small dense matrices and 3-index arrays over [`Scalar`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Square `n × n` matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<Scalar>>", try_from = "Vec<Vec<Scalar>>")]
pub struct Matrix {
    n: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![Scalar::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn diag(entries: &[Scalar]) -> Self {
        let mut m = Matrix::zeros(entries.len());
        for (i, x) in entries.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix { n, data })
    }

    /// Convenience constructor from integer entries.
    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::int(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.data[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &Scalar> {
        self.data.iter()
    }

    pub fn is_exact(&self) -> bool {
        self.data.iter().all(Scalar::is_exact)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let s: Scalar = (0..n).map(|k| self.get(i, k) * other.get(k, j)).sum();
                out.set(i, j, s);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `vᵀ M`, i.e. `Mᵀ v`.
    pub fn vec_mul(&self, v: &[Scalar]) -> Vec<Scalar> {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| &v[i] * self.get(i, j)).sum())
            .collect()
    }

    /// `xᵀ M y`.
    pub fn bilinear(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let my = self.mul_vec(y);
        x.iter().zip(&my).map(|(a, b)| a * b).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::abs_f64).fold(0.0, f64::max)
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| self.row(i).iter().map(Scalar::to_f64).collect())
            .collect()
    }

    /// Determinant by Gaussian elimination (rational when all entries are
    /// exact, partial pivoting otherwise).
    pub fn det(&self) -> Scalar {
        let n = self.n;
        let mut a = self.data.clone();
        let exact = self.is_exact();
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(p) = pick_pivot(&a, n, col, exact) else {
                return if exact {
                    Scalar::zero()
                } else {
                    Scalar::Float(0.0)
                };
            };
            if p != col {
                swap_rows(&mut a, n, p, col);
                det = -det;
            }
            let pivot = a[col * n + col].clone();
            det = &det * &pivot;
            for r in col + 1..n {
                let f = &a[r * n + col] / &pivot;
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = &a[r * n + c] - &(&f * &a[col * n + c]);
                    a[r * n + c] = v;
                }
            }
        }
        det
    }

    /// Inverse by Gauss–Jordan elimination. Fails when no nonzero pivot
    /// exists (exact) or when the pivot magnitude underflows `1e-300` (float).
    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.n;
        let exact = self.is_exact();
        let mut a = self.data.clone();
        let mut inv = Matrix::identity(n).data;
        for col in 0..n {
            let p = pick_pivot(&a, n, col, exact)?;
            if p != col {
                swap_rows(&mut a, n, p, col);
                swap_rows(&mut inv, n, p, col);
            }
            let pivot = a[col * n + col].clone();
            for c in 0..n {
                a[col * n + c] = &a[col * n + c] / &pivot;
                inv[col * n + c] = &inv[col * n + c] / &pivot;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * n + col].clone();
                if f.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let va = &a[r * n + c] - &(&f * &a[col * n + c]);
                    a[r * n + c] = va;
                    let vi = &inv[r * n + c] - &(&f * &inv[col * n + c]);
                    inv[r * n + c] = vi;
                }
            }
        }
        Some(Matrix { n, data: inv })
    }
}

fn pick_pivot(a: &[Scalar], n: usize, col: usize, exact: bool) -> Option<usize> {
    if exact {
        (col..n).find(|&r| !a[r * n + col].is_zero())
    } else {
        let best = (col..n).max_by(|&x, &y| {
            a[x * n + col]
                .abs_f64()
                .total_cmp(&a[y * n + col].abs_f64())
        })?;
        (a[best * n + col].abs_f64() > 1e-300).then_some(best)
    }
}

fn swap_rows(a: &mut [Scalar], n: usize, r1: usize, r2: usize) {
    for c in 0..n {
        a.swap(r1 * n + c, r2 * n + c);
    }
}

impl From<Matrix> for Vec<Vec<Scalar>> {
    fn from(m: Matrix) -> Self {
        m.rows()
    }
}

impl TryFrom<Vec<Vec<Scalar>>> for Matrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        Matrix::from_rows(rows)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Dense `n × n × n` array, indexed `[i][j][k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3 {
    n: usize,
    data: Vec<Scalar>,
}

impl Tensor3 {
    pub fn zeros(n: usize) -> Self {
        Tensor3 {
            n,
            data: vec![Scalar::zero(); n * n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[(i * self.n + j) * self.n + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Scalar) {
        self.data[(i * self.n + j) * self.n + k] = value;
    }

    /// The length-`n` fibre `[i][j][·]`.
    pub fn fibre(&self, i: usize, j: usize) -> &[Scalar] {
        let start = (i * self.n + j) * self.n;
        &self.data[start..start + self.n]
    }

    pub fn is_exact(&self) -> bool {
        self.data.iter().all(Scalar::is_exact)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::abs_f64).fold(0.0, f64::max)
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Tensor3 {
        Tensor3 {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }
}

/// Componentwise helpers on coefficient vectors.
pub mod vec {
    use crate::scalar::Scalar;

    pub fn zeros(n: usize) -> Vec<Scalar> {
        vec![Scalar::zero(); n]
    }

    pub fn basis(n: usize, i: usize) -> Vec<Scalar> {
        let mut v = zeros(n);
        v[i] = Scalar::one();
        v
    }

    pub fn add(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        x.iter().zip(y).map(|(a, b)| a + b).collect()
    }

    pub fn sub(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        x.iter().zip(y).map(|(a, b)| a - b).collect()
    }

    pub fn scale(s: &Scalar, x: &[Scalar]) -> Vec<Scalar> {
        x.iter().map(|a| s * a).collect()
    }

    pub fn axpy(acc: &mut [Scalar], s: &Scalar, x: &[Scalar]) {
        if s.is_zero() {
            return;
        }
        for (a, b) in acc.iter_mut().zip(x) {
            *a = &*a + &(s * b);
        }
    }

    pub fn dot(x: &[Scalar], y: &[Scalar]) -> Scalar {
        x.iter().zip(y).map(|(a, b)| a * b).sum()
    }

    /// Euclidean norm of the coefficients, as a float.
    pub fn norm(x: &[Scalar]) -> f64 {
        x.iter().map(|a| a.to_f64().powi(2)).sum::<f64>().sqrt()
    }

    pub fn max_abs(x: &[Scalar]) -> f64 {
        x.iter().map(Scalar::abs_f64).fold(0.0, f64::max)
    }

    pub fn is_zero(x: &[Scalar]) -> bool {
        x.iter().all(Scalar::is_zero)
    }

    pub fn is_exact(x: &[Scalar]) -> bool {
        x.iter().all(Scalar::is_exact)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_determinant_and_inverse() {
        let m = Matrix::from_ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]).unwrap();
        assert_eq!(m.det(), Scalar::int(18));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
        assert!(inv.is_exact());
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = Matrix::from_ints(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(m.det(), Scalar::zero());
        assert!(m.inverse().is_none());
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        // The type-(c) metric has a zero in the (3,3) slot.
        let g = Matrix::from_ints(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]])
            .unwrap();
        assert_eq!(g.det(), Scalar::int(-1));
        assert_eq!(g.inverse().unwrap(), g);
    }

    #[test]
    fn float_inverse_round_trips() {
        let m = Matrix::from_rows(vec![
            vec![Scalar::float(0.5), Scalar::float(1.5)],
            vec![Scalar::float(-2.0), Scalar::float(0.25)],
        ])
        .unwrap();
        let p = m.mul(&m.inverse().unwrap());
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((p.get(i, j).to_f64() - want).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn bilinear_form_matches_manual_sum() {
        let g = Matrix::diag(&[
            Scalar::int(1),
            Scalar::int(1),
            Scalar::int(-1),
            Scalar::int(1),
        ]);
        let x = [1, 2, 3, 4].map(Scalar::int);
        assert_eq!(g.bilinear(&x, &x), Scalar::int(1 + 4 - 9 + 16));
    }

    #[test]
    fn matrix_serde_is_nested_rows() {
        let m = Matrix::from_rows(vec![
            vec![Scalar::ratio(1, 2), Scalar::zero()],
            vec![Scalar::zero(), Scalar::int(-1)],
        ])
        .unwrap();
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"[["1/2","0"],["0","-1"]]"#);
        let back: Matrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }
}
