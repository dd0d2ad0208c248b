//! Small floating-point subspace utilities used by sampling and the scan.

use nalgebra::DMatrix;

fn matrix(rows: &[Vec<f64>]) -> DMatrix<f64> {
    let n = rows.first().map_or(0, Vec::len);
    DMatrix::from_fn(rows.len(), n, |i, j| rows[i][j])
}

/// Singular values, descending.
pub fn singular_values(rows: &[Vec<f64>]) -> Vec<f64> {
    if rows.is_empty() {
        return Vec::new();
    }
    let mut s: Vec<f64> = matrix(rows).singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Number of singular values above `rel · σ_max`.
pub fn rank(rows: &[Vec<f64>], rel: f64) -> usize {
    let s = singular_values(rows);
    let Some(&max) = s.first() else { return 0 };
    if max == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > rel * max).count()
}

/// Orthonormal basis (as rows) of the row space, with the same threshold.
pub fn orthonormal_basis(rows: &[Vec<f64>], rel: f64) -> Vec<Vec<f64>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let svd = matrix(rows).svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let max = svd.singular_values.max();
    if max == 0.0 {
        return Vec::new();
    }
    let mut idx: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] > rel * max)
        .collect();
    idx.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    idx.iter()
        .map(|&i| vt.row(i).iter().copied().collect())
        .collect()
}

/// Largest principal angle between two subspaces given by spanning rows;
/// `None` when their dimensions differ.
pub fn max_principal_angle(a: &[Vec<f64>], b: &[Vec<f64>], rel: f64) -> Option<f64> {
    let qa = orthonormal_basis(a, rel);
    let qb = orthonormal_basis(b, rel);
    if qa.len() != qb.len() {
        return None;
    }
    if qa.is_empty() {
        return Some(0.0);
    }
    let m = matrix(&qa) * matrix(&qb).transpose();
    let min = m.singular_values().min().clamp(-1.0, 1.0);
    Some(min.acos())
}

/// Whether `v` lies in the span of `rows`.
pub fn in_span(rows: &[Vec<f64>], v: &[f64], rel: f64) -> bool {
    let base = rank(rows, rel);
    let mut with = rows.to_vec();
    with.push(v.to_vec());
    rank(&with, rel) == base
}
