//! Floating-point linear algebra. Thresholds are relative:
//! a singular value or eigenvalue counts as zero when it is at most
//! `tol · max(scale, 1)`.

use nalgebra::{DMatrix, SymmetricEigen, SVD};

use super::{FMatrix, Signature};
use crate::error::{Error, Result};

fn threshold(m: &FMatrix, tol: f64) -> f64 {
    tol * m.max_abs().max(1.0)
}

/// Singular values in descending order.
pub fn singular_values(m: &FMatrix) -> Vec<f64> {
    if m.rows() == 0 || m.cols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.to_nalgebra().singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn rank(m: &FMatrix, tol: f64) -> usize {
    let thr = threshold(m, tol);
    singular_values(m).into_iter().filter(|&s| s > thr).count()
}

/// Orthonormal kernel basis as columns.
pub fn kernel_basis(m: &FMatrix, tol: f64) -> FMatrix {
    let n = m.cols();
    if n == 0 {
        return FMatrix::zeros(0, 0);
    }
    if m.rows() == 0 {
        return FMatrix::identity(n);
    }
    let thr = threshold(m, tol);
    // Pad with zero rows so the SVD returns a full set of right vectors.
    let rows = m.rows().max(n);
    let mut a = DMatrix::<f64>::zeros(rows, n);
    for i in 0..m.rows() {
        for j in 0..n {
            a[(i, j)] = *m.get(i, j);
        }
    }
    let svd = SVD::new(a, false, true);
    let vt = svd.v_t.expect("requested right singular vectors");
    let mut cols = Vec::new();
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s <= thr {
            cols.push(vt.row(k).iter().copied().collect::<Vec<f64>>());
        }
    }
    FMatrix::from_columns(n, &cols).expect("uniform columns")
}

/// Orthonormal basis of the column space.
pub fn column_space(m: &FMatrix, tol: f64) -> FMatrix {
    if m.rows() == 0 || m.cols() == 0 {
        return FMatrix::zeros(m.rows(), 0);
    }
    let thr = threshold(m, tol);
    let svd = SVD::new(m.to_nalgebra(), true, false);
    let u = svd.u.expect("requested left singular vectors");
    let mut cols = Vec::new();
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s > thr {
            cols.push(u.column(k).iter().copied().collect::<Vec<f64>>());
        }
    }
    FMatrix::from_columns(m.rows(), &cols).expect("uniform columns")
}

/// Eigenvalues of a symmetric matrix, ascending.
pub fn symmetric_eigenvalues(m: &FMatrix) -> Vec<f64> {
    if m.rows() == 0 {
        return Vec::new();
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(m.to_nalgebra()).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn signature(m: &FMatrix, tol: f64) -> Signature {
    let ev = symmetric_eigenvalues(m);
    let scale = ev.iter().fold(0.0_f64, |a, v| a.max(v.abs())).max(1.0);
    let thr = tol * scale;
    let mut sig = Signature { pos: 0, zero: 0, neg: 0 };
    for v in ev {
        if v > thr {
            sig.pos += 1;
        } else if v < -thr {
            sig.neg += 1;
        } else {
            sig.zero += 1;
        }
    }
    sig
}

pub fn inverse(m: &FMatrix, tol: f64) -> Result<FMatrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
    }
    let r = rank(m, tol);
    if r < m.rows() {
        return Err(Error::RankDeficient { rank: r, expected: m.rows() });
    }
    let inv = m.to_nalgebra().try_inverse().ok_or(Error::IllConditioned("matrix inverse".into()))?;
    Ok(FMatrix::from_nalgebra(&inv))
}

/// Solves a square nonsingular system.
pub fn solve(a: &FMatrix, b: &[f64], tol: f64) -> Result<Vec<f64>> {
    let inv = inverse(a, tol)?;
    inv.mul_vec(b)
}
