//! Exact linear algebra over ℚ.
//!
//! Pivoting is lexicographic (first nonzero entry in the leftmost available
//! column), so every basis produced here is a deterministic function of the
//! input matrix.

use num_traits::{One, Signed, Zero};

use super::{QMatrix, Rational, Signature};
use crate::error::{Error, Result};

/// Reduced row echelon form and the pivot column of each nonzero row.
pub fn rref(m: &QMatrix) -> (QMatrix, Vec<usize>) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<Rational>> = (0..rows).map(|i| m.row(i)).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *x = &*x - &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let flat = a.into_iter().flatten().collect();
    (QMatrix::new(rows, cols, flat).expect("shape preserved"), pivots)
}

pub fn rank(m: &QMatrix) -> usize {
    rref(m).1.len()
}

/// Kernel basis as columns. Each vector has a 1 in its free coordinate, so
/// its first nonzero entry (the free variable or an earlier pivot) is
/// deterministic; vectors are then scaled so that first nonzero entry is 1.
pub fn kernel_basis(m: &QMatrix) -> QMatrix {
    let cols = m.cols();
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Rational::zero(); cols];
        v[f] = Rational::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(row, f).clone();
        }
        normalize_leading(&mut v);
        basis.push(v);
    }
    QMatrix::from_columns(cols, &basis).expect("uniform columns")
}

fn normalize_leading(v: &mut [Rational]) {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        if !lead.is_one() {
            let inv = lead.recip();
            for x in v.iter_mut() {
                *x = &*x * &inv;
            }
        }
    }
}

/// Unique solution of `A x = b`, or `None` when `b` is outside the column
/// space. Requires full column rank for uniqueness.
pub fn solve(a: &QMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch("right-hand side length".into()));
    }
    let bcol = QMatrix::from_columns(a.rows(), &[b.to_vec()])?;
    let aug = a.hstack(&bcol)?;
    let (r, pivots) = rref(&aug);
    if pivots.contains(&a.cols()) {
        return Ok(None);
    }
    if pivots.len() != a.cols() {
        return Err(Error::RankDeficient { rank: pivots.len(), expected: a.cols() });
    }
    Ok(Some((0..a.cols()).map(|i| r.get(i, a.cols()).clone()).collect()))
}

/// Solves `A X = B` column by column; every column of `B` must lie in the
/// column space of `A`.
pub fn solve_columns(a: &QMatrix, b: &QMatrix) -> Result<QMatrix> {
    let mut out = Vec::with_capacity(b.cols());
    for c in b.columns() {
        match solve(a, &c)? {
            Some(x) => out.push(x),
            None => return Err(Error::Invalid("column outside the span".into())),
        }
    }
    QMatrix::from_columns(a.cols(), &out)
}

pub fn inverse(m: &QMatrix) -> Result<QMatrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
    }
    let n = m.rows();
    let aug = m.hstack(&QMatrix::identity(n))?;
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::RankDeficient { rank: pivots.iter().filter(|&&p| p < n).count(), expected: n });
    }
    Ok(QMatrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
}

pub fn determinant(m: &QMatrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
    }
    let n = m.rows();
    let mut a: Vec<Vec<Rational>> = (0..n).map(|i| m.row(i)).collect();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det = &det * &a[c][c];
        let pivot_row = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot_row[c];
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = &*x - &f * p;
            }
        }
    }
    Ok(det)
}

/// Basis (as columns) of the column space, taken from the pivot columns.
pub fn column_space(m: &QMatrix) -> QMatrix {
    let (_, pivots) = rref(m);
    m.select_columns(&pivots)
}

/// Columns of the identity completing the column space of `y` (a subspace
/// of ℚ^d given by spanning columns) to the whole space: reduce `[Y | I]`
/// and keep the pivots that land in the identity block.
pub fn complement(y: &QMatrix) -> QMatrix {
    let d = y.rows();
    let aug = y.hstack(&QMatrix::identity(d)).expect("row counts agree");
    let (_, pivots) = rref(&aug);
    let idx: Vec<usize> = pivots.iter().filter(|&&p| p >= y.cols()).map(|p| p - y.cols()).collect();
    QMatrix::identity(d).select_columns(&idx)
}

/// Basis of the intersection of two column spans.
pub fn intersection(a: &QMatrix, b: &QMatrix) -> Result<QMatrix> {
    let stacked = a.hstack(&b.neg())?;
    let k = kernel_basis(&stacked);
    let coeffs = QMatrix::from_fn(a.cols(), k.cols(), |i, j| k.get(i, j).clone());
    Ok(column_space(&a.mul(&coeffs)?))
}

/// Whether the column spans coincide.
pub fn same_span(a: &QMatrix, b: &QMatrix) -> bool {
    if a.rows() != b.rows() {
        return false;
    }
    let ra = rank(a);
    ra == rank(b) && ra == rank(&a.hstack(b).expect("row counts agree"))
}

/// Inertia by symmetric Gaussian elimination. Pivots on the largest
/// diagonal entry; an all-zero diagonal with a nonzero off-diagonal entry
/// splits off a hyperbolic plane, which contributes one positive and one
/// negative square.
pub fn signature(s: &QMatrix) -> Signature {
    let n = s.rows();
    let mut a: Vec<Vec<Rational>> = (0..n).map(|i| s.row(i)).collect();
    let mut live: Vec<usize> = (0..n).collect();
    let mut sig = Signature { pos: 0, zero: 0, neg: 0 };
    while !live.is_empty() {
        let diag = live
            .iter()
            .copied()
            .filter(|&i| !a[i][i].is_zero())
            .max_by(|&i, &j| a[i][i].abs().cmp(&a[j][j].abs()).then(j.cmp(&i)));
        if let Some(i) = diag {
            if a[i][i].is_positive() {
                sig.pos += 1;
            } else {
                sig.neg += 1;
            }
            live.retain(|&k| k != i);
            let inv = a[i][i].recip();
            let col: Vec<Rational> = (0..n).map(|k| a[k][i].clone()).collect();
            for &p in &live {
                if col[p].is_zero() {
                    continue;
                }
                let f = &col[p] * &inv;
                for &q in &live {
                    if !col[q].is_zero() {
                        a[p][q] = &a[p][q] - &f * &col[q];
                    }
                }
            }
            continue;
        }
        let pair = live.iter().enumerate().find_map(|(x, &i)| {
            live[x + 1..].iter().find(|&&j| !a[i][j].is_zero()).map(|&j| (i, j))
        });
        let Some((i, j)) = pair else {
            sig.zero += live.len();
            break;
        };
        sig.pos += 1;
        sig.neg += 1;
        live.retain(|&k| k != i && k != j);
        let inv = a[i][j].recip();
        let ci: Vec<Rational> = (0..n).map(|k| a[k][i].clone()).collect();
        let cj: Vec<Rational> = (0..n).map(|k| a[k][j].clone()).collect();
        for &p in &live {
            for &q in &live {
                let t = &ci[p] * &cj[q] + &cj[p] * &ci[q];
                if !t.is_zero() {
                    a[p][q] = &a[p][q] - &t * &inv;
                }
            }
        }
    }
    sig
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, qr};
    use proptest::prelude::*;

    fn qm(rows: usize, cols: usize, v: &[i64]) -> QMatrix {
        QMatrix::from_i64(rows, cols, v).unwrap()
    }

    #[test]
    fn kernel_of_rank_one() {
        let k = kernel_basis(&qm(1, 3, &[1, 2, 3]));
        assert_eq!(k.cols(), 2);
        assert_eq!(k.column(0), vec![q(1), qr(-1, 2), q(0)]);
        assert_eq!(k.column(1), vec![q(1), q(0), qr(-1, 3)]);
    }

    #[test]
    fn inverse_and_determinant() {
        let m = qm(2, 2, &[2, 1, 1, 1]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv).unwrap(), QMatrix::identity(2));
        assert_eq!(determinant(&m).unwrap(), q(1));
        assert!(inverse(&qm(2, 2, &[1, 2, 2, 4])).is_err());
    }

    #[test]
    fn complement_is_lexicographic() {
        let y = qm(3, 1, &[0, 1, 1]);
        let c = complement(&y);
        assert_eq!(c, qm(3, 2, &[1, 0, 0, 1, 0, 0]));
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = qm(2, 1, &[1, 0]);
        assert_eq!(solve(&a, &[q(2), q(0)]).unwrap(), Some(vec![q(2)]));
        assert_eq!(solve(&a, &[q(0), q(1)]).unwrap(), None);
    }

    fn small_matrix(max: usize) -> impl Strategy<Value = QMatrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            prop::collection::vec(-3i64..=3, r * c).prop_map(move |v| qm(r, c, &v))
        })
    }

    fn small_symmetric(max: usize) -> impl Strategy<Value = QMatrix> {
        (1..=max).prop_flat_map(|n| {
            prop::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
                let m = qm(n, n, &v);
                m.add(&m.transpose()).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix(5)) {
            let k = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + k.cols(), m.cols());
            prop_assert!(m.mul(&k).unwrap().is_zero());
            prop_assert_eq!(rank(&k), k.cols());
        }

        #[test]
        fn signature_is_congruence_invariant(s in small_symmetric(4), seed in prop::collection::vec(-2i64..=2, 16)) {
            let n = s.rows();
            let mut p = QMatrix::from_fn(n, n, |i, j| q(seed[i * 4 + j]));
            if determinant(&p).unwrap().is_zero() {
                p = QMatrix::identity(n);
            }
            let t = p.transpose().mul(&s).unwrap().mul(&p).unwrap();
            prop_assert_eq!(signature(&s), signature(&t));
            let sig = signature(&s);
            prop_assert_eq!(sig.dim(), n);
            prop_assert_eq!(sig.pos + sig.neg, rank(&s));
        }
    }
}
