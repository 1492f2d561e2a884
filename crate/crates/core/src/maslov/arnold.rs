//! Arnold's angle formulas.
//!
//! The pair index is `τ(L₁, L₂) = 1 − 2(θ₂ − θ₁)/π` for `θ₁ < θ₂`, extended
//! antisymmetrically and vanishing on equal angles. With this sign an
//! increasing triple of lines has index `+1`, matching the Kashiwara index.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{self, DynMatrix, Matrix};
use crate::symplectic::{eigen_angles, LagrangianFrame};

const ANGLE_EPS: f64 = 1e-12;

/// `Σⱼ (1 − 2θⱼ/π)` over the eigen-angles, with `θ = 0` contributing `0`.
pub fn arnold_index_single(l: &LagrangianFrame) -> Result<f64> {
    Ok(eigen_angles(l)?.into_iter().map(single_term).sum())
}

fn single_term(theta: f64) -> f64 {
    if theta.abs() < ANGLE_EPS {
        0.0
    } else {
        1.0 - 2.0 * theta / PI
    }
}

/// Pair index of two lines given by their angles in `[0, π)`.
pub fn arnold_pair_angles(t1: f64, t2: f64) -> f64 {
    if (t1 - t2).abs() < ANGLE_EPS {
        0.0
    } else if t1 < t2 {
        1.0 - 2.0 * (t2 - t1) / PI
    } else {
        -(1.0 - 2.0 * (t1 - t2) / PI)
    }
}

/// Angles of `L ∩ span{eⱼ, fⱼ}` for each `j`. Requires `L` to split along
/// the coordinate planes (each intersection one-dimensional).
pub fn component_angles(l: &LagrangianFrame) -> Result<Vec<f64>> {
    let n = l.n();
    if n == 1 {
        return eigen_angles(l);
    }
    let frame = l.standard_frame()?;
    let tol = l.tol().max(1e-9);
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let plane = |rows: usize| {
            Matrix::from_fn(rows, 2, |i, c| if (c == 0 && i == j) || (c == 1 && i == n + j) { 1 } else { 0 })
        };
        let stacked = match &frame {
            DynMatrix::Exact(f) => {
                DynMatrix::Exact(f.hstack(&plane(2 * n).map(|&v| linalg::q(-v)))?)
            }
            DynMatrix::Approx(f) => DynMatrix::Approx(f.hstack(&plane(2 * n).map(|&v| -(v as f64)))?),
        };
        let k = linalg::kernel_basis(&stacked, tol).to_f64();
        if k.cols() != 1 {
            return Err(Error::NotDiagonal(format!(
                "intersection with coordinate plane {} has dimension {}",
                j + 1,
                k.cols()
            )));
        }
        let (x, y) = (*k.get(n, 0), *k.get(n + 1, 0));
        let t = y.atan2(x).rem_euclid(PI);
        out.push(if t > PI - ANGLE_EPS { 0.0 } else { t });
    }
    Ok(out)
}

/// `Σⱼ τ(θ₁ⱼ, θ₂ⱼ)` on componentwise angles.
pub fn arnold_index_pair(l1: &LagrangianFrame, l2: &LagrangianFrame) -> Result<f64> {
    if l1.n() != l2.n() {
        return Err(Error::DimensionMismatch("pair of different dimensions".into()));
    }
    let a = component_angles(l1)?;
    let b = component_angles(l2)?;
    Ok(a.iter().zip(&b).map(|(&x, &y)| arnold_pair_angles(x, y)).sum())
}

/// `τ(L₁,L₂) + τ(L₂,L₃) + τ(L₃,L₁)`, which is an integer.
pub fn arnold_index_triple(l1: &LagrangianFrame, l2: &LagrangianFrame, l3: &LagrangianFrame) -> Result<i64> {
    let s = arnold_index_pair(l1, l2)? + arnold_index_pair(l2, l3)? + arnold_index_pair(l3, l1)?;
    let r = s.round();
    if (s - r).abs() > 1e-6 {
        return Err(Error::IllConditioned(format!("triple sum {s} is not an integer")));
    }
    Ok(r as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Angle;
    use crate::linalg::QMatrix;
    use crate::symplectic::lagrangian_from_angles;

    fn l(fracs: &[(i64, i64)]) -> LagrangianFrame {
        let a: Vec<Angle> = fracs.iter().map(|&(p, d)| Angle::pi_frac(p, d)).collect();
        lagrangian_from_angles(&a).unwrap()
    }

    #[test]
    fn single_values() {
        assert_eq!(arnold_index_single(&l(&[(0, 1)])).unwrap(), 0.0);
        assert!(arnold_index_single(&l(&[(1, 2)])).unwrap().abs() < 1e-12);
        assert!((arnold_index_single(&l(&[(1, 4)])).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn pair_values() {
        assert_eq!(arnold_index_pair(&l(&[(1, 3)]), &l(&[(1, 3)])).unwrap(), 0.0);
        assert!(arnold_index_pair(&l(&[(0, 1)]), &l(&[(1, 2)])).unwrap().abs() < 1e-12);
        assert!((arnold_index_pair(&l(&[(0, 1)]), &l(&[(1, 4)])).unwrap() - 0.5).abs() < 1e-12);
        assert!((arnold_index_pair(&l(&[(1, 4)]), &l(&[(0, 1)])).unwrap() + 0.5).abs() < 1e-12);
    }

    #[test]
    fn triple_values() {
        let (a, b, c) = (l(&[(0, 1)]), l(&[(1, 3)]), l(&[(2, 3)]));
        assert_eq!(arnold_index_triple(&a, &b, &c).unwrap(), 1);
        assert_eq!(arnold_index_triple(&a, &c, &b).unwrap(), -1);
        assert_eq!(arnold_index_triple(&a, &b, &b).unwrap(), 0);
        let d2 = l(&[(0, 1), (1, 5)]);
        let e2 = l(&[(1, 3), (2, 5)]);
        let f2 = l(&[(2, 3), (3, 5)]);
        assert_eq!(arnold_index_triple(&d2, &e2, &f2).unwrap(), 2);
    }

    #[test]
    fn non_split_input_is_rejected() {
        // graph of [[0,1],[1,0]] does not split along coordinate planes
        let g = LagrangianFrame::exact(QMatrix::from_i64(4, 2, &[1, 0, 0, 1, 0, 1, 1, 0]).unwrap())
            .unwrap();
        assert!(matches!(component_angles(&g), Err(Error::NotDiagonal(_))));
    }
}
