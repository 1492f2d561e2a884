//! The `U(n)/O(n)` picture of the Lagrangian Grassmannian: unitary
//! representatives, `det²`, eigen-angles and loop degrees.
//!
//! A Lagrangian `L` with standard-coordinate frame `[X; Y]` is `Z·ℝⁿ` for
//! `Z = X + iY`; the unitary polar factor `U` of `Z` satisfies `L = U(ℝⁿ)`.
//! `A = −iU` then maps `iℝⁿ` onto `L`.

use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix, SymmetricEigen};

use super::LagrangianFrame;
use crate::error::{Error, Result};
use crate::linalg::{approx, FMatrix};

pub type C64 = Complex<f64>;

/// Unitary `A` with `A(iℝⁿ) = L`, stored as real and imaginary parts.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryRep {
    pub n: usize,
    pub a_re: FMatrix,
    pub a_im: FMatrix,
}

impl UnitaryRep {
    pub fn to_complex(&self) -> DMatrix<C64> {
        DMatrix::from_fn(self.n, self.n, |i, j| C64::new(*self.a_re.get(i, j), *self.a_im.get(i, j)))
    }

    /// Real `2n × n` frame of `A(iℝⁿ)`.
    pub fn image_of_imaginary(&self) -> FMatrix {
        let n = self.n;
        // A(i·e_k) = i·a_k: real part −Im a_k, imaginary part Re a_k.
        FMatrix::from_fn(2 * n, n, |i, k| {
            if i < n {
                -*self.a_im.get(i, k)
            } else {
                *self.a_re.get(i - n, k)
            }
        })
    }

    /// Max entry of `A*A − I`.
    pub fn unitarity_defect(&self) -> f64 {
        let a = self.to_complex();
        let p = a.adjoint() * &a;
        let mut worst = 0.0_f64;
        for i in 0..self.n {
            for j in 0..self.n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((p[(i, j)] - C64::new(target, 0.0)).norm());
            }
        }
        worst
    }
}

fn complex_frame(l: &LagrangianFrame) -> Result<DMatrix<C64>> {
    let f = l.standard_frame()?.to_f64();
    let n = l.n();
    Ok(DMatrix::from_fn(n, n, |i, j| C64::new(*f.get(i, j), *f.get(n + i, j))))
}

fn conditioning_tol(l: &LagrangianFrame) -> f64 {
    l.tol().max(1e-12)
}

/// Unitary polar factor of `Z = X + iY`.
fn polar_factor(l: &LagrangianFrame) -> Result<DMatrix<C64>> {
    let z = complex_frame(l)?;
    let svd = z.svd(true, true);
    let (smax, smin) = svd
        .singular_values
        .iter()
        .fold((0.0_f64, f64::INFINITY), |(hi, lo), &s| (hi.max(s), lo.min(s)));
    if !(smin > conditioning_tol(l) * smax) {
        return Err(Error::IllConditioned(format!(
            "polar factor of frame with singular values in [{smin:e}, {smax:e}]"
        )));
    }
    let u = svd.u.expect("requested U");
    let vt = svd.v_t.expect("requested Vᴴ");
    Ok(u * vt)
}

/// Coset representative `A = −iU` with `A(iℝⁿ) = L`, checked on return.
pub fn unitary_from_lagrangian(l: &LagrangianFrame) -> Result<UnitaryRep> {
    let u = polar_factor(l)?;
    let a = u.map(|z| z * C64::new(0.0, -1.0));
    let n = l.n();
    let rep = UnitaryRep {
        n,
        a_re: FMatrix::from_fn(n, n, |i, j| a[(i, j)].re),
        a_im: FMatrix::from_fn(n, n, |i, j| a[(i, j)].im),
    };
    let check_tol = l.tol().max(1e-9);
    let frame = l.standard_frame()?.to_f64();
    let joined = frame.hstack(&rep.image_of_imaginary())?;
    if approx::rank(&joined, check_tol) != n || rep.unitarity_defect() > check_tol {
        return Err(Error::IllConditioned("unitary representative failed its check".into()));
    }
    Ok(rep)
}

/// `det(U)²` for the polar factor, so that `L(θ) ↦ e^{2iθ}` when `n = 1`.
/// Independent of the `O(n)` coset since `det(O)² = 1`.
pub fn det_squared(l: &LagrangianFrame) -> Result<C64> {
    let d = polar_factor(l)?.determinant();
    let d2 = d * d;
    Ok(d2 / d2.norm())
}

/// Angles `θⱼ ∈ [0, π)` with `{e^{2iθⱼ}}` the spectrum of `UUᵀ`, ascending.
/// Values within `1e-12` of `π` are folded to `0`.
pub fn eigen_angles(l: &LagrangianFrame) -> Result<Vec<f64>> {
    if l.n() == 1 {
        let f = l.standard_frame()?.to_f64();
        return Ok(vec![fold_angle(f.get(1, 0).atan2(*f.get(0, 0)))]);
    }
    let u = polar_factor(l)?;
    let s = &u * u.transpose();
    let n = l.n();
    let p = s.map(|z| z.re);
    let q = s.map(|z| z.im);
    // P and Q commute (S is unitary and symmetric), so a generic real
    // combination diagonalises both.
    for t in [0.739_085_133_2, 1.324_717_957_2, -0.567_143_290_4] {
        let eig = SymmetricEigen::new(&p + &q * t);
        let mut angles = Vec::with_capacity(n);
        let mut ok = true;
        for k in 0..n {
            let v = eig.eigenvectors.column(k).map(|x| C64::new(x, 0.0));
            let sv = &s * &v;
            let lambda = (v.transpose() * &sv)[(0, 0)];
            if (sv - v * lambda).norm() > 1e-8 {
                ok = false;
                break;
            }
            angles.push(fold_angle(lambda.arg() / 2.0));
        }
        if ok {
            angles.sort_by(f64::total_cmp);
            return Ok(angles);
        }
    }
    Err(Error::IllConditioned("eigen-angle extraction".into()))
}

fn fold_angle(t: f64) -> f64 {
    let r = t.rem_euclid(PI);
    if r > PI - 1e-12 {
        0.0
    } else {
        r
    }
}

/// Winding number of `t ↦ det²(γ(t))` along a closed path (first and last
/// frames span the same subspace). Each step must move the argument by less
/// than `π/2`.
pub fn loop_degree(path: &[LagrangianFrame]) -> Result<i64> {
    let (first, last) = match (path.first(), path.last()) {
        (Some(f), Some(l)) if path.len() >= 2 => (f, l),
        _ => return Err(Error::OpenPath),
    };
    if !first.same_subspace(last)? {
        return Err(Error::OpenPath);
    }
    let values = path.iter().map(det_squared).collect::<Result<Vec<_>>>()?;
    let mut total = 0.0;
    for (step, w) in values.windows(2).enumerate() {
        let jump = (w[1] / w[0]).arg();
        if jump.abs() >= PI / 2.0 {
            return Err(Error::Undersampled { step, jump });
        }
        total += jump;
    }
    Ok((total / (2.0 * PI)).round() as i64)
}
