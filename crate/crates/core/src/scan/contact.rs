//! Affine contact forms `χ_p(v) = (c₀ + A p)·v` on `ℝ²ⁿ⁺¹` with coordinates
//! `(x¹…xⁿ, y₁…yₙ, z)`. Then `dχ(u, v) = uᵀ(Aᵀ − A)v` is constant.

use serde::Serialize;

use super::SampledImmersion;
use crate::error::{Error, Result};
use crate::linalg::{approx, FMatrix};

#[derive(Clone, Debug, PartialEq)]
pub struct ContactForm {
    c0: Vec<f64>,
    a: FMatrix,
}

impl ContactForm {
    pub fn new(c0: Vec<f64>, a: FMatrix) -> Result<Self> {
        let d = c0.len();
        if d % 2 == 0 || a.rows() != d || a.cols() != d {
            return Err(Error::DimensionMismatch(format!(
                "contact data must live on an odd-dimensional space, got c₀ of length {d} and A {}×{}",
                a.rows(),
                a.cols()
            )));
        }
        Ok(Self { c0, a })
    }

    /// `χ = dz − y_α dx^α`.
    pub fn standard(n: usize) -> Self {
        let d = 2 * n + 1;
        let mut c0 = vec![0.0; d];
        c0[2 * n] = 1.0;
        let a = FMatrix::from_fn(d, d, |i, j| if i < n && j == n + i { -1.0 } else { 0.0 });
        Self { c0, a }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self { c0: self.c0.iter().map(|v| v * s).collect(), a: self.a.map(|v| v * s) }
    }

    pub fn dim(&self) -> usize {
        self.c0.len()
    }

    pub fn n(&self) -> usize {
        self.dim() / 2
    }

    /// The covector `χ_p`.
    pub fn at(&self, p: &[f64]) -> Result<Vec<f64>> {
        let ap = self.a.mul_vec(p)?;
        Ok(self.c0.iter().zip(ap).map(|(c, v)| c + v).collect())
    }

    /// Gram matrix of `dχ`.
    pub fn d_chi(&self) -> FMatrix {
        self.a.transpose().sub(&self.a).expect("square")
    }

    /// `[[dχ, χ_p], [χ_pᵀ, 0]]`, invertible exactly when `χ ∧ (dχ)ⁿ ≠ 0` at `p`.
    fn bordered(&self, p: &[f64]) -> Result<FMatrix> {
        let c = self.at(p)?;
        let d = self.dim();
        let dchi = self.d_chi();
        Ok(FMatrix::from_fn(d + 1, d + 1, |i, j| match (i < d, j < d) {
            (true, true) => *dchi.get(i, j),
            (true, false) => c[i],
            (false, true) => c[j],
            (false, false) => 0.0,
        }))
    }
}

/// Characteristic vector field: `v⌟dχ = 0`, `χ(v) = 1`, at each point.
pub fn reeb_field(chi: &ContactForm, points: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let d = chi.dim();
    points
        .iter()
        .map(|p| {
            if p.len() != d {
                return Err(Error::DimensionMismatch(format!("point of length {} in dimension {d}", p.len())));
            }
            let m = chi.bordered(p)?;
            let smin = approx::singular_values(&m).last().copied().unwrap_or(0.0);
            if smin <= 1e-12 * m.max_abs().max(1.0) {
                return Err(Error::DegenerateContact);
            }
            let mut rhs = vec![0.0; d + 1];
            rhs[d] = 1.0;
            let mut v = approx::solve(&m, &rhs, 1e-12)?;
            v.truncate(d);
            Ok(v)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LegendrianCheck {
    /// Largest `|χ_p(F)|` over the samples.
    pub max_residual: f64,
    pub worst_sample: usize,
    pub pass: bool,
}

/// Sample `i` passes when `|χ_p F| ≤ tol · |χ_p| · ‖F‖_F`.
pub fn check_legendrian(s: &SampledImmersion, chi: &ContactForm, tol: f64) -> Result<LegendrianCheck> {
    if s.ambient_dim() != chi.dim() || s.param_dim() != chi.n() {
        return Err(Error::DimensionMismatch(format!(
            "{}-dimensional samples in {} coordinates for a contact form on dimension {}",
            s.param_dim(),
            s.ambient_dim(),
            chi.dim()
        )));
    }
    let mut report = LegendrianCheck { max_residual: 0.0, worst_sample: 0, pass: true };
    for (i, (sample, f)) in s.samples().iter().zip(s.tangent_frames()?).enumerate() {
        let c = chi.at(&sample.point)?;
        let pulled = f.transpose().mul_vec(&c)?;
        let residual = pulled.iter().map(|v| v * v).sum::<f64>().sqrt();
        let cn = c.iter().map(|v| v * v).sum::<f64>().sqrt();
        if residual > report.max_residual {
            report.max_residual = residual;
            report.worst_sample = i;
        }
        if residual > tol * cn * f.frobenius() {
            report.pass = false;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scan::{Sample, Topology};

    fn curve(points: Vec<[f64; 3]>) -> SampledImmersion {
        let samples = points
            .into_iter()
            .enumerate()
            .map(|(k, p)| Sample { param: vec![k as f64 * 0.1], point: p.to_vec(), frame: None })
            .collect();
        SampledImmersion::new(1, 3, samples, Topology::Line).unwrap()
    }

    #[test]
    fn reeb_of_standard_and_scaled() {
        let chi = ContactForm::standard(1);
        let pts = vec![vec![0.0, 0.0, 0.0], vec![1.5, -2.0, 3.0]];
        for v in reeb_field(&chi, &pts).unwrap() {
            assert!((v[0]).abs() < 1e-12 && (v[1]).abs() < 1e-12 && (v[2] - 1.0).abs() < 1e-12);
        }
        for v in reeb_field(&chi.scaled(2.0), &pts).unwrap() {
            assert!((v[2] - 0.5).abs() < 1e-12 && v[0].abs() < 1e-12);
        }
        let two = ContactForm::standard(2);
        let v = &reeb_field(&two, &[vec![0.3, 0.1, -1.0, 2.0, 0.5]]).unwrap()[0];
        assert!((v[4] - 1.0).abs() < 1e-12 && v[..4].iter().all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn degenerate_form_is_rejected() {
        let mut c0 = vec![0.0; 3];
        c0[2] = 1.0;
        let flat = ContactForm::new(c0, FMatrix::zeros(3, 3)).unwrap();
        assert_eq!(reeb_field(&flat, &[vec![0.0; 3]]), Err(Error::DegenerateContact));
        assert!(ContactForm::new(vec![0.0; 2], FMatrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn legendrian_examples() {
        let chi = ContactForm::standard(1);
        // 1-jet of f = x³: (x, 3x², x³)
        let jet = curve((0..20).map(|k| { let x = -1.0 + 0.1 * k as f64; [x, 3.0 * x * x, x * x * x] }).collect());
        let samples: Vec<Sample> = jet
            .samples()
            .iter()
            .map(|s| {
                let x = s.point[0];
                Sample { frame: Some(FMatrix::new(3, 1, vec![1.0, 6.0 * x, 3.0 * x * x]).unwrap()), ..s.clone() }
            })
            .collect();
        let analytic = SampledImmersion::new(1, 3, samples, Topology::Line).unwrap();
        assert!(check_legendrian(&analytic, &chi, 1e-12).unwrap().pass);
        // fiber: constant x and z, varying y
        let fiber = curve((0..10).map(|k| [0.5, k as f64 * 0.3, 2.0]).collect());
        let r = check_legendrian(&fiber, &chi, 1e-12).unwrap();
        assert!(r.pass && r.max_residual == 0.0);
        let generic = curve((0..10).map(|k| { let t = k as f64 * 0.2; [t, t.sin() + 1.0, t * t] }).collect());
        assert!(!check_legendrian(&generic, &chi, 1e-6).unwrap().pass);
        assert!(check_legendrian(&generic, &ContactForm::standard(2), 1e-6).is_err());
    }
}
