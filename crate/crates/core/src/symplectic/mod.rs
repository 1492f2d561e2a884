//! Symplectic vector spaces, subspaces and Lagrangian frames.
//!
//! Coordinates on ℝ²ⁿ are ordered `(x₁..xₙ, y₁..yₙ)` and the standard form is
//! `ω((x,y),(x′,y′)) = Σ xⱼy′ⱼ − yⱼx′ⱼ`, so `ω(eⱼ, fⱼ) = 1` and the Gram matrix is
//! `[[0, I], [−I, 0]]`.

pub mod random;
pub mod unitary;

use std::ops::Neg;

use num_traits::{Num, Signed, Zero};
use serde::Serialize;

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::linalg::{self, approx, exact, q, DynMatrix, FMatrix, Matrix, QMatrix, SymmetricForm};

pub use unitary::{
    det_squared, eigen_angles, loop_degree, unitary_from_lagrangian, UnitaryRep,
};

/// Standard Gram matrix of ω on ℝ²ⁿ.
pub fn standard_omega<T>(n: usize) -> Matrix<T>
where
    T: Clone + Num + Neg<Output = T>,
{
    Matrix::from_fn(2 * n, 2 * n, |i, j| {
        if i < n && j == i + n {
            T::one()
        } else if i >= n && j + n == i {
            -T::one()
        } else {
            T::zero()
        }
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum OmegaForm {
    Standard,
    Custom(DynMatrix),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticSpace {
    n: usize,
    omega: OmegaForm,
}

impl SymplecticSpace {
    pub fn standard(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("half-dimension must be positive".into()));
        }
        Ok(Self { n, omega: OmegaForm::Standard })
    }

    /// Space with a user-supplied Gram matrix; it must be skew and of full rank.
    pub fn with_omega(omega: DynMatrix, tol: f64) -> Result<Self> {
        let d = omega.rows();
        if d == 0 || d != omega.cols() || d % 2 != 0 {
            return Err(Error::InvalidSymplecticForm);
        }
        let skew = match &omega {
            DynMatrix::Exact(m) => *m == m.transpose().neg(),
            DynMatrix::Approx(m) => {
                let scale = m.max_abs().max(1.0);
                m.add(&m.transpose()).map(|s| s.max_abs() <= tol * scale).unwrap_or(false)
            }
        };
        if !skew || linalg::rank(&omega, tol) != d {
            return Err(Error::InvalidSymplecticForm);
        }
        let n = d / 2;
        let standard = match &omega {
            DynMatrix::Exact(m) => *m == standard_omega(n),
            DynMatrix::Approx(_) => false,
        };
        Ok(Self { n, omega: if standard { OmegaForm::Standard } else { OmegaForm::Custom(omega) } })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn omega_form(&self) -> &OmegaForm {
        &self.omega
    }

    pub fn is_standard(&self) -> bool {
        matches!(self.omega, OmegaForm::Standard)
    }

    /// Exact Gram matrix; a float ω cannot serve exact computations.
    pub fn omega_q(&self) -> Result<QMatrix> {
        match &self.omega {
            OmegaForm::Standard => Ok(standard_omega(self.n)),
            OmegaForm::Custom(DynMatrix::Exact(m)) => Ok(m.clone()),
            OmegaForm::Custom(DynMatrix::Approx(_)) => {
                Err(Error::ModeMix("float symplectic form used with exact frames".into()))
            }
        }
    }

    /// Float Gram matrix. An exact ω converts losslessly enough to serve
    /// float frames; the reverse direction is refused by [`Self::omega_q`].
    pub fn omega_f(&self) -> FMatrix {
        match &self.omega {
            OmegaForm::Standard => standard_omega(self.n),
            OmegaForm::Custom(m) => m.to_f64(),
        }
    }

    /// Gram matrix in the mode of `like`.
    pub fn omega_like(&self, like: &DynMatrix) -> Result<DynMatrix> {
        Ok(match like {
            DynMatrix::Exact(_) => DynMatrix::Exact(self.omega_q()?),
            DynMatrix::Approx(_) => DynMatrix::Approx(self.omega_f()),
        })
    }

    /// Columns `(e₁..eₙ, f₁..fₙ)` of a symplectic basis, so that `BᵀΩB` is the
    /// standard Gram matrix. Identity for the standard form.
    pub fn symplectic_basis(&self, tol: f64) -> Result<DynMatrix> {
        match &self.omega {
            OmegaForm::Standard => Ok(DynMatrix::Exact(QMatrix::identity(self.dim()))),
            OmegaForm::Custom(DynMatrix::Exact(m)) => {
                symplectic_gram_schmidt(m, |v: &linalg::Rational| v.is_zero(), |a, b| {
                    a.abs() > b.abs()
                })
                .map(DynMatrix::Exact)
                .ok_or(Error::InvalidSymplecticForm)
            }
            OmegaForm::Custom(DynMatrix::Approx(m)) => {
                let thr = tol * m.max_abs().max(1.0);
                symplectic_gram_schmidt(m, |v: &f64| v.abs() <= thr, |a, b| a.abs() > b.abs())
                    .map(DynMatrix::Approx)
                    .ok_or(Error::InvalidSymplecticForm)
            }
        }
    }

    /// Expresses a frame in standard symplectic coordinates.
    pub fn to_standard(&self, frame: &DynMatrix, tol: f64) -> Result<DynMatrix> {
        if self.is_standard() {
            return Ok(frame.clone());
        }
        match (self.symplectic_basis(tol)?, frame) {
            (DynMatrix::Exact(b), DynMatrix::Exact(f)) => {
                Ok(DynMatrix::Exact(exact::inverse(&b)?.mul(f)?))
            }
            (b, f) => {
                let binv = approx::inverse(&b.to_f64(), tol)?;
                Ok(DynMatrix::Approx(binv.mul(&f.to_f64())?))
            }
        }
    }

    pub fn omega_value(&self, u: &[linalg::Rational], v: &[linalg::Rational]) -> Result<linalg::Rational> {
        self.omega_q()?.bilinear(u, v)
    }
}

/// Symplectic Gram–Schmidt on the coordinate basis. `better(a, b)` ranks
/// candidate pairing values; exact callers may use any nonzero value.
fn symplectic_gram_schmidt<T>(
    omega: &Matrix<T>,
    is_zero: impl Fn(&T) -> bool,
    better: impl Fn(&T, &T) -> bool,
) -> Option<Matrix<T>>
where
    T: Clone + Num + Neg<Output = T>,
{
    let d = omega.rows();
    let form = |u: &[T], v: &[T]| omega.bilinear(u, v).expect("matching lengths");
    let mut pool: Vec<Vec<T>> = Matrix::<T>::identity(d).columns();
    let (mut es, mut fs) = (Vec::new(), Vec::new());
    while !pool.is_empty() {
        let e = pool.remove(0);
        if e.iter().all(&is_zero) {
            continue;
        }
        let mut best: Option<(usize, T)> = None;
        for (k, u) in pool.iter().enumerate() {
            let c = form(&e, u);
            if is_zero(&c) {
                continue;
            }
            if best.as_ref().map_or(true, |(_, b)| better(&c, b)) {
                best = Some((k, c));
            }
        }
        let (k, c) = best?;
        let u = pool.remove(k);
        let f: Vec<T> = u.into_iter().map(|x| x / c.clone()).collect();
        for v in pool.iter_mut() {
            let b = form(v, &e);
            let a = -form(v, &f);
            for (i, x) in v.iter_mut().enumerate() {
                *x = x.clone() + a.clone() * e[i].clone() + b.clone() * f[i].clone();
            }
        }
        es.push(e);
        fs.push(f);
    }
    if es.len() * 2 != d {
        return None;
    }
    es.extend(fs);
    Matrix::from_columns(d, &es).ok()
}

/// Subspace of a symplectic space given by a full-rank frame (possibly empty).
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    space: SymplecticSpace,
    frame: DynMatrix,
    tol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SubspaceKind {
    Isotropic,
    Coisotropic,
    Lagrangian,
    Symplectic,
    Generic,
}

impl Subspace {
    pub fn new(space: SymplecticSpace, frame: DynMatrix, tol: f64) -> Result<Self> {
        if frame.rows() != space.dim() {
            return Err(Error::DimensionMismatch(format!(
                "frame has {} rows in a space of dimension {}",
                frame.rows(),
                space.dim()
            )));
        }
        space.omega_like(&frame)?;
        let r = linalg::rank(&frame, tol);
        if r != frame.cols() {
            return Err(Error::RankDeficient { rank: r, expected: frame.cols() });
        }
        Ok(Self { space, frame, tol })
    }

    pub fn space(&self) -> &SymplecticSpace {
        &self.space
    }

    pub fn frame(&self) -> &DynMatrix {
        &self.frame
    }

    pub fn dim(&self) -> usize {
        self.frame.cols()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// `FᵀΩF`.
    pub fn omega_gram(&self) -> Result<DynMatrix> {
        let om = self.space.omega_like(&self.frame)?;
        self.frame.transpose().mul(&om)?.mul(&self.frame)
    }

    pub fn is_isotropic(&self) -> Result<bool> {
        Ok(match self.omega_gram()? {
            DynMatrix::Exact(g) => g.is_zero(),
            DynMatrix::Approx(g) => {
                let f = self.frame.to_f64();
                g.max_abs() <= self.tol * (f.max_abs() * f.max_abs() * self.space.omega_f().max_abs()).max(1.0)
            }
        })
    }

    /// `E^⊥ = ker(FᵀΩ)`.
    pub fn symplectic_complement(&self) -> Result<Subspace> {
        let om = self.space.omega_like(&self.frame)?;
        let rows = self.frame.transpose().mul(&om)?;
        let k = linalg::kernel_basis(&rows, self.tol);
        Subspace::new(self.space.clone(), k, self.tol)
    }

    pub fn classify(&self) -> Result<SubspaceKind> {
        let d = self.dim();
        let perp = self.symplectic_complement()?;
        let iso = self.is_isotropic()?;
        let joined = self.frame.hstack(perp.frame())?;
        let co = linalg::rank(&joined, self.tol) == d;
        let nondeg = linalg::rank(&self.omega_gram()?, self.tol) == d;
        Ok(if iso && co {
            SubspaceKind::Lagrangian
        } else if d == 0 || (iso && !nondeg) {
            SubspaceKind::Isotropic
        } else if nondeg {
            SubspaceKind::Symplectic
        } else if co {
            SubspaceKind::Coisotropic
        } else {
            SubspaceKind::Generic
        })
    }
}

/// Lagrangian subspace: `n` independent columns on which ω vanishes.
#[derive(Clone, Debug, PartialEq)]
pub struct LagrangianFrame {
    sub: Subspace,
}

impl LagrangianFrame {
    pub fn new(space: SymplecticSpace, frame: DynMatrix, tol: f64) -> Result<Self> {
        let n = space.n();
        let sub = Subspace::new(space, frame, tol)?;
        if sub.dim() != n {
            return Err(Error::NotLagrangian(format!("{} columns, expected {n}", sub.dim())));
        }
        if !sub.is_isotropic()? {
            return Err(Error::NotLagrangian("ω does not vanish on the frame".into()));
        }
        Ok(Self { sub })
    }

    /// Exact frame in the standard space.
    pub fn exact(frame: QMatrix) -> Result<Self> {
        if frame.rows() % 2 != 0 {
            return Err(Error::DimensionMismatch("frame needs an even number of rows".into()));
        }
        let space = SymplecticSpace::standard(frame.rows() / 2)?;
        Self::new(space, DynMatrix::Exact(frame), 0.0)
    }

    pub fn approx(frame: FMatrix, tol: f64) -> Result<Self> {
        if frame.rows() % 2 != 0 {
            return Err(Error::DimensionMismatch("frame needs an even number of rows".into()));
        }
        let space = SymplecticSpace::standard(frame.rows() / 2)?;
        Self::new(space, DynMatrix::Approx(frame), tol)
    }

    pub fn n(&self) -> usize {
        self.sub.space().n()
    }

    pub fn space(&self) -> &SymplecticSpace {
        self.sub.space()
    }

    pub fn frame(&self) -> &DynMatrix {
        self.sub.frame()
    }

    pub fn tol(&self) -> f64 {
        self.sub.tol()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.sub
    }

    pub fn exact_frame(&self) -> Result<&QMatrix> {
        self.sub.frame().as_exact()
    }

    /// Frame in standard symplectic coordinates.
    pub fn standard_frame(&self) -> Result<DynMatrix> {
        self.space().to_standard(self.frame(), self.tol())
    }

    /// Image under a linear map of the ambient space.
    pub fn transform(&self, g: &DynMatrix) -> Result<LagrangianFrame> {
        let frame = g.mul(self.frame())?;
        LagrangianFrame::new(self.space().clone(), frame, self.tol())
    }

    /// Same subspace (column spans coincide).
    pub fn same_subspace(&self, other: &LagrangianFrame) -> Result<bool> {
        if self.space() != other.space() {
            return Ok(false);
        }
        match (self.frame(), other.frame()) {
            (DynMatrix::Exact(a), DynMatrix::Exact(b)) => Ok(exact::same_span(a, b)),
            (a, b) => {
                let tol = self.tol().max(other.tol());
                let joined = a.to_f64().hstack(&b.to_f64())?;
                Ok(approx::rank(&joined, tol) == self.n())
            }
        }
    }
}

/// `L(θ₁) ⊕ … ⊕ L(θₙ)`: column j is `cos θⱼ·eⱼ + sin θⱼ·fⱼ`. Frames are exact
/// (quarter multiples of π give integer directions, others dyadic rationals),
/// so every such frame is exactly Lagrangian.
pub fn lagrangian_from_angles(thetas: &[Angle]) -> Result<LagrangianFrame> {
    let n = thetas.len();
    if n == 0 {
        return Err(Error::Invalid("at least one angle required".into()));
    }
    let mut frame = QMatrix::zeros(2 * n, n);
    for (j, t) in thetas.iter().enumerate() {
        t.check_range()?;
        let (c, s) = t.line_direction();
        frame.set(j, j, c);
        frame.set(n + j, j, s);
    }
    LagrangianFrame::exact(frame)
}

/// Graph `{(x, φx)}` of a symmetric form, in the form's mode.
pub fn graph_lagrangian(phi: &SymmetricForm, tol: f64) -> Result<LagrangianFrame> {
    let n = phi.dim();
    let frame = match phi.gram() {
        DynMatrix::Exact(p) => DynMatrix::Exact(QMatrix::identity(n).vstack(p)?),
        DynMatrix::Approx(p) => DynMatrix::Approx(FMatrix::identity(n).vstack(p)?),
    };
    LagrangianFrame::new(SymplecticSpace::standard(n)?, frame, tol)
}

/// Exact coordinate Lagrangian spanned by `eⱼ` (when `imaginary[j]` is false)
/// or `fⱼ`.
pub fn coordinate_lagrangian(imaginary: &[bool]) -> Result<LagrangianFrame> {
    let n = imaginary.len();
    let mut frame = QMatrix::zeros(2 * n, n);
    for (j, &im) in imaginary.iter().enumerate() {
        frame.set(if im { n + j } else { j }, j, q(1));
    }
    LagrangianFrame::exact(frame)
}

/// Checks `gᵀΩg = Ω` exactly.
pub fn is_symplectic(space: &SymplecticSpace, g: &QMatrix) -> Result<bool> {
    if g.rows() != space.dim() || g.cols() != space.dim() {
        return Ok(false);
    }
    let om = space.omega_q()?;
    Ok(g.transpose().mul(&om)?.mul(g)? == om)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rational;
    use proptest::prelude::*;

    fn sub(frame: &[i64], rows: usize, cols: usize) -> Subspace {
        let space = SymplecticSpace::standard(rows / 2).unwrap();
        Subspace::new(space, DynMatrix::Exact(QMatrix::from_i64(rows, cols, frame).unwrap()), 0.0)
            .unwrap()
    }

    #[test]
    fn complement_examples() {
        let line = sub(&[1, 0], 2, 1);
        let perp = line.symplectic_complement().unwrap();
        assert_eq!(perp.dim(), 1);
        assert!(exact::same_span(perp.frame().as_exact().unwrap(), line.frame().as_exact().unwrap()));

        let whole = sub(&[1, 0, 0, 1], 2, 2);
        assert_eq!(whole.symplectic_complement().unwrap().dim(), 0);

        let pos = sub(&[1, 0, 0, 1, 0, 0, 0, 0], 4, 2);
        let perp = pos.symplectic_complement().unwrap();
        assert!(exact::same_span(perp.frame().as_exact().unwrap(), pos.frame().as_exact().unwrap()));
    }

    #[test]
    fn classification() {
        assert_eq!(sub(&[1, 0], 2, 1).classify().unwrap(), SubspaceKind::Lagrangian);
        assert_eq!(sub(&[1, 0, 0, 0], 4, 1).classify().unwrap(), SubspaceKind::Isotropic);
        assert_eq!(sub(&[1, 0, 0, 1], 2, 2).classify().unwrap(), SubspaceKind::Symplectic);
        // span{e₁, f₁, e₂} is coisotropic in ℝ⁴
        let co = sub(&[1, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0], 4, 3);
        assert_eq!(co.classify().unwrap(), SubspaceKind::Coisotropic);
        // span{e₁, f₁, e₂} in ℝ⁶ has complement span{e₂, e₃, f₃}
        let generic = sub(&[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0], 6, 3);
        assert_eq!(generic.classify().unwrap(), SubspaceKind::Generic);
    }

    #[test]
    fn angle_frames() {
        let l = lagrangian_from_angles(&[Angle::pi_frac(0, 1)]).unwrap();
        assert_eq!(l.exact_frame().unwrap(), &QMatrix::from_i64(2, 1, &[1, 0]).unwrap());
        let l = lagrangian_from_angles(&[Angle::pi_frac(1, 2)]).unwrap();
        assert_eq!(l.exact_frame().unwrap(), &QMatrix::from_i64(2, 1, &[0, 1]).unwrap());
        let l = lagrangian_from_angles(&[Angle::pi_frac(0, 1), Angle::pi_frac(1, 2)]).unwrap();
        assert_eq!(
            l.exact_frame().unwrap(),
            &QMatrix::from_i64(4, 2, &[1, 0, 0, 0, 0, 0, 0, 1]).unwrap()
        );
        assert!(lagrangian_from_angles(&[Angle::pi_frac(1, 1)]).is_err());
    }

    #[test]
    fn graph_examples() {
        let zero = SymmetricForm::exact(QMatrix::zeros(2, 2)).unwrap();
        let l = graph_lagrangian(&zero, 0.0).unwrap();
        assert_eq!(l.subspace().classify().unwrap(), SubspaceKind::Lagrangian);
        let one = SymmetricForm::exact(QMatrix::from_i64(1, 1, &[1]).unwrap()).unwrap();
        let l = graph_lagrangian(&one, 0.0).unwrap();
        let quarter = lagrangian_from_angles(&[Angle::pi_frac(1, 4)]).unwrap();
        assert!(l.same_subspace(&quarter).unwrap());
        let swap = SymmetricForm::exact(QMatrix::from_i64(2, 2, &[0, 1, 1, 0]).unwrap()).unwrap();
        let l = graph_lagrangian(&swap, 0.0).unwrap();
        let expected = QMatrix::from_i64(4, 2, &[1, 0, 0, 1, 0, 1, 1, 0]).unwrap();
        assert!(exact::same_span(l.exact_frame().unwrap(), &expected));
    }

    #[test]
    fn custom_omega_basis() {
        // ω = 2·standard on ℝ²
        let om = QMatrix::from_i64(2, 2, &[0, 2, -2, 0]).unwrap();
        let space = SymplecticSpace::with_omega(DynMatrix::Exact(om.clone()), 0.0).unwrap();
        let b = space.symplectic_basis(0.0).unwrap();
        let b = b.as_exact().unwrap();
        assert_eq!(b.transpose().mul(&om).unwrap().mul(b).unwrap(), standard_omega::<Rational>(1));
        let degenerate = QMatrix::from_i64(2, 2, &[0, 0, 0, 0]).unwrap();
        assert_eq!(
            SymplecticSpace::with_omega(DynMatrix::Exact(degenerate), 0.0),
            Err(Error::InvalidSymplecticForm)
        );
        let not_skew = QMatrix::from_i64(2, 2, &[1, 1, -1, 0]).unwrap();
        assert!(SymplecticSpace::with_omega(DynMatrix::Exact(not_skew), 0.0).is_err());
    }

    #[test]
    fn rejects_non_lagrangian() {
        let f = QMatrix::from_i64(4, 2, &[1, 0, 0, 0, 0, 1, 0, 0]).unwrap();
        assert!(matches!(LagrangianFrame::exact(f), Err(Error::NotLagrangian(_))));
        let f = QMatrix::from_i64(2, 1, &[0, 0]).unwrap();
        assert!(matches!(LagrangianFrame::exact(f), Err(Error::RankDeficient { .. })));
    }

    fn sym_strategy(n: usize) -> impl Strategy<Value = QMatrix> {
        prop::collection::vec(-5i64..=5, n * n).prop_map(move |v| {
            let m = QMatrix::from_i64(n, n, &v).unwrap();
            m.add(&m.transpose()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn graphs_are_lagrangian(phi in (1usize..=3).prop_flat_map(sym_strategy)) {
            let form = SymmetricForm::exact(phi).unwrap();
            let l = graph_lagrangian(&form, 0.0).unwrap();
            prop_assert_eq!(l.subspace().classify().unwrap(), SubspaceKind::Lagrangian);
        }

        #[test]
        fn complement_dimension(cols in prop::collection::vec(-2i64..=2, 12)) {
            let m = QMatrix::from_i64(6, 2, &cols).unwrap();
            let basis = exact::column_space(&m);
            let space = SymplecticSpace::standard(3).unwrap();
            let e = Subspace::new(space, DynMatrix::Exact(basis), 0.0).unwrap();
            let perp = e.symplectic_complement().unwrap();
            prop_assert_eq!(e.dim() + perp.dim(), 6);
        }
    }
}
