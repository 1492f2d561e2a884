//! Dense matrices over exact rationals and tolerance-governed floats.
//!
//! Algebraic indices (Maslov, Wall, Witt) always run in exact mode; float
//! mode is reserved for angle-parametrised frames and sampled manifolds.
//! The two modes are never mixed inside one computation: a [`DynMatrix`]
//! carries its mode and every dispatching entry point rejects mismatches.

pub mod approx;
pub mod exact;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type QMatrix = Matrix<Rational>;
pub type FMatrix = Matrix<f64>;

/// Default relative tolerance for algebraic float work.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Shorthand for an integer-valued rational.
pub fn q(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Shorthand for `num/den`.
pub fn qr(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact rational value of a finite float (every `f64` is a dyadic rational).
pub fn rational_from_f64(v: f64) -> Result<Rational> {
    Rational::from_float(v).ok_or_else(|| Error::Invalid(format!("non-finite value {v}")))
}

pub fn rational_to_f64(v: &Rational) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(v: &Rational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parses `p`, `-p`, `p/q` with optional surrounding whitespace.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Row-major dense matrix. Zero rows or columns are allowed (empty bases).
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::MalformedMatrix(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::MalformedMatrix("column length mismatch".into()));
        }
        Ok(Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone()))
    }

    pub fn from_rows(cols: usize, rows: &[Vec<T>]) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::MalformedMatrix("row length mismatch".into()));
        }
        Ok(Self::from_fn(rows.len(), cols, |i, j| rows[i][j].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix with {} columns applied to vector of length {}",
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(T::zero(), |acc, j| acc + self.get(i, j).clone() * v[j].clone())
            })
            .collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a.clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|a| a.clone() * s.clone())
    }

    fn zip(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("elementwise shape mismatch".into()));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_fn(self.rows + other.rows, self.cols + other.cols, |i, j| {
            match (i < self.rows, j < self.cols) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => other.get(i - self.rows, j - self.cols).clone(),
                _ => T::zero(),
            }
        })
    }

    /// Bilinear form `uᵀ · self · v`.
    pub fn bilinear(&self, u: &[T], v: &[T]) -> Result<T> {
        let mv = self.mul_vec(v)?;
        if u.len() != mv.len() {
            return Err(Error::DimensionMismatch("bilinear form arity".into()));
        }
        Ok(u.iter().zip(mv).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b))
    }
}

impl QMatrix {
    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Result<Self> {
        Self::new(rows, cols, data.iter().map(|&v| q(v)).collect())
    }

    pub fn to_f64(&self) -> FMatrix {
        self.map(rational_to_f64)
    }

    pub fn max_abs(&self) -> Rational {
        self.data.iter().map(|v| v.abs()).max().unwrap_or_else(Rational::zero)
    }
}

impl FMatrix {
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn to_exact(&self) -> Result<QMatrix> {
        let data = self.data.iter().map(|&v| rational_from_f64(v)).collect::<Result<_>>()?;
        QMatrix::new(self.rows, self.cols, data)
    }

    pub(crate) fn to_nalgebra(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    pub(crate) fn from_nalgebra(m: &nalgebra::DMatrix<f64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|j| self.data[i * self.cols + j].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Scalar tagged with its arithmetic mode.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Approx(f64),
}

impl Scalar {
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(v) => rational_to_f64(v),
            Scalar::Approx(v) => *v,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(v) => f.write_str(&format_rational(v)),
            Scalar::Approx(v) => write!(f, "{v}"),
        }
    }
}

/// Arithmetic mode of a computation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mode {
    Exact,
    Approx { tol: f64 },
}

/// A matrix in one of the two scalar modes.
#[derive(Clone, Debug, PartialEq)]
pub enum DynMatrix {
    Exact(QMatrix),
    Approx(FMatrix),
}

impl DynMatrix {
    pub fn rows(&self) -> usize {
        match self {
            DynMatrix::Exact(m) => m.rows(),
            DynMatrix::Approx(m) => m.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            DynMatrix::Exact(m) => m.cols(),
            DynMatrix::Approx(m) => m.cols(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, DynMatrix::Exact(_))
    }

    pub fn to_f64(&self) -> FMatrix {
        match self {
            DynMatrix::Exact(m) => m.to_f64(),
            DynMatrix::Approx(m) => m.clone(),
        }
    }

    pub fn as_exact(&self) -> Result<&QMatrix> {
        match self {
            DynMatrix::Exact(m) => Ok(m),
            DynMatrix::Approx(_) => {
                Err(Error::ModeMix("exact arithmetic required, got float entries".into()))
            }
        }
    }

    pub fn transpose(&self) -> DynMatrix {
        match self {
            DynMatrix::Exact(m) => DynMatrix::Exact(m.transpose()),
            DynMatrix::Approx(m) => DynMatrix::Approx(m.transpose()),
        }
    }

    pub fn mul(&self, other: &DynMatrix) -> Result<DynMatrix> {
        match (self, other) {
            (DynMatrix::Exact(a), DynMatrix::Exact(b)) => Ok(DynMatrix::Exact(a.mul(b)?)),
            (DynMatrix::Approx(a), DynMatrix::Approx(b)) => Ok(DynMatrix::Approx(a.mul(b)?)),
            _ => Err(Error::ModeMix("product of exact and float matrices".into())),
        }
    }

    pub fn hstack(&self, other: &DynMatrix) -> Result<DynMatrix> {
        match (self, other) {
            (DynMatrix::Exact(a), DynMatrix::Exact(b)) => Ok(DynMatrix::Exact(a.hstack(b)?)),
            (DynMatrix::Approx(a), DynMatrix::Approx(b)) => Ok(DynMatrix::Approx(a.hstack(b)?)),
            _ => Err(Error::ModeMix("stacking exact and float matrices".into())),
        }
    }
}

/// Inertia `(pos, zero, neg)` of a symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub pos: usize,
    pub zero: usize,
    pub neg: usize,
}

impl Signature {
    pub fn dim(&self) -> usize {
        self.pos + self.zero + self.neg
    }

    /// `pos − neg`.
    pub fn index(&self) -> i64 {
        self.pos as i64 - self.neg as i64
    }

    pub fn as_array(&self) -> [usize; 3] {
        [self.pos, self.zero, self.neg]
    }
}

/// Symmetric bilinear form given by its Gram matrix (degenerate forms allowed).
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricForm {
    gram: DynMatrix,
}

impl SymmetricForm {
    pub fn new(gram: DynMatrix, tol: f64) -> Result<Self> {
        if gram.rows() != gram.cols() {
            return Err(Error::DimensionMismatch("Gram matrix must be square".into()));
        }
        let symmetric = match &gram {
            DynMatrix::Exact(m) => *m == m.transpose(),
            DynMatrix::Approx(m) => {
                let scale = m.max_abs().max(1.0);
                (0..m.rows()).all(|i| {
                    (0..m.cols()).all(|j| (m.get(i, j) - m.get(j, i)).abs() <= tol * scale)
                })
            }
        };
        if !symmetric {
            return Err(Error::NotSymmetric);
        }
        Ok(Self { gram })
    }

    pub fn exact(gram: QMatrix) -> Result<Self> {
        Self::new(DynMatrix::Exact(gram), 0.0)
    }

    pub fn empty() -> Self {
        Self { gram: DynMatrix::Exact(QMatrix::zeros(0, 0)) }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &DynMatrix {
        &self.gram
    }

    pub fn neg(&self) -> Self {
        let gram = match &self.gram {
            DynMatrix::Exact(m) => DynMatrix::Exact(m.neg()),
            DynMatrix::Approx(m) => DynMatrix::Approx(m.neg()),
        };
        Self { gram }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let gram = match (&self.gram, &other.gram) {
            (DynMatrix::Exact(a), DynMatrix::Exact(b)) => DynMatrix::Exact(a.direct_sum(b)),
            (DynMatrix::Approx(a), DynMatrix::Approx(b)) => DynMatrix::Approx(a.direct_sum(b)),
            _ => return Err(Error::ModeMix("direct sum of exact and float forms".into())),
        };
        Ok(Self { gram })
    }
}

/// Rank over the scalar field of the matrix's mode.
pub fn rank(m: &DynMatrix, tol: f64) -> usize {
    match m {
        DynMatrix::Exact(m) => exact::rank(m),
        DynMatrix::Approx(m) => approx::rank(m, tol),
    }
}

/// Basis of the right kernel, one column per basis vector.
pub fn kernel_basis(m: &DynMatrix, tol: f64) -> DynMatrix {
    match m {
        DynMatrix::Exact(m) => DynMatrix::Exact(exact::kernel_basis(m)),
        DynMatrix::Approx(m) => DynMatrix::Approx(approx::kernel_basis(m, tol)),
    }
}

/// Inertia of a symmetric form: congruence diagonalisation in exact mode,
/// eigenvalue counting in float mode.
pub fn sym_signature(s: &SymmetricForm, tol: f64) -> Signature {
    match s.gram() {
        DynMatrix::Exact(m) => exact::signature(m),
        DynMatrix::Approx(m) => approx::signature(m, tol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parse_and_format() {
        assert_eq!(parse_rational("-6/4").unwrap(), qr(-3, 2));
        assert_eq!(format_rational(&qr(-3, 2)), "-3/2");
        assert_eq!(format_rational(&q(5)), "5");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/2").is_err());
    }

    #[test]
    fn float_to_rational_is_exact() {
        let r = rational_from_f64(0.1).unwrap();
        assert_eq!(rational_to_f64(&r), 0.1);
        assert!(rational_from_f64(f64::NAN).is_err());
    }

    #[test]
    fn mixing_modes_is_an_error() {
        let a = DynMatrix::Exact(QMatrix::identity(2));
        let b = DynMatrix::Approx(FMatrix::identity(2));
        assert!(matches!(a.mul(&b), Err(Error::ModeMix(_))));
    }

    #[test]
    fn non_symmetric_form_rejected() {
        let m = QMatrix::from_i64(2, 2, &[0, 1, 0, 0]).unwrap();
        assert_eq!(SymmetricForm::exact(m), Err(Error::NotSymmetric));
    }

    #[test]
    fn signature_examples() {
        let diag = SymmetricForm::exact(QMatrix::from_i64(2, 2, &[1, 0, 0, -1]).unwrap()).unwrap();
        assert_eq!(sym_signature(&diag, 0.0), Signature { pos: 1, zero: 0, neg: 1 });
        let zero = SymmetricForm::exact(QMatrix::zeros(2, 2)).unwrap();
        assert_eq!(sym_signature(&zero, 0.0), Signature { pos: 0, zero: 2, neg: 0 });
        let hyp = SymmetricForm::exact(QMatrix::from_i64(2, 2, &[0, 1, 1, 0]).unwrap()).unwrap();
        assert_eq!(sym_signature(&hyp, 0.0), Signature { pos: 1, zero: 0, neg: 1 });
    }

    #[test]
    fn rank_examples_both_modes() {
        let id = QMatrix::identity(3);
        assert_eq!(rank(&DynMatrix::Exact(id.clone()), 0.0), 3);
        assert_eq!(rank(&DynMatrix::Approx(id.to_f64()), 1e-9), 3);
        let m = QMatrix::from_i64(2, 2, &[1, 2, 2, 4]).unwrap();
        assert_eq!(rank(&DynMatrix::Exact(m.clone()), 0.0), 1);
        assert_eq!(rank(&DynMatrix::Approx(m.to_f64()), 1e-9), 1);
        assert_eq!(rank(&DynMatrix::Exact(QMatrix::zeros(2, 2)), 0.0), 0);
    }
}
