//! Metasymplectic structure on the model fiber `ℝⁿ ⊕ S^k(ℝⁿ*)⊗ν`.
//!
//! For a slot `λ = (β, j)` of `S^{k−1}⊗ν*`, the form `Ω(λ)` vanishes on
//! horizontal and on vertical pairs, and `Ω(λ)(X, θ) = ⟨λ, X⌟δθ⟩ =
//! Σᵢ Xⁱ (βᵢ + 1) θ[β + eᵢ, j]`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::tensor::{multi_indices, MultiIndexBasis, SymTensor};
use super::{binomial, JetSignature};
use crate::error::{Error, Result};
use crate::linalg::{exact, q, QMatrix, Rational};

#[derive(Clone, Debug)]
pub struct ModelFiber {
    sig: JetSignature,
    sym: MultiIndexBasis,
    forms: Vec<QMatrix>,
}

impl ModelFiber {
    pub fn new(sig: JetSignature) -> Result<Self> {
        sig.check_size()?;
        let sym = MultiIndexBasis::new(sig.n, sig.k);
        let slots = MultiIndexBasis::new(sig.n, sig.k - 1);
        let dim = sig.n + sig.m * sym.len();
        let mut forms = Vec::with_capacity(sig.m * slots.len());
        for j in 0..sig.m {
            for beta in slots.iter() {
                let mut f = QMatrix::zeros(dim, dim);
                for i in 0..sig.n {
                    let mut up = beta.clone();
                    up[i] += 1;
                    let v = sig.n + j * sym.len() + sym.position(&up).expect("raised index");
                    let c = q(beta[i] as i64 + 1);
                    f.set(i, v, c.clone());
                    f.set(v, i, -c);
                }
                forms.push(f);
            }
        }
        Ok(Self { sig, sym, forms })
    }

    pub fn sig(&self) -> &JetSignature {
        &self.sig
    }

    pub fn dim(&self) -> usize {
        self.sig.n + self.sig.m * self.sym.len()
    }

    /// One Gram matrix per `λ` basis slot, ordered `(j, β)`.
    pub fn forms(&self) -> &[QMatrix] {
        &self.forms
    }

    pub fn slot_count(&self) -> usize {
        self.forms.len()
    }

    pub fn embed_horizontal(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.sig.n {
            return Err(Error::DimensionMismatch(format!("horizontal vector of length {}", x.len())));
        }
        let mut z = vec![Rational::zero(); self.dim()];
        z[..self.sig.n].clone_from_slice(x);
        Ok(z)
    }

    pub fn embed_vertical(&self, t: &SymTensor) -> Result<Vec<Rational>> {
        if t.n() != self.sig.n || t.m() != self.sig.m || t.degree() != self.sig.k {
            return Err(Error::DimensionMismatch("tensor does not live in S^k ⊗ ν".into()));
        }
        let mut z = vec![Rational::zero(); self.sig.n];
        z.extend_from_slice(t.coeffs());
        Ok(z)
    }

    /// Horizontal and vertical parts of a fiber vector.
    pub fn split(&self, z: &[Rational]) -> Result<(Vec<Rational>, SymTensor)> {
        if z.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!("fiber vector of length {}", z.len())));
        }
        let (h, v) = z.split_at(self.sig.n);
        Ok((h.to_vec(), SymTensor::new(self.sig.n, self.sig.m, self.sig.k, v.to_vec())?))
    }

    fn check(&self, p: &QMatrix) -> Result<()> {
        if p.rows() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "frame has {} rows, model fiber has dimension {}",
                p.rows(),
                self.dim()
            )));
        }
        Ok(())
    }

    pub fn is_isotropic(&self, p: &QMatrix) -> Result<bool> {
        self.check(p)?;
        let pt = p.transpose();
        for f in &self.forms {
            if !pt.mul(&f.mul(p)?)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `λ ∈ S^{k−1}(ℝⁿ) ⊗ ν*`, coefficients ordered like [`ModelFiber::forms`].
#[derive(Clone, Debug, PartialEq)]
pub struct CovectorSlot {
    pub sig: JetSignature,
    pub coeffs: Vec<Rational>,
}

impl CovectorSlot {
    pub fn new(sig: JetSignature, coeffs: Vec<Rational>) -> Result<Self> {
        let want = sig.m * binomial(sig.n + sig.k - 2, sig.k - 1);
        if coeffs.len() != want {
            return Err(Error::DimensionMismatch(format!("{} slot coefficients, expected {want}", coeffs.len())));
        }
        Ok(Self { sig, coeffs })
    }
}

pub fn metasymplectic_eval(
    fiber: &ModelFiber,
    lambda: &CovectorSlot,
    z1: &[Rational],
    z2: &[Rational],
) -> Result<Rational> {
    if lambda.sig != fiber.sig {
        return Err(Error::DimensionMismatch("covector slot of another signature".into()));
    }
    let mut acc = Rational::zero();
    for (c, f) in lambda.coeffs.iter().zip(&fiber.forms) {
        if !c.is_zero() {
            acc += c * f.bilinear(z1, z2)?;
        }
    }
    Ok(acc)
}

/// `P^⊥ = ⋂_λ ker Ω(λ)(·, P)`.
pub fn meta_orthogonal(fiber: &ModelFiber, p: &QMatrix) -> Result<QMatrix> {
    fiber.check(p)?;
    let d = fiber.dim();
    if p.cols() == 0 {
        return Ok(QMatrix::identity(d));
    }
    let mut rows = QMatrix::zeros(0, d);
    for f in &fiber.forms {
        rows = rows.vstack(&f.mul(p)?.transpose())?;
    }
    Ok(exact::kernel_basis(&rows))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalLaws {
    /// `(P₁^⊥)^⊥ = P₁`
    pub double_perp: bool,
    /// `P₁^⊥ ∩ P₂^⊥ = (P₁ + P₂)^⊥`
    pub sum_rule: bool,
    /// `(P₁ ∩ P₂)^⊥ = P₁^⊥ + P₂^⊥`
    pub intersection_rule: bool,
}

impl OrthogonalLaws {
    pub fn all(&self) -> bool {
        self.double_perp && self.sum_rule && self.intersection_rule
    }
}

pub fn orthogonal_laws(fiber: &ModelFiber, p1: &QMatrix, p2: &QMatrix) -> Result<OrthogonalLaws> {
    let o1 = meta_orthogonal(fiber, p1)?;
    let o2 = meta_orthogonal(fiber, p2)?;
    let double_perp = exact::same_span(&meta_orthogonal(fiber, &o1)?, p1);
    let sum_rule = exact::same_span(&exact::intersection(&o1, &o2)?, &meta_orthogonal(fiber, &p1.hstack(p2)?)?);
    let meet = exact::intersection(p1, p2)?;
    let intersection_rule = exact::same_span(&meta_orthogonal(fiber, &meet)?, &o1.hstack(&o2)?);
    Ok(OrthogonalLaws { double_perp, sum_rule, intersection_rule })
}

/// Subspace of the model fiber together with its splitting into the
/// horizontal image and the vertical part.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralPlaneModel {
    pub sig: JetSignature,
    pub frame: QMatrix,
}

impl IntegralPlaneModel {
    pub fn dim(&self) -> usize {
        exact::rank(&self.frame)
    }

    /// `(dim L_o, dim L_v)`: rank of the horizontal projection and
    /// dimension of the intersection with the vertical space.
    pub fn splitting(&self) -> (usize, usize) {
        let n = self.sig.n;
        let horizontal = exact::rank(&self.frame.select_rows(&(0..n).collect::<Vec<_>>()));
        (horizontal, self.dim() - horizontal)
    }
}

/// `m·C(p+k−1, k) + n − p`.
pub fn max_isotropic_dim(sig: &JetSignature, p: usize) -> usize {
    sig.m * binomial(p + sig.k - 1, sig.k) + sig.n - p
}

type Poly = BTreeMap<Vec<usize>, Rational>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<usize> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let entry = out.entry(e).or_insert_with(Rational::zero);
            *entry += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `P = Ann(Ξ) ⊕ S^k(Ξ)⊗ν` for the `p` covectors in the columns of `xi`.
pub fn max_isotropic(sig: &JetSignature, p: usize, xi: &QMatrix) -> Result<IntegralPlaneModel> {
    let n = sig.n;
    if p > n {
        return Err(Error::OutOfRange(format!("codimension {p} exceeds n = {n}")));
    }
    if xi.rows() != n || xi.cols() != p {
        return Err(Error::DimensionMismatch(format!("Ξ frame must be {n}×{p}, got {}×{}", xi.rows(), xi.cols())));
    }
    let r = exact::rank(xi);
    if r != p {
        return Err(Error::RankDeficient { rank: r, expected: p });
    }
    let fiber = ModelFiber::new(*sig)?;
    let mut columns = Vec::new();
    for x in exact::kernel_basis(&xi.transpose()).columns() {
        columns.push(fiber.embed_horizontal(&x)?);
    }
    let linear: Vec<Poly> = (0..p)
        .map(|l| {
            (0..n)
                .filter(|&i| !xi.get(i, l).is_zero())
                .map(|i| {
                    let mut e = vec![0; n];
                    e[i] = 1;
                    (e, xi.get(i, l).clone())
                })
                .collect()
        })
        .collect();
    for beta in multi_indices(p, sig.k) {
        let mut prod: Poly = [(vec![0; n], q(1))].into_iter().collect();
        for (l, &b) in beta.iter().enumerate() {
            for _ in 0..b {
                prod = poly_mul(&prod, &linear[l]);
            }
        }
        for j in 0..sig.m {
            let mut t = SymTensor::zeros(n, sig.m, sig.k);
            for (e, c) in &prod {
                t.set(e, j, c.clone())?;
            }
            columns.push(fiber.embed_vertical(&t)?);
        }
    }
    let frame = QMatrix::from_columns(fiber.dim(), &columns)?;
    let model = IntegralPlaneModel { sig: *sig, frame };
    let want = max_isotropic_dim(sig, p);
    if model.dim() != want {
        return Err(Error::Invalid(format!("constructed dimension {} differs from {want}", model.dim())));
    }
    Ok(model)
}

/// Whether `m·C(p+k−1, k) ≥ n`.
pub fn singularity_condition(sig: &JetSignature, p: usize) -> Result<bool> {
    if p > sig.n {
        return Err(Error::OutOfRange(format!("p = {p} exceeds n = {}", sig.n)));
    }
    Ok(sig.m * binomial(p + sig.k - 1, sig.k) >= sig.n)
}
