//! Kashiwara's index from the complex `C_L →∂ ⊕ᵢLᵢ →Σ V`.
//!
//! Elements of `⊕ᵢLᵢ` are coordinate vectors `(c₁, …, c_r)` with
//! `aᵢ = Fᵢcᵢ`. `T_L = ker Σ / im ∂` is realised by a complement of `im ∂`
//! inside `ker Σ`, chosen by lexicographic row reduction.

use num_traits::Zero;

use super::LagrangianTuple;
use crate::error::{Error, Result};
use crate::linalg::{exact, q, qr, QMatrix, Rational, Signature, SymmetricForm};
use crate::witt::WittReal;

/// `(T_L, q_L)` together with the representatives that realise it.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticSpace {
    pub gram: SymmetricForm,
    pub signature: Signature,
    /// Representatives in `⊕ᵢLᵢ` coordinates, one column per basis vector.
    pub representatives: QMatrix,
}

impl QuadraticSpace {
    pub fn dim(&self) -> usize {
        self.gram.dim()
    }

    pub fn index(&self) -> WittReal {
        WittReal(self.signature.index())
    }
}

struct Blocks {
    frames: Vec<QMatrix>,
    offsets: Vec<usize>,
    omega: QMatrix,
}

impl Blocks {
    fn new(t: &LagrangianTuple) -> Result<Self> {
        let frames = t
            .entries()
            .iter()
            .map(|l| l.exact_frame().cloned())
            .collect::<Result<Vec<_>>>()?;
        let mut offsets = vec![0];
        for f in &frames {
            offsets.push(offsets.last().unwrap() + f.cols());
        }
        Ok(Self { frames, offsets, omega: t.space().omega_q()? })
    }

    fn total(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    fn block<'a>(&self, v: &'a [Rational], i: usize) -> &'a [Rational] {
        &v[self.offsets[i]..self.offsets[i + 1]]
    }

    /// `Fᵢᵀ Ω Fⱼ`.
    fn pairing(&self, i: usize, j: usize) -> QMatrix {
        self.frames[i]
            .transpose()
            .mul(&self.omega)
            .and_then(|m| m.mul(&self.frames[j]))
            .expect("frames share the ambient dimension")
    }

    fn sum_map(&self) -> QMatrix {
        self.frames[1..]
            .iter()
            .try_fold(self.frames[0].clone(), |acc, f| acc.hstack(f))
            .expect("frames share the ambient dimension")
    }

    /// Columns spanning `im ∂`: for `a = Fᵢc = F_{i+1}d` the vector with
    /// block `i` equal to `c` and block `i+1` equal to `−d`.
    fn boundary(&self) -> QMatrix {
        let r = self.frames.len();
        let mut cols = Vec::new();
        for i in 0..r {
            let j = (i + 1) % r;
            let stacked = self.frames[i].hstack(&self.frames[j].neg()).expect("same rows");
            let k = exact::kernel_basis(&stacked);
            let ni = self.frames[i].cols();
            for col in k.columns() {
                let mut v = vec![q(0); self.total()];
                for (s, x) in col[..ni].iter().enumerate() {
                    v[self.offsets[i] + s] = x.clone();
                }
                for (s, x) in col[ni..].iter().enumerate() {
                    v[self.offsets[j] + s] = &v[self.offsets[j] + s] - x;
                }
                cols.push(v);
            }
        }
        QMatrix::from_columns(self.total(), &cols).expect("uniform columns")
    }

    /// Representatives of a basis of `ker Σ / im ∂`.
    fn quotient_representatives(&self) -> Result<QMatrix> {
        let k = exact::kernel_basis(&self.sum_map());
        let d = self.boundary();
        let y = exact::solve_columns(&k, &d)?;
        let c = exact::complement(&y);
        k.mul(&c)
    }

    fn gram(&self, reps: &QMatrix, form: impl Fn(&[Rational], &[Rational]) -> Rational) -> Result<QMatrix> {
        let cols = reps.columns();
        let t = cols.len();
        let mut g = QMatrix::zeros(t, t);
        for p in 0..t {
            for s in p..t {
                let v = form(&cols[p], &cols[s]);
                g.set(p, s, v.clone());
                g.set(s, p, v);
            }
        }
        Ok(g)
    }
}

/// `q_L(a, b) = Σ_{i>j} ω(aᵢ, bⱼ)` on `⊕ᵢLᵢ` coordinate vectors.
pub fn maslov_form(t: &LagrangianTuple, a: &[Rational], b: &[Rational]) -> Result<Rational> {
    let blocks = Blocks::new(t)?;
    if a.len() != blocks.total() || b.len() != blocks.total() {
        return Err(Error::DimensionMismatch("vector length differs from ⊕ Lᵢ".into()));
    }
    let pairings = pairing_table(&blocks);
    Ok(maslov_value(&blocks, &pairings, a, b))
}

fn pairing_table(blocks: &Blocks) -> Vec<Vec<Option<QMatrix>>> {
    let r = blocks.frames.len();
    (0..r).map(|i| (0..r).map(|j| (i > j).then(|| blocks.pairing(i, j))).collect()).collect()
}

fn maslov_value(blocks: &Blocks, pairings: &[Vec<Option<QMatrix>>], a: &[Rational], b: &[Rational]) -> Rational {
    let r = blocks.frames.len();
    let mut acc = Rational::zero();
    for i in 0..r {
        let ai = blocks.block(a, i);
        if ai.iter().all(Zero::is_zero) {
            continue;
        }
        for j in 0..i {
            let m = pairings[i][j].as_ref().expect("lower triangle");
            acc += m.bilinear(ai, blocks.block(b, j)).expect("block sizes agree");
        }
    }
    acc
}

/// Spanning set of `im ∂` in `⊕ᵢLᵢ` coordinates.
pub fn boundary_image(t: &LagrangianTuple) -> Result<QMatrix> {
    Ok(Blocks::new(t)?.boundary())
}

/// The quadratic space `(T_L, q_L)`. Exact frames are required.
pub fn kashiwara_space(t: &LagrangianTuple) -> Result<QuadraticSpace> {
    let blocks = Blocks::new(t)?;
    let reps = blocks.quotient_representatives()?;
    let pairings = pairing_table(&blocks);
    let g = blocks.gram(&reps, |a, b| maslov_value(&blocks, &pairings, a, b))?;
    let signature = exact::signature(&g);
    Ok(QuadraticSpace { gram: SymmetricForm::exact(g)?, signature, representatives: reps })
}

pub fn kashiwara_index(t: &LagrangianTuple) -> Result<WittReal> {
    Ok(kashiwara_space(t)?.index())
}

/// `Σ_{j=2}^{r−1} τ(L₁, Lⱼ, Lⱼ₊₁)`.
pub fn tuple_reduce(t: &LagrangianTuple) -> Result<WittReal> {
    let e = t.entries();
    if e.len() < 3 {
        return Err(Error::Invalid("reduction needs at least three Lagrangians".into()));
    }
    (1..e.len() - 1)
        .map(|j| {
            let triple = LagrangianTuple::new(vec![e[0].clone(), e[j].clone(), e[j + 1].clone()])?;
            kashiwara_index(&triple)
        })
        .sum()
}

/// `W = ker Σ / im(L₁∩L₂ + L₂∩L₃ + L₃∩L₁)` with `ψ(x, y) = ω(x₂, y₁)`
/// symmetrised.
pub fn wall_space(t: &LagrangianTuple) -> Result<QuadraticSpace> {
    if t.len() != 3 {
        return Err(Error::Invalid("the Wall invariant takes exactly three Lagrangians".into()));
    }
    let blocks = Blocks::new(t)?;
    let reps = blocks.quotient_representatives()?;
    let m21 = blocks.pairing(1, 0);
    let half = qr(1, 2);
    let psi = |x: &[Rational], y: &[Rational]| {
        let xy = m21.bilinear(blocks.block(x, 1), blocks.block(y, 0)).expect("block sizes");
        let yx = m21.bilinear(blocks.block(y, 1), blocks.block(x, 0)).expect("block sizes");
        (xy + yx) * &half
    };
    let g = blocks.gram(&reps, psi)?;
    let signature = exact::signature(&g);
    Ok(QuadraticSpace { gram: SymmetricForm::exact(g)?, signature, representatives: reps })
}

pub fn wall_invariant(t: &LagrangianTuple) -> Result<WittReal> {
    Ok(wall_space(t)?.index())
}
