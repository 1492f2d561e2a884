//! Dimension audits of two first-order PDEs on `n`-dimensional submanifolds.
//!
//! The Lagrangian equation `ℒ₁ ⊂ J¹_n(W)`, `dim W = 2n`, is
//! `F = ω + ω̄P − (ω̄P)ᵀ + Pᵀω̂P = 0` with `P = (∂yʲ/∂x^t)`, and the
//! Legendrian equation `ℒeg ⊂ J¹_n(W)`, `dim W = 2n + 1`, is `z_β = y_β`.
//! Closed forms are compared against exact ranks of the linearized
//! system and its first prolongation.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{exact, q, QMatrix};

/// `(dim E, dim E₊₁, dim (g₁)₊₁)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PdeDims {
    pub dim: i64,
    pub dim_plus1: i64,
    pub dim_g1_plus1: i64,
}

impl PdeDims {
    pub fn additive(&self) -> bool {
        self.dim_plus1 == self.dim + self.dim_g1_plus1
    }
}

/// Ranks observed at one point. `image_dim` is the dimension of the image
/// of the tangent space of `E₊₁` in `J¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LinearizationSample {
    pub dim: i64,
    pub dim_plus1: i64,
    pub dim_g1: i64,
    pub dim_g1_plus1: i64,
    pub image_dim: i64,
}

impl LinearizationSample {
    pub fn dims(&self) -> PdeDims {
        PdeDims { dim: self.dim, dim_plus1: self.dim_plus1, dim_g1_plus1: self.dim_g1_plus1 }
    }

    pub fn surjective(&self) -> bool {
        self.image_dim == self.dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LagrangianPdeReport {
    pub n: usize,
    pub closed: PdeDims,
    pub closed_additive: bool,
    pub points: usize,
    /// Distinct samples, in order of first appearance.
    pub observed: Vec<LinearizationSample>,
    pub ranks_match_closed: bool,
    pub surjective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LegendrianPdeReport {
    pub n: usize,
    pub closed: PdeDims,
    pub closed_additive: bool,
    /// `dim g₁^{(i)} = n² − i·n` for `i = 0..n`.
    pub cascade_closed: Vec<i64>,
    pub cascade_rank: Vec<i64>,
    pub cascade_sum: i64,
    pub involutive: bool,
    pub observed: LinearizationSample,
    pub ranks_match_closed: bool,
    pub surjective: bool,
}

fn tri(n: i64) -> i64 {
    n * (n + 1) / 2
}

pub fn lagrangian_closed_forms(n: usize) -> PdeDims {
    let n = n as i64;
    PdeDims {
        dim: n + n * (n + 1) - n * (n - 1) / 2,
        dim_plus1: n + n * (n + 2) * (n + 1) / 2 - n * (n - 1) / 2 - n * n * (n - 1) / 2,
        dim_g1_plus1: n * n * (n + 1) / 2 - n * n * (n - 1) / 2,
    }
}

pub fn legendrian_closed_forms(n: usize) -> PdeDims {
    let n = n as i64;
    PdeDims {
        dim: (n + 1) * (n + 1),
        dim_plus1: (n + 1) * (n * n + 2 * n + 2) / 2,
        dim_g1_plus1: n * n * (n + 1) / 2,
    }
}

/// Index of the symmetric pair `{a, b}` among `0 ≤ a ≤ b < n`.
fn pair_index(n: usize, a: usize, b: usize) -> usize {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    a * n - a * (a + 1) / 2 + b
}

fn random_matrix<R: Rng>(rng: &mut R, n: usize) -> QMatrix {
    QMatrix::from_fn(n, n, |_, _| q(rng.gen_range(-3..=3)))
}

fn unit(n: usize, j: usize, t: usize) -> QMatrix {
    QMatrix::from_fn(n, n, |a, b| if a == j && b == t { q(1) } else { q(0) })
}

/// Dimension of the image of `ker J` under the projection onto the first `cols` coordinates.
fn projected_kernel_rank(j: &QMatrix, cols: usize) -> usize {
    let k = exact::kernel_basis(j);
    exact::rank(&k.select_rows(&(0..cols).collect::<Vec<_>>()))
}

struct LagrangianPoint {
    wb: QMatrix,
    wh: QMatrix,
    p: QMatrix,
}

impl LagrangianPoint {
    /// `dF[H] = ω̄H − (ω̄H)ᵀ + Hᵀω̂P + Pᵀω̂H`; the last term is `−(Hᵀω̂P)ᵀ`.
    fn d_f(&self, h: &QMatrix) -> QMatrix {
        let a = self.wb.mul(h).expect("square");
        let b = h.transpose().mul(&self.wh).and_then(|x| x.mul(&self.p)).expect("square");
        a.sub(&a.transpose()).and_then(|x| x.add(&b)).and_then(|x| x.sub(&b.transpose())).expect("square")
    }

    /// `d²F[H, K] = Hᵀω̂K + Kᵀω̂H = Hᵀω̂K − (Hᵀω̂K)ᵀ`.
    fn d2_f(&self, h: &QMatrix, k: &QMatrix) -> QMatrix {
        let a = h.transpose().mul(&self.wh).and_then(|x| x.mul(k)).expect("square");
        a.sub(&a.transpose()).expect("square")
    }
}

/// Draws `ω̄`, skew `ω̂` and `P` with rank-maximal `dF`, and sets `ω` so that
/// `F(P) = 0`; the full form on `ℝ²ⁿ` is required to be nondegenerate.
fn lagrangian_point<R: Rng>(rng: &mut R, n: usize) -> Result<LagrangianPoint> {
    let pairs = n * n.saturating_sub(1) / 2;
    for _ in 0..200 {
        let wb = random_matrix(rng, n);
        let a = random_matrix(rng, n);
        let wh = a.sub(&a.transpose())?;
        let p = random_matrix(rng, n);
        let wbp = wb.mul(&p)?;
        let w = wbp.sub(&wbp.transpose())?.add(&p.transpose().mul(&wh)?.mul(&p)?)?.neg();
        let full = w.hstack(&wb)?.vstack(&wb.transpose().neg().hstack(&wh)?)?;
        if exact::determinant(&full)?.is_zero() {
            continue;
        }
        let pt = LagrangianPoint { wb, wh, p };
        let jf = lagrangian_jf(&pt, n);
        if exact::rank(&jf) == pairs {
            return Ok(pt);
        }
    }
    Err(Error::Invalid("no generic point found".into()))
}

fn upper_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|r| (r + 1..n).map(move |s| (r, s))).collect()
}

/// Jacobian of `F_rs`, `r < s`, in the `P` variables `(j, t) ↦ j·n + t`.
fn lagrangian_jf(pt: &LagrangianPoint, n: usize) -> QMatrix {
    let pairs = upper_pairs(n);
    let mut jf = QMatrix::zeros(pairs.len(), n * n);
    for j in 0..n {
        for t in 0..n {
            let d = pt.d_f(&unit(n, j, t));
            for (row, &(r, s)) in pairs.iter().enumerate() {
                jf.set(row, j * n + t, d.get(r, s).clone());
            }
        }
    }
    jf
}

fn lagrangian_sample<R: Rng>(rng: &mut R, n: usize) -> Result<LinearizationSample> {
    let pt = lagrangian_point(rng, n)?;
    let pairs = upper_pairs(n);
    let np = n * n;
    let sym = tri(n as i64) as usize;
    let nq = n * sym;
    let qcol = |j: usize, t: usize, a: usize| j * sym + pair_index(n, t, a);

    let jf = lagrangian_jf(&pt, n);
    // symbol of D_α F_rs in the second-order variables
    let mut sigma = QMatrix::zeros(n * pairs.len(), nq);
    for j in 0..n {
        for t in 0..n {
            let d = pt.d_f(&unit(n, j, t));
            for alpha in 0..n {
                for (pi, &(r, s)) in pairs.iter().enumerate() {
                    let (row, col) = (alpha * pairs.len() + pi, qcol(j, t, alpha));
                    sigma.set(row, col, sigma.get(row, col) + d.get(r, s));
                }
            }
        }
    }
    let kernel = exact::kernel_basis(&sigma);
    let coeffs: Vec<_> = (0..kernel.cols()).map(|_| q(rng.gen_range(-3..=3))).collect();
    let qv = kernel.mul_vec(&coeffs)?;
    let q_alpha: Vec<QMatrix> = (0..n)
        .map(|alpha| QMatrix::from_fn(n, n, |j, t| qv[qcol(j, t, alpha)].clone()))
        .collect();

    // full Jacobian in (P, Q); base and order-zero columns vanish
    let mut jac = QMatrix::zeros(pairs.len() * (n + 1), np + nq);
    for row in 0..pairs.len() {
        for c in 0..np {
            jac.set(row, c, jf.get(row, c).clone());
        }
    }
    for k in 0..n {
        for l in 0..n {
            let e = unit(n, k, l);
            for (alpha, qa) in q_alpha.iter().enumerate() {
                let d = pt.d2_f(&e, qa);
                for (pi, &(r, s)) in pairs.iter().enumerate() {
                    jac.set(pairs.len() * (1 + alpha) + pi, k * n + l, d.get(r, s).clone());
                }
            }
        }
    }
    for row in 0..sigma.rows() {
        for c in 0..nq {
            jac.set(pairs.len() + row, np + c, sigma.get(row, c).clone());
        }
    }

    let (n_, np_, nq_) = (n as i64, np as i64, nq as i64);
    let dim_j1 = 2 * n_ + np_;
    Ok(LinearizationSample {
        dim: dim_j1 - exact::rank(&jf) as i64,
        dim_plus1: dim_j1 + nq_ - exact::rank(&jac) as i64,
        dim_g1: np_ - exact::rank(&jf) as i64,
        dim_g1_plus1: nq_ - exact::rank(&sigma) as i64,
        image_dim: 2 * n_ + projected_kernel_rank(&jac, np) as i64,
    })
}

fn push_distinct(out: &mut Vec<LinearizationSample>, s: LinearizationSample) {
    if !out.contains(&s) {
        out.push(s);
    }
}

/// Closed forms of `ℒ₁` and exact linearization ranks at `points` random
/// points with constant coefficients.
pub fn lagrangian_pde_dims(n: usize, points: usize, seed: u64) -> Result<LagrangianPdeReport> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    if n > 6 {
        return Err(Error::SizeGuard(format!("rank audit for n = {n} exceeds the desk-scale limit 6")));
    }
    let closed = lagrangian_closed_forms(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut observed = Vec::new();
    for _ in 0..points {
        push_distinct(&mut observed, lagrangian_sample(&mut rng, n)?);
    }
    Ok(LagrangianPdeReport {
        n,
        closed,
        closed_additive: closed.additive(),
        points,
        ranks_match_closed: observed.iter().all(|s| s.dims() == closed),
        surjective: observed.iter().all(LinearizationSample::surjective),
        observed,
    })
}

/// Column layout of `J²_n(W)` for `dim W = 2n + 1`: base `x`, fiber
/// `(y_a, z)`, first-order `(f, β)`, second-order `(f, {β, γ})`, with fiber
/// index `f = n` standing for `z`.
struct LegendrianLayout {
    n: usize,
    m: usize,
    sym: usize,
}

impl LegendrianLayout {
    fn new(n: usize) -> Self {
        Self { n, m: n + 1, sym: tri(n as i64) as usize }
    }

    fn order0(&self, f: usize) -> usize {
        self.n + f
    }

    fn order1(&self, f: usize, beta: usize) -> usize {
        self.n + self.m + f * self.n + beta
    }

    fn order2(&self, f: usize, beta: usize, gamma: usize) -> usize {
        self.dim_j1() + f * self.sym + pair_index(self.n, beta, gamma)
    }

    fn dim_j1(&self) -> usize {
        self.n + self.m + self.m * self.n
    }

    fn dim_j2(&self) -> usize {
        self.dim_j1() + self.m * self.sym
    }
}

fn legendrian_sample(n: usize) -> Result<(LinearizationSample, Vec<i64>)> {
    let lay = LegendrianLayout::new(n);
    let z = n;
    // z_β − y_β
    let mut eq = QMatrix::zeros(n, lay.dim_j2());
    for b in 0..n {
        eq.set(b, lay.order1(z, b), q(1));
        eq.set(b, lay.order0(b), q(-1));
    }
    // D_γ(z_β − y_β) = z_βγ − y_{β,γ}
    let mut prolonged = QMatrix::zeros(n * n, lay.dim_j2());
    for b in 0..n {
        for g in 0..n {
            prolonged.set(b * n + g, lay.order2(z, b, g), q(1));
            prolonged.set(b * n + g, lay.order1(b, g), q(-1));
        }
    }
    let all = eq.vstack(&prolonged)?;
    let j1: Vec<usize> = (0..lay.dim_j1()).collect();
    let order1: Vec<usize> = (lay.n + lay.m..lay.dim_j1()).collect();
    let order2: Vec<usize> = (lay.dim_j1()..lay.dim_j2()).collect();

    let eq_j1 = eq.select_columns(&j1);
    let symbol1 = eq.select_columns(&order1);
    let symbol2 = prolonged.select_columns(&order2);
    let dim_g1 = (order1.len() - exact::rank(&symbol1)) as i64;

    // g₁^{(i)}: symbol vectors annihilating ∂_β for β < i
    let mut cascade = Vec::with_capacity(n);
    for i in 0..n {
        let mut rows = symbol1.clone();
        for f in 0..lay.m {
            for b in 0..i {
                let mut r = QMatrix::zeros(1, order1.len());
                r.set(0, f * n + b, q(1));
                rows = rows.vstack(&r)?;
            }
        }
        cascade.push((order1.len() - exact::rank(&rows)) as i64);
    }

    let sample = LinearizationSample {
        dim: (lay.dim_j1() - exact::rank(&eq_j1)) as i64,
        dim_plus1: (lay.dim_j2() - exact::rank(&all)) as i64,
        dim_g1,
        dim_g1_plus1: (order2.len() - exact::rank(&symbol2)) as i64,
        image_dim: projected_kernel_rank(&all, lay.dim_j1()) as i64,
    };
    Ok((sample, cascade))
}

/// Closed forms of `ℒeg`, its involutivity cascade, and exact ranks of the
/// linearized system. The equations have constant coefficients, so one
/// evaluation covers every point.
pub fn legendrian_pde_dims(n: usize) -> Result<LegendrianPdeReport> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    if n > 12 {
        return Err(Error::SizeGuard(format!("rank audit for n = {n} exceeds the desk-scale limit 12")));
    }
    let closed = legendrian_closed_forms(n);
    let n_ = n as i64;
    let cascade_closed: Vec<i64> = (0..n_).map(|i| n_ * n_ - i * n_).collect();
    let (observed, cascade_rank) = legendrian_sample(n)?;
    let cascade_sum = cascade_rank.iter().sum();
    Ok(LegendrianPdeReport {
        n,
        closed,
        closed_additive: closed.additive(),
        involutive: cascade_rank == cascade_closed && cascade_sum == closed.dim_g1_plus1,
        cascade_closed,
        cascade_sum,
        ranks_match_closed: observed.dims() == closed,
        surjective: observed.surjective(),
        cascade_rank,
        observed,
    })
}
