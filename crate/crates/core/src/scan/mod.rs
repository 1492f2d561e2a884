//! Sampled submanifolds: isotropy residuals, corank strata of the
//! projection to the base, and Maslov indices of sampled loops.

mod contact;

pub use contact::{check_legendrian, reeb_field, ContactForm, LegendrianCheck};

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{approx, DynMatrix, FMatrix};
use crate::symplectic::{loop_degree, LagrangianFrame, SymplecticSpace};

/// Declared sample layout. Never inferred from the data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    Line,
    Loop,
    /// Row-major grid; axis `a` is differentiated against parameter `a`.
    Grid { shape: Vec<usize>, periodic: Vec<bool> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub param: Vec<f64>,
    pub point: Vec<f64>,
    /// Tangent frame, `ambient × param_dim`; takes precedence over finite differences.
    pub frame: Option<FMatrix>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampledImmersion {
    param_dim: usize,
    ambient_dim: usize,
    samples: Vec<Sample>,
    topology: Topology,
    shape: Vec<usize>,
    periodic: Vec<bool>,
}

impl SampledImmersion {
    pub fn new(param_dim: usize, ambient_dim: usize, samples: Vec<Sample>, topology: Topology) -> Result<Self> {
        if param_dim == 0 || ambient_dim < param_dim {
            return Err(Error::DimensionMismatch(format!(
                "cannot immerse dimension {param_dim} into dimension {ambient_dim}"
            )));
        }
        let (shape, periodic) = match &topology {
            Topology::Line => (vec![samples.len()], vec![false]),
            Topology::Loop => (vec![samples.len()], vec![true]),
            Topology::Grid { shape, periodic } => {
                if shape.len() != periodic.len() || shape.is_empty() {
                    return Err(Error::Invalid("grid shape and periodic flags disagree".into()));
                }
                if shape.iter().product::<usize>() != samples.len() {
                    return Err(Error::Invalid(format!("grid {shape:?} does not hold {} samples", samples.len())));
                }
                (shape.clone(), periodic.clone())
            }
        };
        if samples.len() < 2 {
            return Err(Error::Invalid("at least two samples are needed".into()));
        }
        for (i, s) in samples.iter().enumerate() {
            if s.param.len() != param_dim || s.point.len() != ambient_dim {
                return Err(Error::DimensionMismatch(format!("sample {i} has the wrong length")));
            }
            if s.param.iter().chain(&s.point).any(|v| !v.is_finite()) {
                return Err(Error::Invalid(format!("sample {i} is not finite")));
            }
            if let Some(f) = &s.frame {
                if f.rows() != ambient_dim || f.cols() != param_dim {
                    return Err(Error::DimensionMismatch(format!("frame of sample {i} must be {ambient_dim}×{param_dim}")));
                }
            }
        }
        let me = Self { param_dim, ambient_dim, samples, topology, shape, periodic };
        for i in 0..me.samples.len() {
            for j in me.neighbors(i) {
                if j > i && me.samples[i].point == me.samples[j].point {
                    return Err(Error::Invalid(format!("neighbouring samples {i} and {j} coincide")));
                }
            }
        }
        Ok(me)
    }

    pub fn param_dim(&self) -> usize {
        self.param_dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn topology(&self) -> &Topology {
        &self.topology
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    fn coords(&self, mut i: usize) -> Vec<usize> {
        let mut c = vec![0; self.shape.len()];
        for a in (0..self.shape.len()).rev() {
            c[a] = i % self.shape[a];
            i /= self.shape[a];
        }
        c
    }

    fn flat(&self, c: &[usize]) -> usize {
        c.iter().zip(&self.shape).fold(0, |acc, (x, s)| acc * s + x)
    }

    /// Next sample along `axis`, forward or backward, wrapping on periodic axes.
    fn step(&self, i: usize, axis: usize, forward: bool) -> Option<usize> {
        let mut c = self.coords(i);
        let len = self.shape[axis];
        let next = match (forward, c[axis]) {
            (true, x) if x + 1 < len => x + 1,
            (true, _) if self.periodic[axis] => 0,
            (false, 0) if self.periodic[axis] => len - 1,
            (false, 0) | (true, _) => return None,
            (false, x) => x - 1,
        };
        c[axis] = next;
        let j = self.flat(&c);
        (j != i).then_some(j)
    }

    fn neighbors(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for axis in 0..self.shape.len() {
            for forward in [false, true] {
                if let Some(j) = self.step(i, axis, forward) {
                    if !out.contains(&j) {
                        out.push(j);
                    }
                }
            }
        }
        out
    }

    /// Parameter spacing between `a` and `b` along `axis`; across a periodic
    /// seam the mean spacing stands in.
    fn spacing(&self, a: usize, b: usize, axis: usize) -> f64 {
        let d = self.samples[b].param[axis] - self.samples[a].param[axis];
        if d > 0.0 {
            return d;
        }
        let len = self.shape[axis];
        let first = self.samples[self.flat(&vec![0; self.shape.len()])].param[axis];
        let mut last_c = vec![0; self.shape.len()];
        last_c[axis] = len - 1;
        let last = self.samples[self.flat(&last_c)].param[axis];
        let h = (last - first) / (len - 1).max(1) as f64;
        let hops = self.hops(a, b, axis) as f64;
        if h > 0.0 {
            h * hops
        } else {
            hops
        }
    }

    fn hops(&self, a: usize, b: usize, axis: usize) -> usize {
        let (ca, cb) = (self.coords(a)[axis], self.coords(b)[axis]);
        let len = self.shape[axis];
        (cb + len - ca) % len
    }

    /// Up to three samples along `axis` around `i`, with parameter offsets
    /// relative to `i`: centred in the interior, one-sided at open ends.
    fn stencil(&self, i: usize, axis: usize) -> Vec<(usize, f64)> {
        let back = self.step(i, axis, false);
        let fwd = self.step(i, axis, true);
        match (back, fwd) {
            (Some(b), Some(f)) if b != f => {
                vec![(b, -self.spacing(b, i, axis)), (i, 0.0), (f, self.spacing(i, f, axis))]
            }
            (None, Some(f)) => {
                let h = self.spacing(i, f, axis);
                let mut out = vec![(i, 0.0), (f, h)];
                if let Some(f2) = self.step(f, axis, true).filter(|&x| x != i) {
                    out.push((f2, h + self.spacing(f, f2, axis)));
                }
                out
            }
            (Some(b), None) => {
                let h = self.spacing(b, i, axis);
                let mut out = vec![(b, -h), (i, 0.0)];
                if let Some(b2) = self.step(b, axis, false).filter(|&x| x != i) {
                    out.insert(0, (b2, -h - self.spacing(b2, b, axis)));
                }
                out
            }
            (Some(b), Some(_)) => vec![(b, -self.spacing(b, i, axis)), (i, 0.0)],
            (None, None) => Vec::new(),
        }
    }

    /// Tangent frames, analytic where given and Lagrange-interpolated
    /// differences (exact on quadratics) elsewhere.
    pub fn tangent_frames(&self) -> Result<Vec<FMatrix>> {
        let axes = self.shape.len();
        (0..self.samples.len())
            .map(|i| {
                if let Some(f) = &self.samples[i].frame {
                    return Ok(f.clone());
                }
                if axes != self.param_dim {
                    return Err(Error::MissingFrames(format!(
                        "sample {i}: {axes} grid axes cannot give {} tangent directions",
                        self.param_dim
                    )));
                }
                let mut cols = Vec::with_capacity(axes);
                for axis in 0..axes {
                    let st = self.stencil(i, axis);
                    if st.len() < 2 {
                        return Err(Error::MissingFrames(format!("sample {i} has no neighbours along axis {axis}")));
                    }
                    // weights sum to zero, so differences against the centre keep constants exact
                    let centre = &self.samples[i].point;
                    let mut col = vec![0.0; self.ambient_dim];
                    for (k, &(j, ok)) in st.iter().enumerate() {
                        let w = lagrange_weight(&st, k, ok);
                        for ((c, p), p0) in col.iter_mut().zip(&self.samples[j].point).zip(centre) {
                            *c += w * (p - p0);
                        }
                    }
                    cols.push(col);
                }
                FMatrix::from_columns(self.ambient_dim, &cols)
            })
            .collect()
    }

    /// Connected components of a sample subset under grid adjacency.
    pub fn components(&self, members: &[usize]) -> usize {
        let mut inside = vec![false; self.samples.len()];
        for &i in members {
            inside[i] = true;
        }
        let mut seen = vec![false; self.samples.len()];
        let mut count = 0;
        for &start in members {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for j in self.neighbors(i) {
                    if inside[j] && !seen[j] {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                }
            }
        }
        count
    }
}

/// Derivative at offset `0` of the `k`-th Lagrange basis polynomial on the stencil offsets.
fn lagrange_weight(st: &[(usize, f64)], k: usize, ok: f64) -> f64 {
    let others: Vec<f64> = st.iter().enumerate().filter(|&(l, _)| l != k).map(|(_, &(_, o))| o).collect();
    let denom: f64 = others.iter().map(|o| ok - o).product();
    // d/dt Π (t − o) at t = 0
    let numer: f64 = (0..others.len())
        .map(|skip| others.iter().enumerate().filter(|&(l, _)| l != skip).map(|(_, o)| -o).product::<f64>())
        .sum();
    numer / denom
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LagrangianCheck {
    /// Largest `‖FᵀΩF‖_F / ‖F‖_F` over the samples.
    pub max_residual: f64,
    pub worst_sample: usize,
    pub pass: bool,
}

/// Isotropy of the tangent frames: sample `i` passes when
/// `‖FᵀΩF‖_F ≤ tol · ‖F‖_F²`.
pub fn check_lagrangian(s: &SampledImmersion, space: &SymplecticSpace, tol: f64) -> Result<LagrangianCheck> {
    if s.ambient_dim != space.dim() || s.param_dim != space.n() {
        return Err(Error::DimensionMismatch(format!(
            "{}-dimensional samples in {} coordinates, space has dimension {}",
            s.param_dim,
            s.ambient_dim,
            space.dim()
        )));
    }
    let omega = space.omega_f();
    let mut report = LagrangianCheck { max_residual: 0.0, worst_sample: 0, pass: true };
    for (i, f) in s.tangent_frames()?.iter().enumerate() {
        let scale = f.frobenius();
        let gram = f.transpose().mul(&omega)?.mul(f)?.frobenius();
        let residual = if scale > 0.0 { gram / scale } else { 0.0 };
        if residual > report.max_residual {
            report.max_residual = residual;
            report.worst_sample = i;
        }
        if gram > tol * scale * scale {
            report.pass = false;
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stratum {
    /// Stratum index `i` with corank `n − i`.
    pub i: usize,
    pub corank: usize,
    pub label: String,
    pub samples: Vec<usize>,
    pub components: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorankProfile {
    pub n: usize,
    pub coranks: Vec<usize>,
    /// Samples whose smallest retained singular value lies within `√tol` of the cutoff scale.
    pub near_singular: Vec<usize>,
    /// Strata of positive corank, from corank 1 upward.
    pub strata: Vec<Stratum>,
}

impl CorankProfile {
    pub fn singular_samples(&self) -> Vec<usize> {
        (0..self.coranks.len()).filter(|&i| self.coranks[i] > 0).collect()
    }
}

/// Corank of the projection of each tangent frame onto the coordinates in
/// `projection` (default: the first `n`). Singular values count as zero
/// below `tol` times the largest singular value of the full frame.
pub fn corank_profile(s: &SampledImmersion, projection: Option<&[usize]>, tol: f64) -> Result<CorankProfile> {
    let n = s.param_dim;
    let default: Vec<usize> = (0..n).collect();
    let proj = projection.unwrap_or(&default);
    if proj.iter().any(|&p| p >= s.ambient_dim) {
        return Err(Error::OutOfRange("projection index beyond the ambient dimension".into()));
    }
    let mut coranks = Vec::with_capacity(s.len());
    let mut near_singular = Vec::new();
    for (i, f) in s.tangent_frames()?.iter().enumerate() {
        let scale = approx::singular_values(f).first().copied().unwrap_or(0.0);
        let sv = approx::singular_values(&f.select_rows(proj));
        let kept: Vec<f64> = sv.into_iter().filter(|&v| v > tol * scale).collect();
        if kept.iter().any(|&v| v <= tol.sqrt() * scale) {
            near_singular.push(i);
        }
        coranks.push(n - kept.len().min(n));
    }
    let strata = (1..=n)
        .map(|corank| {
            let members: Vec<usize> = (0..coranks.len()).filter(|&i| coranks[i] == corank).collect();
            let i = n - corank;
            let label = if i == 0 { "Σ_0 (type-0 locus)".to_string() } else { format!("Σ_{i}") };
            Stratum { i, corank, label, components: s.components(&members), samples: members }
        })
        .collect();
    Ok(CorankProfile { n, coranks, near_singular, strata })
}

fn frames_in(space: &SymplecticSpace, frames: Vec<FMatrix>, tol: f64) -> Result<Vec<LagrangianFrame>> {
    frames.into_iter().map(|f| LagrangianFrame::new(space.clone(), DynMatrix::Approx(f), tol)).collect()
}

/// Maslov index of a sampled loop: the degree of `det²` along its tangent planes.
pub fn loop_maslov(s: &SampledImmersion, space: &SymplecticSpace, tol: f64) -> Result<i64> {
    if s.topology != Topology::Loop {
        return Err(Error::OpenPath);
    }
    if s.ambient_dim != space.dim() || s.param_dim != space.n() {
        return Err(Error::DimensionMismatch("loop samples do not live in the space".into()));
    }
    let mut path = frames_in(space, s.tangent_frames()?, tol)?;
    path.push(path[0].clone());
    loop_degree(&path)
}
