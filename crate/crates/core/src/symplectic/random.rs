//! Seeded generators of exact symplectic data.
//!
//! Every generator takes the caller's RNG; nothing here owns global state.

use rand::Rng;

use super::{coordinate_lagrangian, standard_omega, LagrangianFrame};
use crate::error::Result;
use crate::linalg::{q, QMatrix, Rational};

/// Symmetric integer matrix with entries in `[-bound, bound]`.
pub fn random_symmetric<R: Rng>(rng: &mut R, n: usize, bound: i64) -> QMatrix {
    let mut m = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = q(rng.gen_range(-bound..=bound));
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
    }
    m
}

/// Transvection `x ↦ x + c·ω(v, x)·v` for the standard form.
pub fn transvection(v: &[Rational], c: &Rational) -> QMatrix {
    let d = v.len();
    let om: QMatrix = standard_omega(d / 2);
    // row vector vᵀΩ
    let w: Vec<Rational> =
        (0..d).map(|j| (0..d).fold(q(0), |acc, i| acc + &v[i] * om.get(i, j))).collect();
    QMatrix::from_fn(d, d, |i, j| {
        let base = if i == j { q(1) } else { q(0) };
        base + c * &v[i] * &w[j]
    })
}

/// Product of `steps` transvections with small integer data.
pub fn random_symplectic<R: Rng>(rng: &mut R, n: usize, steps: usize) -> QMatrix {
    let d = 2 * n;
    let mut g = QMatrix::identity(d);
    for _ in 0..steps {
        let mut v: Vec<Rational> = (0..d).map(|_| q(rng.gen_range(-1..=1))).collect();
        if v.iter().all(|x| *x == q(0)) {
            v[rng.gen_range(0..d)] = q(1);
        }
        let c = q(if rng.gen_bool(0.5) { 1 } else { -1 });
        g = transvection(&v, &c).mul(&g).expect("square factors");
    }
    g
}

/// Graph of a random symmetric form, moved by a random symplectic matrix so
/// that the result can meet the vertical Lagrangian.
pub fn random_lagrangian<R: Rng>(rng: &mut R, n: usize, rotate_steps: usize) -> Result<LagrangianFrame> {
    let phi = random_symmetric(rng, n, 3);
    let frame = QMatrix::identity(n).vstack(&phi)?;
    let g = random_symplectic(rng, n, rotate_steps);
    LagrangianFrame::exact(g.mul(&frame)?)
}

/// Random tuple mixing generic entries, repeats and coordinate Lagrangians,
/// so that degenerate intersections are exercised.
pub fn random_tuple<R: Rng>(rng: &mut R, n: usize, r: usize) -> Result<Vec<LagrangianFrame>> {
    let mut out: Vec<LagrangianFrame> = Vec::with_capacity(r);
    for _ in 0..r {
        let roll: f64 = rng.gen();
        let l = if roll < 0.15 && !out.is_empty() {
            out[rng.gen_range(0..out.len())].clone()
        } else if roll < 0.25 {
            let pattern: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
            coordinate_lagrangian(&pattern)?
        } else {
            random_lagrangian(rng, n, 2)?
        };
        out.push(l);
    }
    Ok(out)
}
