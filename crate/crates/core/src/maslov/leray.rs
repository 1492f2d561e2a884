//! Leray function on lifts of lines (`n = 1`).
//!
//! `m(a, b) = −2⌊(a − b)/π⌋ − 1` when `a − b ∉ πℤ` and `m(a, b) = −2(a − b)/π`
//! otherwise. Cyclic sums of `m` over lifts recover the Kashiwara index of
//! the projected lines.

use crate::angle::Angle;
use crate::error::Result;
use crate::symplectic::LagrangianFrame;
use crate::linalg::QMatrix;

pub fn leray_m(a: &Angle, b: &Angle) -> i64 {
    let d = Angle::diff_over_pi(a, b);
    match d.as_integer() {
        Some(k) => -2 * k,
        None => -2 * d.floor() - 1,
    }
}

/// `Σᵢ m(θ̃ᵢ, θ̃ᵢ₊₁)` with cyclic indexing.
pub fn leray_sum(lifts: &[Angle]) -> i64 {
    let r = lifts.len();
    (0..r).map(|i| leray_m(&lifts[i], &lifts[(i + 1) % r])).sum()
}

/// The line `L(θ̃ mod π)` as an exact frame.
pub fn line_of_lift(a: &Angle) -> Result<LagrangianFrame> {
    let (c, s) = a.line_direction();
    LagrangianFrame::exact(QMatrix::new(2, 1, vec![c, s])?)
}
