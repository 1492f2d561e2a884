//! The group `Mp₁(V) = W(ℝ) × Sp(V)` with product
//! `(q, g)·(q′, g′) = (q + q′ + τ(L, gL, gg′L), gg′)` for a fixed base `L`.

use std::sync::Arc;

use rand::Rng;

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::linalg::{exact, DynMatrix, QMatrix};
use crate::maslov::{kashiwara_index, leray_m, line_of_lift, LagrangianTuple};
use crate::symplectic::random::random_symplectic;
use crate::symplectic::{is_symplectic, LagrangianFrame, SymplecticSpace};
use crate::witt::{i2_mod_i3, ideal_power_member_real, WittReal};

/// Shared data of one group: the space and the base Lagrangian.
#[derive(Clone, Debug, PartialEq)]
pub struct Mp1Context {
    base: LagrangianFrame,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mp1Element {
    context: Arc<Mp1Context>,
    pub w: WittReal,
    g: QMatrix,
}

impl Mp1Context {
    pub fn new(base: LagrangianFrame) -> Result<Arc<Self>> {
        base.exact_frame()?;
        Ok(Arc::new(Self { base }))
    }

    pub fn space(&self) -> &SymplecticSpace {
        self.base.space()
    }

    pub fn base(&self) -> &LagrangianFrame {
        &self.base
    }

    pub fn element(self: &Arc<Self>, w: WittReal, g: QMatrix) -> Result<Mp1Element> {
        if !is_symplectic(self.space(), &g)? {
            return Err(Error::NotSymplectic);
        }
        Ok(Mp1Element { context: Arc::clone(self), w, g })
    }

    pub fn identity(self: &Arc<Self>) -> Mp1Element {
        let d = self.space().dim();
        Mp1Element { context: Arc::clone(self), w: WittReal(0), g: QMatrix::identity(d) }
    }

    fn moved(&self, g: &QMatrix) -> Result<LagrangianFrame> {
        self.base.transform(&DynMatrix::Exact(g.clone()))
    }

    /// `τ(L, g₁L, g₂L)`.
    fn tau(&self, g1: &QMatrix, g2: &QMatrix) -> Result<WittReal> {
        let t = LagrangianTuple::new(vec![self.base.clone(), self.moved(g1)?, self.moved(g2)?])?;
        kashiwara_index(&t)
    }

    /// Element with a random product of transvections and a small central part.
    pub fn random_element<R: Rng>(self: &Arc<Self>, rng: &mut R) -> Mp1Element {
        let steps = rng.gen_range(1..=3);
        let g = random_symplectic(rng, self.space().n(), steps);
        Mp1Element { context: Arc::clone(self), w: WittReal(rng.gen_range(-5..=5)), g }
    }
}

impl Mp1Element {
    pub fn g(&self) -> &QMatrix {
        &self.g
    }

    pub fn context(&self) -> &Arc<Mp1Context> {
        &self.context
    }
}

fn same_context(a: &Mp1Element, b: &Mp1Element) -> Result<()> {
    if Arc::ptr_eq(&a.context, &b.context) || a.context == b.context {
        Ok(())
    } else {
        Err(Error::ContextMismatch)
    }
}

pub fn mp1_mul(a: &Mp1Element, b: &Mp1Element) -> Result<Mp1Element> {
    same_context(a, b)?;
    let gg = a.g.mul(&b.g)?;
    let tau = a.context.tau(&a.g, &gg)?;
    Ok(Mp1Element { context: Arc::clone(&a.context), w: a.w + b.w + tau, g: gg })
}

/// `(−w − τ(L, gL, L), g⁻¹)`.
pub fn mp1_inverse(a: &Mp1Element) -> Result<Mp1Element> {
    let ginv = exact::inverse(&a.g)?;
    let d = a.g.rows();
    let tau = a.context.tau(&a.g, &QMatrix::identity(d))?;
    Ok(Mp1Element { context: Arc::clone(&a.context), w: -a.w - tau, g: ginv })
}

/// Whether `(w, id)` commutes with `a`.
pub fn mp1_central_check(w: WittReal, a: &Mp1Element) -> Result<bool> {
    let c = a.context.element(w, QMatrix::identity(a.g.rows()))?;
    Ok(mp1_mul(&c, a)? == mp1_mul(a, &c)?)
}

/// Lift of `gL` in `[θ̃, θ̃ + π)` for a lift `θ̃` of the base line (`n = 1`).
pub fn default_image_lift(a: &Mp1Element, base_lift: &Angle) -> Result<Angle> {
    require_line(a)?;
    let image = a.context.moved(&a.g)?;
    if image.same_subspace(&a.context.base)? {
        return Ok(base_lift.clone());
    }
    let f = image.exact_frame()?.to_f64();
    let phi = f.get(1, 0).atan2(*f.get(0, 0));
    let base = base_lift.radians();
    let offset = (phi - base).rem_euclid(std::f64::consts::PI);
    Ok(Angle::Radians(base + offset))
}

fn require_line(a: &Mp1Element) -> Result<()> {
    if a.context.space().n() != 1 {
        return Err(Error::Invalid("Leray lifts exist only for n = 1".into()));
    }
    Ok(())
}

/// `Mp₂` membership for `n = 1`: `w − m(gL̃, L̃) ∈ I² = 4ℤ`, with caller-chosen
/// lifts of `L` and `gL`.
pub fn mp2_member(a: &Mp1Element, base_lift: &Angle, image_lift: &Angle) -> Result<bool> {
    require_line(a)?;
    if !line_of_lift(base_lift)?.same_subspace(&a.context.base)? {
        return Err(Error::Invalid(format!("{base_lift} does not lift the base line")));
    }
    let image = a.context.moved(&a.g)?;
    let lifted = line_of_lift(image_lift)?;
    let close = match (lifted.same_subspace(&image)?, image_lift) {
        (true, _) => true,
        (false, Angle::Radians(_)) => {
            let f = lifted.exact_frame()?.to_f64().hstack(&image.exact_frame()?.to_f64())?;
            crate::linalg::approx::rank(&f, 1e-9) == 1
        }
        (false, Angle::PiMultiple(_)) => false,
    };
    if !close {
        return Err(Error::Invalid(format!("{image_lift} does not lift gL")));
    }
    let m = leray_m(image_lift, base_lift);
    Ok(ideal_power_member_real(WittReal(a.w.0 - m), 2))
}

/// Class of `w` in `I²/I³ ≅ ℤ₂`, or `None` when `w ∉ I²`.
pub fn mp_class(w: WittReal) -> Option<u8> {
    i2_mod_i3(w)
}
