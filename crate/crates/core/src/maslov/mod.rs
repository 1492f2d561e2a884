//! Maslov indices of Lagrangian tuples: Kashiwara's chain-complex index,
//! Arnold's angle formulas, the Wall invariant and the Leray function.

mod arnold;
mod kashiwara;
mod leray;

pub use arnold::{
    arnold_index_pair, arnold_index_single, arnold_index_triple, arnold_pair_angles,
    component_angles,
};
pub use kashiwara::{
    boundary_image, kashiwara_index, kashiwara_space, maslov_form, tuple_reduce, wall_invariant,
    wall_space, QuadraticSpace,
};
pub use leray::{leray_m, leray_sum, line_of_lift};

use crate::error::{Error, Result};
use crate::symplectic::{LagrangianFrame, SymplecticSpace};

/// Ordered tuple `(L₁, …, L_r)`, `r ≥ 2`, of Lagrangians in one space.
/// Indices are cyclic.
#[derive(Clone, Debug, PartialEq)]
pub struct LagrangianTuple {
    entries: Vec<LagrangianFrame>,
}

impl LagrangianTuple {
    pub fn new(entries: Vec<LagrangianFrame>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::Invalid("a tuple needs at least two Lagrangians".into()));
        }
        let space = entries[0].space();
        if entries.iter().any(|l| l.space() != space) {
            return Err(Error::Invalid("tuple entries live in different spaces".into()));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[LagrangianFrame] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn space(&self) -> &SymplecticSpace {
        self.entries[0].space()
    }

    /// `(L_r, L₁, …, L_{r−1})`.
    pub fn rotated(&self) -> Self {
        let mut e = self.entries.clone();
        e.rotate_right(1);
        Self { entries: e }
    }

    pub fn reversed(&self) -> Self {
        let mut e = self.entries.clone();
        e.reverse();
        Self { entries: e }
    }
}
