//! Jet-space dimension calculus, the δ-Spencer complex, the metasymplectic
//! model fiber and symbol audits of the Lagrangian and Legendrian PDEs.
//!
//! Everything here is exact. A point of `J^k_n(W)` with `dim W = n + m` has
//! base coordinates `x¹…xⁿ` and, at each order `d ≤ k`, symbol coordinates
//! indexed by `(α, j)` with `|α| = d` and `j < m`.

mod meta;
mod pde;
mod spencer;
mod tensor;

pub use meta::{
    max_isotropic, max_isotropic_dim, meta_orthogonal, metasymplectic_eval, orthogonal_laws,
    singularity_condition, CovectorSlot, IntegralPlaneModel, ModelFiber, OrthogonalLaws,
};
pub use pde::{
    lagrangian_closed_forms, lagrangian_pde_dims, legendrian_closed_forms, legendrian_pde_dims,
    LagrangianPdeReport, LegendrianPdeReport, LinearizationSample, PdeDims,
};
pub use spencer::{spencer_matrices, spencer_sequence_audit, SpencerReport};
pub use tensor::{delta_spencer, delta_squared, multi_indices, MultiIndexBasis, SymTensor};

use serde::Serialize;

use crate::error::{Error, Result};

/// Model fibers with more than this many `n·m·C(n+k−1, k)` coefficients are refused.
pub const SIZE_GUARD: usize = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct JetSignature {
    pub n: usize,
    pub m: usize,
    pub k: usize,
}

impl JetSignature {
    pub fn new(n: usize, m: usize, k: usize) -> Result<Self> {
        if n == 0 || m == 0 || k == 0 {
            return Err(Error::OutOfRange(format!("jet signature ({n}, {m}, {k}) must be positive")));
        }
        let sig = Self { n, m, k };
        if checked_binomial(n + k, k).and_then(|b| b.checked_mul(m)).and_then(|v| v.checked_add(n)).is_none() {
            return Err(Error::OutOfRange(format!("jet space of signature ({n}, {m}, {k}) is too large")));
        }
        Ok(sig)
    }

    pub fn check_size(&self) -> Result<()> {
        let coeffs = self.n.saturating_mul(symbol_layer_dim(self));
        if coeffs > SIZE_GUARD {
            return Err(Error::SizeGuard(format!(
                "{coeffs} coefficients for (n, m, k) = ({}, {}, {}) exceed {SIZE_GUARD}",
                self.n, self.m, self.k
            )));
        }
        Ok(())
    }
}

fn checked_binomial(n: usize, k: usize) -> Option<usize> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    usize::try_from(acc).ok()
}

/// `C(n, k)`, saturating at `usize::MAX`.
pub fn binomial(n: usize, k: usize) -> usize {
    checked_binomial(n, k).unwrap_or(usize::MAX)
}

/// `n + m·C(n+k, k)`: base coordinates plus all symbol layers of order `0..=k`.
pub fn jet_dim(sig: &JetSignature) -> usize {
    sig.n + sig.m * binomial(sig.n + sig.k, sig.k)
}

/// `m·C(n+k−1, k) = dim S^k(T*) ⊗ ν`.
pub fn symbol_layer_dim(sig: &JetSignature) -> usize {
    sig.m.saturating_mul(binomial(sig.n + sig.k - 1, sig.k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(n: usize, m: usize, k: usize) -> JetSignature {
        JetSignature::new(n, m, k).unwrap()
    }

    #[test]
    fn dims() {
        assert_eq!(jet_dim(&sig(1, 1, 1)), 3);
        assert_eq!(jet_dim(&sig(2, 2, 2)), 14);
        for n in 1..6 {
            assert_eq!(jet_dim(&sig(n, n + 1, 1)), (n + 1) * (n + 1) + n);
        }
        assert_eq!(symbol_layer_dim(&sig(2, 1, 2)), 3);
        assert_eq!(symbol_layer_dim(&sig(1, 1, 7)), 1);
        assert_eq!(symbol_layer_dim(&sig(3, 2, 1)), 6);
    }

    #[test]
    fn signature_validation() {
        assert!(JetSignature::new(0, 1, 1).is_err());
        assert!(JetSignature::new(1, 1, 0).is_err());
        assert!(JetSignature::new(200, 200, 200).is_err());
        assert!(matches!(sig(10, 2, 5).check_size(), Err(Error::SizeGuard(_))));
        assert!(sig(4, 2, 3).check_size().is_ok());
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 5), 0);
    }
}
