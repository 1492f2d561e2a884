//! Witt classes over ℝ (signatures in ℤ) and ℂ (dimension parity), with the
//! fundamental-ideal filtration `Iᵏ = 2ᵏℤ ⊂ W(ℝ)`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::Serialize;

use crate::linalg::{sym_signature, SymmetricForm};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct WittReal(pub i64);

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct WittComplex(pub u8);

impl Add for WittReal {
    type Output = WittReal;
    fn add(self, o: WittReal) -> WittReal {
        WittReal(self.0 + o.0)
    }
}

impl Sub for WittReal {
    type Output = WittReal;
    fn sub(self, o: WittReal) -> WittReal {
        WittReal(self.0 - o.0)
    }
}

impl Neg for WittReal {
    type Output = WittReal;
    fn neg(self) -> WittReal {
        WittReal(-self.0)
    }
}

impl std::iter::Sum for WittReal {
    fn sum<I: Iterator<Item = WittReal>>(iter: I) -> WittReal {
        iter.fold(WittReal(0), Add::add)
    }
}

impl Add for WittComplex {
    type Output = WittComplex;
    fn add(self, o: WittComplex) -> WittComplex {
        WittComplex((self.0 + o.0) % 2)
    }
}

impl fmt::Display for WittReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for WittComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Signature `pos − neg`; the radical does not contribute.
pub fn witt_of_form_real(s: &SymmetricForm, tol: f64) -> WittReal {
    WittReal(sym_signature(s, tol).index())
}

/// Parity of the rank (the non-degenerate part) over ℂ.
pub fn witt_of_form_complex(s: &SymmetricForm, tol: f64) -> WittComplex {
    let sig = sym_signature(s, tol);
    WittComplex(((sig.pos + sig.neg) % 2) as u8)
}

/// `w ∈ Iᵏ`, i.e. `2ᵏ | w`. Powers beyond 62 only contain 0.
pub fn ideal_power_member_real(w: WittReal, k: u32) -> bool {
    if k > 62 {
        return w.0 == 0;
    }
    w.0 % (1i64 << k) == 0
}

/// Image in `I²/I³ ≅ ℤ₂` for classes in `I²`; `None` outside `I²`.
pub fn i2_mod_i3(w: WittReal) -> Option<u8> {
    ideal_power_member_real(w, 2).then(|| if ideal_power_member_real(w, 3) { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::QMatrix;
    use proptest::prelude::*;

    fn diag(v: &[i64]) -> SymmetricForm {
        let n = v.len();
        let mut m = QMatrix::zeros(n, n);
        for (i, &x) in v.iter().enumerate() {
            m.set(i, i, crate::linalg::q(x));
        }
        SymmetricForm::exact(m).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(witt_of_form_real(&diag(&[1, -1]), 0.0), WittReal(0));
        assert_eq!(witt_of_form_real(&diag(&[1, 1]), 0.0), WittReal(2));
        assert_eq!(witt_of_form_real(&SymmetricForm::empty(), 0.0), WittReal(0));
        assert_eq!(witt_of_form_complex(&diag(&[1, 1, 0]), 0.0), WittComplex(0));
        assert_eq!(witt_of_form_complex(&diag(&[1, -1, 3]), 0.0), WittComplex(1));
        assert!(ideal_power_member_real(WittReal(0), 40));
        assert!(ideal_power_member_real(WittReal(2), 1));
        assert!(!ideal_power_member_real(WittReal(2), 2));
        assert!(ideal_power_member_real(WittReal(4), 2));
        assert_eq!(i2_mod_i3(WittReal(4)), Some(1));
        assert_eq!(i2_mod_i3(WittReal(8)), Some(0));
        assert_eq!(i2_mod_i3(WittReal(2)), None);
    }

    #[test]
    fn filtration_is_decreasing() {
        for w in -16..=16 {
            for k in 0..4 {
                if ideal_power_member_real(WittReal(w), k + 1) {
                    assert!(ideal_power_member_real(WittReal(w), k));
                }
            }
        }
    }

    fn sym(n: usize) -> impl Strategy<Value = SymmetricForm> {
        prop::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
            let m = QMatrix::from_i64(n, n, &v).unwrap();
            SymmetricForm::exact(m.add(&m.transpose()).unwrap()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn additive_under_direct_sum(a in (0usize..4).prop_flat_map(sym), b in (0usize..4).prop_flat_map(sym)) {
            let s = a.direct_sum(&b).unwrap();
            prop_assert_eq!(witt_of_form_real(&s, 0.0), witt_of_form_real(&a, 0.0) + witt_of_form_real(&b, 0.0));
            prop_assert_eq!(witt_of_form_real(&a.neg(), 0.0), -witt_of_form_real(&a, 0.0));
        }
    }
}
