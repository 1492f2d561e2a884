use std::collections::HashMap;

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{q, Rational};

/// Exponent vectors `α ∈ ℕⁿ` with `|α| = d`, lexicographically decreasing.
pub fn multi_indices(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, d: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=d).rev() {
            prefix.push(a);
            rec(n, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Monomial basis of `Sᵈ(ℝⁿ)` with position lookup.
#[derive(Clone, Debug)]
pub struct MultiIndexBasis {
    n: usize,
    degree: usize,
    list: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl MultiIndexBasis {
    pub fn new(n: usize, degree: usize) -> Self {
        let list = multi_indices(n, degree);
        let index = list.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();
        Self { n, degree, list, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn get(&self, i: usize) -> &[usize] {
        &self.list[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.list.iter()
    }

    pub fn position(&self, alpha: &[usize]) -> Option<usize> {
        self.index.get(alpha).copied()
    }
}

/// Element of `Sᵈ(ℝⁿ*) ⊗ ℝᵐ` in the monomial basis. Coefficient `(α, j)`
/// sits at `j·C(n+d−1, d) + pos(α)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTensor {
    n: usize,
    m: usize,
    degree: usize,
    coeffs: Vec<Rational>,
}

impl SymTensor {
    pub fn new(n: usize, m: usize, degree: usize, coeffs: Vec<Rational>) -> Result<Self> {
        let want = m * multi_indices(n, degree).len();
        if coeffs.len() != want {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients given, S^{degree} ⊗ ν has {want}",
                coeffs.len()
            )));
        }
        Ok(Self { n, m, degree, coeffs })
    }

    pub fn zeros(n: usize, m: usize, degree: usize) -> Self {
        let len = m * multi_indices(n, degree).len();
        Self { n, m, degree, coeffs: vec![Rational::zero(); len] }
    }

    pub fn unit(n: usize, m: usize, alpha: &[usize], j: usize) -> Result<Self> {
        let mut t = Self::zeros(n, m, alpha.iter().sum());
        t.set(alpha, j, Rational::one())?;
        Ok(t)
    }

    pub fn random<R: Rng>(rng: &mut R, n: usize, m: usize, degree: usize, bound: i64) -> Self {
        let mut t = Self::zeros(n, m, degree);
        for c in t.coeffs.iter_mut() {
            *c = q(rng.gen_range(-bound..=bound));
        }
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn slot(&self, alpha: &[usize], j: usize) -> Result<usize> {
        if alpha.len() != self.n || alpha.iter().sum::<usize>() != self.degree || j >= self.m {
            return Err(Error::OutOfRange(format!("index ({alpha:?}, {j}) outside S^{} ⊗ ν", self.degree)));
        }
        let basis = MultiIndexBasis::new(self.n, self.degree);
        Ok(j * basis.len() + basis.position(alpha).expect("valid multi-index"))
    }

    pub fn get(&self, alpha: &[usize], j: usize) -> Result<&Rational> {
        let s = self.slot(alpha, j)?;
        Ok(&self.coeffs[s])
    }

    pub fn set(&mut self, alpha: &[usize], j: usize, v: Rational) -> Result<()> {
        let s = self.slot(alpha, j)?;
        self.coeffs[s] = v;
        Ok(())
    }
}

/// Component `i` of `δt`: `(α, j) ↦ (αᵢ + 1)·t[α + eᵢ, j]`, for `i < n`.
pub fn delta_spencer(t: &SymTensor) -> Result<Vec<SymTensor>> {
    if t.degree == 0 {
        return Err(Error::Invalid("δ needs a tensor of degree at least 1".into()));
    }
    let src = MultiIndexBasis::new(t.n, t.degree);
    let dst = MultiIndexBasis::new(t.n, t.degree - 1);
    let mut out = vec![SymTensor::zeros(t.n, t.m, t.degree - 1); t.n];
    for (i, slot) in out.iter_mut().enumerate() {
        for j in 0..t.m {
            for (pos, alpha) in dst.iter().enumerate() {
                let mut up = alpha.clone();
                up[i] += 1;
                let c = &t.coeffs[j * src.len() + src.position(&up).expect("raised index")];
                slot.coeffs[j * dst.len() + pos] = c * q(up[i] as i64);
            }
        }
    }
    Ok(out)
}

/// `δ∘δ` in `Λ² ⊗ S^{d−2} ⊗ ν`, one tensor per pair `i < j` in lexicographic order.
pub fn delta_squared(t: &SymTensor) -> Result<Vec<SymTensor>> {
    if t.degree < 2 {
        return Err(Error::Invalid("δ∘δ needs a tensor of degree at least 2".into()));
    }
    let first = delta_spencer(t)?;
    let second: Vec<Vec<SymTensor>> = first.iter().map(delta_spencer).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for i in 0..t.n {
        for j in i + 1..t.n {
            let coeffs = second[j][i].coeffs.iter().zip(&second[i][j].coeffs).map(|(a, b)| a - b).collect();
            out.push(SymTensor::new(t.n, t.m, t.degree - 2, coeffs)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn multi_index_counts() {
        assert_eq!(multi_indices(3, 2).len(), 6);
        assert_eq!(multi_indices(2, 3), vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]);
        assert_eq!(multi_indices(0, 0), vec![Vec::<usize>::new()]);
        assert!(multi_indices(0, 2).is_empty());
    }

    #[test]
    fn delta_one_variable_is_derivative() {
        // x³ ↦ 3x²
        let t = SymTensor::unit(1, 1, &[3], 0).unwrap();
        let d = delta_spencer(&t).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].get(&[2], 0).unwrap(), &q(3));
    }

    #[test]
    fn delta_of_mixed_unit() {
        let t = SymTensor::unit(2, 1, &[1, 1], 0).unwrap();
        let d = delta_spencer(&t).unwrap();
        assert_eq!(d[0].get(&[0, 1], 0).unwrap(), &q(1));
        assert_eq!(d[1].get(&[1, 0], 0).unwrap(), &q(1));
        assert!(d.iter().all(|s| !s.is_zero()));
        assert!(delta_spencer(&SymTensor::zeros(2, 1, 0)).is_err());
    }

    #[test]
    fn slot_checks() {
        let mut t = SymTensor::zeros(2, 2, 2);
        assert!(t.set(&[1, 0], 0, q(1)).is_err());
        assert!(t.set(&[1, 1], 2, q(1)).is_err());
        assert!(SymTensor::new(2, 1, 2, vec![q(0); 4]).is_err());
    }

    proptest! {
        #[test]
        fn delta_squares_to_zero(seed in any::<u64>(), n in 1usize..=4, m in 1usize..=2, d in 2usize..=4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = SymTensor::random(&mut rng, n, m, d, 9);
            prop_assert!(delta_squared(&t).unwrap().iter().all(SymTensor::is_zero));
        }
    }
}
