//! The complex `0 → S^k⊗ν → Λ¹⊗S^{k−1}⊗ν → ⋯ → Λ^J⊗S^{k−J}⊗ν → 0`,
//! `J = min(n, k)`, with `δ(dx^I ⊗ p) = Σᵢ dxⁱ∧dx^I ⊗ ∂ᵢp`.

use serde::Serialize;

use super::tensor::MultiIndexBasis;
use super::JetSignature;
use crate::error::Result;
use crate::linalg::{exact, q, QMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpencerReport {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub node_dims: Vec<usize>,
    pub map_ranks: Vec<usize>,
    pub composition_zero: bool,
    pub injective_first: bool,
    pub surjective_last: bool,
    /// Exactness at nodes `1..J`, in order.
    pub interior_exact: Vec<bool>,
    pub exact: bool,
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

struct Node {
    forms: Vec<Vec<usize>>,
    sym: MultiIndexBasis,
    m: usize,
}

impl Node {
    fn new(sig: &JetSignature, j: usize) -> Self {
        Self { forms: subsets(sig.n, j), sym: MultiIndexBasis::new(sig.n, sig.k - j), m: sig.m }
    }

    fn dim(&self) -> usize {
        self.forms.len() * self.sym.len() * self.m
    }

    fn index(&self, form: usize, sym: usize, a: usize) -> usize {
        (form * self.sym.len() + sym) * self.m + a
    }
}

/// Matrices of `δ: V_j → V_{j+1}` for `j = 0..J`.
pub fn spencer_matrices(sig: &JetSignature) -> Result<Vec<QMatrix>> {
    sig.check_size()?;
    let top = sig.n.min(sig.k);
    let nodes: Vec<Node> = (0..=top).map(|j| Node::new(sig, j)).collect();
    let mut maps = Vec::with_capacity(top);
    for j in 0..top {
        let (src, dst) = (&nodes[j], &nodes[j + 1]);
        let mut d = QMatrix::zeros(dst.dim(), src.dim());
        for (fi, form) in src.forms.iter().enumerate() {
            for (si, beta) in src.sym.iter().enumerate() {
                for i in (0..sig.n).filter(|i| beta[*i] > 0 && !form.contains(i)) {
                    let below = form.iter().filter(|&&l| l < i).count();
                    let sign = if below % 2 == 0 { 1 } else { -1 };
                    let mut wider = form.clone();
                    wider.insert(below, i);
                    let mut lower = beta.clone();
                    lower[i] -= 1;
                    let tf = dst.forms.iter().position(|f| *f == wider).expect("subset present");
                    let ts = dst.sym.position(&lower).expect("lowered index");
                    for a in 0..sig.m {
                        let (r, c) = (dst.index(tf, ts, a), src.index(fi, si, a));
                        d.set(r, c, d.get(r, c) + q(sign * beta[i] as i64));
                    }
                }
            }
        }
        maps.push(d);
    }
    Ok(maps)
}

/// Ranks of every stage and exactness of the full-symbol complex.
pub fn spencer_sequence_audit(sig: &JetSignature) -> Result<SpencerReport> {
    let maps = spencer_matrices(sig)?;
    let top = sig.n.min(sig.k);
    let node_dims: Vec<usize> = (0..=top).map(|j| Node::new(sig, j).dim()).collect();
    let map_ranks: Vec<usize> = maps.iter().map(exact::rank).collect();
    let composition_zero = maps.windows(2).all(|w| w[1].mul(&w[0]).map(|c| c.is_zero()).unwrap_or(false));
    let injective_first = map_ranks.first().map_or(true, |&r| r == node_dims[0]);
    let surjective_last = map_ranks.last().map_or(true, |&r| r == node_dims[top]);
    let interior_exact: Vec<bool> =
        (1..top).map(|j| map_ranks[j - 1] + map_ranks[j] == node_dims[j]).collect();
    let exact =
        composition_zero && injective_first && surjective_last && interior_exact.iter().all(|&e| e);
    Ok(SpencerReport {
        n: sig.n,
        m: sig.m,
        k: sig.k,
        node_dims,
        map_ranks,
        composition_zero,
        injective_first,
        surjective_last,
        interior_exact,
        exact,
    })
}
