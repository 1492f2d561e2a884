//! Rank arithmetic for bordism groups of (n−1)-manifolds bounding Lagrangian
//! or Legendrian n-manifolds.
//!
//! The weak group is `⊕_{r+s=n−1} H_r(W; ℤ₂) ⊗ Ω_s` with `Ω_s` the unoriented
//! bordism groups; every group in scope is elementary abelian, so only the
//! `ℤ₂`-rank is tracked.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// `dim H_r(W; ℤ₂)` for `r = 0, 1, …`; degrees past the end are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiVector(Vec<u64>);

impl BettiVector {
    pub fn new(b: Vec<u64>) -> Result<Self> {
        if b.is_empty() {
            return Err(Error::Invalid("Betti vector is empty".into()));
        }
        Ok(Self(b))
    }

    pub fn get(&self, r: usize) -> u64 {
        self.0.get(r).copied().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.0.len().max(other.0.len());
        Self((0..len).map(|r| self.get(r) + other.get(r)).collect())
    }
}

impl FromStr for BettiVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Result<Vec<u64>> = s
            .split(',')
            .map(|p| p.trim().parse::<u64>().map_err(|e| Error::Parse(format!("Betti number {p:?}: {e}"))))
            .collect();
        Self::new(parts?)
    }
}

const BUILTIN: [(usize, u64); 4] = [(0, 1), (1, 0), (2, 1), (3, 0)];

/// `ℤ₂`-ranks of `Ω_s`: built in for `s ≤ 3`, user-supplied beyond.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UnorientedBordismTable {
    extra: BTreeMap<usize, u64>,
}

impl UnorientedBordismTable {
    pub fn builtin() -> Self {
        Self::default()
    }

    /// Adds entries for `s > 3`. Entries that restate a built-in value are
    /// accepted; ones that contradict it are refused.
    pub fn extend(&mut self, entries: impl IntoIterator<Item = (usize, u64)>) -> Result<()> {
        for (s, r) in entries {
            if let Some(&(_, b)) = BUILTIN.iter().find(|(d, _)| *d == s) {
                if b != r {
                    return Err(Error::Invalid(format!("Ω_{s} is built in with rank {b}, not {r}")));
                }
                continue;
            }
            self.extra.insert(s, r);
        }
        Ok(())
    }

    pub fn rank(&self, s: usize) -> Result<u64> {
        BUILTIN
            .iter()
            .find(|(d, _)| *d == s)
            .map(|&(_, r)| r)
            .or_else(|| self.extra.get(&s).copied())
            .ok_or(Error::MissingTableEntry(s))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BordismLabel {
    Lagrangian,
    Legendrian,
}

impl FromStr for BordismLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lagrangian" => Ok(Self::Lagrangian),
            "legendrian" => Ok(Self::Legendrian),
            _ => Err(Error::Parse(format!("unknown label {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakBordismReport {
    pub label: BordismLabel,
    pub n: usize,
    pub rank: u64,
    pub group: String,
    pub derivation: Vec<String>,
    /// Hypotheses that cannot be checked from Betti numbers.
    pub unverified_assumptions: Vec<String>,
}

fn z2_power(rank: u64) -> String {
    match rank {
        0 => "0".into(),
        1 => "Z2".into(),
        r => format!("(Z2)^{r}"),
    }
}

/// `rank = Σ_{r+s=n−1} b_r · rank Ω_s`. Table entries are only needed where `b_r > 0`.
pub fn weak_bordism_group(
    betti: &BettiVector,
    n: usize,
    table: &UnorientedBordismTable,
    label: BordismLabel,
) -> Result<WeakBordismReport> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    let mut rank = 0u64;
    let mut derivation = Vec::with_capacity(n);
    for r in 0..n {
        let s = n - 1 - r;
        let b = betti.get(r);
        if b == 0 {
            derivation.push(format!("H_{r} ⊗ Ω_{s} = 0 (b_{r} = 0)"));
            continue;
        }
        let o = table.rank(s)?;
        let term = b.checked_mul(o).ok_or_else(|| Error::OutOfRange("rank overflow".into()))?;
        rank = rank.checked_add(term).ok_or_else(|| Error::OutOfRange("rank overflow".into()))?;
        derivation.push(format!("H_{r} ⊗ Ω_{s} = {} ⊗ {} = {}", z2_power(b), z2_power(o), z2_power(term)));
    }
    let space = match label {
        BordismLabel::Lagrangian => "equation of Lagrangian n-manifolds",
        BordismLabel::Legendrian => "equation of Legendrian n-manifolds",
    };
    Ok(WeakBordismReport {
        label,
        n,
        rank,
        group: z2_power(rank),
        derivation,
        unverified_assumptions: vec![format!("the {space} has dimension at least 2n + 1")],
    })
}

/// Whether `bor = closed + cyc`, the rank form of the split sequence.
pub fn split_check(closed_rank: u64, bor_rank: u64, cyc_rank: u64) -> bool {
    closed_rank.checked_add(cyc_rank) == Some(bor_rank)
}

/// Finitely generated abelian group written as a sum of `Z`, `Q`, `R` or
/// cyclic `Zm` summands with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(into = "String")]
pub struct GroupDescriptor {
    summands: Vec<(String, u32)>,
}

impl GroupDescriptor {
    pub fn trivial() -> Self {
        Self { summands: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn z2_rank(&self) -> Option<u64> {
        match self.summands.as_slice() {
            [] => Some(0),
            [(b, k)] if b == "Z2" => Some(*k as u64),
            _ => None,
        }
    }
}

fn canonical_base(b: &str) -> Result<String> {
    let t = b.trim().replace('ℤ', "Z").replace('_', "");
    let t = t.replace('₂', "2");
    match t.as_str() {
        "Z" | "Q" | "R" => Ok(t),
        _ => {
            let m = t
                .strip_prefix('Z')
                .and_then(|d| d.parse::<u64>().ok())
                .ok_or_else(|| Error::Parse(format!("unknown group {b:?}")))?;
            match m {
                0 => Ok("Z".into()),
                1 => Ok(String::new()),
                _ => Ok(format!("Z{m}")),
            }
        }
    }
}

impl FromStr for GroupDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut summands: Vec<(String, u32)> = Vec::new();
        for term in s.split(['+', '⊕']) {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty summand in {s:?}")));
            }
            if term == "0" {
                continue;
            }
            let body = term.trim_start_matches('(');
            let (base, exp) = match body.split_once('^') {
                Some((b, e)) => {
                    let e: u32 = e.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in {term:?}")))?;
                    (b.trim_end_matches(')'), e)
                }
                None => (body.trim_end_matches(')'), 1),
            };
            let base = canonical_base(base)?;
            if base.is_empty() || exp == 0 {
                continue;
            }
            match summands.iter_mut().find(|(b, _)| *b == base) {
                Some((_, k)) => *k = k.checked_add(exp).ok_or_else(|| Error::Parse("exponent overflow".into()))?,
                None => summands.push((base, exp)),
            }
        }
        summands.sort();
        Ok(Self { summands })
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|(b, k)| if *k == 1 { b.clone() } else { format!("{b}^{k}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl From<GroupDescriptor> for String {
    fn from(g: GroupDescriptor) -> String {
        g.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GSingularReport {
    pub degree: usize,
    pub group: GroupDescriptor,
    pub chain: Vec<String>,
}

/// `G`-singular bordism in degree `p`: the bar homology of the equation,
/// which its strong retract identifies with `H_p(W; G)`.
pub fn g_singular_bordism(homology: &[GroupDescriptor], degree: usize) -> Result<GSingularReport> {
    let group = homology.get(degree).cloned().ok_or(Error::DegreeBeyondHomology(degree))?;
    let chain = vec![
        format!("G-singular bordism in degree {degree} ≅ bar homology of the equation in degree {degree}"),
        "the first prolongation is a strong retract of the jet space, which retracts onto W".into(),
        format!("≅ H_{degree}(W; G) = {group}"),
    ];
    Ok(GSingularReport { degree, group, chain })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn weak(b: &[u64], n: usize) -> Result<u64> {
        weak_bordism_group(&BettiVector::new(b.to_vec()).unwrap(), n, &UnorientedBordismTable::builtin(), BordismLabel::Lagrangian)
            .map(|r| r.rank)
    }

    #[test]
    fn table_values() {
        assert_eq!(weak(&[1, 0, 0], 3).unwrap(), 1);
        assert_eq!(weak(&[1, 0, 0], 4).unwrap(), 0);
        assert_eq!(weak(&[1, 1], 3).unwrap(), 1);
        let expected = [1, 0, 1, 0];
        for n in 1..=4 {
            assert_eq!(weak(&[1], n).unwrap(), expected[n - 1]);
        }
        assert_eq!(weak(&[1], 5), Err(Error::MissingTableEntry(4)));
        // b_0 = 0 never needs Ω_4
        assert_eq!(weak(&[0, 1], 5).unwrap(), 0);
    }

    #[test]
    fn extended_table() {
        let mut t = UnorientedBordismTable::builtin();
        t.extend([(4, 2), (2, 1)]).unwrap();
        assert!(t.extend([(1, 1)]).is_err());
        let r = weak_bordism_group(&BettiVector::new(vec![1]).unwrap(), 5, &t, BordismLabel::Legendrian).unwrap();
        assert_eq!((r.rank, r.group.as_str()), (2, "(Z2)^2"));
        assert_eq!(r.unverified_assumptions.len(), 1);
    }

    #[test]
    fn labels_share_arithmetic() {
        let b = BettiVector::new(vec![1, 2, 1]).unwrap();
        let t = UnorientedBordismTable::builtin();
        let a = weak_bordism_group(&b, 3, &t, BordismLabel::Lagrangian).unwrap();
        let l = weak_bordism_group(&b, 3, &t, BordismLabel::Legendrian).unwrap();
        assert_eq!((a.rank, a.derivation), (l.rank, l.derivation));
    }

    #[test]
    fn split_examples() {
        assert!(split_check(0, 5, 5));
        assert!(split_check(2, 7, 5));
        assert!(!split_check(1, 5, 5));
    }

    #[test]
    fn group_descriptors() {
        let g: GroupDescriptor = "Z2^2".parse().unwrap();
        assert_eq!(g.z2_rank(), Some(2));
        assert_eq!("0".parse::<GroupDescriptor>().unwrap(), GroupDescriptor::trivial());
        assert_eq!("Z2 + Z_2 + Z".parse::<GroupDescriptor>().unwrap().to_string(), "Z + Z2^2");
        assert_eq!("(ℤ₂)^3".parse::<GroupDescriptor>().unwrap().to_string(), "Z2^3");
        assert!("Zq".parse::<GroupDescriptor>().is_err());
        assert!("Z2 +".parse::<GroupDescriptor>().is_err());
    }

    #[test]
    fn g_singular_lookup() {
        let contractible: Vec<GroupDescriptor> = ["Z2", "0", "0"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(g_singular_bordism(&contractible, 0).unwrap().group.to_string(), "Z2");
        assert!(g_singular_bordism(&contractible, 2).unwrap().group.is_trivial());
        let w: Vec<GroupDescriptor> = ["Z2", "0", "Z2^2"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(g_singular_bordism(&w, 2).unwrap().group.z2_rank(), Some(2));
        assert_eq!(g_singular_bordism(&w, 3), Err(Error::DegreeBeyondHomology(3)));
    }

    proptest! {
        #[test]
        fn additive_in_betti(a in prop::collection::vec(0u64..50, 1..6), b in prop::collection::vec(0u64..50, 1..6), n in 1usize..=4) {
            let (ba, bb) = (BettiVector::new(a).unwrap(), BettiVector::new(b).unwrap());
            let t = UnorientedBordismTable::builtin();
            let rank = |x: &BettiVector| weak_bordism_group(x, n, &t, BordismLabel::Lagrangian).unwrap().rank;
            prop_assert_eq!(rank(&ba.add(&bb)), rank(&ba) + rank(&bb));
        }
    }
}
