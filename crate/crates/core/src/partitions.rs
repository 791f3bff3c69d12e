//! Integer partitions, Young-diagram predicates and statistics.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A weakly decreasing sequence of positive integers. Serialized as an integer array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

/// Basic statistics of a partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionStats {
    pub size: u32,
    pub length: usize,
    /// `n(λ) = Σ (i-1) λ_i`.
    pub n_stat: u64,
    /// `z_λ = Π i^{m_i} m_i!`.
    pub z: u128,
}

impl Partition {
    /// Validates weak decrease; trailing zeros are dropped.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::Domain(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-row partition `(r)` (empty for `r = 0`).
    pub fn row(r: u32) -> Self {
        if r == 0 {
            Self::empty()
        } else {
            Partition(vec![r])
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `λ_i` with 1-based `i`; zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Self {
        let w = self.0.first().copied().unwrap_or(0);
        Partition((1..=w).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// Multiplicity `m_i` of the part `i`.
    pub fn multiplicity(&self, i: u32) -> usize {
        self.0.iter().filter(|&&p| p == i).count()
    }

    pub fn n_stat(&self) -> u64 {
        self.0.iter().enumerate().map(|(i, &p)| i as u64 * p as u64).sum()
    }

    pub fn z(&self) -> u128 {
        let mut z: u128 = 1;
        let mut i = 0;
        while i < self.0.len() {
            let p = self.0[i];
            let mut m = 0u128;
            while i < self.0.len() && self.0[i] == p {
                m += 1;
                z *= p as u128 * m;
                i += 1;
            }
        }
        z
    }

    pub fn stats(&self) -> PartitionStats {
        PartitionStats { size: self.size(), length: self.len(), n_stat: self.n_stat(), z: self.z() }
    }

    /// `μ ⊂ λ` as diagrams.
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.len() <= self.len() && mu.0.iter().zip(&self.0).all(|(m, l)| m <= l)
    }

    /// Remove the first column: `(λ_1 - 1, ..., λ_ℓ - 1)`.
    pub fn remove_column(&self) -> Self {
        Partition(self.0.iter().filter(|&&p| p > 1).map(|p| p - 1).collect())
    }

    /// Drop the first part: `(λ_2, λ_3, ...)`.
    pub fn tail(&self) -> Self {
        Partition(self.0.iter().skip(1).copied().collect())
    }
}

/// `μ ≤ λ` in dominance order; an error unless `|μ| = |λ|`.
pub fn dominance_leq(mu: &Partition, lambda: &Partition) -> Result<bool> {
    if mu.size() != lambda.size() {
        return Err(Error::Domain(format!("dominance between {mu} and {lambda} of different sizes")));
    }
    let (mut sm, mut sl) = (0u32, 0u32);
    for i in 1..=mu.len().max(lambda.len()) {
        sm += mu.part(i);
        sl += lambda.part(i);
        if sm > sl {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `λ/μ` is a horizontal `r`-strip: `μ ⊂ λ`, `|λ| - |μ| = r`, at most one box per column.
pub fn is_horizontal_strip(lambda: &Partition, mu: &Partition, r: u32) -> bool {
    if !lambda.contains(mu) || lambda.size() != mu.size() + r {
        return false;
    }
    let (lc, mc) = (lambda.conjugate(), mu.conjugate());
    (1..=lc.len()).all(|i| lc.part(i) - mc.part(i) <= 1)
}

/// All partitions of `n` in reverse lexicographic order, `(n)` first.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

/// Partitions of size at most `n`, by size then reverse-lex.
pub fn partitions_up_to(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

/// All `μ ⊂ λ`.
pub fn subpartitions(lambda: &Partition) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(lam: &[u32], i: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        out.push(Partition(cur.clone()));
        if i >= lam.len() {
            return;
        }
        for p in 1..=lam[i].min(max) {
            cur.push(p);
            rec(lam, i + 1, p, cur, out);
            cur.pop();
        }
    }
    rec(&lambda.0, 0, u32::MAX, &mut cur, &mut out);
    out.sort_by(|a, b| a.size().cmp(&b.size()).then(b.cmp(a)));
    out
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Shorthand for tests and configs: `part(&[2, 1])`.
pub fn part(p: &[u32]) -> Partition {
    Partition::new(p.to_vec()).expect("valid partition")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugates() {
        assert_eq!(part(&[6, 4, 3, 1]).conjugate(), part(&[4, 3, 3, 2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(part(&[3]).conjugate(), part(&[1, 1, 1]));
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&part(&[1, 1, 1]), &part(&[3])).unwrap());
        assert!(!dominance_leq(&part(&[3]), &part(&[1, 1, 1])).unwrap());
        assert!(dominance_leq(&part(&[2, 2]), &part(&[3, 1])).unwrap());
        assert!(!dominance_leq(&part(&[3, 1]), &part(&[2, 2])).unwrap());
        assert!(dominance_leq(&part(&[2]), &part(&[1])).is_err());
    }

    #[test]
    fn strips() {
        assert!(is_horizontal_strip(&part(&[6, 4, 3, 1]), &part(&[5, 3, 1]), 5));
        assert!(is_horizontal_strip(&part(&[2, 1]), &part(&[2, 1]), 0));
        assert!(!is_horizontal_strip(&part(&[2, 2]), &part(&[1]), 3));
    }

    #[test]
    fn statistics() {
        let s = part(&[2, 1]).stats();
        assert_eq!((s.size, s.length, s.n_stat, s.z), (3, 2, 1, 2));
        let s = Partition::empty().stats();
        assert_eq!((s.size, s.length, s.n_stat, s.z), (0, 0, 0, 1));
        let s = part(&[1, 1, 1]).stats();
        assert_eq!((s.n_stat, s.z), (3, 6));
    }

    #[test]
    fn enumeration_order_and_counts() {
        let p4 = partitions_of(4);
        assert_eq!(p4, vec![part(&[4]), part(&[3, 1]), part(&[2, 2]), part(&[2, 1, 1]), part(&[1, 1, 1, 1])]);
        let counts: Vec<usize> = (0..9).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(subpartitions(&part(&[2, 1])).len(), 5);
    }

    #[test]
    fn serde_as_array() {
        let p = part(&[6, 4, 3, 1]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[6,4,3,1]");
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }
}
