//! Partitions and Young diagram statistics.
//!
//! Boxes are pairs `(i, j)` with `1 <= i <= lambda_j`: `j` is the row, `i`
//! the position inside the row.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("box ({0}, {1}) is outside the diagram")]
    BoxOutsideDiagram(u32, u32),
    #[error("parts must be positive and weakly decreasing")]
    NotAPartition,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
    conjugate: Vec<u32>,
}

/// Multiplicity data of `1^{r_1} 2^{r_2} ... t^{r_t}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockData {
    /// `r_i` for `i = 1..=t`, stored at index `i - 1`.
    pub multiplicities: Vec<u32>,
    /// `r_{<i}` for `i = 1..=t+1`, stored at index `i - 1`.
    pub prefix: Vec<u32>,
    /// `b(m)` for `m = 1..=n`, stored at index `m - 1`.
    pub block: Vec<u32>,
}

impl BlockData {
    pub fn n(&self) -> usize {
        self.block.len()
    }
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self, PartitionError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotAPartition);
        }
        let conjugate = conjugate_parts(&parts);
        Ok(Partition { parts, conjugate })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new(), conjugate: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn conjugate_parts(&self) -> &[u32] {
        &self.conjugate
    }

    pub fn conjugate(&self) -> Partition {
        Partition { parts: self.conjugate.clone(), conjugate: self.parts.clone() }
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// All boxes `(i, j)` with `1 <= j <= len`, `1 <= i <= lambda_j`.
    pub fn boxes(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(j, &lj)| (1..=lj).map(move |i| (i, j as u32 + 1)))
    }

    /// Arm and leg of the box `(i, j)`.
    pub fn arm_leg(&self, i: u32, j: u32) -> Result<(u32, u32), PartitionError> {
        if j == 0 || i == 0 || j as usize > self.parts.len() || i > self.parts[j as usize - 1] {
            return Err(PartitionError::BoxOutsideDiagram(i, j));
        }
        let arm = self.parts[j as usize - 1] - i;
        let leg = self.conjugate[i as usize - 1] - j;
        Ok((arm, leg))
    }

    /// `<lambda, lambda> = sum_i (lambda'_i)^2`.
    pub fn pairing(&self) -> u64 {
        self.conjugate.iter().map(|&c| (c as u64) * (c as u64)).sum()
    }

    pub fn block_data(&self) -> BlockData {
        let t = self.parts.first().copied().unwrap_or(0) as usize;
        let mut multiplicities = vec![0u32; t];
        for &p in &self.parts {
            multiplicities[p as usize - 1] += 1;
        }
        let mut prefix = Vec::with_capacity(t + 1);
        let mut acc = 0;
        for &r in &multiplicities {
            prefix.push(acc);
            acc += r;
        }
        prefix.push(acc);
        let mut block = Vec::with_capacity(acc as usize);
        for (i, &r) in multiplicities.iter().enumerate() {
            block.extend(std::iter::repeat(i as u32 + 1).take(r as usize));
        }
        BlockData { multiplicities, prefix, block }
    }
}

fn conjugate_parts(parts: &[u32]) -> Vec<u32> {
    let t = parts.first().copied().unwrap_or(0);
    (1..=t).map(|i| parts.iter().filter(|&&p| p >= i).count() as u32).collect()
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of exactly `n`, in reverse lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition::new(cur.clone()).unwrap());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions with `|lambda| <= n_max`, the empty one first.
pub fn enumerate_partitions(n_max: u32) -> Vec<Partition> {
    (0..=n_max).flat_map(partitions_of).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(3), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        assert_eq!(partitions_of(5).len(), 7);
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        let all = enumerate_partitions(6);
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
    }

    #[test]
    fn arm_leg_examples() {
        assert_eq!(p(&[2, 1]).arm_leg(1, 1), Ok((1, 1)));
        assert_eq!(p(&[3]).arm_leg(1, 1), Ok((2, 0)));
        let lam = p(&[4, 2, 2, 1]);
        // Corners have neither arm nor leg.
        for (i, j) in [(4, 1), (2, 3), (1, 4)] {
            assert_eq!(lam.arm_leg(i, j), Ok((0, 0)));
        }
        assert_eq!(lam.arm_leg(3, 2), Err(PartitionError::BoxOutsideDiagram(3, 2)));
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(p(&[2, 1]).pairing(), 5);
        assert_eq!(p(&[3]).pairing(), 3);
        assert_eq!(p(&[1, 1, 1]).pairing(), 9);
    }

    #[test]
    fn block_data_examples() {
        let b = p(&[3, 1, 1]).block_data();
        assert_eq!(b.multiplicities, vec![2, 0, 1]);
        assert_eq!(&b.prefix[..3], &[0, 2, 2]);
        assert_eq!(b.block, vec![1, 1, 3]);
        let b = p(&[1]).block_data();
        assert_eq!(b.multiplicities, vec![1]);
        assert_eq!(b.block, vec![1]);
        let b = p(&[2, 2]).block_data();
        assert_eq!(b.multiplicities, vec![0, 2]);
        assert_eq!(b.block, vec![2, 2]);
    }

    #[test]
    fn identities_up_to_eight() {
        let binom2 = |x: u32| (x as u64) * (x as u64).saturating_sub(1) / 2;
        for lam in enumerate_partitions(8) {
            let boxes: Vec<_> = lam.boxes().collect();
            assert_eq!(boxes.len() as u32, lam.size());
            let hooks: u64 = boxes
                .iter()
                .map(|&(i, j)| {
                    let (a, l) = lam.arm_leg(i, j).unwrap();
                    (a + l + 1) as u64
                })
                .sum();
            let expect: u64 = lam.parts().iter().map(|&x| binom2(x)).sum::<u64>()
                + lam.conjugate_parts().iter().map(|&x| binom2(x)).sum::<u64>()
                + lam.size() as u64;
            assert_eq!(hooks, expect);
            let legs: u64 = boxes.iter().map(|&(i, j)| lam.arm_leg(i, j).unwrap().1 as u64).sum();
            assert_eq!(lam.pairing(), lam.size() as u64 + 2 * legs);
            assert_eq!(lam.conjugate().conjugate(), lam);
            let b = lam.block_data();
            let weighted: u32 = b.multiplicities.iter().enumerate().map(|(i, &r)| (i as u32 + 1) * r).sum();
            assert_eq!(weighted, lam.size());
            assert_eq!(b.n(), lam.len());
        }
    }

    #[test]
    fn rejects_non_partitions() {
        assert_eq!(Partition::new(vec![1, 2]), Err(PartitionError::NotAPartition));
    }
}
