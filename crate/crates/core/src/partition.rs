//! Set partitions of `{0, .., n-1}` in canonical form.
//!
//! A partition is stored as a vector mapping every element to the least
//! element of its block. Two partitions are equal exactly when their
//! representative vectors are equal, so derived `Eq`/`Hash`/`Ord` are sound.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::AlgebraError;

/// A set partition (equivalence relation) on `{0, .., n-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    reps: Vec<u32>,
}

impl Partition {
    /// The identity relation `0_n` (all singletons).
    pub fn bottom(n: usize) -> Self {
        Partition {
            reps: (0..n as u32).collect(),
        }
    }

    /// The total relation `1_n` (one block).
    pub fn top(n: usize) -> Self {
        Partition { reps: vec![0; n] }
    }

    /// Builds a partition from an arbitrary class labelling: `x` and `y`
    /// share a block iff `labels[x] == labels[y]`.
    pub fn from_labels<T: Eq + std::hash::Hash>(labels: &[T]) -> Self {
        let mut first: HashMap<&T, u32> = HashMap::with_capacity(labels.len());
        let reps = labels
            .iter()
            .enumerate()
            .map(|(i, l)| *first.entry(l).or_insert(i as u32))
            .collect();
        Partition { reps }
    }

    /// Builds a partition from explicit blocks that must cover `{0, .., n-1}`
    /// exactly once.
    pub fn from_blocks<B: AsRef<[usize]>>(n: usize, blocks: &[B]) -> Result<Self, AlgebraError> {
        let mut label = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &x in block.as_ref() {
                if x >= n {
                    return Err(AlgebraError::OutOfRange { element: x, size: n });
                }
                if label[x] != usize::MAX {
                    return Err(AlgebraError::BlockOverlap { element: x });
                }
                label[x] = b;
            }
        }
        if let Some(x) = label.iter().position(|&l| l == usize::MAX) {
            return Err(AlgebraError::BlockGap { element: x });
        }
        Ok(Self::from_labels(&label))
    }

    /// The equivalence relation generated by a set of pairs.
    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut uf = UnionFind::new(n);
        for (a, b) in pairs {
            for x in [a, b] {
                if x >= n {
                    return Err(AlgebraError::OutOfRange { element: x, size: n });
                }
            }
            uf.union(a, b);
        }
        Ok(uf.into_partition())
    }

    /// Number of underlying elements.
    pub fn size(&self) -> usize {
        self.reps.len()
    }

    /// Least element of the block containing `x`.
    pub fn rep(&self, x: usize) -> usize {
        self.reps[x] as usize
    }

    pub fn reps(&self) -> &[u32] {
        &self.reps
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.reps[x] == self.reps[y]
    }

    pub fn block_count(&self) -> usize {
        self.reps
            .iter()
            .enumerate()
            .filter(|&(i, &r)| i == r as usize)
            .count()
    }

    pub fn is_bottom(&self) -> bool {
        self.reps.iter().enumerate().all(|(i, &r)| i == r as usize)
    }

    pub fn is_top(&self) -> bool {
        self.reps.iter().all(|&r| r == 0)
    }

    /// Blocks in order of their least element, each sorted ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut slot = vec![usize::MAX; self.size()];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for (x, &r) in self.reps.iter().enumerate() {
            let r = r as usize;
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(x);
        }
        out
    }

    /// Related pairs `(x, y)` with `x < y`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for block in self.blocks() {
            for (i, &x) in block.iter().enumerate() {
                for &y in &block[i + 1..] {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// `self <= other` in the refinement order.
    pub fn refines(&self, other: &Partition) -> bool {
        assert_eq!(self.size(), other.size(), "partition size mismatch");
        self.reps
            .iter()
            .enumerate()
            .all(|(x, &r)| other.reps[x] == other.reps[r as usize])
    }

    /// Intersection of the two equivalence relations.
    ///
    /// # Panics
    /// If the sizes differ; use [`partition_meet`] for a checked version.
    pub fn meet(&self, other: &Partition) -> Partition {
        assert_eq!(self.size(), other.size(), "partition size mismatch");
        let mut first: HashMap<(u32, u32), u32> = HashMap::new();
        let reps = (0..self.size())
            .map(|x| {
                *first
                    .entry((self.reps[x], other.reps[x]))
                    .or_insert(x as u32)
            })
            .collect();
        Partition { reps }
    }

    /// Transitive closure of the union of the two relations.
    ///
    /// # Panics
    /// If the sizes differ; use [`partition_join`] for a checked version.
    pub fn join(&self, other: &Partition) -> Partition {
        assert_eq!(self.size(), other.size(), "partition size mismatch");
        let mut uf = UnionFind::from_partition(self);
        for (x, &r) in other.reps.iter().enumerate() {
            uf.union(x, r as usize);
        }
        uf.into_partition()
    }

    /// Every partition of an `n`-element set, in restricted-growth order.
    pub fn all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        if n == 0 {
            out.push(Partition { reps: Vec::new() });
            return out;
        }
        let mut rgs = vec![0usize; n];
        let mut maxes = vec![0usize; n];
        loop {
            out.push(Self::from_labels(&rgs));
            // advance the restricted growth string
            let mut i = n - 1;
            loop {
                if i == 0 {
                    return out;
                }
                if rgs[i] <= maxes[i - 1] {
                    rgs[i] += 1;
                    maxes[i] = maxes[i - 1].max(rgs[i]);
                    for j in i + 1..n {
                        rgs[j] = 0;
                        maxes[j] = maxes[i];
                    }
                    break;
                }
                i -= 1;
            }
        }
    }

    /// Renders using element names instead of indices.
    pub fn display_with(&self, names: &[String]) -> String {
        let mut s = String::from("|");
        for block in self.blocks() {
            let parts: Vec<&str> = block.iter().map(|&x| names[x].as_str()).collect();
            s.push_str(&parts.join(","));
            s.push('|');
        }
        s
    }
}

/// Checked meet.
pub fn partition_meet(p: &Partition, q: &Partition) -> Result<Partition, AlgebraError> {
    check_sizes(p, q)?;
    Ok(p.meet(q))
}

/// Checked join.
pub fn partition_join(p: &Partition, q: &Partition) -> Result<Partition, AlgebraError> {
    check_sizes(p, q)?;
    Ok(p.join(q))
}

/// Checked refinement test.
pub fn partition_leq(p: &Partition, q: &Partition) -> Result<bool, AlgebraError> {
    check_sizes(p, q)?;
    Ok(p.refines(q))
}

fn check_sizes(p: &Partition, q: &Partition) -> Result<(), AlgebraError> {
    if p.size() != q.size() {
        return Err(AlgebraError::SizeMismatch {
            left: p.size(),
            right: q.size(),
        });
    }
    Ok(())
}

impl fmt::Display for Partition {
    /// Block notation, e.g. `|0,1|2|3,4|`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("|")?;
        for block in self.blocks() {
            for (i, x) in block.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("|")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = AlgebraError;

    /// Parses block notation `|0,1|2,3|`. Blocks must cover `0..n` where `n`
    /// is the number of listed elements.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgebraError::Parse(s.to_string());
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('|')
            .and_then(|t| t.strip_suffix('|'))
            .ok_or_else(bad)?;
        let mut blocks = Vec::new();
        if !inner.is_empty() {
            for part in inner.split('|') {
                let block = part
                    .split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>, _>>()?;
                blocks.push(block);
            }
        }
        let n = blocks.iter().map(Vec::len).sum();
        Partition::from_blocks(n, &blocks)
    }
}

/// Union-find whose roots are always the least element of their class.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    pub(crate) fn from_partition(p: &Partition) -> Self {
        UnionFind {
            parent: p.reps.clone(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut cur = x;
        while self.parent[cur] as usize != root {
            let next = self.parent[cur] as usize;
            self.parent[cur] = root as u32;
            cur = next;
        }
        root
    }

    /// Merges the classes of `a` and `b`; returns whether they were distinct.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        if ra < rb {
            self.parent[rb] = ra as u32;
        } else {
            self.parent[ra] = rb as u32;
        }
        true
    }

    pub(crate) fn into_partition(mut self) -> Partition {
        let n = self.parent.len();
        let reps = (0..n).map(|x| self.find(x) as u32).collect();
        Partition { reps }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Relation-as-pair-set oracle.
    fn pair_set(p: &Partition) -> Vec<Vec<bool>> {
        let n = p.size();
        (0..n).map(|x| (0..n).map(|y| p.related(x, y)).collect()).collect()
    }

    fn closure(mut m: Vec<Vec<bool>>) -> Vec<Vec<bool>> {
        let n = m.len();
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if m[i][k] && m[k][j] {
                        m[i][j] = true;
                    }
                }
            }
        }
        m
    }

    #[test]
    fn bell_numbers() {
        let bell = [1, 1, 2, 5, 15, 52, 203, 877];
        for (n, &b) in bell.iter().enumerate() {
            let all = Partition::all(n);
            assert_eq!(all.len(), b, "n = {n}");
            let mut sorted = all.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), b);
        }
    }

    #[test]
    fn meet_and_join_match_pair_sets_on_four_points() {
        let all = Partition::all(4);
        for p in &all {
            for q in &all {
                let (mp, mq) = (pair_set(p), pair_set(q));
                let meet: Vec<Vec<bool>> = (0..4)
                    .map(|i| (0..4).map(|j| mp[i][j] && mq[i][j]).collect())
                    .collect();
                let union: Vec<Vec<bool>> = (0..4)
                    .map(|i| (0..4).map(|j| mp[i][j] || mq[i][j]).collect())
                    .collect();
                assert_eq!(pair_set(&p.meet(q)), meet);
                assert_eq!(pair_set(&p.join(q)), closure(union));
                assert_eq!(p.refines(q), (0..4).all(|i| (0..4).all(|j| !mp[i][j] || mq[i][j])));
            }
        }
    }

    #[test]
    fn display_round_trip() {
        let p: Partition = "|0,2|1|3,4|".parse().unwrap();
        assert_eq!(p.to_string(), "|0,2|1|3,4|");
        assert_eq!(p.block_count(), 3);
        assert!(p.related(3, 4));
        assert_eq!(p.to_string().parse::<Partition>().unwrap(), p);
    }

    #[test]
    fn block_errors() {
        assert_eq!(
            Partition::from_blocks(3, &[vec![0, 1], vec![1, 2]]),
            Err(AlgebraError::BlockOverlap { element: 1 })
        );
        assert_eq!(
            Partition::from_blocks(3, &[vec![0, 1]]),
            Err(AlgebraError::BlockGap { element: 2 })
        );
        assert!(matches!(
            Partition::from_blocks(2, &[vec![0, 5]]),
            Err(AlgebraError::OutOfRange { element: 5, size: 2 })
        ));
        assert!("0,1|2".parse::<Partition>().is_err());
    }

    #[test]
    fn checked_ops_reject_size_mismatch() {
        let a = Partition::bottom(3);
        let b = Partition::bottom(4);
        assert!(matches!(
            partition_meet(&a, &b),
            Err(AlgebraError::SizeMismatch { left: 3, right: 4 })
        ));
        assert!(partition_join(&a, &b).is_err());
        assert!(partition_leq(&a, &b).is_err());
    }

    #[test]
    fn from_pairs_generates_equivalence() {
        let p = Partition::from_pairs(5, [(4, 2), (2, 0)]).unwrap();
        assert_eq!(p.to_string(), "|0,2,4|1|3|");
        assert_eq!(p.pairs(), vec![(0, 2), (0, 4), (2, 4)]);
    }
}
