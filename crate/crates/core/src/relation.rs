//! Binary relations on `{0, .., n-1}` as dense bit matrices.

use std::fmt;

use crate::error::AlgebraError;
use crate::partition::Partition;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryRelation {
    size: usize,
    bits: Vec<bool>,
}

impl BinaryRelation {
    pub fn empty(n: usize) -> Self {
        BinaryRelation {
            size: n,
            bits: vec![false; n * n],
        }
    }

    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut r = Self::empty(n);
        for (a, b) in pairs {
            for x in [a, b] {
                if x >= n {
                    return Err(AlgebraError::OutOfRange { element: x, size: n });
                }
            }
            r.insert(a, b);
        }
        Ok(r)
    }

    pub fn from_partition(p: &Partition) -> Self {
        let n = p.size();
        let mut r = Self::empty(n);
        for x in 0..n {
            for y in 0..n {
                if p.related(x, y) {
                    r.insert(x, y);
                }
            }
        }
        r
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.size + b]
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.bits[a * self.size + b] = true;
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.size;
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(i, _)| (i / n, i % n))
    }

    /// Relational product: `(a, c)` whenever `a self b` and `b other c`.
    pub fn compose(&self, other: &BinaryRelation) -> Result<BinaryRelation, AlgebraError> {
        self.check(other)?;
        let n = self.size;
        let mut out = Self::empty(n);
        for a in 0..n {
            for b in 0..n {
                if !self.contains(a, b) {
                    continue;
                }
                let row = &other.bits[b * n..(b + 1) * n];
                for (c, &hit) in row.iter().enumerate() {
                    if hit {
                        out.bits[a * n + c] = true;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn intersect(&self, other: &BinaryRelation) -> Result<BinaryRelation, AlgebraError> {
        self.check(other)?;
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(&a, &b)| a && b)
            .collect();
        Ok(BinaryRelation {
            size: self.size,
            bits,
        })
    }

    pub fn is_subset(&self, other: &BinaryRelation) -> Result<bool, AlgebraError> {
        self.check(other)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b))
    }

    fn check(&self, other: &BinaryRelation) -> Result<(), AlgebraError> {
        if self.size != other.size {
            return Err(AlgebraError::SizeMismatch {
                left: self.size,
                right: other.size,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// `r ∘ s` for partitions viewed as relations.
pub fn compose(r: &BinaryRelation, s: &BinaryRelation) -> Result<BinaryRelation, AlgebraError> {
    r.compose(s)
}

pub fn intersect(r: &BinaryRelation, s: &BinaryRelation) -> Result<BinaryRelation, AlgebraError> {
    r.intersect(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_small() {
        let r = BinaryRelation::from_pairs(3, [(0, 1)]).unwrap();
        let s = BinaryRelation::from_pairs(3, [(1, 2), (0, 0)]).unwrap();
        let rs = r.compose(&s).unwrap();
        assert_eq!(rs.pairs().collect::<Vec<_>>(), vec![(0, 2)]);
        assert!(s.compose(&r).unwrap().pairs().eq([(0, 1)]));
    }

    #[test]
    fn partition_composition_contains_both() {
        for p in Partition::all(4) {
            for q in Partition::all(4) {
                let rp = BinaryRelation::from_partition(&p);
                let rq = BinaryRelation::from_partition(&q);
                let pq = rp.compose(&rq).unwrap();
                assert!(rp.is_subset(&pq).unwrap());
                assert!(rq.is_subset(&pq).unwrap());
                let join = BinaryRelation::from_partition(&p.join(&q));
                assert!(pq.is_subset(&join).unwrap());
                let meet = BinaryRelation::from_partition(&p.meet(&q));
                assert_eq!(rp.intersect(&rq).unwrap(), meet);
            }
        }
    }

    #[test]
    fn size_mismatch() {
        let r = BinaryRelation::empty(2);
        let s = BinaryRelation::empty(3);
        assert!(r.compose(&s).is_err());
        assert!(r.intersect(&s).is_err());
    }
}
