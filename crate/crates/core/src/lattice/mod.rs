//! Finite lattices with precomputed order, meet and join tables.

mod dot;
mod embed;
mod generate;

pub use dot::to_dot;
pub use embed::{are_isomorphic, count_embeddings, find_embedding, LatticeEmbedding};
pub use generate::{generate_sublattice, lattice_from_partitions, Derivation, GeneratedLattice, DEFAULT_LATTICE_BUDGET};

use std::collections::HashSet;

use crate::error::LatticeError;

/// A finite lattice on element indices `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    labels: Vec<String>,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl FiniteLattice {
    /// Builds a lattice from a full order matrix (`leq[i * n + j]` iff `i <= j`).
    pub fn from_order(labels: Vec<String>, leq: Vec<bool>) -> Result<Self, LatticeError> {
        let n = labels.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        if leq.len() != n * n {
            return Err(LatticeError::LabelCount {
                labels: n,
                elements: (leq.len() as f64).sqrt() as usize,
            });
        }
        check_labels(&labels)?;
        let le = |i: usize, j: usize| leq[i * n + j];
        for i in 0..n {
            if !le(i, i) {
                return Err(LatticeError::NotReflexive(labels[i].clone()));
            }
            for j in 0..n {
                if i != j && le(i, j) && le(j, i) {
                    return Err(LatticeError::NotAntisymmetric(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !le(i, j) {
                    continue;
                }
                for k in 0..n {
                    if le(j, k) && !le(i, k) {
                        return Err(LatticeError::NotTransitive(
                            labels[i].clone(),
                            labels[j].clone(),
                            labels[k].clone(),
                        ));
                    }
                }
            }
        }
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for i in 0..n {
            for j in i..n {
                let m = bound(n, |z| le(z, i) && le(z, j), &le, true)
                    .ok_or_else(|| LatticeError::NoMeet(labels[i].clone(), labels[j].clone()))?;
                let jn = bound(n, |z| le(i, z) && le(j, z), &le, false)
                    .ok_or_else(|| LatticeError::NoJoin(labels[i].clone(), labels[j].clone()))?;
                meet[i * n + j] = m;
                meet[j * n + i] = m;
                join[i * n + j] = jn;
                join[j * n + i] = jn;
            }
        }
        let bottom = (0..n).find(|&b| (0..n).all(|x| le(b, x))).expect("lattice has a bottom");
        let top = (0..n).find(|&t| (0..n).all(|x| le(x, t))).expect("lattice has a top");
        Ok(FiniteLattice {
            labels,
            leq,
            meet,
            join,
            bottom,
            top,
        })
    }

    /// Builds a lattice from a cover relation given as `(lower, upper)` index
    /// pairs. Every edge must be a genuine covering pair of the generated
    /// order.
    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self, LatticeError> {
        let n = labels.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in covers {
            for x in [a, b] {
                if x >= n {
                    return Err(LatticeError::IndexOutOfRange { index: x, len: n });
                }
            }
            if a == b {
                return Err(LatticeError::Cycle(labels[a].clone()));
            }
            leq[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if !leq[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i * n + j] && leq[j * n + i] {
                    return Err(LatticeError::Cycle(labels[i].clone()));
                }
            }
        }
        for &(a, b) in covers {
            let between = (0..n).any(|z| z != a && z != b && leq[a * n + z] && leq[z * n + b]);
            if between {
                return Err(LatticeError::NotACover {
                    lower: labels[a].clone(),
                    upper: labels[b].clone(),
                });
            }
        }
        Self::from_order(labels, leq)
    }

    /// The chain `0 < 1 < .. < n-1`.
    pub fn chain(n: usize) -> Result<Self, LatticeError> {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_covers(labels, &covers)
    }

    /// The five-element modular, non-distributive lattice.
    pub fn diamond() -> Self {
        let labels = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
        Self::from_covers(labels, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
            .expect("diamond is a lattice")
    }

    /// The Boolean lattice of subsets of a `k`-element set.
    pub fn boolean(k: usize) -> Self {
        let n = 1usize << k;
        let labels = (0..n).map(|s| format!("{s:0width$b}", width = k.max(1))).collect();
        let mut covers = Vec::new();
        for s in 0..n {
            for b in 0..k {
                if s & (1 << b) == 0 {
                    covers.push((s, s | (1 << b)));
                }
            }
        }
        Self::from_covers(labels, &covers).expect("boolean lattice")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Replaces the labels; the count must match.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, LatticeError> {
        if labels.len() != self.len() {
            return Err(LatticeError::LabelCount {
                labels: labels.len(),
                elements: self.len(),
            });
        }
        check_labels(&labels)?;
        self.labels = labels;
        Ok(self)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.len() + j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len() + j]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Whether `j` covers `i`.
    pub fn covers(&self, i: usize, j: usize) -> bool {
        self.lt(i, j) && !(0..self.len()).any(|z| self.lt(i, z) && self.lt(z, j))
    }

    /// All covering pairs `(lower, upper)`, sorted.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.covers(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Length of the longest chain from the bottom to each element.
    pub fn heights(&self) -> Vec<usize> {
        self.chain_lengths(false)
    }

    /// Length of the longest chain from each element to the top.
    pub fn coheights(&self) -> Vec<usize> {
        self.chain_lengths(true)
    }

    fn chain_lengths(&self, upward: bool) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        // a linear extension: fewer elements below comes first
        let down: Vec<usize> = (0..n).map(|i| (0..n).filter(|&z| self.leq(z, i)).count()).collect();
        order.sort_by_key(|&i| (down[i], i));
        if upward {
            order.reverse();
        }
        let covers = self.cover_matrix();
        let mut h = vec![0usize; n];
        for &x in &order {
            for y in 0..n {
                let step = if upward { covers[x * n + y] } else { covers[y * n + x] };
                if step {
                    h[x] = h[x].max(h[y] + 1);
                }
            }
        }
        h
    }

    fn cover_matrix(&self) -> Vec<bool> {
        let n = self.len();
        let mut m = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = self.covers(i, j);
            }
        }
        m
    }

    /// Number of elements `<= i`.
    pub fn down_size(&self, i: usize) -> usize {
        (0..self.len()).filter(|&z| self.leq(z, i)).count()
    }

    /// Number of elements `>= i`.
    pub fn up_size(&self, i: usize) -> usize {
        (0..self.len()).filter(|&z| self.leq(i, z)).count()
    }

    /// Re-derives the lattice axioms from the stored tables.
    pub fn check_axioms(&self) -> Result<(), String> {
        let n = self.len();
        for a in 0..n {
            if self.meet(a, a) != a || self.join(a, a) != a {
                return Err(format!("idempotence fails at {}", self.label(a)));
            }
            for b in 0..n {
                let (m, j) = (self.meet(a, b), self.join(a, b));
                if m != self.meet(b, a) || j != self.join(b, a) {
                    return Err(format!("commutativity fails at {}, {}", self.label(a), self.label(b)));
                }
                if self.join(a, m) != a || self.meet(a, j) != a {
                    return Err(format!("absorption fails at {}, {}", self.label(a), self.label(b)));
                }
                if self.leq(a, b) != (m == a) {
                    return Err(format!("order and meet disagree at {}, {}", self.label(a), self.label(b)));
                }
                for c in 0..n {
                    if self.meet(a, self.meet(b, c)) != self.meet(m, c)
                        || self.join(a, self.join(b, c)) != self.join(j, c)
                    {
                        return Err(format!(
                            "associativity fails at {}, {}, {}",
                            self.label(a),
                            self.label(b),
                            self.label(c)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// `x <= z` implies `x ∨ (y ∧ z) = (x ∨ y) ∧ z`.
    pub fn is_modular(&self) -> bool {
        let n = self.len();
        for x in 0..n {
            for z in 0..n {
                if !self.leq(x, z) {
                    continue;
                }
                for y in 0..n {
                    if self.join(x, self.meet(y, z)) != self.meet(self.join(x, y), z) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.meet(x, self.join(y, z)) != self.join(self.meet(x, y), self.meet(x, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `x ∧ y = x ∧ z` implies `x ∧ (y ∨ z) = x ∧ y`.
    pub fn is_meet_semidistributive(&self) -> bool {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                let m = self.meet(x, y);
                for z in y + 1..n {
                    if self.meet(x, z) == m && self.meet(x, self.join(y, z)) != m {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `x ∨ y = x ∨ z` implies `x ∨ (y ∧ z) = x ∨ y`.
    pub fn is_join_semidistributive(&self) -> bool {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                let j = self.join(x, y);
                for z in y + 1..n {
                    if self.join(x, z) == j && self.join(x, self.meet(y, z)) != j {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_semidistributive(&self) -> bool {
        self.is_meet_semidistributive() && self.is_join_semidistributive()
    }

    /// Whitman's condition: `a ∧ b <= c ∨ d` implies one of
    /// `a <= c ∨ d`, `b <= c ∨ d`, `a ∧ b <= c`, `a ∧ b <= d`.
    pub fn satisfies_whitman(&self) -> bool {
        self.whitman_failure().is_none()
    }

    /// A quadruple `(a, b, c, d)` violating Whitman's condition, if any.
    pub fn whitman_failure(&self) -> Option<(usize, usize, usize, usize)> {
        let n = self.len();
        for a in 0..n {
            for b in a..n {
                let m = self.meet(a, b);
                for c in 0..n {
                    if self.leq(m, c) {
                        continue;
                    }
                    for d in c..n {
                        if self.leq(m, d) {
                            continue;
                        }
                        let j = self.join(c, d);
                        if self.leq(m, j) && !self.leq(a, j) && !self.leq(b, j) {
                            return Some((a, b, c, d));
                        }
                    }
                }
            }
        }
        None
    }

    /// A finite lattice is projective iff it is semidistributive and
    /// satisfies Whitman's condition.
    pub fn is_projective(&self) -> bool {
        self.is_semidistributive() && self.satisfies_whitman()
    }

    /// The sublattice on `elements`, if closed under meet and join.
    pub fn sublattice(&self, elements: &[usize]) -> Option<FiniteLattice> {
        let set: HashSet<usize> = elements.iter().copied().collect();
        for &a in elements {
            for &b in elements {
                if !set.contains(&self.meet(a, b)) || !set.contains(&self.join(a, b)) {
                    return None;
                }
            }
        }
        let mut sorted: Vec<usize> = set.into_iter().collect();
        sorted.sort_unstable();
        let labels = sorted.iter().map(|&i| self.labels[i].clone()).collect();
        let k = sorted.len();
        let mut leq = vec![false; k * k];
        for (i, &a) in sorted.iter().enumerate() {
            for (j, &b) in sorted.iter().enumerate() {
                leq[i * k + j] = self.leq(a, b);
            }
        }
        FiniteLattice::from_order(labels, leq).ok()
    }

    /// The dual lattice, with the same labels.
    pub fn dual(&self) -> FiniteLattice {
        let n = self.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = self.leq(j, i);
            }
        }
        FiniteLattice::from_order(self.labels.clone(), leq).expect("dual of a lattice")
    }
}

fn check_labels(labels: &[String]) -> Result<(), LatticeError> {
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(LatticeError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// The greatest (`greatest = true`) or least element among those satisfying
/// `member`, if it exists.
fn bound(n: usize, member: impl Fn(usize) -> bool, le: &impl Fn(usize, usize) -> bool, greatest: bool) -> Option<usize> {
    let cands: Vec<usize> = (0..n).filter(|&z| member(z)).collect();
    cands.iter().copied().find(|&c| {
        cands
            .iter()
            .all(|&w| if greatest { le(w, c) } else { le(c, w) })
    })
}

pub fn is_modular(l: &FiniteLattice) -> bool {
    l.is_modular()
}

pub fn is_distributive(l: &FiniteLattice) -> bool {
    l.is_distributive()
}

pub fn is_meet_semidistributive(l: &FiniteLattice) -> bool {
    l.is_meet_semidistributive()
}

pub fn is_join_semidistributive(l: &FiniteLattice) -> bool {
    l.is_join_semidistributive()
}

pub fn satisfies_whitman(l: &FiniteLattice) -> bool {
    l.satisfies_whitman()
}

pub fn is_projective_finite(l: &FiniteLattice) -> bool {
    l.is_projective()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pentagon() -> FiniteLattice {
        let labels = ["0", "c", "a", "b", "1"].map(String::from).to_vec();
        FiniteLattice::from_covers(labels, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap()
    }

    #[test]
    fn builders_satisfy_axioms() {
        for l in [
            FiniteLattice::chain(1).unwrap(),
            FiniteLattice::chain(4).unwrap(),
            FiniteLattice::diamond(),
            FiniteLattice::boolean(3),
            pentagon(),
        ] {
            l.check_axioms().unwrap();
            l.dual().check_axioms().unwrap();
        }
    }

    #[test]
    fn heights_and_coheights() {
        let p = pentagon();
        assert_eq!(p.heights(), vec![0, 1, 2, 1, 3]);
        assert_eq!(p.coheights(), vec![3, 2, 1, 1, 0]);
        let b = FiniteLattice::boolean(3);
        assert_eq!(b.heights(), (0..8u32).map(|s| s.count_ones() as usize).collect::<Vec<_>>());
    }

    #[test]
    fn rejects_non_cover_edges() {
        let labels = ["0", "a", "1"].map(String::from).to_vec();
        let err = FiniteLattice::from_covers(labels, &[(0, 1), (1, 2), (0, 2)]).unwrap_err();
        assert_eq!(
            err,
            LatticeError::NotACover {
                lower: "0".into(),
                upper: "1".into()
            }
        );
    }

    #[test]
    fn rejects_non_lattices() {
        // two maximal elements
        let labels = ["0", "a", "b"].map(String::from).to_vec();
        assert!(matches!(
            FiniteLattice::from_covers(labels, &[(0, 1), (0, 2)]),
            Err(LatticeError::NoJoin(..))
        ));
        // bowtie: a, b below both c and d
        let labels = ["0", "a", "b", "c", "d", "1"].map(String::from).to_vec();
        let covers = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)];
        assert!(FiniteLattice::from_covers(labels, &covers).is_err());
        let labels = ["a", "b"].map(String::from).to_vec();
        assert!(matches!(
            FiniteLattice::from_covers(labels, &[(0, 1), (1, 0)]),
            Err(LatticeError::Cycle(_))
        ));
    }

    #[test]
    fn predicate_calibration() {
        let c = FiniteLattice::chain(3).unwrap();
        assert!(c.is_distributive() && c.is_modular() && c.is_projective());

        let m3 = FiniteLattice::diamond();
        assert!(m3.is_modular());
        assert!(!m3.is_distributive());
        assert!(!m3.is_meet_semidistributive());
        assert!(!m3.is_join_semidistributive());

        let n5 = pentagon();
        assert!(!n5.is_modular());
        assert!(n5.is_semidistributive());
        assert!(n5.satisfies_whitman());
        assert!(n5.is_projective());

        // 2^4 is distributive but fails Whitman's condition:
        // {1,2,3} ∧ {1,2,4} <= {1} ∨ {2}
        let b3 = FiniteLattice::boolean(3);
        assert!(b3.satisfies_whitman());
        let b4 = FiniteLattice::boolean(4);
        assert!(b4.is_distributive());
        assert!(b4.is_semidistributive());
        assert!(!b4.satisfies_whitman());
        assert!(!b4.is_projective());
    }

    #[test]
    fn sublattice_and_relabel() {
        let b = FiniteLattice::boolean(2);
        let sub = b.sublattice(&[0, 1, 3]).unwrap();
        assert_eq!(sub.len(), 3);
        assert!(b.sublattice(&[1, 2]).is_none());
        let relabeled = sub.with_labels(vec!["x".into(), "y".into(), "z".into()]).unwrap();
        assert_eq!(relabeled.index_of("z"), Some(2));
        assert!(relabeled.clone().with_labels(vec!["x".into(); 3]).is_err());
    }
}
