//! Backtracking search for lattice embeddings and isomorphisms.

use super::FiniteLattice;

/// An injective lattice homomorphism `pattern -> host`, stored as the image
/// of each pattern element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeEmbedding {
    map: Vec<usize>,
}

impl LatticeEmbedding {
    pub fn new(map: Vec<usize>) -> Self {
        LatticeEmbedding { map }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn image(&self, i: usize) -> usize {
        self.map[i]
    }

    /// Checks injectivity and preservation of meet and join.
    pub fn verify(&self, pattern: &FiniteLattice, host: &FiniteLattice) -> bool {
        let n = pattern.len();
        if self.map.len() != n || self.map.iter().any(|&h| h >= host.len()) {
            return false;
        }
        let mut used = vec![false; host.len()];
        for &h in &self.map {
            if std::mem::replace(&mut used[h], true) {
                return false;
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.map[pattern.meet(a, b)] != host.meet(self.map[a], self.map[b])
                    || self.map[pattern.join(a, b)] != host.join(self.map[a], self.map[b])
                {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Embed,
    Iso,
}

struct Profile {
    height: Vec<usize>,
    coheight: Vec<usize>,
    down: Vec<usize>,
    up: Vec<usize>,
    lower_covers: Vec<usize>,
    upper_covers: Vec<usize>,
}

impl Profile {
    fn of(l: &FiniteLattice) -> Self {
        let n = l.len();
        let covers = l.cover_pairs();
        let mut lower_covers = vec![0; n];
        let mut upper_covers = vec![0; n];
        for &(a, b) in &covers {
            upper_covers[a] += 1;
            lower_covers[b] += 1;
        }
        Profile {
            height: l.heights(),
            coheight: l.coheights(),
            down: (0..n).map(|i| l.down_size(i)).collect(),
            up: (0..n).map(|i| l.up_size(i)).collect(),
            lower_covers,
            upper_covers,
        }
    }
}

struct Search<'a> {
    pattern: &'a FiniteLattice,
    host: &'a FiniteLattice,
    order: Vec<usize>,
    // pattern pairs whose meet (resp. join) is the given element
    meet_sources: Vec<Vec<(usize, usize)>>,
    join_sources: Vec<Vec<(usize, usize)>>,
    candidates: Vec<Vec<usize>>,
    assigned: Vec<Option<usize>>,
    used: Vec<bool>,
    found: Vec<Vec<usize>>,
    limit: usize,
}

impl<'a> Search<'a> {
    fn new(pattern: &'a FiniteLattice, host: &'a FiniteLattice, mode: Mode, limit: usize) -> Self {
        let n = pattern.len();
        let pp = Profile::of(pattern);
        let hp = Profile::of(host);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (pp.height[i], pp.down[i], i));
        let mut meet_sources = vec![Vec::new(); n];
        let mut join_sources = vec![Vec::new(); n];
        for a in 0..n {
            for b in a + 1..n {
                let (m, j) = (pattern.meet(a, b), pattern.join(a, b));
                if m != a && m != b {
                    meet_sources[m].push((a, b));
                }
                if j != a && j != b {
                    join_sources[j].push((a, b));
                }
            }
        }
        let candidates = (0..n)
            .map(|p| {
                (0..host.len())
                    .filter(|&h| match mode {
                        Mode::Embed => {
                            hp.height[h] >= pp.height[p]
                                && hp.coheight[h] >= pp.coheight[p]
                                && hp.down[h] >= pp.down[p]
                                && hp.up[h] >= pp.up[p]
                        }
                        Mode::Iso => {
                            hp.height[h] == pp.height[p]
                                && hp.coheight[h] == pp.coheight[p]
                                && hp.down[h] == pp.down[p]
                                && hp.up[h] == pp.up[p]
                                && hp.lower_covers[h] == pp.lower_covers[p]
                                && hp.upper_covers[h] == pp.upper_covers[p]
                        }
                    })
                    .collect()
            })
            .collect();
        Search {
            pattern,
            host,
            order,
            meet_sources,
            join_sources,
            candidates,
            assigned: vec![None; n],
            used: vec![false; host.len()],
            found: Vec::new(),
            limit,
        }
    }

    fn consistent(&self, p: usize, h: usize) -> bool {
        let (pat, host) = (self.pattern, self.host);
        for q in 0..pat.len() {
            let Some(hq) = self.assigned[q] else { continue };
            if pat.leq(p, q) != host.leq(h, hq) || pat.leq(q, p) != host.leq(hq, h) {
                return false;
            }
            if let Some(hm) = self.assigned[pat.meet(p, q)] {
                if host.meet(h, hq) != hm {
                    return false;
                }
            }
            if let Some(hj) = self.assigned[pat.join(p, q)] {
                if host.join(h, hq) != hj {
                    return false;
                }
            }
        }
        for &(a, b) in &self.meet_sources[p] {
            if let (Some(ha), Some(hb)) = (self.assigned[a], self.assigned[b]) {
                if host.meet(ha, hb) != h {
                    return false;
                }
            }
        }
        for &(a, b) in &self.join_sources[p] {
            if let (Some(ha), Some(hb)) = (self.assigned[a], self.assigned[b]) {
                if host.join(ha, hb) != h {
                    return false;
                }
            }
        }
        true
    }

    /// A value already determined by assigned elements, if any.
    fn forced(&self, p: usize) -> Option<usize> {
        for &(a, b) in &self.meet_sources[p] {
            if let (Some(ha), Some(hb)) = (self.assigned[a], self.assigned[b]) {
                return Some(self.host.meet(ha, hb));
            }
        }
        for &(a, b) in &self.join_sources[p] {
            if let (Some(ha), Some(hb)) = (self.assigned[a], self.assigned[b]) {
                return Some(self.host.join(ha, hb));
            }
        }
        None
    }

    fn run(&mut self, depth: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        if depth == self.order.len() {
            let map = self.assigned.iter().map(|h| h.expect("complete")).collect();
            self.found.push(map);
            return;
        }
        let p = self.order[depth];
        let options: Vec<usize> = match self.forced(p) {
            Some(h) => {
                if self.candidates[p].binary_search(&h).is_ok() {
                    vec![h]
                } else {
                    Vec::new()
                }
            }
            None => self.candidates[p].clone(),
        };
        for h in options {
            if self.used[h] || !self.consistent(p, h) {
                continue;
            }
            self.assigned[p] = Some(h);
            self.used[h] = true;
            self.run(depth + 1);
            self.used[h] = false;
            self.assigned[p] = None;
            if self.found.len() >= self.limit {
                return;
            }
        }
    }
}

fn search(pattern: &FiniteLattice, host: &FiniteLattice, mode: Mode, limit: usize) -> Vec<Vec<usize>> {
    if pattern.len() > host.len() || (mode == Mode::Iso && pattern.len() != host.len()) {
        return Vec::new();
    }
    let mut s = Search::new(pattern, host, mode, limit);
    s.run(0);
    s.found
}

/// Some embedding of `pattern` into `host` as a sublattice.
pub fn find_embedding(pattern: &FiniteLattice, host: &FiniteLattice) -> Option<LatticeEmbedding> {
    search(pattern, host, Mode::Embed, 1)
        .pop()
        .map(LatticeEmbedding::new)
}

/// Number of embeddings, stopping at `limit`.
pub fn count_embeddings(pattern: &FiniteLattice, host: &FiniteLattice, limit: usize) -> usize {
    search(pattern, host, Mode::Embed, limit).len()
}

/// An isomorphism `a -> b`, if one exists.
pub fn are_isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> Option<LatticeEmbedding> {
    search(a, b, Mode::Iso, 1).pop().map(LatticeEmbedding::new)
}
