//! Finite algebras given by operation tables, and their congruences.

use std::collections::{HashSet, VecDeque};

use crate::error::AlgebraError;
use crate::partition::{Partition, UnionFind};

/// Largest universe for which congruences are found by filtering all
/// partitions.
pub const DIRECT_ENUMERATION_LIMIT: usize = 8;

/// Default cap on the number of congruences produced by join-closure.
pub const DEFAULT_CONGRUENCE_BUDGET: usize = 100_000;

/// Largest operation table accepted, in entries.
pub const MAX_TABLE_ENTRIES: usize = 1 << 24;

/// A finitary operation. The table is row-major with the first argument most
/// significant: `f(a_0, .., a_{k-1})` sits at `sum a_j * n^(k-1-j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operation {
    name: String,
    arity: usize,
    table: Vec<u32>,
}

impl Operation {
    pub fn new(name: impl Into<String>, arity: usize, table: Vec<usize>) -> Self {
        Operation {
            name: name.into(),
            arity,
            table: table.into_iter().map(|v| v as u32).collect(),
        }
    }

    /// Builds an operation by evaluating `f` on every argument tuple.
    pub fn from_fn(
        name: impl Into<String>,
        arity: usize,
        n: usize,
        mut f: impl FnMut(&[usize]) -> usize,
    ) -> Self {
        let total = n.pow(arity as u32);
        let mut args = vec![0usize; arity];
        let mut table = Vec::with_capacity(total);
        for idx in 0..total {
            let mut rest = idx;
            for j in (0..arity).rev() {
                args[j] = rest % n;
                rest /= n;
            }
            table.push(f(&args) as u32);
        }
        Operation {
            name: name.into(),
            arity,
            table,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> impl Iterator<Item = usize> + '_ {
        self.table.iter().map(|&v| v as usize)
    }

    fn entry(&self, idx: usize) -> usize {
        self.table[idx] as usize
    }
}

/// A finite algebra on `{0, .., n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    size: usize,
    operations: Vec<Operation>,
}

impl FiniteAlgebra {
    pub fn new(size: usize, operations: Vec<Operation>) -> Result<Self, AlgebraError> {
        if size == 0 {
            return Err(AlgebraError::EmptyUniverse);
        }
        for op in &operations {
            let expected = (size as u128).checked_pow(op.arity as u32);
            let expected = match expected {
                Some(e) if e <= MAX_TABLE_ENTRIES as u128 => e as usize,
                _ => {
                    return Err(AlgebraError::ArityTooLarge {
                        name: op.name.clone(),
                        arity: op.arity,
                        size,
                    })
                }
            };
            if op.table.len() != expected {
                return Err(AlgebraError::TableLength {
                    name: op.name.clone(),
                    expected,
                    found: op.table.len(),
                });
            }
            if let Some((index, &value)) =
                op.table.iter().enumerate().find(|(_, &v)| v as usize >= size)
            {
                return Err(AlgebraError::TableEntry {
                    name: op.name.clone(),
                    index,
                    value: value as usize,
                    size,
                });
            }
        }
        Ok(FiniteAlgebra { size, operations })
    }

    /// The algebra with no operations: its congruences are all partitions.
    pub fn set(size: usize) -> Result<Self, AlgebraError> {
        Self::new(size, Vec::new())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn operations(&self) -> &[Operation] {
        &self.operations
    }

    /// Applies operation `op` to `args`.
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        let o = &self.operations[op];
        assert_eq!(args.len(), o.arity, "wrong number of arguments");
        let idx = args.iter().fold(0, |acc, &a| acc * self.size + a);
        o.entry(idx)
    }

    /// Calls `visit(f(.., a, ..), f(.., b, ..))` for every operation, every
    /// argument position and every choice of the remaining arguments.
    fn for_each_translate(&self, a: usize, b: usize, mut visit: impl FnMut(usize, usize) -> bool) -> bool {
        let n = self.size;
        for op in &self.operations {
            let k = op.arity;
            if k == 0 {
                continue;
            }
            let others = n.pow(k as u32 - 1);
            for pos in 0..k {
                let low_span = n.pow((k - 1 - pos) as u32);
                for rest in 0..others {
                    let high = rest / low_span;
                    let low = rest % low_span;
                    let base = high * low_span * n + low;
                    let fa = op.entry(base + a * low_span);
                    let fb = op.entry(base + b * low_span);
                    if !visit(fa, fb) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Whether `p` is compatible with every operation.
    pub fn is_congruence(&self, p: &Partition) -> Result<bool, AlgebraError> {
        self.check_size(p)?;
        for x in 0..self.size {
            let r = p.rep(x);
            if r == x {
                continue;
            }
            let ok = self.for_each_translate(x, r, |fa, fb| p.related(fa, fb));
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The least congruence containing every pair in `pairs`.
    pub fn cg<I>(&self, pairs: I) -> Result<Partition, AlgebraError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut uf = UnionFind::new(self.size);
        let mut queue = VecDeque::new();
        for (a, b) in pairs {
            for x in [a, b] {
                if x >= self.size {
                    return Err(AlgebraError::OutOfRange {
                        element: x,
                        size: self.size,
                    });
                }
            }
            if uf.union(a, b) {
                queue.push_back((a, b));
            }
        }
        self.saturate(&mut uf, queue);
        Ok(uf.into_partition())
    }

    /// The least congruence above `p`.
    pub fn cg_partition(&self, p: &Partition) -> Result<Partition, AlgebraError> {
        self.check_size(p)?;
        self.cg((0..self.size).map(|x| (x, p.rep(x))))
    }

    fn saturate(&self, uf: &mut UnionFind, mut queue: VecDeque<(usize, usize)>) {
        let mut pending = Vec::new();
        while let Some((a, b)) = queue.pop_front() {
            self.for_each_translate(a, b, |fa, fb| {
                pending.push((fa, fb));
                true
            });
            for (fa, fb) in pending.drain(..) {
                if uf.union(fa, fb) {
                    queue.push_back((fa, fb));
                }
            }
        }
    }

    /// Every congruence, bottom first, using the default budget.
    pub fn all_congruences(&self) -> Result<Vec<Partition>, AlgebraError> {
        self.all_congruences_with_budget(DEFAULT_CONGRUENCE_BUDGET)
    }

    /// Every congruence. Universes up to [`DIRECT_ENUMERATION_LIMIT`] are
    /// handled by filtering all partitions; larger ones by closing the
    /// principal congruences under joins, failing once more than `budget`
    /// congruences have been found.
    ///
    /// The result is sorted by decreasing block count, then canonically.
    pub fn all_congruences_with_budget(&self, budget: usize) -> Result<Vec<Partition>, AlgebraError> {
        let mut out = if self.size <= DIRECT_ENUMERATION_LIMIT {
            let mut v = Vec::new();
            for p in Partition::all(self.size) {
                if self.is_congruence(&p)? {
                    v.push(p);
                    if v.len() > budget {
                        return Err(AlgebraError::BudgetExceeded { budget });
                    }
                }
            }
            v
        } else {
            self.join_closure(budget)?
        };
        sort_congruences(&mut out);
        Ok(out)
    }

    /// Distinct principal congruences `Cg(a, b)` for `a < b`.
    pub fn principal_congruences(&self) -> Vec<Partition> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for a in 0..self.size {
            for b in a + 1..self.size {
                let p = self.cg([(a, b)]).expect("indices in range");
                if seen.insert(p.clone()) {
                    out.push(p);
                }
            }
        }
        out
    }

    fn join_closure(&self, budget: usize) -> Result<Vec<Partition>, AlgebraError> {
        let principals = self.principal_congruences();
        let bottom = Partition::bottom(self.size);
        let mut seen: HashSet<Partition> = HashSet::new();
        seen.insert(bottom.clone());
        let mut all = vec![bottom];
        let mut cursor = 0;
        while cursor < all.len() {
            let x = all[cursor].clone();
            cursor += 1;
            for p in &principals {
                if p.refines(&x) {
                    continue;
                }
                let y = x.join(p);
                if seen.insert(y.clone()) {
                    all.push(y);
                    if all.len() > budget {
                        return Err(AlgebraError::BudgetExceeded { budget });
                    }
                }
            }
        }
        Ok(all)
    }

    fn check_size(&self, p: &Partition) -> Result<(), AlgebraError> {
        if p.size() != self.size {
            return Err(AlgebraError::SizeMismatch {
                left: self.size,
                right: p.size(),
            });
        }
        Ok(())
    }
}

/// Bottom first: more blocks come earlier, ties broken canonically.
pub fn sort_congruences(v: &mut [Partition]) {
    v.sort_by(|a, b| b.block_count().cmp(&a.block_count()).then_with(|| a.cmp(b)));
}

/// Free-function form of [`FiniteAlgebra::cg`].
pub fn cg<I>(alg: &FiniteAlgebra, pairs: I) -> Result<Partition, AlgebraError>
where
    I: IntoIterator<Item = (usize, usize)>,
{
    alg.cg(pairs)
}

pub fn is_congruence(alg: &FiniteAlgebra, p: &Partition) -> Result<bool, AlgebraError> {
    alg.is_congruence(p)
}

pub fn all_congruences(alg: &FiniteAlgebra) -> Result<Vec<Partition>, AlgebraError> {
    alg.all_congruences()
}
