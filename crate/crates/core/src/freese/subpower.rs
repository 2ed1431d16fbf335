//! The subpower `A^n(α)`: tuples whose coordinates are pairwise α-related,
//! with operations applied coordinatewise.

use std::collections::HashMap;

use crate::algebra::{FiniteAlgebra, Operation};
use crate::error::EngineError;
use crate::partition::Partition;

/// Largest subpower universe the engine will build.
pub const MAX_SUBPOWER_SIZE: usize = 4096;

/// Which coordinate a lifted congruence acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// The first coordinate (`θ₀`).
    First,
    /// The second coordinate (`θ₁`).
    Second,
}

impl Side {
    pub fn index(self) -> usize {
        match self {
            Side::First => 0,
            Side::Second => 1,
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::First => Side::Second,
            Side::Second => Side::First,
        }
    }
}

/// `A^n(α)` together with the lexicographic tuple indexing.
#[derive(Clone, Debug)]
pub struct SubpowerContext {
    base_size: usize,
    power: usize,
    alpha: Partition,
    tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    algebra: FiniteAlgebra,
}

impl SubpowerContext {
    /// The subpower as an algebra in its own right.
    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn size(&self) -> usize {
        self.tuples.len()
    }

    pub fn power(&self) -> usize {
        self.power
    }

    pub fn alpha(&self) -> &Partition {
        &self.alpha
    }

    pub fn base_size(&self) -> usize {
        self.base_size
    }

    /// Tuple with index `i`.
    pub fn tuple(&self, i: usize) -> &[usize] {
        &self.tuples[i]
    }

    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        self.index.get(tuple).copied()
    }

    /// The congruence `θ_s`: tuples related when their `s`-th coordinates
    /// are θ-related.
    pub fn lift_coord(&self, theta: &Partition, coord: usize) -> Result<Partition, EngineError> {
        if theta.size() != self.base_size {
            return Err(crate::error::AlgebraError::SizeMismatch {
                left: self.base_size,
                right: theta.size(),
            }
            .into());
        }
        let labels: Vec<usize> = self.tuples.iter().map(|t| theta.rep(t[coord])).collect();
        Ok(Partition::from_labels(&labels))
    }

    /// `θ₀` or `θ₁` on the doubled algebra `A(α)`.
    pub fn lift(&self, theta: &Partition, side: Side) -> Result<Partition, EngineError> {
        self.lift_coord(theta, side.index())
    }

    /// Kernel of the projection onto coordinate `s` (`η_s`).
    pub fn eta(&self, side: Side) -> Partition {
        self.lift(&Partition::bottom(self.base_size), side)
            .expect("bottom has the base size")
    }

    pub fn bottom(&self) -> Partition {
        Partition::bottom(self.size())
    }

    pub fn top(&self) -> Partition {
        Partition::top(self.size())
    }
}

/// Builds `A^n(α)` with tuples in lexicographic order.
pub fn build_subpower(alg: &FiniteAlgebra, alpha: &Partition, n: usize) -> Result<SubpowerContext, EngineError> {
    let size = alg.size();
    if n == 0 {
        return Err(EngineError::ZeroExponent);
    }
    if alpha.size() != size {
        return Err(crate::error::AlgebraError::SizeMismatch {
            left: size,
            right: alpha.size(),
        }
        .into());
    }
    if !alg.is_congruence(alpha)? {
        return Err(EngineError::NotACongruence { label: "α".into() });
    }
    // Count first so oversized requests fail before allocating.
    let count: u128 = alpha
        .blocks()
        .iter()
        .map(|b| (b.len() as u128).pow(n as u32))
        .sum();
    if count > MAX_SUBPOWER_SIZE as u128 {
        return Err(EngineError::SubpowerTooLarge {
            size: count.min(usize::MAX as u128) as usize,
            limit: MAX_SUBPOWER_SIZE,
        });
    }
    let mut tuples = Vec::with_capacity(count as usize);
    for block in alpha.blocks() {
        let b = block.len();
        for code in 0..b.pow(n as u32) {
            let mut rest = code;
            let mut t = vec![0usize; n];
            for slot in t.iter_mut().rev() {
                *slot = block[rest % b];
                rest /= b;
            }
            tuples.push(t);
        }
    }
    tuples.sort_unstable();
    let index: HashMap<Vec<usize>, usize> = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let m = tuples.len();
    let mut ops = Vec::with_capacity(alg.operations().len());
    for (oi, op) in alg.operations().iter().enumerate() {
        let k = op.arity();
        let mut args = vec![0usize; k];
        let mut coord_args = vec![0usize; k];
        let mut out = vec![0usize; n];
        let o = Operation::from_fn(op.name(), k, m, |tuple_args| {
            args.copy_from_slice(tuple_args);
            for (c, slot) in out.iter_mut().enumerate() {
                for (j, &a) in args.iter().enumerate() {
                    coord_args[j] = tuples[a][c];
                }
                *slot = alg.apply(oi, &coord_args);
            }
            *index.get(&out).expect("α is a congruence, so the subpower is closed")
        });
        ops.push(o);
    }
    let algebra = FiniteAlgebra::new(m, ops)?;
    Ok(SubpowerContext {
        base_size: size,
        power: n,
        alpha: alpha.clone(),
        tuples,
        index,
        algebra,
    })
}

/// `A(α) = A²(α)`.
pub fn build_double(alg: &FiniteAlgebra, alpha: &Partition) -> Result<SubpowerContext, EngineError> {
    build_subpower(alg, alpha, 2)
}

/// Lifts `theta` to `A(α)` on the given side.
pub fn lift_congruence(ctx: &SubpowerContext, theta: &Partition, side: Side) -> Result<Partition, EngineError> {
    ctx.lift(theta, side)
}
