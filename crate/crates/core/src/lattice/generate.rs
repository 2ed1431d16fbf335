//! Sublattices of a partition lattice generated by finitely many partitions.

use std::collections::HashMap;

use super::FiniteLattice;
use crate::error::LatticeError;
use crate::partition::Partition;

/// Default cap on the size of a generated sublattice.
pub const DEFAULT_LATTICE_BUDGET: usize = 10_000;

/// How an element of a generated lattice was first obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Derivation {
    /// The generator with this index.
    Generator(usize),
    /// Meet of two earlier elements.
    Meet(usize, usize),
    /// Join of two earlier elements.
    Join(usize, usize),
}

/// A sublattice of `Eq(n)` together with the partition behind each element
/// and a derivation tree from the generators.
#[derive(Clone, Debug)]
pub struct GeneratedLattice {
    pub lattice: FiniteLattice,
    pub partitions: Vec<Partition>,
    pub derivations: Vec<Derivation>,
    /// Element index of each generator.
    pub generators: Vec<usize>,
}

impl GeneratedLattice {
    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.partitions.iter().position(|q| q == p)
    }

    /// Evaluates the derivation of element `i` with `gen_value` supplying the
    /// value of each generator and `meet`/`join` combining values.
    pub fn evaluate<T: Clone>(
        &self,
        i: usize,
        gen_value: &impl Fn(usize) -> T,
        meet: &impl Fn(&T, &T) -> T,
        join: &impl Fn(&T, &T) -> T,
    ) -> T {
        let mut memo: Vec<Option<T>> = vec![None; self.partitions.len()];
        self.eval_memo(i, gen_value, meet, join, &mut memo)
    }

    fn eval_memo<T: Clone>(
        &self,
        i: usize,
        gen_value: &impl Fn(usize) -> T,
        meet: &impl Fn(&T, &T) -> T,
        join: &impl Fn(&T, &T) -> T,
        memo: &mut Vec<Option<T>>,
    ) -> T {
        if let Some(v) = &memo[i] {
            return v.clone();
        }
        let v = match self.derivations[i] {
            Derivation::Generator(g) => gen_value(g),
            Derivation::Meet(a, b) => {
                let (x, y) = (
                    self.eval_memo(a, gen_value, meet, join, memo),
                    self.eval_memo(b, gen_value, meet, join, memo),
                );
                meet(&x, &y)
            }
            Derivation::Join(a, b) => {
                let (x, y) = (
                    self.eval_memo(a, gen_value, meet, join, memo),
                    self.eval_memo(b, gen_value, meet, join, memo),
                );
                join(&x, &y)
            }
        };
        memo[i] = Some(v.clone());
        v
    }

    /// Term for element `i` over the given generator names.
    pub fn term(&self, i: usize, names: &[String]) -> String {
        self.evaluate(
            i,
            &|g| names[g].clone(),
            &|a, b| format!("({a} ∧ {b})"),
            &|a, b| format!("({a} ∨ {b})"),
        )
    }
}

/// Closes `generators` under meet and join; elements are labelled by their
/// partitions.
pub fn lattice_from_partitions(generators: &[Partition], budget: usize) -> Result<GeneratedLattice, LatticeError> {
    generate_sublattice(generators, budget, |p, _| p.to_string())
}

/// Closes `generators` under meet and join. `label` names each element from
/// its partition and index.
pub fn generate_sublattice(
    generators: &[Partition],
    budget: usize,
    label: impl Fn(&Partition, usize) -> String,
) -> Result<GeneratedLattice, LatticeError> {
    let Some(first) = generators.first() else {
        return Err(LatticeError::NoGenerators);
    };
    let n = first.size();
    for g in generators {
        if g.size() != n {
            return Err(crate::error::AlgebraError::SizeMismatch {
                left: n,
                right: g.size(),
            }
            .into());
        }
    }
    let mut partitions: Vec<Partition> = Vec::new();
    let mut derivations = Vec::new();
    let mut index: HashMap<Partition, usize> = HashMap::new();
    let mut gen_index = Vec::with_capacity(generators.len());
    for (gi, g) in generators.iter().enumerate() {
        let i = *index.entry(g.clone()).or_insert_with(|| {
            partitions.push(g.clone());
            derivations.push(Derivation::Generator(gi));
            partitions.len() - 1
        });
        gen_index.push(i);
    }
    if partitions.len() > budget {
        return Err(LatticeError::BudgetExceeded { budget });
    }
    // Combine each new element with every earlier one until nothing new
    // appears.
    let mut cursor = 0;
    while cursor < partitions.len() {
        let i = cursor;
        cursor += 1;
        for j in 0..=i {
            for is_meet in [true, false] {
                let p = if is_meet {
                    partitions[i].meet(&partitions[j])
                } else {
                    partitions[i].join(&partitions[j])
                };
                if index.contains_key(&p) {
                    continue;
                }
                index.insert(p.clone(), partitions.len());
                partitions.push(p);
                derivations.push(if is_meet {
                    Derivation::Meet(j, i)
                } else {
                    Derivation::Join(j, i)
                });
                if partitions.len() > budget {
                    return Err(LatticeError::BudgetExceeded { budget });
                }
            }
        }
    }
    let k = partitions.len();
    let mut leq = vec![false; k * k];
    for a in 0..k {
        for b in 0..k {
            leq[a * k + b] = partitions[a].refines(&partitions[b]);
        }
    }
    let labels = partitions.iter().enumerate().map(|(i, p)| label(p, i)).collect();
    let lattice = FiniteLattice::from_order(labels, leq)?;
    Ok(GeneratedLattice {
        lattice,
        partitions,
        derivations,
        generators: gen_index,
    })
}
