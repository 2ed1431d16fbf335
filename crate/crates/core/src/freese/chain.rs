//! The ascending congruence chain `x ↦ Cg((bridge ∘ x ∘ bridge) ∩ outer)`.

use crate::algebra::FiniteAlgebra;
use crate::error::EngineError;
use crate::partition::Partition;
use crate::relation::BinaryRelation;

/// Default number of chain steps attempted before giving up.
pub const DEFAULT_CHAIN_BUDGET: usize = 64;

/// A chain that stabilized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainResult {
    /// `x⁰, x¹, .., xᵏ` where `k` is the first index with `xᵏ = xᵏ⁺¹`.
    pub chain: Vec<Partition>,
    pub stabilized_at: usize,
    /// Whether the limit equals the outer congruence.
    pub reached_outer: bool,
}

impl ChainResult {
    /// `xⁱ` for any `i`, using stabilization beyond the stored prefix.
    pub fn get(&self, i: usize) -> &Partition {
        &self.chain[i.min(self.stabilized_at)]
    }

    pub fn limit(&self) -> &Partition {
        &self.chain[self.stabilized_at]
    }
}

/// One step: `Cg((bridge ∘ x ∘ bridge) ∩ outer)`.
pub fn chain_step(
    alg: &FiniteAlgebra,
    outer: &Partition,
    bridge: &Partition,
    x: &Partition,
) -> Result<Partition, EngineError> {
    let b = BinaryRelation::from_partition(bridge);
    let tolerance = b
        .compose(&BinaryRelation::from_partition(x))?
        .compose(&b)?
        .intersect(&BinaryRelation::from_partition(outer))?;
    Ok(alg.cg(tolerance.pairs())?)
}

/// Iterates [`chain_step`] from `seed` until two consecutive terms agree.
///
/// All three inputs must be congruences and `seed <= outer`. Fails with
/// [`EngineError::ChainBudgetExhausted`] if the chain is still growing after
/// `budget` steps.
pub fn congruence_chain(
    alg: &FiniteAlgebra,
    outer: &Partition,
    bridge: &Partition,
    seed: &Partition,
    budget: usize,
) -> Result<ChainResult, EngineError> {
    for (label, p) in [("outer", outer), ("bridge", bridge), ("seed", seed)] {
        if !alg.is_congruence(p)? {
            return Err(EngineError::NotACongruence { label: label.into() });
        }
    }
    if !seed.refines(outer) {
        return Err(EngineError::NotAPattern {
            pattern: "ascending chain".into(),
            reason: "seed is not below the outer congruence".into(),
        });
    }
    let mut chain = vec![seed.clone()];
    for _ in 0..budget {
        let last = chain.last().expect("non-empty");
        let next = chain_step(alg, outer, bridge, last)?;
        if &next == last {
            let stabilized_at = chain.len() - 1;
            let reached_outer = &next == outer;
            return Ok(ChainResult {
                chain,
                stabilized_at,
                reached_outer,
            });
        }
        chain.push(next);
    }
    Err(EngineError::ChainBudgetExhausted { steps: budget })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn four_element_pentagon_reaches_alpha_in_one_step() {
        let alg = FiniteAlgebra::set(4).unwrap();
        let alpha = p("|0,1|2,3|");
        let beta = p("|0,2|1,3|");
        let gamma = p("|0,1|2|3|");
        let r = congruence_chain(&alg, &alpha, &beta, &gamma, 10).unwrap();
        assert_eq!(r.stabilized_at, 1);
        assert!(r.reached_outer);
        assert_eq!(r.get(5), &alpha);
    }

    #[test]
    fn chain_is_monotone_and_bounded_on_all_small_triples() {
        let alg = FiniteAlgebra::set(4).unwrap();
        let all = Partition::all(4);
        for outer in &all {
            for bridge in &all {
                for seed in all.iter().filter(|s| s.refines(outer)) {
                    let r = congruence_chain(&alg, outer, bridge, seed, 20).unwrap();
                    for w in r.chain.windows(2) {
                        assert!(w[0].refines(&w[1]) && w[0] != w[1]);
                    }
                    assert!(r.limit().refines(outer));
                    let again = chain_step(&alg, outer, bridge, r.limit()).unwrap();
                    assert_eq!(&again, r.limit());
                }
            }
        }
    }

    #[test]
    fn rejects_seed_above_outer() {
        let alg = FiniteAlgebra::set(3).unwrap();
        let err = congruence_chain(&alg, &p("|0|1|2|"), &p("|0,1,2|"), &p("|0,1|2|"), 5);
        assert!(matches!(err, Err(EngineError::NotAPattern { .. })));
    }

    #[test]
    fn budget_exhaustion() {
        let alg = FiniteAlgebra::set(9).unwrap();
        let beta = p("|0,4,5|1,2,6|3,7,8|");
        let outer = Partition::top(9);
        let r = congruence_chain(&alg, &outer, &beta, &beta, 1).unwrap();
        assert_eq!(r.stabilized_at, 0);
        let seed = p("|0,1|2|3|4|5|6|7|8|");
        assert!(matches!(
            congruence_chain(&alg, &outer, &beta, &seed, 1),
            Err(EngineError::ChainBudgetExhausted { steps: 1 })
        ));
    }
}
