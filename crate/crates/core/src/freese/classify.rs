//! Classification of the sublattices generated in `Con(A(β))` (N5, D1) and
//! `Con(A(μ))` (D2), cross-checked against the catalog.

use std::fmt;

use super::chain::{congruence_chain, ChainResult};
use super::patterns::{validate_d1, validate_d2, validate_n5, BoundsMode, D1Labels, D2Labels, N5Labels};
use super::subpower::{build_double, Side, SubpowerContext};
use crate::algebra::FiniteAlgebra;
use crate::catalog::{identify, CatalogEntry, CatalogId, Family};
use crate::error::EngineError;
use crate::lattice::{generate_sublattice, GeneratedLattice, LatticeEmbedding, DEFAULT_LATTICE_BUDGET};
use crate::partition::Partition;

/// Outcome families. The two infinite members are never returned: a chain
/// that does not stabilize within budget is an error instead.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassFamily {
    M,
    K,
    S,
    SStar,
    D13,
    L14,
    KInfinity,
    SInfinity,
}

impl fmt::Display for ClassFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassFamily::M => "M",
            ClassFamily::K => "K",
            ClassFamily::S => "S",
            ClassFamily::SStar => "S_star",
            ClassFamily::D13 => "D13",
            ClassFamily::L14 => "L14",
            ClassFamily::KInfinity => "K_inf",
            ClassFamily::SInfinity => "S_inf",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub mode: BoundsMode,
    /// Chain steps before giving up; `None` uses the size of the algebra,
    /// which always suffices since the chain climbs in `Eq(A)`.
    pub chain_budget: Option<usize>,
    pub lattice_budget: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            mode: BoundsMode::Strict,
            chain_budget: None,
            lattice_budget: DEFAULT_LATTICE_BUDGET,
        }
    }
}

impl ClassifyOptions {
    pub fn relaxed() -> Self {
        ClassifyOptions {
            mode: BoundsMode::Relaxed,
            ..Self::default()
        }
    }

    fn chain_budget_for(&self, alg: &FiniteAlgebra) -> usize {
        self.chain_budget.unwrap_or(alg.size() + 1)
    }
}

/// A classified generated sublattice.
#[derive(Clone, Debug)]
pub struct Classification {
    pub family: ClassFamily,
    /// Family index; 0 for the fixed shapes D13 and L14.
    pub index: usize,
    /// Catalog entry predicted by the chain (or fixed for D13 and L14).
    pub catalog: CatalogId,
    pub generator_names: Vec<String>,
    pub generated: GeneratedLattice,
    /// Name of each generated element: the catalog label when the witness
    /// exists, the generator term otherwise.
    pub element_names: Vec<String>,
    /// Isomorphism from the generated lattice onto the catalog entry that
    /// sends every generator to its landmark.
    pub witness: Option<LatticeEmbedding>,
    /// Catalog entry the generated lattice is isomorphic to, found by
    /// structural search alone.
    pub observed: Option<CatalogId>,
    pub chain: Option<ChainResult>,
    pub subpower_size: usize,
}

impl Classification {
    /// Whether the prediction and the generated lattice agree.
    pub fn agrees(&self) -> bool {
        self.witness.is_some()
    }

    pub fn name(&self) -> String {
        self.catalog.to_string()
    }

    /// Partition of the generated element named `name`.
    pub fn partition_of(&self, name: &str) -> Option<&Partition> {
        let i = self.element_names.iter().position(|n| n == name)?;
        Some(&self.generated.partitions[i])
    }
}

/// Maps each generated element to the catalog by evaluating its derivation
/// on the landmarks named like the generators; succeeds only for an
/// isomorphism.
pub fn landmark_witness(
    generated: &GeneratedLattice,
    names: &[String],
    entry: &CatalogEntry,
) -> Option<LatticeEmbedding> {
    let host = &entry.lattice;
    if generated.lattice.len() != host.len() {
        return None;
    }
    let values: Vec<usize> = names.iter().map(|n| entry.landmark(n)).collect::<Option<_>>()?;
    let map: Vec<usize> = (0..generated.lattice.len())
        .map(|i| {
            generated.evaluate(
                i,
                &|g| values[g],
                &|&a, &b| host.meet(a, b),
                &|&a, &b| host.join(a, b),
            )
        })
        .collect();
    let e = LatticeEmbedding::new(map);
    e.verify(&generated.lattice, host).then_some(e)
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

#[allow(clippy::too_many_arguments)]
fn finish(
    family: ClassFamily,
    index: usize,
    catalog: CatalogId,
    generator_names: Vec<String>,
    generators: &[Partition],
    ctx: &SubpowerContext,
    chain: Option<ChainResult>,
    opts: &ClassifyOptions,
    mismatch_is_error: bool,
) -> Result<Classification, EngineError> {
    let generated = generate_sublattice(generators, opts.lattice_budget, |p, _| p.to_string())?;
    let entry = catalog.build()?;
    let witness = landmark_witness(&generated, &generator_names, &entry);
    let observed = identify(&generated.lattice);
    let element_names: Vec<String> = match &witness {
        Some(w) => (0..generated.lattice.len())
            .map(|i| entry.lattice.label(w.image(i)).to_string())
            .collect(),
        None => (0..generated.lattice.len())
            .map(|i| generated.term(i, &generator_names))
            .collect(),
    };
    if witness.is_none() && mismatch_is_error && opts.mode == BoundsMode::Strict {
        return Err(EngineError::CrossCheckMismatch {
            expected: catalog.to_string(),
            found: match observed {
                Some(id) => id.to_string(),
                None => format!("an unlisted {}-element lattice", generated.lattice.len()),
            },
        });
    }
    Ok(Classification {
        family,
        index,
        catalog,
        generator_names,
        generated,
        element_names,
        witness,
        observed,
        chain,
        subpower_size: ctx.size(),
    })
}

fn run_chain(
    alg: &FiniteAlgebra,
    outer: &Partition,
    bridge: &Partition,
    seed: &Partition,
    budget: usize,
    infinite: ClassFamily,
) -> Result<ChainResult, EngineError> {
    congruence_chain(alg, outer, bridge, seed, budget).map_err(|e| match e {
        EngineError::ChainBudgetExhausted { steps } => EngineError::InfiniteBranch {
            family: infinite.to_string(),
            steps,
        },
        e => e,
    })
}

/// Classifies the sublattice of `Con(A(β))` generated by
/// `α₀, α₁, γ₀, γ₁, β₀`: `K_k` when the γ-chain first stabilizes at step `k`
/// on α, `M_(k+1)` when it stabilizes below α.
pub fn classify_n5(alg: &FiniteAlgebra, labels: &N5Labels, opts: &ClassifyOptions) -> Result<Classification, EngineError> {
    validate_n5(alg, labels, opts.mode)?;
    let N5Labels { alpha, beta, gamma } = labels;
    let chain = run_chain(alg, alpha, beta, gamma, opts.chain_budget_for(alg), ClassFamily::KInfinity)?;
    let k = chain.stabilized_at;
    let (family, index) = if chain.reached_outer {
        (ClassFamily::K, k)
    } else {
        (ClassFamily::M, k + 1)
    };
    let catalog = CatalogId::Member(
        if family == ClassFamily::K { Family::K } else { Family::M },
        index,
    );
    let ctx = build_double(alg, beta)?;
    let gens = vec![
        ctx.lift(alpha, Side::First)?,
        ctx.lift(alpha, Side::Second)?,
        ctx.lift(gamma, Side::First)?,
        ctx.lift(gamma, Side::Second)?,
        ctx.lift(beta, Side::First)?,
    ];
    finish(
        family,
        index,
        catalog,
        names(&["α₀", "α₁", "γ₀", "γ₁", "β₀"]),
        &gens,
        &ctx,
        Some(chain),
        opts,
        true,
    )
}

/// The sublattice of `Con(A(β))` generated by `α₀, α₁, γ₀, γ₁, β₀` for a
/// labelled D1, compared against D13.
///
/// A disagreement is reported through [`Classification::agrees`] rather than
/// as an error, since on small partition lattices the generated lattice has
/// 17 elements: `(α₀ ∧ α₁) ∨ (γ₀ ∧ γ₁)` stays below the top.
pub fn generate_d1_square(
    alg: &FiniteAlgebra,
    labels: &D1Labels,
    opts: &ClassifyOptions,
) -> Result<Classification, EngineError> {
    validate_d1(alg, labels, opts.mode)?;
    let D1Labels { alpha, beta, gamma } = labels;
    let ctx = build_double(alg, beta)?;
    let gens = vec![
        ctx.lift(alpha, Side::First)?,
        ctx.lift(alpha, Side::Second)?,
        ctx.lift(gamma, Side::First)?,
        ctx.lift(gamma, Side::Second)?,
        ctx.lift(beta, Side::First)?,
    ];
    finish(
        ClassFamily::D13,
        0,
        CatalogId::D13,
        names(&["α₀", "α₁", "γ₀", "γ₁", "β₀"]),
        &gens,
        &ctx,
        None,
        opts,
        false,
    )
}

/// The sublattice of `Con(A(γ))` generated by the lifted pentagon
/// `α₀, α₁, β₀, β₁, γ₀, γ₁`; always L14.
pub fn generate_l14(alg: &FiniteAlgebra, labels: &N5Labels, opts: &ClassifyOptions) -> Result<Classification, EngineError> {
    validate_n5(alg, labels, opts.mode)?;
    let N5Labels { alpha, beta, gamma } = labels;
    let ctx = build_double(alg, gamma)?;
    let mut gens = Vec::new();
    for theta in [alpha, beta, gamma] {
        gens.push(ctx.lift(theta, Side::First)?);
        gens.push(ctx.lift(theta, Side::Second)?);
    }
    finish(
        ClassFamily::L14,
        0,
        CatalogId::L14,
        names(&["α₀", "α₁", "β₀", "β₁", "γ₀", "γ₁"]),
        &gens,
        &ctx,
        None,
        opts,
        true,
    )
}

/// Classifies the sublattice of `Con(A(μ))` generated by
/// `μ₀, α₀, γ₀, γ₁, δ₀, δ₁`: `S*_k` when the δ-chain (bridge μ, outer γ)
/// first stabilizes at step `k` on γ, `S_(k+1)` when it stabilizes below γ.
pub fn classify_d2(alg: &FiniteAlgebra, labels: &D2Labels, opts: &ClassifyOptions) -> Result<Classification, EngineError> {
    validate_d2(alg, labels, opts.mode)?;
    let D2Labels {
        alpha,
        gamma,
        mu,
        delta,
        ..
    } = labels;
    let chain = run_chain(alg, gamma, mu, delta, opts.chain_budget_for(alg), ClassFamily::SInfinity)?;
    let k = chain.stabilized_at;
    let (family, index) = if chain.reached_outer {
        (ClassFamily::SStar, k)
    } else {
        (ClassFamily::S, k + 1)
    };
    let catalog = CatalogId::Member(
        if family == ClassFamily::SStar { Family::SStar } else { Family::S },
        index,
    );
    let ctx = build_double(alg, mu)?;
    let gens = vec![
        ctx.lift(mu, Side::First)?,
        ctx.lift(alpha, Side::First)?,
        ctx.lift(gamma, Side::First)?,
        ctx.lift(gamma, Side::Second)?,
        ctx.lift(delta, Side::First)?,
        ctx.lift(delta, Side::Second)?,
    ];
    finish(
        family,
        index,
        catalog,
        names(&["μ₀", "α₀", "γ₀", "γ₁", "δ₀", "δ₁"]),
        &gens,
        &ctx,
        Some(chain),
        opts,
        true,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn witness_n5() -> N5Labels {
        N5Labels {
            alpha: p("|0,1|2,3|"),
            beta: p("|0,2|1,3|"),
            gamma: p("|0,1|2|3|"),
        }
    }

    #[test]
    fn four_element_pentagon_is_k1() {
        let alg = FiniteAlgebra::set(4).unwrap();
        let c = classify_n5(&alg, &witness_n5(), &ClassifyOptions::default()).unwrap();
        assert_eq!((c.family, c.index), (ClassFamily::K, 1));
        assert_eq!(c.observed, Some(CatalogId::Member(Family::K, 1)));
        assert_eq!(c.subpower_size, 8);
        assert_eq!(c.generated.lattice.len(), 14);
        // the landmark map sends generators to their names
        let a0 = c.generated.generators[0];
        assert_eq!(c.element_names[a0], "α₀");
        assert!(c.partition_of("θ₀").is_some());
    }

    #[test]
    fn l14_from_the_pentagon() {
        let alg = FiniteAlgebra::set(4).unwrap();
        let c = generate_l14(&alg, &witness_n5(), &ClassifyOptions::default()).unwrap();
        assert!(c.agrees());
        assert_eq!(c.generated.lattice.len(), 9);
    }

    #[test]
    fn relaxed_d2_fixtures() {
        let alg = FiniteAlgebra::set(5).unwrap();
        let l = D2Labels {
            alpha: p("|0,2,4|1,3|"),
            beta: None,
            gamma: p("|0,1|2,3|4|"),
            mu: p("|0,2|1,3|4|"),
            delta: p("|0,1|2|3|4|"),
        };
        let c = classify_d2(&alg, &l, &ClassifyOptions::relaxed()).unwrap();
        assert_eq!(c.catalog, CatalogId::Member(Family::SStar, 1));
        assert!(c.agrees());
        let alg = FiniteAlgebra::set(6).unwrap();
        let l = D2Labels {
            alpha: p("|0,3|1,4|2,5|"),
            beta: None,
            gamma: p("|0,1,2|3,4,5|"),
            mu: p("|0,3|1,4|2|5|"),
            delta: p("|0,1,2|3|4|5|"),
        };
        let c = classify_d2(&alg, &l, &ClassifyOptions::relaxed()).unwrap();
        assert_eq!(c.catalog, CatalogId::Member(Family::S, 2));
        assert!(c.agrees());
    }

    #[test]
    fn budget_exhaustion_names_the_infinite_branch() {
        let alg = FiniteAlgebra::set(6).unwrap();
        let l = N5Labels {
            alpha: p("|0,1,2|3,4,5|"),
            beta: p("|0,3|1,4|2,5|"),
            gamma: p("|0,1|2|3|4|5|"),
        };
        let opts = ClassifyOptions {
            chain_budget: Some(1),
            ..ClassifyOptions::relaxed()
        };
        let err = classify_n5(&alg, &l, &opts).unwrap_err();
        assert!(matches!(err, EngineError::InfiniteBranch { .. }), "{err}");
    }
}
