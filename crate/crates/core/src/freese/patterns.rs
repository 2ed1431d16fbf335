//! Labelled N5, D1 and D2 configurations in a congruence lattice and their
//! validation against the catalog figures.

use crate::algebra::FiniteAlgebra;
use crate::catalog::{CatalogEntry, CatalogId};
use crate::error::{AlgebraError, EngineError};
use crate::lattice::lattice_from_partitions;
use crate::partition::Partition;

/// How strictly the labelled pattern must match its figure.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum BoundsMode {
    /// The labelled partitions form the figure with the bottom at `0_A`
    /// (and, for D1, the top at `1_A`).
    #[default]
    Strict,
    /// Only the hypotheses the doubling lemmas use: N5 needs `γ < α` and
    /// `α ∧ β = 0_A`; D2 needs `μ < α`, `δ < γ` and `μ ∧ γ = α ∧ γ = 0_A`
    /// with β ignored; D1 drops the top condition.
    Relaxed,
}

/// A pentagon `0 < γ < α < 1`, `0 < β < 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct N5Labels {
    pub alpha: Partition,
    pub beta: Partition,
    pub gamma: Partition,
}

/// Three atoms α, β, γ with `μ = α ∨ β` and `δ = β ∨ γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D1Labels {
    pub alpha: Partition,
    pub beta: Partition,
    pub gamma: Partition,
}

impl D1Labels {
    pub fn mu(&self) -> Partition {
        self.alpha.join(&self.beta)
    }

    pub fn delta(&self) -> Partition {
        self.beta.join(&self.gamma)
    }
}

/// Three coatoms α, β, γ with `μ = α ∧ β` and `δ = β ∧ γ`. In relaxed mode β
/// may be absent and μ, δ are taken as given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D2Labels {
    pub alpha: Partition,
    pub beta: Option<Partition>,
    pub gamma: Partition,
    pub mu: Partition,
    pub delta: Partition,
}

impl D2Labels {
    /// Labels with μ and δ computed from α, β, γ.
    pub fn from_coatoms(alpha: Partition, beta: Partition, gamma: Partition) -> Self {
        let mu = alpha.meet(&beta);
        let delta = beta.meet(&gamma);
        D2Labels {
            alpha,
            beta: Some(beta),
            gamma,
            mu,
            delta,
        }
    }
}

fn not_a(pattern: &str, reason: impl Into<String>) -> EngineError {
    EngineError::NotAPattern {
        pattern: pattern.into(),
        reason: reason.into(),
    }
}

fn check_inputs(alg: &FiniteAlgebra, named: &[(&str, &Partition)]) -> Result<(), EngineError> {
    for (name, p) in named {
        if p.size() != alg.size() {
            return Err(AlgebraError::SizeMismatch {
                left: alg.size(),
                right: p.size(),
            }
            .into());
        }
        if !alg.is_congruence(p)? {
            return Err(EngineError::NotACongruence { label: name.to_string() });
        }
    }
    Ok(())
}

/// Checks that assigning `values` to the figure labels is an injective
/// lattice homomorphism. Returns the first violated identity.
pub fn check_assignment(figure: &CatalogEntry, values: &[(&str, Partition)]) -> Result<(), String> {
    let l = &figure.lattice;
    let mut image: Vec<Option<&Partition>> = vec![None; l.len()];
    for (name, p) in values {
        let i = figure
            .landmark(name)
            .ok_or_else(|| format!("figure {} has no element `{name}`", figure.name()))?;
        image[i] = Some(p);
    }
    let image: Vec<&Partition> = image
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.ok_or_else(|| format!("no partition for `{}`", l.label(i))))
        .collect::<Result<_, _>>()?;
    for a in 0..l.len() {
        for b in a + 1..l.len() {
            if image[a] == image[b] {
                return Err(format!("{} and {} coincide", l.label(a), l.label(b)));
            }
            let m = image[a].meet(image[b]);
            if &m != image[l.meet(a, b)] {
                return Err(format!(
                    "{} ∧ {} is {m}, not {}",
                    l.label(a),
                    l.label(b),
                    l.label(l.meet(a, b))
                ));
            }
            let j = image[a].join(image[b]);
            if &j != image[l.join(a, b)] {
                return Err(format!(
                    "{} ∨ {} is {j}, not {}",
                    l.label(a),
                    l.label(b),
                    l.label(l.join(a, b))
                ));
            }
        }
    }
    Ok(())
}

/// Validates a labelled pentagon. In strict mode a failure on labels that
/// generate a modular lattice is reported as a modular quintuple.
pub fn validate_n5(alg: &FiniteAlgebra, labels: &N5Labels, mode: BoundsMode) -> Result<(), EngineError> {
    let N5Labels { alpha, beta, gamma } = labels;
    check_inputs(alg, &[("α", alpha), ("β", beta), ("γ", gamma)])?;
    let reason = n5_failure(labels, mode)?;
    let Some(reason) = reason else {
        return Ok(());
    };
    if mode == BoundsMode::Strict {
        let generated = lattice_from_partitions(&[alpha.clone(), beta.clone(), gamma.clone()], 64);
        if matches!(generated, Ok(g) if g.lattice.is_modular()) {
            return Err(not_a("N5", format!("modular quintuple ({reason})")));
        }
    }
    Err(not_a("N5", reason))
}

fn n5_failure(labels: &N5Labels, mode: BoundsMode) -> Result<Option<String>, EngineError> {
    let N5Labels { alpha, beta, gamma } = labels;
    if !gamma.refines(alpha) || gamma == alpha {
        return Ok(Some("γ is not strictly below α".into()));
    }
    let zero = alpha.meet(beta);
    if !zero.is_bottom() {
        return Ok(Some(format!("α ∧ β = {zero} is not the least congruence")));
    }
    if mode == BoundsMode::Relaxed {
        return Ok(None);
    }
    let figure = CatalogId::N5.build()?;
    let values = [
        ("0", zero),
        ("γ", gamma.clone()),
        ("α", alpha.clone()),
        ("β", beta.clone()),
        ("1", alpha.join(beta)),
    ];
    Ok(check_assignment(&figure, &values).err())
}

/// Validates a labelled D1.
pub fn validate_d1(alg: &FiniteAlgebra, labels: &D1Labels, mode: BoundsMode) -> Result<(), EngineError> {
    let D1Labels { alpha, beta, gamma } = labels;
    check_inputs(alg, &[("α", alpha), ("β", beta), ("γ", gamma)])?;
    let zero = alpha.meet(gamma);
    if !zero.is_bottom() {
        return Err(not_a("D1", format!("α ∧ γ = {zero} is not the least congruence")));
    }
    let one = alpha.join(gamma);
    if mode == BoundsMode::Strict && !one.is_top() {
        return Err(not_a("D1", format!("α ∨ γ = {one} is not the greatest congruence")));
    }
    let figure = CatalogId::D1.build()?;
    let values = [
        ("0", zero),
        ("α", alpha.clone()),
        ("β", beta.clone()),
        ("γ", gamma.clone()),
        ("μ", labels.mu()),
        ("δ", labels.delta()),
        ("1", one),
    ];
    check_assignment(&figure, &values).map_err(|reason| not_a("D1", reason))
}

/// Validates a labelled D2.
pub fn validate_d2(alg: &FiniteAlgebra, labels: &D2Labels, mode: BoundsMode) -> Result<(), EngineError> {
    let D2Labels {
        alpha,
        beta,
        gamma,
        mu,
        delta,
    } = labels;
    check_inputs(alg, &[("α", alpha), ("γ", gamma), ("μ", mu), ("δ", delta)])?;
    if let Some(beta) = beta {
        check_inputs(alg, &[("β", beta)])?;
    }
    if !mu.refines(alpha) || mu == alpha {
        return Err(not_a("D2", "μ is not strictly below α"));
    }
    if !delta.refines(gamma) || delta == gamma {
        return Err(not_a("D2", "δ is not strictly below γ"));
    }
    for (name, p) in [("μ ∧ γ", mu.meet(gamma)), ("α ∧ γ", alpha.meet(gamma))] {
        if !p.is_bottom() {
            return Err(not_a("D2", format!("{name} = {p} is not the least congruence")));
        }
    }
    if mode == BoundsMode::Relaxed {
        return Ok(());
    }
    let beta = beta.as_ref().ok_or_else(|| not_a("D2", "β is required outside relaxed mode"))?;
    if &alpha.meet(beta) != mu {
        return Err(not_a("D2", "μ is not α ∧ β"));
    }
    if &beta.meet(gamma) != delta {
        return Err(not_a("D2", "δ is not β ∧ γ"));
    }
    let figure = CatalogId::D2.build()?;
    let values = [
        ("0", Partition::bottom(alg.size())),
        ("μ", mu.clone()),
        ("δ", delta.clone()),
        ("α", alpha.clone()),
        ("β", beta.clone()),
        ("γ", gamma.clone()),
        ("1", alpha.join(beta)),
    ];
    check_assignment(&figure, &values).map_err(|reason| not_a("D2", reason))
}
