//! Exhaustive search for labelled N5, D1 and D2 configurations in a list of
//! congruences. Results come back in lexicographic order of label indices
//! whatever the thread count.

use rayon::prelude::*;

use super::patterns::{check_assignment, D1Labels, D2Labels, N5Labels};
use crate::algebra::{FiniteAlgebra, DEFAULT_CONGRUENCE_BUDGET};
use crate::catalog::{CatalogEntry, CatalogId};
use crate::error::EngineError;
use crate::partition::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Keep only configurations whose bottom is the least congruence.
    pub zero_bottom: bool,
    /// Worker threads; `None` runs on the calling thread.
    pub threads: Option<usize>,
    /// Cap on the number of congruences enumerated.
    pub congruence_budget: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            zero_bottom: true,
            threads: None,
            congruence_budget: DEFAULT_CONGRUENCE_BUDGET,
        }
    }
}

/// Runs `per_first` for every first index and concatenates the results in
/// index order.
fn run<T, F>(m: usize, threads: Option<usize>, per_first: F) -> Result<Vec<T>, EngineError>
where
    T: Send,
    F: Fn(usize) -> Vec<T> + Sync + Send,
{
    let chunks: Vec<Vec<T>> = match threads {
        None | Some(1) => (0..m).map(&per_first).collect(),
        Some(0) => return Err(EngineError::Threads(0)),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|_| EngineError::Threads(t))?;
            pool.install(|| (0..m).into_par_iter().map(&per_first).collect())
        }
    };
    Ok(chunks.into_iter().flatten().collect())
}

/// Labelled pentagons `(α, β, γ)` with `γ < α` among `cons`.
pub fn search_n5_in(cons: &[Partition], opts: &SearchOptions) -> Result<Vec<N5Labels>, EngineError> {
    run(cons.len(), opts.threads, |ai| {
        let alpha = &cons[ai];
        let mut out = Vec::new();
        for gamma in cons.iter().filter(|g| g.refines(alpha) && *g != alpha) {
            for beta in cons {
                let zero = alpha.meet(beta);
                if opts.zero_bottom && !zero.is_bottom() {
                    continue;
                }
                if zero == *gamma || gamma.meet(beta) != zero {
                    continue;
                }
                let one = alpha.join(beta);
                if one == *alpha || gamma.join(beta) != one || &zero == beta {
                    continue;
                }
                out.push(N5Labels {
                    alpha: alpha.clone(),
                    beta: beta.clone(),
                    gamma: gamma.clone(),
                });
            }
        }
        out
    })
}

pub fn search_n5_all(alg: &FiniteAlgebra, opts: &SearchOptions) -> Result<Vec<N5Labels>, EngineError> {
    let cons = alg.all_congruences_with_budget(opts.congruence_budget)?;
    search_n5_in(&cons, opts)
}

fn figure(id: CatalogId) -> CatalogEntry {
    id.build().expect("fixed figures are lattices")
}

/// Labelled D1 configurations among `cons`. With `zero_bottom` the top must
/// also be the greatest congruence.
pub fn search_d1_in(cons: &[Partition], opts: &SearchOptions) -> Result<Vec<D1Labels>, EngineError> {
    let d1 = figure(CatalogId::D1);
    run(cons.len(), opts.threads, |ai| {
        let alpha = &cons[ai];
        let mut out = Vec::new();
        for gamma in cons {
            let zero = alpha.meet(gamma);
            let one = alpha.join(gamma);
            if opts.zero_bottom && !(zero.is_bottom() && one.is_top()) {
                continue;
            }
            if zero == *alpha || zero == *gamma {
                continue;
            }
            for beta in cons {
                if alpha.meet(beta) != zero || gamma.meet(beta) != zero {
                    continue;
                }
                let labels = D1Labels {
                    alpha: alpha.clone(),
                    beta: beta.clone(),
                    gamma: gamma.clone(),
                };
                let values = [
                    ("0", zero.clone()),
                    ("α", alpha.clone()),
                    ("β", beta.clone()),
                    ("γ", gamma.clone()),
                    ("μ", labels.mu()),
                    ("δ", labels.delta()),
                    ("1", one.clone()),
                ];
                if check_assignment(&d1, &values).is_ok() {
                    out.push(labels);
                }
            }
        }
        out
    })
}

pub fn search_d1_all(alg: &FiniteAlgebra, opts: &SearchOptions) -> Result<Vec<D1Labels>, EngineError> {
    let cons = alg.all_congruences_with_budget(opts.congruence_budget)?;
    search_d1_in(&cons, opts)
}

/// Labelled D2 configurations among `cons`.
pub fn search_d2_in(cons: &[Partition], opts: &SearchOptions) -> Result<Vec<D2Labels>, EngineError> {
    let d2 = figure(CatalogId::D2);
    run(cons.len(), opts.threads, |ai| {
        let alpha = &cons[ai];
        let mut out = Vec::new();
        for gamma in cons {
            let zero = alpha.meet(gamma);
            if opts.zero_bottom && !zero.is_bottom() {
                continue;
            }
            let one = alpha.join(gamma);
            if one == *alpha || one == *gamma {
                continue;
            }
            for beta in cons {
                if alpha.join(beta) != one || gamma.join(beta) != one {
                    continue;
                }
                let labels = D2Labels::from_coatoms(alpha.clone(), beta.clone(), gamma.clone());
                let values = [
                    ("0", zero.clone()),
                    ("μ", labels.mu.clone()),
                    ("δ", labels.delta.clone()),
                    ("α", alpha.clone()),
                    ("β", beta.clone()),
                    ("γ", gamma.clone()),
                    ("1", one.clone()),
                ];
                if check_assignment(&d2, &values).is_ok() {
                    out.push(labels);
                }
            }
        }
        out
    })
}

pub fn search_d2_all(alg: &FiniteAlgebra, opts: &SearchOptions) -> Result<Vec<D2Labels>, EngineError> {
    let cons = alg.all_congruences_with_budget(opts.congruence_budget)?;
    search_d2_in(&cons, opts)
}
