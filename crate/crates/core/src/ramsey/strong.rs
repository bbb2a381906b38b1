//! Strong copies: ranges of `t ↦ t(μ_0, ..., μ_{m-1})` for fixed measures.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::coloring::Coloring;
use super::copies::{min_oscillation_lp, oscillation};
use super::embedding::{compositions, Embedding, EmbeddingCopy};
use crate::error::{Error, Result};
use crate::measure::{substitute_measures, Caret, Measure};
use crate::rational::Q;
use crate::tree::{enumerate_trees, Tree, TreeTable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongCopy {
    pub measures: Vec<Measure<Tree>>,
    /// Values over the canonical order of `T_m`.
    pub values: Vec<Q>,
    pub oscillation: Q,
}

impl StrongCopy {
    pub fn sizes(&self) -> Vec<usize> {
        self.measures
            .iter()
            .map(|mu| mu.common_size().expect("single-size measures"))
            .collect()
    }

    /// Expands `Π μ_i` into a convex combination of embeddings.
    pub fn to_embedding_copy(&self) -> Result<EmbeddingCopy> {
        let mut terms: Vec<(Q, Vec<Tree>)> = vec![(Q::from_integer(1.into()), Vec::new())];
        for mu in &self.measures {
            let mut next = Vec::with_capacity(terms.len() * mu.support_len());
            for (w, parts) in &terms {
                for (s, ws) in mu.iter() {
                    let mut p = parts.clone();
                    p.push(s.clone());
                    next.push((w * ws, p));
                }
            }
            terms = next;
        }
        EmbeddingCopy::new(
            terms
                .into_iter()
                .map(|(w, parts)| Ok((w, Embedding::new(parts)?)))
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

/// Exact values `c(t(μ_0, ..., μ_{m-1}))` for `t ∈ T_m`.
pub fn strong_copy_values(measures: &[Measure<Tree>], c: &Coloring) -> Result<(Vec<Q>, Q)> {
    let m = measures.len();
    let domain = enumerate_trees(m)?;
    let mut values = Vec::with_capacity(domain.len());
    for t in &domain {
        let image = substitute_measures(&Caret, t, measures)?;
        values.push(image.evaluate(|s| c.value(s).ok().cloned())?);
    }
    let osc = oscillation(&values);
    Ok((values, osc))
}

fn check(c: &Coloring, m: usize) -> Result<()> {
    if m == 0 || m > c.n() {
        return Err(Error::Invalid(format!(
            "strong copies need 1 <= m <= n, got m = {m}, n = {}",
            c.n()
        )));
    }
    Ok(())
}

/// `cols[s][t] = Σ_{others} Π μ_k(s_k) c(t(..., s, ...))` with `s` in
/// position `i` ranging over `T_{n_i}`.
fn slot_columns(
    c: &Coloring,
    domain: &[Tree],
    measures: &[Measure<Tree>],
    i: usize,
    candidates: &[Tree],
) -> Result<Vec<Vec<Q>>> {
    let mut cols = Vec::with_capacity(candidates.len());
    let mut trial = measures.to_vec();
    for s in candidates {
        trial[i] = Measure::dirac(s.clone());
        let mut col = Vec::with_capacity(domain.len());
        for t in domain {
            let image = substitute_measures(&Caret, t, &trial)?;
            col.push(image.evaluate(|x| c.value(x).ok().cloned())?);
        }
        cols.push(col);
    }
    Ok(cols)
}

fn measure_from_weights(candidates: &[Tree], weights: &[Q]) -> Measure<Tree> {
    Measure::new(
        candidates
            .iter()
            .zip(weights)
            .filter(|(_, w)| w.is_positive())
            .map(|(s, w)| (s.clone(), w.clone())),
    )
    .expect("simplex weights")
}

/// Alternating exact LPs: with all measures but `μ_i` fixed the values are
/// linear in `μ_i`, so its best response is an oscillation LP. Each restart
/// samples a composition `n_0 + ... + n_{m-1} = n` uniformly and starts from
/// random point masses; `budget` bounds the number of LP solves.
pub fn strong_copy_search(c: &Coloring, m: usize, budget: u64, seed: u64) -> Result<StrongCopy> {
    check(c, m)?;
    if budget == 0 {
        return Err(Error::Invalid("budget must be positive".into()));
    }
    let n = c.n();
    let domain = enumerate_trees(m)?;
    let table = TreeTable::new(n - m + 1);
    let comps = compositions(n, m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut solves = 0u64;
    let mut best: Option<StrongCopy> = None;
    while solves < budget {
        let comp = &comps[rng.random_range(0..comps.len())];
        let mut measures: Vec<Measure<Tree>> = comp
            .iter()
            .map(|&s| {
                let trees = table.trees(s);
                Measure::dirac(trees[rng.random_range(0..trees.len())].clone())
            })
            .collect();
        let (_, mut current) = strong_copy_values(&measures, c)?;
        let mut stalled = 0;
        let mut i = 0;
        while stalled < m && solves < budget && !current.is_zero() {
            let candidates = table.trees(comp[i]);
            let cols = slot_columns(c, &domain, &measures, i, candidates)?;
            let sol = min_oscillation_lp(&cols);
            solves += 1;
            if sol.oscillation < current {
                measures[i] = measure_from_weights(candidates, &sol.weights);
                current = sol.oscillation;
                stalled = 0;
            } else {
                stalled += 1;
            }
            i = (i + 1) % m;
        }
        // exact re-evaluation, independent of the LP values
        let (values, osc) = strong_copy_values(&measures, c)?;
        let candidate = StrongCopy {
            measures,
            values,
            oscillation: osc,
        };
        if best
            .as_ref()
            .is_none_or(|b| candidate.oscillation < b.oscillation)
        {
            best = Some(candidate);
        }
        if best.as_ref().is_some_and(|b| b.oscillation.is_zero()) {
            break;
        }
    }
    Ok(best.expect("at least one restart"))
}

/// The exact minimum oscillation over all strong copies when every
/// composition of `n` into `m` parts has at most one part `n_i >= 3`
/// (so at most one `A_{n_i}` is not a single point and the values are
/// linear in that measure). Returns `None` otherwise.
pub fn strong_min_oscillation_exact(c: &Coloring, m: usize) -> Result<Option<StrongCopy>> {
    check(c, m)?;
    let n = c.n();
    let comps = compositions(n, m);
    if comps
        .iter()
        .any(|comp| comp.iter().filter(|&&s| s >= 3).count() > 1)
    {
        return Ok(None);
    }
    let domain = enumerate_trees(m)?;
    let table = TreeTable::new(n - m + 1);
    let mut best: Option<StrongCopy> = None;
    for comp in &comps {
        let mut measures: Vec<Measure<Tree>> = comp
            .iter()
            .map(|&s| Measure::dirac(table.trees(s)[0].clone()))
            .collect();
        if let Some(i) = comp.iter().position(|&s| s >= 3) {
            let candidates = table.trees(comp[i]);
            let cols = slot_columns(c, &domain, &measures, i, candidates)?;
            let sol = min_oscillation_lp(&cols);
            if !sol.certified {
                return Err(Error::Invalid("uncertified LP".into()));
            }
            measures[i] = measure_from_weights(candidates, &sol.weights);
        }
        let (values, osc) = strong_copy_values(&measures, c)?;
        if best.as_ref().is_none_or(|b| osc < b.oscillation) {
            best = Some(StrongCopy {
                measures,
                values,
                oscillation: osc,
            });
        }
    }
    Ok(best)
}
