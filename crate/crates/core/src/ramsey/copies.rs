use num_traits::{One, Signed, Zero};

use super::coloring::Coloring;
use super::embedding::{enumerate_embeddings, Embedding, EmbeddingCopy};
use super::lp::{LinearProgram, LpOutcome, Relation};
use crate::error::{Error, Result};
use crate::rational::Q;
use crate::tree::{enumerate_trees, Tree};

/// Values of a linearly extended coloring on a copy, indexed by the
/// canonical order of `T_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CopyValues {
    pub values: Vec<Q>,
    pub oscillation: Q,
}

pub(crate) fn oscillation(values: &[Q]) -> Q {
    match (values.iter().max(), values.iter().min()) {
        (Some(hi), Some(lo)) => hi - lo,
        _ => Q::zero(),
    }
}

/// `t ↦ Σ_j λ_j c(e_j(t))` over `T_m`.
pub fn copy_values(copy: &EmbeddingCopy, c: &Coloring) -> Result<CopyValues> {
    if copy.n() != c.n() {
        return Err(Error::LengthMismatch {
            expected: copy.n(),
            found: c.n(),
        });
    }
    let domain = enumerate_trees(copy.m())?;
    let mut values = Vec::with_capacity(domain.len());
    for t in &domain {
        let mut v = Q::zero();
        for (w, e) in copy.terms() {
            v += w * c.value(&e.apply(t)?)?;
        }
        values.push(v);
    }
    let oscillation = oscillation(&values);
    Ok(CopyValues {
        values,
        oscillation,
    })
}

/// Minimizes `max - min` of `Σ_j λ_j v[j][t]` over the simplex, exactly.
#[derive(Debug, Clone)]
pub struct OscillationLp {
    pub lp: LinearProgram,
    pub outcome: LpOutcome,
    pub weights: Vec<Q>,
    pub oscillation: Q,
    /// The certificate was re-checked against the problem data.
    pub certified: bool,
}

/// `columns[j][t]` is the value of option `j` at point `t`.
pub fn min_oscillation_lp(columns: &[Vec<Q>]) -> OscillationLp {
    let k = columns.len();
    let points = columns.first().map_or(0, Vec::len);
    // variables: λ_0..λ_{k-1}, u, w
    let mut lp = LinearProgram::new(k + 2);
    let mut obj = vec![Q::zero(); k + 2];
    obj[k] = Q::one();
    obj[k + 1] = -Q::one();
    lp.set_objective(obj);
    let mut simplex = vec![Q::one(); k + 2];
    simplex[k] = Q::zero();
    simplex[k + 1] = Q::zero();
    lp.add_row(simplex, Relation::Eq, Q::one());
    for t in 0..points {
        let mut row: Vec<Q> = columns.iter().map(|col| col[t].clone()).collect();
        row.push(-Q::one());
        row.push(Q::zero());
        lp.add_row(row, Relation::Le, Q::zero());
        let mut row: Vec<Q> = columns.iter().map(|col| col[t].clone()).collect();
        row.push(Q::zero());
        row.push(-Q::one());
        lp.add_row(row, Relation::Ge, Q::zero());
    }
    let outcome = lp.solve();
    let certified = lp.verify(&outcome);
    let (weights, oscillation) = match &outcome {
        LpOutcome::Optimal { x, value, .. } => (x[..k].to_vec(), value.clone()),
        _ => unreachable!("the oscillation LP is feasible and bounded below by 0"),
    };
    OscillationLp {
        lp,
        outcome,
        weights,
        oscillation,
        certified,
    }
}

/// The embeddings of `T_m` into `T_n` with their images precomputed as
/// indices into the canonical order of `T_n`.
#[derive(Debug, Clone)]
pub struct CopyProblem {
    m: usize,
    n: usize,
    embeddings: Vec<Embedding>,
    /// `images[j][t] = rank(e_j(t))`.
    images: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct OscillationResult {
    pub copy: EmbeddingCopy,
    pub values: Vec<Q>,
    pub oscillation: Q,
    pub certified: bool,
    pub outcome: LpOutcome,
}

#[derive(Debug, Clone)]
pub enum ConstantCopy {
    /// A copy on which the coloring is constant.
    Witness { copy: EmbeddingCopy, value: Q },
    /// Farkas certificate for the standard form of the feasibility LP.
    Infeasible { farkas: Vec<Q>, certified: bool },
}

impl ConstantCopy {
    pub fn witness(&self) -> Option<&EmbeddingCopy> {
        match self {
            ConstantCopy::Witness { copy, .. } => Some(copy),
            ConstantCopy::Infeasible { .. } => None,
        }
    }
}

impl CopyProblem {
    pub fn new(m: usize, n: usize) -> Result<CopyProblem> {
        CopyProblem::from_embeddings(m, n, enumerate_embeddings(m, n)?)
    }

    /// Restricts the search to the given embeddings.
    pub fn from_embeddings(m: usize, n: usize, embeddings: Vec<Embedding>) -> Result<CopyProblem> {
        if embeddings.is_empty() {
            return Err(Error::Invalid("no embeddings".into()));
        }
        let domain = enumerate_trees(m)?;
        let mut images = Vec::with_capacity(embeddings.len());
        for e in &embeddings {
            if (e.m(), e.n()) != (m, n) {
                return Err(Error::Invalid(format!(
                    "embedding {e} does not map T_{m} into T_{n}"
                )));
            }
            images.push(
                domain
                    .iter()
                    .map(|t| Ok(e.apply(t)?.rank() as usize))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(CopyProblem {
            m,
            n,
            embeddings,
            images,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn embeddings(&self) -> &[Embedding] {
        &self.embeddings
    }

    fn check(&self, c: &Coloring) -> Result<()> {
        if c.n() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: c.n(),
            });
        }
        Ok(())
    }

    fn columns(&self, c: &Coloring) -> Vec<Vec<Q>> {
        self.images
            .iter()
            .map(|img| img.iter().map(|&i| c.value_at(i).clone()).collect())
            .collect()
    }

    fn copy_from_weights(&self, weights: &[Q]) -> EmbeddingCopy {
        let terms = weights
            .iter()
            .zip(&self.embeddings)
            .filter(|(w, _)| w.is_positive())
            .map(|(w, e)| (w.clone(), e.clone()))
            .collect();
        EmbeddingCopy::new(terms).expect("simplex weights")
    }

    pub fn min_oscillation(&self, c: &Coloring) -> Result<OscillationResult> {
        self.check(c)?;
        let columns = self.columns(c);
        let sol = min_oscillation_lp(&columns);
        let values = (0..columns[0].len())
            .map(|t| {
                columns
                    .iter()
                    .zip(&sol.weights)
                    .map(|(col, w)| &col[t] * w)
                    .sum()
            })
            .collect();
        Ok(OscillationResult {
            copy: self.copy_from_weights(&sol.weights),
            values,
            oscillation: sol.oscillation,
            certified: sol.certified,
            outcome: sol.outcome,
        })
    }

    /// Exact feasibility of `Σ_j λ_j c(e_j(t)) = v` for every `t`.
    pub fn constant_copy(&self, c: &Coloring) -> Result<ConstantCopy> {
        self.check(c)?;
        if let Some(i) = c.first_non_binary() {
            return Err(Error::NotBinary {
                tree: Tree::unrank(self.n, i as u128).unwrap().to_string(),
            });
        }
        let columns = self.columns(c);
        let k = columns.len();
        // variables: λ_0..λ_{k-1}, v
        let mut lp = LinearProgram::new(k + 1);
        let mut simplex = vec![Q::one(); k + 1];
        simplex[k] = Q::zero();
        lp.add_row(simplex, Relation::Eq, Q::one());
        for t in 0..columns[0].len() {
            let mut row: Vec<Q> = columns.iter().map(|col| col[t].clone()).collect();
            row.push(-Q::one());
            lp.add_row(row, Relation::Eq, Q::zero());
        }
        let outcome = lp.solve();
        let certified = lp.verify(&outcome);
        Ok(match outcome {
            LpOutcome::Optimal { x, .. } => ConstantCopy::Witness {
                copy: self.copy_from_weights(&x[..k]),
                value: x[k].clone(),
            },
            LpOutcome::Infeasible { y } => ConstantCopy::Infeasible {
                farkas: y,
                certified,
            },
            LpOutcome::Unbounded { .. } => unreachable!("zero objective"),
        })
    }
}

/// Minimum oscillation of `c` over all copies of `T_m` in `A_n`.
pub fn min_oscillation_copy(c: &Coloring, m: usize) -> Result<OscillationResult> {
    CopyProblem::new(m, c.n())?.min_oscillation(c)
}

/// A copy of `T_m` on which the 0/1 coloring `c` is constant, if any.
pub fn constant_copy_exists(c: &Coloring, m: usize) -> Result<ConstantCopy> {
    CopyProblem::new(m, c.n())?.constant_copy(c)
}
