use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Q;
use crate::tree::{count_trees, Tree, TreeTable, DEFAULT_TREE_CAP};

/// Largest number of embeddings [`enumerate_embeddings`] will list.
pub const MAX_EMBEDDINGS: u128 = 1 << 20;

/// `t ↦ t(u_0, ..., u_{m-1})`, sending `T_m` into `T_n` with
/// `n = Σ #u_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Embedding {
    parts: Vec<Tree>,
}

impl Embedding {
    pub fn new(parts: Vec<Tree>) -> Result<Embedding> {
        if parts.is_empty() {
            return Err(Error::Invalid(
                "an embedding needs at least one part".into(),
            ));
        }
        Ok(Embedding { parts })
    }

    pub fn parts(&self) -> &[Tree] {
        &self.parts
    }

    pub fn m(&self) -> usize {
        self.parts.len()
    }

    pub fn n(&self) -> usize {
        self.parts.iter().map(Tree::size).sum()
    }

    pub fn apply(&self, t: &Tree) -> Result<Tree> {
        t.substitute(&self.parts)
    }
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(Tree::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Compositions of `n` into `m` positive parts, in lexicographic order.
pub fn compositions(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, m: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if m == 1 {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 1..=n - (m - 1) {
            prefix.push(first);
            go(n - first, m - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if m >= 1 && n >= m {
        go(n, m, &mut Vec::with_capacity(m), &mut out);
    }
    out
}

/// `Σ over compositions Π Catalan(part - 1)`.
pub fn count_embeddings(m: usize, n: usize) -> u128 {
    compositions(n, m)
        .iter()
        .map(|c| c.iter().map(|&p| count_trees(p)).product::<u128>())
        .sum()
}

/// All embeddings of `T_m` into `T_n`: compositions in lexicographic order,
/// then parts in canonical order with the last part varying fastest.
pub fn enumerate_embeddings(m: usize, n: usize) -> Result<Vec<Embedding>> {
    enumerate_embeddings_with_cap(m, n, DEFAULT_TREE_CAP)
}

pub fn enumerate_embeddings_with_cap(m: usize, n: usize, cap: usize) -> Result<Vec<Embedding>> {
    if m == 0 || m > n {
        return Err(Error::Invalid(format!(
            "embeddings need 1 <= m <= n, got m = {m}, n = {n}"
        )));
    }
    if n > cap {
        return Err(Error::CapExceeded { requested: n, cap });
    }
    let count = count_embeddings(m, n);
    if count > MAX_EMBEDDINGS {
        return Err(Error::Invalid(format!(
            "{count} embeddings of T_{m} into T_{n} exceeds the limit {MAX_EMBEDDINGS}"
        )));
    }
    let table = TreeTable::new(n - m + 1);
    let mut out = Vec::with_capacity(count as usize);
    for comp in compositions(n, m) {
        let mut idx = vec![0usize; m];
        'parts: loop {
            let parts = comp
                .iter()
                .zip(&idx)
                .map(|(&s, &i)| table.trees(s)[i].clone())
                .collect();
            out.push(Embedding { parts });
            // odometer over the parts, last part fastest
            let mut pos = m;
            loop {
                if pos == 0 {
                    break 'parts;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < table.trees(comp[pos]).len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
    Ok(out)
}

/// A convex combination of embeddings with the same `(m, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingCopy {
    m: usize,
    n: usize,
    terms: Vec<(Q, Embedding)>,
}

impl EmbeddingCopy {
    /// Validates positivity, normalization and compatible shapes. Zero
    /// weights are dropped and repeated embeddings merged.
    pub fn new(terms: Vec<(Q, Embedding)>) -> Result<EmbeddingCopy> {
        let first = terms
            .first()
            .ok_or_else(|| Error::Invalid("a copy needs at least one embedding".into()))?;
        let (m, n) = (first.1.m(), first.1.n());
        let mut total = Q::zero();
        let mut merged: std::collections::BTreeMap<Embedding, Q> = Default::default();
        for (w, e) in terms {
            if w.is_negative() {
                return Err(Error::NegativeWeight {
                    weight: w.to_string(),
                });
            }
            if (e.m(), e.n()) != (m, n) {
                return Err(Error::Invalid(format!(
                    "embedding {e} has shape ({}, {}), expected ({m}, {n})",
                    e.m(),
                    e.n()
                )));
            }
            total += &w;
            if !w.is_zero() {
                *merged.entry(e).or_insert_with(Q::zero) += w;
            }
        }
        if !total.is_one() {
            return Err(Error::NotNormalized {
                sum: total.to_string(),
            });
        }
        let terms = merged.into_iter().map(|(e, w)| (w, e)).collect();
        Ok(EmbeddingCopy { m, n, terms })
    }

    pub fn single(e: Embedding) -> EmbeddingCopy {
        EmbeddingCopy {
            m: e.m(),
            n: e.n(),
            terms: vec![(Q::one(), e)],
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(Q, Embedding)] {
        &self.terms
    }
}
