//! Finite binary systems given by a multiplication table.
//!
//! File format: the first line holds the carrier size `k`, followed by `k`
//! rows of `k` whitespace-separated entries; row `i`, column `j` is `i ⋆ j`.
//! An optional final line `labels a b c ...` names the elements.

mod hindman;
mod hom;
mod quotient;
mod solve;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::measure::BinarySystem;

pub use hindman::{hindman_pair_engine, HindmanCertificate, HindmanOptions, HindmanPairs};
pub use hom::{reachable_sets, Evaluation, ReachableSets, Stabilization, MAX_REACH_CAP};
pub use quotient::{quotient_system, QuotientOutcome};
pub use solve::{
    classify_small_supports, find_idempotent, verify_idempotent, IdempotentClass, Method,
    SolveOptions, SolveReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Magma {
    k: usize,
    table: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl Magma {
    /// `rows[i][j] = i ⋆ j`.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Magma> {
        let k = rows.len();
        if k == 0 {
            return Err(Error::Invalid("magma carrier must be nonempty".into()));
        }
        let mut table = Vec::with_capacity(k * k);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != k {
                return Err(Error::Invalid(format!(
                    "row {i} has {} entries, expected {k}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= k) {
                return Err(Error::OutOfRange {
                    index: bad,
                    bound: k,
                });
            }
            table.extend(row);
        }
        Ok(Magma {
            k,
            table,
            labels: None,
        })
    }

    /// Builds the table from a function on `0..k`.
    pub fn from_fn(k: usize, f: impl Fn(usize, usize) -> usize) -> Result<Magma> {
        Magma::from_rows((0..k).map(|i| (0..k).map(|j| f(i, j)).collect()).collect())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Magma> {
        if labels.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// `x ⋆ y = x + y mod n`.
    pub fn cyclic_add(n: usize) -> Magma {
        Magma::from_fn(n, |i, j| (i + j) % n).unwrap()
    }

    /// `x ⋆ y = x + 1 mod n`.
    pub fn shift(n: usize) -> Magma {
        Magma::from_fn(n, |i, _| (i + 1) % n).unwrap()
    }

    /// `x ⋆ y = x`.
    pub fn left_zero(n: usize) -> Magma {
        Magma::from_fn(n, |i, _| i).unwrap()
    }

    /// The `index`-th table of size `k` in base-`k` order of the entries
    /// (row-major, first entry most significant).
    pub fn nth_table(k: usize, mut index: u64) -> Magma {
        let mut table = vec![0; k * k];
        for slot in table.iter_mut().rev() {
            *slot = (index % k as u64) as usize;
            index /= k as u64;
        }
        Magma {
            k,
            table,
            labels: None,
        }
    }

    pub fn size(&self) -> usize {
        self.k
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.k + b]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.k).map(<[usize]>::to_vec).collect()
    }

    /// Whether `subset` is closed under the operation.
    pub fn is_closed(&self, subset: &[usize]) -> bool {
        subset
            .iter()
            .all(|&a| subset.iter().all(|&b| subset.contains(&self.mul(a, b))))
    }

    /// The sub-magma on a closed subset, with elements renumbered in the
    /// order given. Returns `None` if the subset is not closed.
    pub fn restrict(&self, subset: &[usize]) -> Option<Magma> {
        if !self.is_closed(subset) {
            return None;
        }
        let pos = |x: usize| subset.iter().position(|&y| y == x).unwrap();
        let mut m =
            Magma::from_fn(subset.len(), |i, j| pos(self.mul(subset[i], subset[j]))).ok()?;
        if let Some(labels) = &self.labels {
            m.labels = Some(subset.iter().map(|&i| labels[i].clone()).collect());
        }
        Some(m)
    }
}

impl BinarySystem for Magma {
    type Elem = usize;

    fn contains(&self, x: &usize) -> bool {
        *x < self.k
    }

    fn op(&self, a: &usize, b: &usize) -> usize {
        self.mul(*a, *b)
    }
}

impl fmt::Display for Magma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.k)?;
        for row in self.table.chunks(self.k) {
            let row: Vec<String> = row.iter().map(usize::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        if let Some(labels) = &self.labels {
            writeln!(f, "labels {}", labels.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for Magma {
    type Err = Error;

    fn from_str(text: &str) -> Result<Magma> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, first) = lines
            .next()
            .ok_or_else(|| Error::Invalid("empty magma file".into()))?;
        let k: usize = first.trim().parse().map_err(|_| {
            Error::Invalid(format!(
                "first line must be the carrier size, got `{}`",
                first.trim()
            ))
        })?;
        let mut rows = Vec::with_capacity(k);
        for _ in 0..k {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| Error::Invalid(format!("expected {k} rows")))?;
            let row = line
                .split_whitespace()
                .map(|x| {
                    x.parse::<usize>().map_err(|_| {
                        Error::Invalid(format!("line {}: malformed entry `{x}`", ln + 1))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != k {
                return Err(Error::Invalid(format!(
                    "line {}: expected {k} entries, got {}",
                    ln + 1,
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= k) {
                return Err(Error::Invalid(format!(
                    "line {}: entry {bad} out of range for carrier size {k}",
                    ln + 1
                )));
            }
            rows.push(row);
        }
        let mut magma = Magma::from_rows(rows)?;
        if let Some((ln, line)) = lines.next() {
            let labels: Vec<String> = match line.trim().strip_prefix("labels") {
                Some(rest) => rest.split_whitespace().map(str::to_string).collect(),
                None => {
                    return Err(Error::Invalid(format!(
                        "line {}: unexpected content after the table",
                        ln + 1
                    )))
                }
            };
            magma = magma.with_labels(labels)?;
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::Invalid(format!("line {}: trailing content", ln + 1)));
        }
        Ok(magma)
    }
}
