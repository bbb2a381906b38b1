use std::collections::BTreeMap;

use super::Magma;
use crate::error::{Error, Result};
use crate::tree::{Tree, TreeTable, DEFAULT_TREE_CAP};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientOutcome {
    /// The labeling factors through this table.
    Induced(Magma),
    /// `label(a) = label(a')`, `label(b) = label(b')`, but
    /// `label(a ^ b) != label(a' ^ b')`.
    Violation {
        a: Tree,
        b: Tree,
        a_prime: Tree,
        b_prime: Tree,
    },
    /// Consistent, but some atom pairs never occur with sizes in the large
    /// set, so the table is not determined.
    Incomplete { missing: Vec<(usize, usize)> },
}

/// Tries to induce an operation on atoms from a labeling of all trees of
/// size at most `max_size`. Pairs `(a, b)` are drawn with `#a, #b ∈ large`
/// and `#a + #b <= max_size`, in increasing size and then canonical order,
/// and the first conflicting pair is reported.
///
/// Atoms are `0..k` where `k - 1` is the largest label seen.
pub fn quotient_system(
    label: impl Fn(&Tree) -> Option<usize>,
    max_size: usize,
    large: &[usize],
) -> Result<QuotientOutcome> {
    if max_size > DEFAULT_TREE_CAP {
        return Err(Error::CapExceeded {
            requested: max_size,
            cap: DEFAULT_TREE_CAP,
        });
    }
    if let Some(&bad) = large.iter().find(|&&s| s == 0 || s > max_size) {
        return Err(Error::OutOfRange {
            index: bad,
            bound: max_size + 1,
        });
    }
    let table = TreeTable::new(max_size);
    let mut labels: BTreeMap<&Tree, usize> = BTreeMap::new();
    for t in table.iter() {
        let l = label(t).ok_or_else(|| Error::Undefined {
            element: t.to_string(),
        })?;
        labels.insert(t, l);
    }
    let k = labels.values().max().map_or(0, |m| m + 1);
    let mut sizes: Vec<usize> = large.to_vec();
    sizes.sort_unstable();
    sizes.dedup();

    let mut seen: BTreeMap<(usize, usize), (usize, Tree, Tree)> = BTreeMap::new();
    for &sa in &sizes {
        for &sb in &sizes {
            if sa + sb > max_size {
                continue;
            }
            for a in table.trees(sa) {
                for b in table.trees(sb) {
                    let key = (labels[a], labels[b]);
                    let value = labels[&Tree::caret(a.clone(), b.clone())];
                    match seen.get(&key) {
                        None => {
                            seen.insert(key, (value, a.clone(), b.clone()));
                        }
                        Some((v, a0, b0)) if *v != value => {
                            return Ok(QuotientOutcome::Violation {
                                a: a0.clone(),
                                b: b0.clone(),
                                a_prime: a.clone(),
                                b_prime: b.clone(),
                            });
                        }
                        Some(_) => {}
                    }
                }
            }
        }
    }
    let missing: Vec<(usize, usize)> = (0..k)
        .flat_map(|x| (0..k).map(move |y| (x, y)))
        .filter(|key| !seen.contains_key(key))
        .collect();
    if !missing.is_empty() {
        return Ok(QuotientOutcome::Incomplete { missing });
    }
    let magma = Magma::from_fn(k, |x, y| seen[&(x, y)].0)?;
    Ok(QuotientOutcome::Induced(magma))
}
