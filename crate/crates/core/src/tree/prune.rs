use super::Tree;
use crate::error::{Error, Result};

impl Tree {
    /// `t_k`: `1_0 = 1`; `(a^b)_k = a_k ^ 1` if `k < #a`, else
    /// `a ^ b_{k - #a}`.
    pub fn prune(&self, k: usize) -> Result<Tree> {
        if k >= self.size() {
            return Err(Error::OutOfRange {
                index: k,
                bound: self.size(),
            });
        }
        fn go(t: &Tree, k: usize) -> Tree {
            match t.children() {
                None => Tree::leaf(),
                Some((a, b)) => {
                    if k < a.size() {
                        Tree::caret(go(a, k), Tree::leaf())
                    } else {
                        Tree::caret(a.clone(), go(b, k - a.size()))
                    }
                }
            }
        }
        Ok(go(self, k))
    }

    /// `l_k(t) = #(t_k) - 2`; equals -1 only for the single leaf.
    pub fn prune_bound(&self, k: usize) -> Result<i64> {
        Ok(self.prune(k)?.size() as i64 - 2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Admissibility {
    /// `l_k(t)` for `k < #t`.
    pub bounds: Vec<i64>,
    pub admissible: bool,
}

/// An increasing index sequence `i_0 < ... < i_{m-1}` is admissible for
/// `t ∈ T_m` when `l_k(t) <= i_k` for every `k`.
pub fn admissibility(t: &Tree, indices: &[usize]) -> Result<Admissibility> {
    let m = t.size();
    if indices.len() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            found: indices.len(),
        });
    }
    if let Some(p) = indices.windows(2).position(|w| w[0] >= w[1]) {
        return Err(Error::NotIncreasing { position: p + 1 });
    }
    let bounds = (0..m)
        .map(|k| t.prune_bound(k))
        .collect::<Result<Vec<_>>>()?;
    let admissible = bounds.iter().zip(indices).all(|(b, i)| *b <= *i as i64);
    Ok(Admissibility { bounds, admissible })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Tree {
        s.parse().unwrap()
    }

    #[test]
    fn prune_examples() {
        assert_eq!(t("(1 (1 1))").prune(0).unwrap(), t("(1 1)"));
        assert_eq!(t("((1 1) 1)").prune(0).unwrap(), t("((1 1) 1)"));
        assert_eq!(t("(1 (1 1))").prune(2).unwrap(), t("(1 (1 1))"));
        assert_eq!(t("1").prune(0).unwrap(), t("1"));
        assert_eq!(
            t("(1 1)").prune(2),
            Err(Error::OutOfRange { index: 2, bound: 2 })
        );
    }

    #[test]
    fn admissibility_examples() {
        let a = admissibility(&t("(1 (1 1))"), &[0, 1, 2]).unwrap();
        assert_eq!(a.bounds, vec![0, 1, 1]);
        assert!(a.admissible);
        let b = admissibility(&t("((1 1) 1)"), &[0, 1, 2]).unwrap();
        assert_eq!(b.bounds, vec![1, 1, 1]);
        assert!(!b.admissible);
        assert_eq!(
            admissibility(&t("(1 1)"), &[2, 2]),
            Err(Error::NotIncreasing { position: 1 })
        );
        assert_eq!(
            admissibility(&t("(1 1)"), &[0]),
            Err(Error::LengthMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn late_sequences_are_admissible_for_everything() {
        for m in 1..=7 {
            let late: Vec<usize> = (m - 1..2 * m - 1).collect();
            for tree in crate::tree::enumerate_trees(m).unwrap() {
                assert!(admissibility(&tree, &late).unwrap().admissible, "{tree}");
            }
        }
    }
}
