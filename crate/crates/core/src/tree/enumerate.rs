use super::Tree;
use crate::error::{Error, Result};

/// Largest size `enumerate_trees` accepts by default; `Catalan(15)` is
/// about ten million trees.
pub const DEFAULT_TREE_CAP: usize = 16;

/// `|T_n|`, the number of trees with `n` leaves (`Catalan(n - 1)`).
/// Saturates at `u128::MAX`.
pub fn count_trees(n: usize) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut c = vec![0u128; n + 1];
    c[1] = 1;
    for m in 2..=n {
        let mut total: u128 = 0;
        for a in 1..m {
            total = total.saturating_add(c[a].saturating_mul(c[m - a]));
        }
        c[m] = total;
    }
    c[n]
}

/// All trees of size `n` in canonical order, with the default cap.
pub fn enumerate_trees(n: usize) -> Result<Vec<Tree>> {
    enumerate_trees_with_cap(n, DEFAULT_TREE_CAP)
}

pub fn enumerate_trees_with_cap(n: usize, cap: usize) -> Result<Vec<Tree>> {
    if n == 0 {
        return Err(Error::Invalid("tree size must be at least 1".into()));
    }
    if n > cap {
        return Err(Error::CapExceeded { requested: n, cap });
    }
    Ok(TreeTable::new(n).by_size.pop().unwrap())
}

/// `T_1, ..., T_max`, each in canonical order, sharing subtrees.
#[derive(Debug, Clone)]
pub struct TreeTable {
    by_size: Vec<Vec<Tree>>,
}

impl TreeTable {
    pub fn new(max: usize) -> TreeTable {
        let mut by_size: Vec<Vec<Tree>> = Vec::with_capacity(max);
        if max >= 1 {
            by_size.push(vec![Tree::leaf()]);
        }
        for n in 2..=max {
            let mut level = Vec::with_capacity(count_trees(n).min(1 << 24) as usize);
            // larger left subtree first
            for a in (1..n).rev() {
                for left in &by_size[a - 1] {
                    for right in &by_size[n - a - 1] {
                        level.push(Tree::caret(left.clone(), right.clone()));
                    }
                }
            }
            by_size.push(level);
        }
        TreeTable { by_size }
    }

    pub fn max_size(&self) -> usize {
        self.by_size.len()
    }

    /// `T_n`; panics if `n` is 0 or above [`TreeTable::max_size`].
    pub fn trees(&self, n: usize) -> &[Tree] {
        &self.by_size[n - 1]
    }

    /// All trees of size at most `max_size`, smallest sizes first.
    pub fn iter(&self) -> impl Iterator<Item = &Tree> {
        self.by_size.iter().flatten()
    }
}

impl Tree {
    /// Position of `self` in the canonical order of `T_{#self}`.
    pub fn rank(&self) -> u128 {
        match self.children() {
            None => 0,
            Some((a, b)) => {
                let n = self.size();
                let la = a.size();
                let before: u128 = (la + 1..n)
                    .map(|s| count_trees(s) * count_trees(n - s))
                    .sum();
                before + a.rank() * count_trees(n - la) + b.rank()
            }
        }
    }

    /// Inverse of [`Tree::rank`].
    pub fn unrank(n: usize, mut index: u128) -> Option<Tree> {
        if n == 0 || index >= count_trees(n) {
            return None;
        }
        if n == 1 {
            return Some(Tree::leaf());
        }
        for la in (1..n).rev() {
            let right_count = count_trees(n - la);
            let block = count_trees(la) * right_count;
            if index < block {
                let left = Tree::unrank(la, index / right_count)?;
                let right = Tree::unrank(n - la, index % right_count)?;
                return Some(Tree::caret(left, right));
            }
            index -= block;
        }
        None
    }
}

/// `((1 1) 1) ...`: every right child is a leaf.
pub fn left_comb(n: usize) -> Tree {
    let mut t = Tree::leaf();
    for _ in 1..n {
        t = Tree::caret(t, Tree::leaf());
    }
    t
}

/// The right associated power `(1 (1 (... 1)))`.
pub fn right_comb(n: usize) -> Tree {
    let mut t = Tree::leaf();
    for _ in 1..n {
        t = Tree::caret(Tree::leaf(), t);
    }
    t
}
