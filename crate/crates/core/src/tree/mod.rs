//! The free binary system on one generator, as rooted ordered binary trees.
//!
//! Text form: `t := "1" | "(" t " " t ")"`. The generator is `1`, and
//! `(a b)` is the caret `a ^ b`.

mod address;
mod enumerate;
mod prune;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Q;

pub use address::Address;
pub use enumerate::{
    count_trees, enumerate_trees, enumerate_trees_with_cap, left_comb, right_comb, TreeTable,
    DEFAULT_TREE_CAP,
};
pub use prune::{admissibility, Admissibility};

/// Element of the free binary system.
///
/// Children are shared, so cloning is cheap and trees can be sent across
/// threads freely.
#[derive(Clone)]
pub struct Tree(Arc<Node>);

#[derive(PartialEq, Eq, Hash)]
enum Node {
    Leaf,
    Caret {
        left: Tree,
        right: Tree,
        size: usize,
    },
}

/// Basic recursive attributes of a tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeStats {
    /// Number of leaves.
    pub size: usize,
    /// `l(1) = 0`, `l(a ^ b) = l(a) + 1`.
    pub left_depth: usize,
    /// Number of carets on the path from the root down the right edge.
    pub right_spine: usize,
}

impl Tree {
    pub fn leaf() -> Tree {
        thread_local! {
            static LEAF: Tree = Tree(Arc::new(Node::Leaf));
        }
        LEAF.with(Tree::clone)
    }

    pub fn caret(left: Tree, right: Tree) -> Tree {
        let size = left.size() + right.size();
        Tree(Arc::new(Node::Caret { left, right, size }))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(*self.0, Node::Leaf)
    }

    pub fn size(&self) -> usize {
        match &*self.0 {
            Node::Leaf => 1,
            Node::Caret { size, .. } => *size,
        }
    }

    pub fn children(&self) -> Option<(&Tree, &Tree)> {
        match &*self.0 {
            Node::Leaf => None,
            Node::Caret { left, right, .. } => Some((left, right)),
        }
    }

    pub fn left_depth(&self) -> usize {
        let mut depth = 0;
        let mut cur = self;
        while let Some((l, _)) = cur.children() {
            depth += 1;
            cur = l;
        }
        depth
    }

    pub fn right_spine(&self) -> usize {
        let mut depth = 0;
        let mut cur = self;
        while let Some((_, r)) = cur.children() {
            depth += 1;
            cur = r;
        }
        depth
    }

    pub fn stats(&self) -> TreeStats {
        TreeStats {
            size: self.size(),
            left_depth: self.left_depth(),
            right_spine: self.right_spine(),
        }
    }

    /// Evaluates the unique homomorphism sending the leaf to `leaf()` and
    /// `a ^ b` to `node(a, b)`. Iterative, so depth is not limited by the
    /// call stack.
    pub fn fold<R>(&self, mut leaf: impl FnMut() -> R, mut node: impl FnMut(R, R) -> R) -> R {
        enum Step<'a> {
            Visit(&'a Tree),
            Combine,
        }
        let mut todo = vec![Step::Visit(self)];
        let mut values: Vec<R> = Vec::new();
        while let Some(step) = todo.pop() {
            match step {
                Step::Visit(t) => match t.children() {
                    None => values.push(leaf()),
                    Some((a, b)) => {
                        todo.push(Step::Combine);
                        todo.push(Step::Visit(b));
                        todo.push(Step::Visit(a));
                    }
                },
                Step::Combine => {
                    let b = values.pop().unwrap();
                    let a = values.pop().unwrap();
                    values.push(node(a, b));
                }
            }
        }
        values.pop().unwrap()
    }

    /// Right endpoints of the leaf intervals of the standard dyadic
    /// subdivision of (0, 1], in increasing order. Always contains 1.
    pub fn dyadic_repr(&self) -> Vec<Q> {
        fn walk(t: &Tree, lo: Q, hi: Q, out: &mut Vec<Q>) {
            match t.children() {
                None => out.push(hi),
                Some((a, b)) => {
                    let mid = (&lo + &hi) / Q::from_integer(2.into());
                    walk(a, lo, mid.clone(), out);
                    walk(b, mid, hi, out);
                }
            }
        }
        let mut out = Vec::with_capacity(self.size());
        walk(self, Q::zero(), Q::one(), &mut out);
        out
    }

    /// Inverse of [`Tree::dyadic_repr`]. Returns `None` unless the points are
    /// the right endpoints of a standard dyadic subdivision of (0, 1].
    pub fn from_dyadic(points: &[Q]) -> Option<Tree> {
        fn build(points: &[Q], lo: &Q, hi: &Q) -> Option<Tree> {
            match points {
                [] => None,
                [p] if p == hi => Some(Tree::leaf()),
                _ => {
                    let mid = (lo + hi) / Q::from_integer(2.into());
                    let split = points.iter().position(|p| *p == mid)?;
                    let left = build(&points[..=split], lo, &mid)?;
                    let right = build(&points[split + 1..], &mid, hi)?;
                    Some(Tree::caret(left, right))
                }
            }
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return None;
        }
        build(points, &Q::zero(), &Q::one())
    }

    /// Subterm at `address`: `(a^b)/0σ = a/σ`, `(a^b)/1σ = b/σ`.
    pub fn subterm(&self, address: &Address) -> Result<Tree> {
        let mut cur = self;
        for (i, bit) in address.bits().iter().enumerate() {
            match cur.children() {
                Some((l, r)) => cur = if *bit == 0 { l } else { r },
                None => {
                    return Err(Error::InvalidAddress {
                        prefix: Address::from_bits(address.bits()[..=i].to_vec()).to_string(),
                    })
                }
            }
        }
        Ok(cur.clone())
    }

    /// Replaces the leaves of `self`, left to right, by `parts`.
    pub fn substitute(&self, parts: &[Tree]) -> Result<Tree> {
        if parts.len() != self.size() {
            return Err(Error::LengthMismatch {
                expected: self.size(),
                found: parts.len(),
            });
        }
        fn go(t: &Tree, parts: &[Tree]) -> Tree {
            match t.children() {
                None => parts[0].clone(),
                Some((a, b)) => {
                    let k = a.size();
                    Tree::caret(go(a, &parts[..k]), go(b, &parts[k..]))
                }
            }
        }
        Ok(go(self, parts))
    }

    /// Common refinement: the smallest tree whose subdivision refines both.
    pub fn union(&self, other: &Tree) -> Tree {
        match (self.children(), other.children()) {
            (None, _) => other.clone(),
            (_, None) => self.clone(),
            (Some((a, b)), Some((c, d))) => Tree::caret(a.union(c), b.union(d)),
        }
    }

    /// If `refined` refines `self` (i.e. `self` is an initial part of
    /// `refined`), returns the subtrees of `refined` hanging below each leaf
    /// of `self`, so that `self.substitute(&parts) == refined`.
    pub fn refinement_parts(&self, refined: &Tree) -> Option<Vec<Tree>> {
        fn go(t: &Tree, r: &Tree, out: &mut Vec<Tree>) -> bool {
            match (t.children(), r.children()) {
                (None, _) => {
                    out.push(r.clone());
                    true
                }
                (Some(_), None) => false,
                (Some((a, b)), Some((c, d))) => go(a, c, out) && go(b, d, out),
            }
        }
        let mut out = Vec::with_capacity(self.size());
        go(self, refined, &mut out).then_some(out)
    }

    /// Leaf indices `i` such that leaves `i` and `i + 1` hang from one caret.
    pub fn exposed_carets(&self) -> Vec<usize> {
        fn go(t: &Tree, offset: usize, out: &mut Vec<usize>) {
            if let Some((a, b)) = t.children() {
                if a.is_leaf() && b.is_leaf() {
                    out.push(offset);
                } else {
                    go(a, offset, out);
                    go(b, offset + a.size(), out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, 0, &mut out);
        out
    }

    /// Replaces the exposed caret over leaves `i, i + 1` by a single leaf.
    pub fn collapse_caret(&self, i: usize) -> Option<Tree> {
        match self.children() {
            None => None,
            Some((a, b)) => {
                if i == 0 && a.is_leaf() && b.is_leaf() {
                    return Some(Tree::leaf());
                }
                let k = a.size();
                if i + 1 < k {
                    Some(Tree::caret(a.collapse_caret(i)?, b.clone()))
                } else if i >= k {
                    Some(Tree::caret(a.clone(), b.collapse_caret(i - k)?))
                } else {
                    None
                }
            }
        }
    }

    fn same(&self, other: &Tree) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        self.same(other) || *self.0 == *other.0
    }
}

impl Eq for Tree {}

impl Hash for Tree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

/// Canonical order: by size, then (for equal sizes) larger left subtree
/// first, then left subtree, then right subtree.
impl Ord for Tree {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.same(other) {
            return Ordering::Equal;
        }
        self.size()
            .cmp(&other.size())
            .then_with(|| match (self.children(), other.children()) {
                (Some((a, b)), Some((c, d))) => c
                    .size()
                    .cmp(&a.size())
                    .then_with(|| a.cmp(c))
                    .then_with(|| b.cmp(d)),
                (None, None) => Ordering::Equal,
                (None, Some(_)) => Ordering::Less,
                (Some(_), None) => Ordering::Greater,
            })
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.children() {
            None => f.write_str("1"),
            Some((a, b)) => write!(f, "({a} {b})"),
        }
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree({self})")
    }
}

impl FromStr for Tree {
    type Err = Error;

    fn from_str(text: &str) -> Result<Tree> {
        parse_tree(text)
    }
}

/// Parses the canonical text form. Whitespace is not tolerated beyond the
/// single separating space.
pub fn parse_tree(text: &str) -> Result<Tree> {
    let bytes = text.as_bytes();
    let err = |position: usize, message: &str| Error::Parse {
        position,
        message: message.to_string(),
    };
    // Each open frame holds the left child once it has been read.
    let mut stack: Vec<Option<Tree>> = Vec::new();
    let mut pos = 0;
    loop {
        // read a term start
        let mut done = match bytes.get(pos) {
            Some(b'1') => {
                pos += 1;
                Some(Tree::leaf())
            }
            Some(b'(') => {
                pos += 1;
                stack.push(None);
                None
            }
            Some(_) => return Err(err(pos, "expected `1` or `(`")),
            None => return Err(err(pos, "unexpected end of input")),
        };
        // reduce finished terms
        while let Some(t) = done.take() {
            match stack.last_mut() {
                None => {
                    if pos != bytes.len() {
                        return Err(err(pos, "trailing input"));
                    }
                    return Ok(t);
                }
                Some(slot @ None) => {
                    *slot = Some(t);
                    if bytes.get(pos) != Some(&b' ') {
                        return Err(err(pos, "expected a single space"));
                    }
                    pos += 1;
                }
                Some(Some(_)) => {
                    if bytes.get(pos) != Some(&b')') {
                        return Err(err(pos, "expected `)`"));
                    }
                    pos += 1;
                    let left = stack.pop().flatten().expect("left child present");
                    done = Some(Tree::caret(left, t));
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn t(s: &str) -> Tree {
        s.parse().unwrap()
    }

    #[test]
    fn codec_examples() {
        assert!(t("1").is_leaf());
        assert_eq!(
            t("((1 1) 1)"),
            Tree::caret(Tree::caret(Tree::leaf(), Tree::leaf()), Tree::leaf())
        );
        assert_eq!(t("((1 1) 1)").to_string(), "((1 1) 1)");
        let e = "(1 1".parse::<Tree>().unwrap_err();
        assert!(matches!(e, Error::Parse { position: 4, .. }), "{e:?}");
        for bad in ["", "2", "(1  1)", "(1 1))", "(11)", " 1", "(1 1) "] {
            assert!(bad.parse::<Tree>().is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn deep_parse_does_not_overflow() {
        let depth = 50_000;
        let text = format!("{}1{}", "(1 ".repeat(depth), ")".repeat(depth));
        let tree: Tree = text.parse().unwrap();
        assert_eq!(tree.size(), depth + 1);
        assert_eq!(tree.right_spine(), depth);
        std::mem::forget(tree); // recursive drop of a 50k chain is not what is under test
    }

    #[test]
    fn stats_examples() {
        let s = |x: &str| t(x).stats();
        assert_eq!(
            s("1"),
            TreeStats {
                size: 1,
                left_depth: 0,
                right_spine: 0
            }
        );
        assert_eq!(
            s("((1 1) 1)"),
            TreeStats {
                size: 3,
                left_depth: 2,
                right_spine: 1
            }
        );
        assert_eq!(
            s("(1 (1 1))"),
            TreeStats {
                size: 3,
                left_depth: 1,
                right_spine: 2
            }
        );
    }

    #[test]
    fn dyadic_examples() {
        assert_eq!(t("1").dyadic_repr(), vec![q(1, 1)]);
        assert_eq!(
            t("((1 1) 1)").dyadic_repr(),
            vec![q(1, 4), q(1, 2), q(1, 1)]
        );
        assert_eq!(
            t("(1 (1 1))").dyadic_repr(),
            vec![q(1, 2), q(3, 4), q(1, 1)]
        );
        assert_eq!(
            Tree::from_dyadic(&[q(1, 2), q(3, 4), q(1, 1)]),
            Some(t("(1 (1 1))"))
        );
        assert_eq!(Tree::from_dyadic(&[q(1, 4), q(1, 1)]), None);
        assert_eq!(Tree::from_dyadic(&[q(1, 3), q(1, 1)]), None);
    }

    #[test]
    fn subterm_examples() {
        let a = |s: &str| s.parse::<Address>().unwrap();
        assert_eq!(t("((1 1) 1)").subterm(&a("0")).unwrap(), t("(1 1)"));
        assert_eq!(t("((1 1) 1)").subterm(&a("")).unwrap(), t("((1 1) 1)"));
        assert_eq!(
            t("1").subterm(&a("0")),
            Err(Error::InvalidAddress { prefix: "0".into() })
        );
        assert_eq!(
            t("((1 1) 1)").subterm(&a("101")),
            Err(Error::InvalidAddress {
                prefix: "10".into()
            })
        );
    }

    #[test]
    fn substitute_examples() {
        assert_eq!(
            t("(1 1)").substitute(&[t("(1 1)"), t("1")]).unwrap(),
            t("((1 1) 1)")
        );
        let x = t("((1 (1 1)) 1)");
        assert_eq!(x.substitute(&vec![Tree::leaf(); 4]).unwrap(), x);
        assert_eq!(
            t("(1 (1 1))")
                .substitute(&[t("1"), t("1"), t("(1 1)")])
                .unwrap(),
            t("(1 (1 (1 1)))")
        );
        assert_eq!(
            t("(1 1)").substitute(&[t("1")]),
            Err(Error::LengthMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn caret_surgery() {
        let x = t("((1 1) (1 (1 1)))");
        assert_eq!(x.exposed_carets(), vec![0, 3]);
        assert_eq!(x.collapse_caret(0).unwrap(), t("(1 (1 (1 1)))"));
        assert_eq!(x.collapse_caret(3).unwrap(), t("((1 1) (1 1))"));
        assert_eq!(x.collapse_caret(1), None);
        let u = t("((1 1) 1)").union(&t("(1 (1 1))"));
        assert_eq!(u, t("((1 1) (1 1))"));
        assert_eq!(
            t("(1 1)").refinement_parts(&u).unwrap(),
            vec![t("(1 1)"), t("(1 1)")]
        );
        assert_eq!(u.refinement_parts(&t("(1 1)")), None);
    }

    #[test]
    fn canonical_order_within_size() {
        assert!(t("((1 1) 1)") < t("(1 (1 1))"));
        assert!(t("1") < t("(1 1)"));
        assert!(t("(((1 1) 1) 1)") < t("((1 (1 1)) 1)"));
        assert!(t("((1 1) (1 1))") < t("(1 ((1 1) 1))"));
    }
}
