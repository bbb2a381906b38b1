use std::collections::HashSet;

use caretlab_core::tree::{
    admissibility, count_trees, enumerate_trees, left_comb, right_comb, Address, Tree, TreeTable,
};
use proptest::prelude::*;

fn catalan_closed_form(k: u128) -> u128 {
    // binom(2k, k) / (k + 1), built up one factor at a time
    let mut b: u128 = 1;
    for i in 0..k {
        b = b * (2 * k - i) / (i + 1);
    }
    b / (k + 1)
}

fn arb_tree(max: usize) -> impl Strategy<Value = Tree> {
    (1..=max)
        .prop_flat_map(|n| (Just(n), 0..count_trees(n)))
        .prop_map(|(n, i)| Tree::unrank(n, i).unwrap())
}

/// Every address in `t`, paired with the leaf offset of the subterm there.
fn addresses(t: &Tree) -> Vec<(Address, usize)> {
    fn go(t: &Tree, bits: &mut Vec<u8>, offset: usize, out: &mut Vec<(Address, usize)>) {
        out.push((Address::from_bits(bits.clone()), offset));
        if let Some((a, b)) = t.children() {
            bits.push(0);
            go(a, bits, offset, out);
            bits.pop();
            bits.push(1);
            go(b, bits, offset + a.size(), out);
            bits.pop();
        }
    }
    let mut out = Vec::new();
    go(t, &mut Vec::new(), 0, &mut out);
    out
}

#[test]
fn catalan_counts_match_closed_form() {
    let expected = [1u128, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786];
    for n in 1..=12usize {
        let closed = catalan_closed_form(n as u128 - 1);
        assert_eq!(closed, expected[n - 1]);
        assert_eq!(count_trees(n), closed);
        let trees = enumerate_trees(n).unwrap();
        assert_eq!(trees.len() as u128, closed, "n = {n}");
        assert!(trees.windows(2).all(|w| w[0] < w[1]), "order at n = {n}");
        assert!(trees.iter().all(|t| t.size() == n));
    }
}

#[test]
fn dyadic_representation_separates_carets() {
    let table = TreeTable::new(9);
    let mut seen = HashSet::new();
    let mut pairs = 0usize;
    for a in table.iter() {
        for b in table.iter() {
            if a.size() + b.size() > 10 {
                continue;
            }
            pairs += 1;
            let t = Tree::caret(a.clone(), b.clone());
            let d = t.dyadic_repr();
            assert_eq!(Tree::from_dyadic(&d).as_ref(), Some(&t));
            assert!(seen.insert(d), "collision at {t}");
        }
    }
    let expected: u128 = (2..=10).map(count_trees).sum();
    assert_eq!(pairs as u128, expected);
}

#[test]
fn left_depth_parity_obstruction() {
    let table = TreeTable::new(8);
    for a in table.iter() {
        for b in table.iter() {
            let ab = Tree::caret(a.clone(), b.clone());
            assert_ne!(a.left_depth() % 2, ab.left_depth() % 2);
        }
    }
    let small = TreeTable::new(4);
    for a in small.iter() {
        for b in small.iter() {
            for c in small.iter() {
                let left = Tree::caret(Tree::caret(a.clone(), b.clone()), c.clone());
                let right = Tree::caret(a.clone(), Tree::caret(b.clone(), c.clone()));
                assert_ne!(left.left_depth() % 2, right.left_depth() % 2);
            }
        }
    }
}

#[test]
fn pruning_bounds() {
    for m in 1..=9 {
        for t in enumerate_trees(m).unwrap() {
            for k in 0..m {
                let pruned = t.prune(k).unwrap();
                assert!(pruned.size() <= m);
                assert!(t.prune_bound(k).unwrap() <= m as i64 - 2);
            }
            let late: Vec<usize> = (m - 1..2 * m - 1).collect();
            assert!(admissibility(&t, &late).unwrap().admissible, "{t}");
        }
        let r = right_comb(m);
        for k in 0..m {
            assert!(r.prune_bound(k).unwrap() <= k as i64);
        }
        let smallest: Vec<usize> = (0..m).collect();
        assert!(admissibility(&r, &smallest).unwrap().admissible);
    }
}

#[test]
fn left_comb_needs_large_indices() {
    let t = left_comb(4);
    let a = admissibility(&t, &[0, 1, 2, 3]).unwrap();
    assert_eq!(a.bounds, vec![2, 2, 2, 2]);
    assert!(!a.admissible);
}

#[test]
fn subterm_substitute_coherence() {
    let parts_pool = TreeTable::new(2);
    let pool: Vec<&Tree> = parts_pool.iter().collect();
    for n in 1..=6 {
        for t in enumerate_trees(n).unwrap() {
            // a few deterministic part assignments per tree
            for shift in 0..3 {
                let us: Vec<Tree> = (0..n)
                    .map(|i| pool[(i + shift) % pool.len()].clone())
                    .collect();
                let full = t.substitute(&us).unwrap();
                for (addr, offset) in addresses(&t) {
                    let sub = t.subterm(&addr).unwrap();
                    let expected = sub.substitute(&us[offset..offset + sub.size()]).unwrap();
                    assert_eq!(full.subterm(&addr).unwrap(), expected, "{t} at {addr}");
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn codec_round_trip(t in arb_tree(14)) {
        let text = t.to_string();
        let back: Tree = text.parse().unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn rank_round_trip(t in arb_tree(12)) {
        prop_assert_eq!(Tree::unrank(t.size(), t.rank()), Some(t));
    }

    #[test]
    fn stats_recursions(a in arb_tree(8), b in arb_tree(8)) {
        let t = Tree::caret(a.clone(), b.clone());
        prop_assert_eq!(t.size(), a.size() + b.size());
        prop_assert_eq!(t.left_depth(), a.left_depth() + 1);
        prop_assert_eq!(t.right_spine(), b.right_spine() + 1);
    }

    #[test]
    fn union_refines_both(a in arb_tree(8), b in arb_tree(8)) {
        let u = a.union(&b);
        let pa = a.refinement_parts(&u).unwrap();
        let pb = b.refinement_parts(&u).unwrap();
        prop_assert_eq!(a.substitute(&pa).unwrap(), u.clone());
        prop_assert_eq!(b.substitute(&pb).unwrap(), u);
    }
}
