use caretlab_core::magma::{verify_idempotent, Evaluation};
use caretlab_core::rational::{q, Q};
use caretlab_core::tree::{count_trees, enumerate_trees, Tree};
use caretlab_core::{convolve, substitute_measures, Caret, FElement, Magma, Measure};
use num_traits::Zero;
use proptest::prelude::*;

fn normalize<T: Ord + Clone + std::fmt::Debug>(raw: Vec<(T, u32)>) -> Measure<T> {
    let total: u32 = raw.iter().map(|(_, w)| w).sum();
    Measure::new(raw.into_iter().map(|(x, w)| (x, q(w as i64, total as i64)))).unwrap()
}

fn arb_tree(max: usize) -> impl Strategy<Value = Tree> {
    (1..=max)
        .prop_flat_map(|n| (Just(n), 0..count_trees(n)))
        .prop_map(|(n, i)| Tree::unrank(n, i).unwrap())
}

/// Rational measures on trees with support at most 5.
fn arb_tree_measure(max_size: usize) -> impl Strategy<Value = Measure<Tree>> {
    prop::collection::vec((arb_tree(max_size), 1u32..=12), 1..=5).prop_map(normalize)
}

fn arb_elem_measure(k: usize) -> impl Strategy<Value = Measure<usize>> {
    prop::collection::vec((0..k, 1u32..=12), 1..=5).prop_map(normalize)
}

fn arb_sized_measure(size: usize) -> impl Strategy<Value = Measure<Tree>> {
    prop::collection::vec((0..count_trees(size), 1u32..=12), 1..=5).prop_map(move |raw| {
        normalize(
            raw.into_iter()
                .map(|(i, w)| (Tree::unrank(size, i).unwrap(), w))
                .collect(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn tensor_is_associative(
        mu in arb_elem_measure(7),
        nu in arb_elem_measure(7),
        xi in arb_elem_measure(7),
    ) {
        let left = mu.tensor(&nu).tensor(&xi);
        let right = mu.tensor(&nu.tensor(&xi));
        let reassociated = left.map(|((a, b), c)| (*a, (*b, *c)));
        prop_assert_eq!(reassociated, right);
    }

    #[test]
    fn reassociation_identity(
        mu in arb_tree_measure(4),
        nu in arb_tree_measure(4),
        xi in arb_tree_measure(4),
    ) {
        let x0 = FElement::generator(0).unwrap();
        let left = convolve(&Caret, &convolve(&Caret, &mu, &nu).unwrap(), &xi).unwrap();
        let right = convolve(&Caret, &mu, &convolve(&Caret, &nu, &xi).unwrap()).unwrap();
        for (w, weight) in left.iter() {
            let image = x0.partial_apply(w).expect("x0 acts on (a^b)^c");
            prop_assert_eq!(&right.weight(&image), weight);
        }
        // the pushforward is all of the right-hand side
        let pushed = left.map(|w| x0.partial_apply(w).unwrap());
        prop_assert_eq!(pushed, right);
    }

    #[test]
    fn size_is_additive(m in 1usize..=5, n in 1usize..=5) {
        let mu = Measure::uniform(enumerate_trees(m).unwrap());
        let nu = Measure::uniform(enumerate_trees(n).unwrap());
        let conv = convolve(&Caret, &mu, &nu).unwrap();
        prop_assert!(conv.support().all(|t| t.size() == m + n));
    }

    #[test]
    fn sized_support_stays_sized(mu in arb_sized_measure(3), nu in arb_sized_measure(4)) {
        let conv = convolve(&Caret, &mu, &nu).unwrap();
        prop_assert_eq!(conv.common_size(), Some(7));
    }

    #[test]
    fn evaluation_pushforward_is_multiplicative(
        index in 0u64..19683,
        g in 0usize..3,
        mu in arb_tree_measure(5),
        nu in arb_tree_measure(5),
    ) {
        let magma = Magma::nth_table(3, index);
        let ev = Evaluation::new(&magma, g).unwrap();
        let conv = convolve(&Caret, &mu, &nu).unwrap();
        let lhs = conv.map(|t| ev.eval(t));
        let rhs = convolve(&magma, &mu.map(|t| ev.eval(t)), &nu.map(|t| ev.eval(t))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn point_masses_multiply(index in 0u64..19683, x in 0usize..3, y in 0usize..3) {
        let magma = Magma::nth_table(3, index);
        let conv = convolve(&magma, &Measure::dirac(x), &Measure::dirac(y)).unwrap();
        prop_assert_eq!(conv, Measure::dirac(magma.mul(x, y)));
    }
}

fn idempotent_cases() -> Vec<(Magma, Measure<usize>)> {
    vec![
        (Magma::cyclic_add(2), Measure::uniform([0, 1])),
        (Magma::cyclic_add(3), Measure::uniform([0, 1, 2])),
        (Magma::cyclic_add(2), Measure::dirac(0)),
        (
            Magma::left_zero(3),
            Measure::new([(0, q(1, 6)), (1, q(1, 3)), (2, q(1, 2))]).unwrap(),
        ),
        (Magma::shift(3), Measure::uniform([0, 1, 2])),
    ]
}

#[test]
fn idempotent_pruning_identity() {
    let rhos: Vec<Measure<usize>> = vec![
        Measure::dirac(0),
        Measure::new([(0, q(1, 4)), (1, q(3, 4))]).unwrap(),
        Measure::new([(1, q(2, 5)), (2, q(3, 5))]).unwrap(),
        Measure::dirac(2),
    ];
    for (magma, mu) in idempotent_cases() {
        assert!(verify_idempotent(&magma, &mu).unwrap().is_zero());
        let rhos: Vec<Measure<usize>> = rhos
            .iter()
            .filter(|r| r.support().all(|&x| x < magma.size()))
            .cloned()
            .collect();
        for size in 1..=6 {
            for t in enumerate_trees(size).unwrap() {
                for k in 0..size {
                    let pruned = t.prune(k).unwrap();
                    let args = |len: usize| -> Vec<Measure<usize>> {
                        (0..len)
                            .map(|i| {
                                if i < k {
                                    rhos[i % rhos.len()].clone()
                                } else {
                                    mu.clone()
                                }
                            })
                            .collect()
                    };
                    let full = substitute_measures(&magma, &t, &args(size)).unwrap();
                    let short = substitute_measures(&magma, &pruned, &args(pruned.size())).unwrap();
                    assert_eq!(full, short, "{t}, k = {k}");
                }
            }
        }
    }
}

#[test]
fn idempotent_pruning_needs_idempotence() {
    // δ_1 in Z/2 is not idempotent and the identity breaks
    let magma = Magma::cyclic_add(2);
    let mu = Measure::dirac(1);
    let t: Tree = "(1 (1 1))".parse().unwrap();
    let pruned = t.prune(0).unwrap();
    assert_eq!(pruned.to_string(), "(1 1)");
    let full = substitute_measures(&magma, &t, &[mu.clone(), mu.clone(), mu.clone()]).unwrap();
    let short = substitute_measures(&magma, &pruned, &[mu.clone(), mu]).unwrap();
    assert_ne!(full, short);
}

#[test]
fn evaluation_is_a_homomorphism_to_size_8() {
    let trees: Vec<Tree> = (1..=7).flat_map(|n| enumerate_trees(n).unwrap()).collect();
    for magma in [
        Magma::shift(2),
        Magma::cyclic_add(3),
        Magma::nth_table(3, 12345),
    ] {
        let ev = Evaluation::new(&magma, 0).unwrap();
        for a in &trees {
            for b in trees.iter().filter(|b| a.size() + b.size() <= 8) {
                let ab = Tree::caret(a.clone(), b.clone());
                assert_eq!(ev.eval(&ab), magma.mul(ev.eval(a), ev.eval(b)));
            }
        }
    }
}

#[test]
fn convolution_weights_sum_to_one() {
    let mu = Measure::uniform(enumerate_trees(4).unwrap());
    let nu = Measure::new([(Tree::leaf(), q(1, 3)), ("(1 1)".parse().unwrap(), q(2, 3))]).unwrap();
    let conv = convolve(&Caret, &mu, &nu).unwrap();
    let total: Q = conv.iter().map(|(_, w)| w).sum();
    assert_eq!(total, q(1, 1));
}
