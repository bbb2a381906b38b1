//! Finitely supported probability measures with exact rational weights.
//!
//! The carrier is any ordered type: trees, magma elements, or tuples of
//! those (for product measures). Supports are kept in a `BTreeMap`, so every
//! sum runs in canonical element order and results are reproducible.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_q, Q};
use crate::tree::Tree;

/// A binary operation on a carrier, extended bilinearly to measures by
/// [`convolve`].
pub trait BinarySystem {
    type Elem: Ord + Clone + Debug;

    fn contains(&self, x: &Self::Elem) -> bool;

    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

/// The free operation `^` on trees.
#[derive(Debug, Clone, Copy, Default)]
pub struct Caret;

impl BinarySystem for Caret {
    type Elem = Tree;

    fn contains(&self, _: &Tree) -> bool {
        true
    }

    fn op(&self, a: &Tree, b: &Tree) -> Tree {
        Tree::caret(a.clone(), b.clone())
    }
}

/// Probability measure with finite support. Stored weights are strictly
/// positive and sum to exactly one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Measure<T: Ord> {
    weights: BTreeMap<T, Q>,
}

impl<T: Ord + Clone + Debug> Measure<T> {
    /// Builds a measure from `(element, weight)` pairs. Repeated elements are
    /// merged and zero weights dropped. Weights must already sum to one.
    pub fn new(pairs: impl IntoIterator<Item = (T, Q)>) -> Result<Measure<T>> {
        let mut weights = BTreeMap::new();
        for (x, w) in pairs {
            if w.is_negative() {
                return Err(Error::NegativeWeight {
                    weight: format_q(&w),
                });
            }
            *weights.entry(x).or_insert_with(Q::zero) += w;
        }
        weights.retain(|_, w| !w.is_zero());
        let sum: Q = weights.values().sum();
        if !sum.is_one() {
            return Err(Error::NotNormalized {
                sum: format_q(&sum),
            });
        }
        Ok(Measure { weights })
    }

    pub fn dirac(x: T) -> Measure<T> {
        Measure {
            weights: BTreeMap::from([(x, Q::one())]),
        }
    }

    /// Uniform measure on the distinct elements given. Panics if empty.
    pub fn uniform(elements: impl IntoIterator<Item = T>) -> Measure<T> {
        let support: Vec<T> = elements
            .into_iter()
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        assert!(
            !support.is_empty(),
            "uniform measure needs a nonempty support"
        );
        let w = Q::new(1.into(), (support.len() as i64).into());
        Measure {
            weights: support.into_iter().map(|x| (x, w.clone())).collect(),
        }
    }

    /// Internal constructor for sums that are normalized by construction.
    pub(crate) fn from_map(mut weights: BTreeMap<T, Q>) -> Measure<T> {
        weights.retain(|_, w| !w.is_zero());
        debug_assert!(weights.values().sum::<Q>().is_one());
        Measure { weights }
    }

    pub fn weight(&self, x: &T) -> Q {
        self.weights.get(x).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, &Q)> {
        self.weights.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &T> {
        self.weights.keys()
    }

    pub fn support_len(&self) -> usize {
        self.weights.len()
    }

    pub fn as_map(&self) -> &BTreeMap<T, Q> {
        &self.weights
    }

    /// Mass of the set `{x : pred(x)}`.
    pub fn mass(&self, pred: impl Fn(&T) -> bool) -> Q {
        self.weights
            .iter()
            .filter(|(x, _)| pred(x))
            .map(|(_, w)| w)
            .sum()
    }

    /// `Σ μ({x}) c(x)`; `c` must be defined on the support.
    pub fn evaluate(&self, c: impl Fn(&T) -> Option<Q>) -> Result<Q> {
        let mut total = Q::zero();
        for (x, w) in &self.weights {
            let v = c(x).ok_or_else(|| Error::Undefined {
                element: format!("{x:?}"),
            })?;
            total += w * v;
        }
        Ok(total)
    }

    /// Image measure `φ_* μ`; `φ` must be defined on the support.
    pub fn pushforward<U: Ord + Clone + Debug>(
        &self,
        phi: impl Fn(&T) -> Option<U>,
    ) -> Result<Measure<U>> {
        let mut out: BTreeMap<U, Q> = BTreeMap::new();
        for (x, w) in &self.weights {
            let y = phi(x).ok_or_else(|| Error::Undefined {
                element: format!("{x:?}"),
            })?;
            *out.entry(y).or_insert_with(Q::zero) += w;
        }
        Ok(Measure::from_map(out))
    }

    /// Pushforward along a total map.
    pub fn map<U: Ord + Clone + Debug>(&self, phi: impl Fn(&T) -> U) -> Measure<U> {
        self.pushforward(|x| Some(phi(x))).expect("total map")
    }

    /// Product measure: `(x, y)` gets `μ({x}) ν({y})`.
    pub fn tensor<U: Ord + Clone + Debug>(&self, other: &Measure<U>) -> Measure<(T, U)> {
        let mut out = BTreeMap::new();
        for (x, wx) in &self.weights {
            for (y, wy) in &other.weights {
                out.insert((x.clone(), y.clone()), wx * wy);
            }
        }
        Measure::from_map(out)
    }

    /// Convex combination `(1 - t) self + t other` for `t ∈ [0, 1]`.
    pub fn mix(&self, other: &Measure<T>, t: &Q) -> Result<Measure<T>> {
        if t.is_negative() || t > &Q::one() {
            return Err(Error::ValueOutOfRange { value: format_q(t) });
        }
        let s = Q::one() - t;
        let mut out: BTreeMap<T, Q> = BTreeMap::new();
        for (x, w) in &self.weights {
            *out.entry(x.clone()).or_insert_with(Q::zero) += w * &s;
        }
        for (x, w) in &other.weights {
            *out.entry(x.clone()).or_insert_with(Q::zero) += w * t;
        }
        Ok(Measure::from_map(out))
    }
}

impl Measure<Tree> {
    /// `#(μ)`: the common size of the support trees, if there is one.
    pub fn common_size(&self) -> Option<usize> {
        let mut sizes = self.weights.keys().map(Tree::size);
        let first = sizes.next()?;
        sizes.all(|s| s == first).then_some(first)
    }
}

/// `μ ⋆ ν`: the pushforward of `μ ⊗ ν` along the operation.
pub fn convolve<S: BinarySystem>(
    system: &S,
    mu: &Measure<S::Elem>,
    nu: &Measure<S::Elem>,
) -> Result<Measure<S::Elem>> {
    for x in mu.support().chain(nu.support()) {
        if !system.contains(x) {
            return Err(Error::CarrierMismatch {
                element: format!("{x:?}"),
            });
        }
    }
    let mut out: BTreeMap<S::Elem, Q> = BTreeMap::new();
    for (x, wx) in mu.iter() {
        for (y, wy) in nu.iter() {
            *out.entry(system.op(x, y)).or_insert_with(Q::zero) += wx * wy;
        }
    }
    Ok(Measure::from_map(out))
}

/// `t(μ_0, ..., μ_{m-1})`: the multilinear extension of substitution into
/// `t`, computed by folding `t` bottom-up with [`convolve`].
pub fn substitute_measures<S: BinarySystem>(
    system: &S,
    t: &Tree,
    measures: &[Measure<S::Elem>],
) -> Result<Measure<S::Elem>> {
    if measures.len() != t.size() {
        return Err(Error::LengthMismatch {
            expected: t.size(),
            found: measures.len(),
        });
    }
    fn go<S: BinarySystem>(
        system: &S,
        t: &Tree,
        measures: &[Measure<S::Elem>],
    ) -> Result<Measure<S::Elem>> {
        match t.children() {
            None => {
                let mu = &measures[0];
                if let Some(x) = mu.support().find(|x| !system.contains(x)) {
                    return Err(Error::CarrierMismatch {
                        element: format!("{x:?}"),
                    });
                }
                Ok(mu.clone())
            }
            Some((a, b)) => {
                let k = a.size();
                let left = go(system, a, &measures[..k])?;
                let right = go(system, b, &measures[k..])?;
                convolve(system, &left, &right)
            }
        }
    }
    go(system, t, measures)
}

/// `max_{E ∈ B} |μ(E) - ν(E)|` over a finite family of sets given as
/// membership predicates.
pub fn seminorm_b<T, F>(mu: &Measure<T>, nu: &Measure<T>, family: &[F]) -> Q
where
    T: Ord + Clone + Debug,
    F: Fn(&T) -> bool,
{
    family
        .iter()
        .map(|e| (mu.mass(e) - nu.mass(e)).abs())
        .max()
        .unwrap_or_else(Q::zero)
}

/// Total-variation distance `½ Σ |μ({x}) - ν({x})|` between two finitely
/// supported nonnegative weightings of equal total mass.
pub fn total_variation<T: Ord>(mu: &BTreeMap<T, Q>, nu: &BTreeMap<T, Q>) -> Q {
    let zero = Q::zero();
    let mut total = Q::zero();
    for (x, w) in mu {
        total += (w - nu.get(x).unwrap_or(&zero)).abs();
    }
    for (x, w) in nu {
        if !mu.contains_key(x) {
            total += w.abs();
        }
    }
    total / Q::from_integer(2.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn t(s: &str) -> Tree {
        s.parse().unwrap()
    }

    fn half_half(a: &str, b: &str) -> Measure<Tree> {
        Measure::new([(t(a), q(1, 2)), (t(b), q(1, 2))]).unwrap()
    }

    #[test]
    fn make_measure_examples() {
        let d = Measure::new([(t("1"), qi(1))]).unwrap();
        assert_eq!(d, Measure::dirac(t("1")));
        let two = half_half("1", "(1 1)");
        assert_eq!(two.support_len(), 2);
        assert_eq!(
            Measure::new([(t("1"), q(1, 2))]),
            Err(Error::NotNormalized { sum: "1/2".into() })
        );
        assert!(matches!(
            Measure::new([(t("1"), q(-1, 2)), (t("(1 1)"), q(3, 2))]),
            Err(Error::NegativeWeight { .. })
        ));
        // zero weights are dropped
        let z = Measure::new([(t("1"), qi(1)), (t("(1 1)"), qi(0))]).unwrap();
        assert_eq!(z.support_len(), 1);
    }

    #[test]
    fn tensor_examples() {
        let a = Measure::dirac(1usize);
        let b = Measure::dirac(2usize);
        assert_eq!(a.tensor(&b), Measure::dirac((1, 2)));
        let u = Measure::uniform([0usize, 1]);
        let v = Measure::uniform([2usize, 3]);
        let p = u.tensor(&v);
        assert_eq!(p.support_len(), 4);
        assert!(p.iter().all(|(_, w)| *w == q(1, 4)));
        assert_eq!(u.tensor(&Measure::dirac(9usize)), u.map(|x| (*x, 9usize)));
    }

    #[test]
    fn convolve_examples() {
        let m = half_half("1", "(1 1)");
        let c = convolve(&Caret, &m, &m).unwrap();
        let expect = Measure::new(
            ["(1 1)", "(1 (1 1))", "((1 1) 1)", "((1 1) (1 1))"].map(|s| (t(s), q(1, 4))),
        )
        .unwrap();
        assert_eq!(c, expect);
        let d = convolve(&Caret, &Measure::dirac(t("1")), &Measure::dirac(t("1"))).unwrap();
        assert_eq!(d, Measure::dirac(t("(1 1)")));
    }

    #[test]
    fn substitute_measures_examples() {
        let r = substitute_measures(
            &Caret,
            &t("(1 1)"),
            &[Measure::dirac(t("(1 1)")), Measure::dirac(t("1"))],
        )
        .unwrap();
        assert_eq!(r, Measure::dirac(t("((1 1) 1)")));
        let r = substitute_measures(
            &Caret,
            &t("(1 1)"),
            &[half_half("1", "(1 1)"), Measure::dirac(t("1"))],
        )
        .unwrap();
        assert_eq!(r, half_half("(1 1)", "((1 1) 1)"));
        let mu = half_half("(1 1)", "((1 1) 1)");
        assert_eq!(
            substitute_measures(&Caret, &t("1"), std::slice::from_ref(&mu)).unwrap(),
            mu
        );
        assert!(matches!(
            substitute_measures(&Caret, &t("(1 1)"), std::slice::from_ref(&mu)),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn evaluate_examples() {
        let mu = half_half("((1 1) 1)", "(1 (1 1))");
        let e = t("((1 1) 1)");
        assert_eq!(
            mu.evaluate(|x| Some(if *x == e { qi(1) } else { qi(0) }))
                .unwrap(),
            q(1, 2)
        );
        assert_eq!(
            mu.evaluate(|x| Some(qi((x.left_depth() % 2) as i64)))
                .unwrap(),
            q(1, 2)
        );
        assert_eq!(mu.evaluate(|_| Some(q(3, 7))).unwrap(), q(3, 7));
        assert!(matches!(
            mu.evaluate(|x| (x.left_depth() == 2).then(|| qi(1))),
            Err(Error::Undefined { .. })
        ));
    }

    #[test]
    fn pushforward_examples() {
        let mu = half_half("(1 1)", "((1 1) 1)");
        assert_eq!(mu.map(Tree::clone), mu);
        assert_eq!(mu.map(|_| 0u8), Measure::dirac(0u8));
        assert_eq!(mu.map(Tree::size), Measure::uniform([2usize, 3]));
        assert!(mu.pushforward(|x| (x.size() == 2).then_some(0)).is_err());
    }

    #[test]
    fn seminorm_examples() {
        let mu = half_half("(1 1)", "((1 1) 1)");
        let whole = |_: &Tree| true;
        assert_eq!(seminorm_b(&mu, &mu, &[whole]), qi(0));
        let other = Measure::dirac(t("1"));
        assert_eq!(seminorm_b(&mu, &other, &[whole]), qi(0));
        let leaf = |x: &Tree| x.is_leaf();
        assert_eq!(
            seminorm_b(
                &Measure::dirac(t("1")),
                &Measure::dirac(t("(1 1)")),
                &[leaf]
            ),
            qi(1)
        );
    }

    #[test]
    fn common_size() {
        assert_eq!(half_half("((1 1) 1)", "(1 (1 1))").common_size(), Some(3));
        assert_eq!(half_half("1", "(1 1)").common_size(), None);
    }

    #[test]
    fn tv_distance() {
        let a = BTreeMap::from([(0, q(1, 2)), (1, q(1, 2))]);
        let b = BTreeMap::from([(0, q(1, 2)), (2, q(1, 2))]);
        assert_eq!(total_variation(&a, &b), q(1, 2));
        assert_eq!(total_variation(&a, &a), qi(0));
    }
}
