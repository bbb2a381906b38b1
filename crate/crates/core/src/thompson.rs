//! Thompson's group F as reduced tree pairs.
//!
//! `(s -> t)` is the increasing piecewise-linear map of [0, 1] sending the
//! leaf intervals of `s`, in order, affinely onto those of `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::measure::{total_variation, Measure};
use crate::rational::Q;
use crate::tree::Tree;

/// Largest generator index [`FElement::generator`] builds.
pub const GENERATOR_CAP: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FElement {
    domain: Tree,
    range: Tree,
}

impl FElement {
    /// The reduced pair for `(s -> t)`.
    pub fn from_tree_pair(domain: Tree, range: Tree) -> Result<FElement> {
        if domain.size() != range.size() {
            return Err(Error::LengthMismatch {
                expected: domain.size(),
                found: range.size(),
            });
        }
        Ok(FElement { domain, range }.reduce())
    }

    pub fn identity() -> FElement {
        FElement {
            domain: Tree::leaf(),
            range: Tree::leaf(),
        }
    }

    pub fn domain(&self) -> &Tree {
        &self.domain
    }

    pub fn range(&self) -> &Tree {
        &self.range
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.range
    }

    /// Cancels carets exposed at the same leaf position in both trees until
    /// none remain.
    fn reduce(self) -> FElement {
        let (mut d, mut r) = (self.domain, self.range);
        loop {
            let rc = r.exposed_carets();
            let Some(i) = d.exposed_carets().into_iter().find(|i| rc.contains(i)) else {
                return FElement {
                    domain: d,
                    range: r,
                };
            };
            d = d.collapse_caret(i).expect("exposed");
            r = r.collapse_caret(i).expect("exposed");
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &FElement) -> FElement {
        let common = other.range.union(&self.domain);
        let below_other = other
            .range
            .refinement_parts(&common)
            .expect("union refines");
        let below_self = self
            .domain
            .refinement_parts(&common)
            .expect("union refines");
        let domain = other.domain.substitute(&below_other).expect("sizes agree");
        let range = self.range.substitute(&below_self).expect("sizes agree");
        FElement { domain, range }.reduce()
    }

    pub fn invert(&self) -> FElement {
        FElement {
            domain: self.range.clone(),
            range: self.domain.clone(),
        }
    }

    /// `x_0 = (((1 1) 1) -> (1 (1 1)))`, `x_1 = ((1 ((1 1) 1)) -> (1 (1 (1 1))))`,
    /// and `x_{k+1} = x_0^k ∘ x_1 ∘ x_0^{-k}`.
    pub fn generator(k: usize) -> Result<FElement> {
        if k > GENERATOR_CAP {
            return Err(Error::CapExceeded {
                requested: k,
                cap: GENERATOR_CAP,
            });
        }
        let x0 =
            FElement::from_tree_pair("((1 1) 1)".parse().unwrap(), "(1 (1 1))".parse().unwrap())?;
        if k == 0 {
            return Ok(x0);
        }
        let x1 = FElement::from_tree_pair(
            "(1 ((1 1) 1))".parse().unwrap(),
            "(1 (1 (1 1)))".parse().unwrap(),
        )?;
        let x0_inv = x0.invert();
        let mut x = x1;
        for _ in 1..k {
            x = x0.compose(&x).compose(&x0_inv);
        }
        Ok(x)
    }

    /// `f · t`: defined when `t` refines the domain tree, and then the
    /// pieces of `t` below the domain leaves are carried over to the range.
    pub fn partial_apply(&self, t: &Tree) -> Option<Tree> {
        let parts = self.domain.refinement_parts(t)?;
        Some(self.range.substitute(&parts).expect("sizes agree"))
    }
}

impl fmt::Display for FElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.domain, self.range)
    }
}

impl FromStr for FElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<FElement> {
        let (d, r) = s.split_once("->").ok_or_else(|| Error::Parse {
            position: 0,
            message: "expected `domain -> range`".into(),
        })?;
        FElement::from_tree_pair(d.trim().parse()?, r.trim().parse()?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceDefect {
    /// `μ({t : f · t undefined})`.
    pub undefined_mass: Q,
    /// Total variation between `μ` on the defined part and its image.
    pub tv_defect: Q,
}

pub fn invariance_defect(mu: &Measure<Tree>, f: &FElement) -> InvarianceDefect {
    let mut undefined_mass = Q::zero();
    let mut defined: BTreeMap<Tree, Q> = BTreeMap::new();
    let mut image: BTreeMap<Tree, Q> = BTreeMap::new();
    for (t, w) in mu.iter() {
        match f.partial_apply(t) {
            None => undefined_mass += w,
            Some(ft) => {
                *defined.entry(t.clone()).or_insert_with(Q::zero) += w;
                *image.entry(ft).or_insert_with(Q::zero) += w;
            }
        }
    }
    InvarianceDefect {
        undefined_mass,
        tv_defect: total_variation(&defined, &image),
    }
}
