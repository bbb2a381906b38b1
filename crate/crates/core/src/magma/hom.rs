use std::collections::BTreeSet;

use super::Magma;
use crate::error::{Error, Result};
use crate::tree::Tree;

/// Largest size for which reachable sets are computed. The recurrence does
/// not enumerate trees, so this is independent of the enumeration cap.
pub const MAX_REACH_CAP: usize = 1024;

/// The homomorphism `T → M` with `1 ↦ g`.
#[derive(Debug, Clone)]
pub struct Evaluation<'a> {
    magma: &'a Magma,
    generator: usize,
}

impl<'a> Evaluation<'a> {
    pub fn new(magma: &'a Magma, generator: usize) -> Result<Evaluation<'a>> {
        if generator >= magma.size() {
            return Err(Error::OutOfRange {
                index: generator,
                bound: magma.size(),
            });
        }
        Ok(Evaluation { magma, generator })
    }

    pub fn magma(&self) -> &'a Magma {
        self.magma
    }

    pub fn generator(&self) -> usize {
        self.generator
    }

    pub fn eval(&self, t: &Tree) -> usize {
        t.fold(|| self.generator, |a, b| self.magma.mul(a, b))
    }
}

/// Eventual periodicity `R_m = R_{m + period}` for `m >= m0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stabilization {
    pub m0: usize,
    pub period: usize,
}

impl Stabilization {
    /// Smallest multiple of the period that is at least `m0`. Sizes that
    /// are multiples of it all have the same reachable set, which is then a
    /// sub-magma.
    pub fn base_size(&self) -> usize {
        self.m0.div_ceil(self.period) * self.period
    }
}

/// `R_m = ev(T_m)` for `m = 1..=cap`, with witnesses.
#[derive(Debug, Clone)]
pub struct ReachableSets {
    generator: usize,
    sets: Vec<BTreeSet<usize>>,
    /// `split[m - 1][x] = (a, y, z)`: a tree of size `a` with value `y`
    /// caret one of size `m - a` with value `z` gives `x`.
    split: Vec<Vec<Option<(usize, usize, usize)>>>,
    stabilization: Option<Stabilization>,
}

/// Computes `R_1 = {g}`, `R_m = ⋃_{a+b=m} R_a ⋆ R_b` and looks for the
/// smallest period `p` (then the smallest `m0`) with `R_m = R_{m+p}` on
/// `[m0, cap - p]`, checked over at least two full periods.
pub fn reachable_sets(magma: &Magma, generator: usize, cap: usize) -> Result<ReachableSets> {
    if cap > MAX_REACH_CAP {
        return Err(Error::CapExceeded {
            requested: cap,
            cap: MAX_REACH_CAP,
        });
    }
    if cap == 0 {
        return Err(Error::Invalid("reachability cap must be at least 1".into()));
    }
    Evaluation::new(magma, generator)?;
    let k = magma.size();
    let mut flags: Vec<Vec<bool>> = Vec::with_capacity(cap);
    let mut split = Vec::with_capacity(cap);
    let mut first = vec![false; k];
    first[generator] = true;
    flags.push(first);
    split.push(vec![None; k]);
    for m in 2..=cap {
        let mut hit = vec![false; k];
        let mut how = vec![None; k];
        for a in 1..m {
            for y in (0..k).filter(|&y| flags[a - 1][y]) {
                for z in (0..k).filter(|&z| flags[m - a - 1][z]) {
                    let x = magma.mul(y, z);
                    if !hit[x] {
                        hit[x] = true;
                        how[x] = Some((a, y, z));
                    }
                }
            }
        }
        flags.push(hit);
        split.push(how);
    }
    let sets: Vec<BTreeSet<usize>> = flags
        .iter()
        .map(|f| (0..k).filter(|&x| f[x]).collect())
        .collect();
    let stabilization = detect_period(&sets);
    Ok(ReachableSets {
        generator,
        sets,
        split,
        stabilization,
    })
}

fn detect_period(sets: &[BTreeSet<usize>]) -> Option<Stabilization> {
    let cap = sets.len();
    for period in 1..=cap / 3 {
        // walk back from the end while the period holds
        let mut m0 = cap - period;
        if sets[m0 - 1] != sets[m0 - 1 + period] {
            continue;
        }
        while m0 > 1 && sets[m0 - 2] == sets[m0 - 2 + period] {
            m0 -= 1;
        }
        if cap - period + 1 >= m0 + 2 * period {
            return Some(Stabilization { m0, period });
        }
    }
    None
}

impl ReachableSets {
    pub fn cap(&self) -> usize {
        self.sets.len()
    }

    /// `R_m`; panics unless `1 <= m <= cap`.
    pub fn set(&self, m: usize) -> &BTreeSet<usize> {
        &self.sets[m - 1]
    }

    pub fn sets(&self) -> &[BTreeSet<usize>] {
        &self.sets
    }

    pub fn stabilization(&self) -> Option<Stabilization> {
        self.stabilization
    }

    /// A tree of size `m` evaluating to `x`.
    pub fn witness(&self, m: usize, x: usize) -> Result<Tree> {
        if m == 0 || m > self.cap() {
            return Err(Error::CapExceeded {
                requested: m,
                cap: self.cap(),
            });
        }
        if !self.sets[m - 1].contains(&x) {
            return Err(Error::Unreachable {
                element: x,
                size: m,
            });
        }
        Ok(self.build(m, x))
    }

    fn build(&self, m: usize, x: usize) -> Tree {
        if m == 1 {
            debug_assert_eq!(x, self.generator);
            return Tree::leaf();
        }
        let (a, y, z) = self.split[m - 1][x].expect("reachable");
        Tree::caret(self.build(a, y), self.build(m - a, z))
    }
}
