//! Constructive pairs for colorings that factor through a finite magma.
//!
//! For `c = f ∘ ev`, measures built from an idempotent `ν` on the stable
//! reachable set have `c(μ_i) = f(ν)` and `c(μ_i ^ μ_j) = f(ν ⋆ ν)`, which
//! is within the idempotence residual of `f(ν)`.

use num_traits::{Signed, Zero};

use super::hom::reachable_sets;
use super::solve::{find_idempotent, float_weights, SolveOptions};
use super::Magma;
use crate::error::{Error, Result};
use crate::measure::{convolve, Caret, Measure};
use crate::rational::{to_f64, Q};
use crate::tree::Tree;

#[derive(Debug, Clone)]
pub struct HindmanOptions {
    pub eps: Q,
    pub count: usize,
    pub seed: u64,
    /// Size cap for the reachable-set computation.
    pub reach_cap: usize,
    pub solve: SolveOptions,
}

impl HindmanOptions {
    pub fn new(eps: Q, count: usize, seed: u64) -> HindmanOptions {
        HindmanOptions {
            eps,
            count,
            seed,
            reach_cap: 64,
            solve: SolveOptions::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct HindmanCertificate {
    /// `c(μ_i)`.
    pub singles: Vec<Q>,
    /// `((i, j), c(μ_i ^ μ_j))` for `i < j`, 1-based.
    pub pairs: Vec<((usize, usize), Q)>,
    /// Largest `|c(·) - r|` over all checks.
    pub max_deviation: Q,
    /// `max_deviation < ε`.
    pub passed: bool,
}

#[derive(Debug, Clone)]
pub struct HindmanPairs {
    pub r: Q,
    pub m0: usize,
    pub period: usize,
    /// Size of `μ_1`; `μ_i` has size `i * base_size`.
    pub base_size: usize,
    /// The stable reachable set the idempotent lives on.
    pub stable_set: Vec<usize>,
    /// Rationalized idempotent on the full carrier.
    pub nu: Measure<usize>,
    /// Exact idempotence residual of `nu` on the sub-magma.
    pub nu_residual: Q,
    /// `‖ν̃ - ν‖₁` between the float solution and its rational copy.
    pub rounding_l1: f64,
    pub measures: Vec<Measure<Tree>>,
    pub certificate: HindmanCertificate,
}

/// Builds `μ_1, ..., μ_count` with `|c(μ_i) - r| < ε` and
/// `|c(μ_i ^ μ_j) - r| < ε` for `i < j`, checked exactly.
///
/// `f[x]` is the color of element `x` and must lie in [0, 1].
pub fn hindman_pair_engine(
    magma: &Magma,
    generator: usize,
    f: &[Q],
    opts: &HindmanOptions,
) -> Result<HindmanPairs> {
    let k = magma.size();
    if f.len() != k {
        return Err(Error::LengthMismatch {
            expected: k,
            found: f.len(),
        });
    }
    if let Some(bad) = f
        .iter()
        .find(|v| v.is_negative() || **v > Q::from_integer(1.into()))
    {
        return Err(Error::ValueOutOfRange {
            value: bad.to_string(),
        });
    }
    if !opts.eps.is_positive() {
        return Err(Error::Invalid("ε must be positive".into()));
    }
    if opts.count == 0 {
        return Err(Error::Invalid("count must be at least 1".into()));
    }

    let reach = reachable_sets(magma, generator, opts.reach_cap)?;
    let stab = reach.stabilization().ok_or(Error::NoStabilization {
        cap: opts.reach_cap,
    })?;
    let base = stab.base_size();
    let needed = base * opts.count;
    // witnesses for every size used, beyond the detection cap if needed
    let reach = if needed > reach.cap() {
        reachable_sets(magma, generator, needed)?
    } else {
        reach
    };
    let stable: Vec<usize> = reach.set(base).iter().copied().collect();
    let sub = magma
        .restrict(&stable)
        .ok_or_else(|| Error::Invalid("stable reachable set is not closed".into()))?;

    let solve = SolveOptions {
        tol: to_f64(&opts.eps) / 8.0,
        seed: opts.seed,
        ..opts.solve.clone()
    };
    let report = find_idempotent(&sub, &solve);
    let nu = report.measure.map(|&i| stable[i]);
    let rational = float_weights(&report.measure, sub.size());
    let rounding_l1: f64 = rational
        .iter()
        .zip(&report.float_weights)
        .map(|(a, b)| (a - b).abs())
        .sum();

    let r = nu.evaluate(|&x| Some(f[x].clone()))?;
    let mut measures = Vec::with_capacity(opts.count);
    for i in 1..=opts.count {
        let size = i * base;
        let pairs = nu
            .iter()
            .map(|(&x, w)| Ok((reach.witness(size, x)?, w.clone())))
            .collect::<Result<Vec<_>>>()?;
        measures.push(Measure::new(pairs)?);
    }

    let ev = super::Evaluation::new(magma, generator)?;
    let color = |t: &Tree| Some(f[ev.eval(t)].clone());
    let singles = measures
        .iter()
        .map(|mu| mu.evaluate(color))
        .collect::<Result<Vec<_>>>()?;
    let mut pairs = Vec::new();
    for i in 0..measures.len() {
        for j in i + 1..measures.len() {
            let joined = convolve(&Caret, &measures[i], &measures[j])?;
            pairs.push(((i + 1, j + 1), joined.evaluate(color)?));
        }
    }
    let max_deviation = singles
        .iter()
        .chain(pairs.iter().map(|(_, v)| v))
        .map(|v| (v - &r).abs())
        .max()
        .unwrap_or_else(Q::zero);
    let passed = max_deviation < opts.eps;
    Ok(HindmanPairs {
        r,
        m0: stab.m0,
        period: stab.period,
        base_size: base,
        stable_set: stable,
        nu,
        nu_residual: report.residual,
        rounding_l1,
        measures,
        certificate: HindmanCertificate {
            singles,
            pairs,
            max_deviation,
            passed,
        },
    })
}
