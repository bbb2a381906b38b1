//! Idempotent measures on finite magmas: `μ ⋆ μ = μ`.
//!
//! The iterative solvers work in `f64`; every answer is rationalized and its
//! residual recomputed exactly with [`verify_idempotent`], so a report is
//! only as good as that exact residual says.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Magma;
use crate::error::{Error, Result};
use crate::measure::{convolve, Measure};
use crate::rational::{rationalize, round_to_denominator, to_f64, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// `μ ← (1 - α) μ + α (μ ⋆ μ)` from several starts.
    Damped,
    /// Projected gradient descent on `‖μ ⋆ μ - μ‖₂²` over the simplex.
    ResidualDescent,
    /// Closed-form solutions with support of size at most two.
    ExhaustiveSupport,
    /// Damped, then residual descent, then exhaustive support.
    Auto,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Damped => "damped",
            Method::ResidualDescent => "residual-descent",
            Method::ExhaustiveSupport => "exhaustive-support",
            Method::Auto => "auto",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        match s {
            "damped" => Ok(Method::Damped),
            "residual-descent" => Ok(Method::ResidualDescent),
            "exhaustive-support" => Ok(Method::ExhaustiveSupport),
            "auto" => Ok(Method::Auto),
            _ => Err(Error::Invalid(format!("unknown method `{s}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Required exact residual `‖μ⋆μ - μ‖_∞` of the rationalized answer.
    pub tol: f64,
    pub seed: u64,
    pub method: Method,
    /// Iteration cap per start.
    pub max_iter: usize,
    /// Damping weight `α`.
    pub damping: f64,
    /// Number of random starts, in addition to the uniform measure and the
    /// point masses.
    pub random_starts: usize,
    /// Denominator cap for continued-fraction rounding.
    pub max_denominator: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: 1e-9,
            seed: 0,
            method: Method::Auto,
            max_iter: 10_000,
            damping: 0.5,
            random_starts: 8,
            max_denominator: 1_000_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    /// Float weights the solver converged to.
    pub float_weights: Vec<f64>,
    /// Rationalized copy, exactly normalized.
    pub measure: Measure<usize>,
    /// Exact `‖μ⋆μ - μ‖_∞` of `measure`.
    pub residual: Q,
    /// Iterations spent on the start that produced `measure`.
    pub iterations: usize,
    /// The method that produced `measure`.
    pub method: Method,
    pub seed: u64,
    /// `residual <= tol`.
    pub success: bool,
}

/// Exact `‖μ ⋆ μ - μ‖_∞`.
pub fn verify_idempotent(magma: &Magma, mu: &Measure<usize>) -> Result<Q> {
    let sq = convolve(magma, mu, mu)?;
    let keys: std::collections::BTreeSet<usize> =
        sq.support().chain(mu.support()).copied().collect();
    Ok(keys
        .into_iter()
        .map(|x| (sq.weight(&x) - mu.weight(&x)).abs())
        .max()
        .unwrap_or_else(Q::zero))
}

pub fn find_idempotent(magma: &Magma, opts: &SolveOptions) -> SolveReport {
    let methods: &[Method] = match opts.method {
        Method::Auto => &[
            Method::Damped,
            Method::ResidualDescent,
            Method::ExhaustiveSupport,
        ],
        Method::Damped => &[Method::Damped],
        Method::ResidualDescent => &[Method::ResidualDescent],
        Method::ExhaustiveSupport => &[Method::ExhaustiveSupport],
    };
    let mut best: Option<SolveReport> = None;
    for &method in methods {
        let report = match method {
            Method::ExhaustiveSupport => solve_by_support(magma, opts),
            _ => solve_iterative(magma, opts, method),
        };
        let better = best.as_ref().is_none_or(|b| report.residual < b.residual);
        let done = report.success;
        if better {
            best = Some(report);
        }
        if done {
            break;
        }
    }
    best.expect("at least one method ran")
}

fn tol_q(tol: f64) -> Q {
    Q::from_float(tol.max(0.0)).unwrap_or_else(Q::zero)
}

fn starts(k: usize, opts: &SolveOptions) -> Vec<Vec<f64>> {
    let mut out = vec![vec![1.0 / k as f64; k]];
    for i in 0..k {
        let mut v = vec![0.0; k];
        v[i] = 1.0;
        out.push(v);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.random_starts {
        // exponential spacings give a uniform point of the simplex
        let v: Vec<f64> = (0..k).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
        let s: f64 = v.iter().sum();
        out.push(v.into_iter().map(|x| x / s).collect());
    }
    out
}

fn solve_iterative(magma: &Magma, opts: &SolveOptions, method: Method) -> SolveReport {
    let tol = tol_q(opts.tol);
    let mut best: Option<SolveReport> = None;
    for start in starts(magma.size(), opts) {
        // polishing shares the per-start iteration budget
        let budget = opts.max_iter.saturating_sub(POLISH_STEPS);
        let (raw, mut iterations) = match method {
            Method::Damped => damped(magma, start, opts.damping, budget),
            _ => residual_descent(magma, start, budget),
        };
        let (polished, steps) = polish(magma, raw);
        iterations += steps;
        let (measure, residual) = finalize(magma, &polished, opts.max_denominator, &tol);
        let success = residual <= tol;
        let report = SolveReport {
            float_weights: polished,
            measure,
            residual,
            iterations,
            method,
            seed: opts.seed,
            success,
        };
        if success {
            return report;
        }
        if best.as_ref().is_none_or(|b| report.residual < b.residual) {
            best = Some(report);
        }
    }
    best.unwrap()
}

pub(crate) fn square_f(magma: &Magma, mu: &[f64]) -> Vec<f64> {
    let k = magma.size();
    let mut out = vec![0.0; k];
    for i in 0..k {
        if mu[i] == 0.0 {
            continue;
        }
        for j in 0..k {
            out[magma.mul(i, j)] += mu[i] * mu[j];
        }
    }
    out
}

fn residual_inf_f(magma: &Magma, mu: &[f64]) -> f64 {
    square_f(magma, mu)
        .iter()
        .zip(mu)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

fn damped(magma: &Magma, mut mu: Vec<f64>, alpha: f64, max_iter: usize) -> (Vec<f64>, usize) {
    for it in 0..max_iter {
        let sq = square_f(magma, &mu);
        let mut res = 0.0f64;
        for (m, s) in mu.iter_mut().zip(&sq) {
            res = res.max((*s - *m).abs());
            *m = (1.0 - alpha) * *m + alpha * s;
        }
        if res < 1e-15 {
            return (mu, it + 1);
        }
    }
    (mu, max_iter)
}

/// Euclidean projection onto the probability simplex.
fn project_simplex(v: &[f64]) -> Vec<f64> {
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (i, x) in u.iter().enumerate() {
        cum += x;
        let t = (cum - 1.0) / (i + 1) as f64;
        if x - t > 0.0 {
            theta = t;
        }
    }
    v.iter().map(|x| (x - theta).max(0.0)).collect()
}

/// `(J - I)` where `J[x][i] = ∂(μ⋆μ)_x / ∂μ_i`.
fn jacobian_minus_identity(magma: &Magma, mu: &[f64]) -> DMatrix<f64> {
    let k = magma.size();
    let mut jac = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            jac[(magma.mul(i, j), i)] += mu[j];
            jac[(magma.mul(j, i), i)] += mu[j];
        }
        jac[(i, i)] -= 1.0;
    }
    jac
}

fn objective(magma: &Magma, mu: &[f64]) -> (f64, DVector<f64>) {
    let sq = square_f(magma, mu);
    let r = DVector::from_iterator(mu.len(), sq.iter().zip(mu).map(|(a, b)| a - b));
    (0.5 * r.norm_squared(), r)
}

fn residual_descent(magma: &Magma, mut mu: Vec<f64>, max_iter: usize) -> (Vec<f64>, usize) {
    let mut step = 1.0;
    let (mut f, mut r) = objective(magma, &mu);
    for it in 0..max_iter {
        if f < 1e-30 {
            return (mu, it);
        }
        let grad = jacobian_minus_identity(magma, &mu).transpose() * &r;
        let mut accepted = false;
        for _ in 0..60 {
            let trial: Vec<f64> = mu
                .iter()
                .zip(grad.iter())
                .map(|(m, g)| m - step * g)
                .collect();
            let trial = project_simplex(&trial);
            let (ft, rt) = objective(magma, &trial);
            let moved: f64 = trial
                .iter()
                .zip(&mu)
                .zip(grad.iter())
                .map(|((t, m), g)| g * (m - t))
                .sum();
            if ft <= f - 1e-4 * moved {
                mu = trial;
                f = ft;
                r = rt;
                step = (step * 2.0).min(1e6);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            return (mu, it + 1);
        }
    }
    (mu, max_iter)
}

const POLISH_STEPS: usize = 60;

/// Gauss-Newton on `μ⋆μ - μ = 0, Σμ = 1`, restricted to the numerical
/// support. Keeps the input when a step does not help.
fn polish(magma: &Magma, mu: Vec<f64>) -> (Vec<f64>, usize) {
    let k = magma.size();
    let support: Vec<usize> = (0..k).filter(|&i| mu[i] > 1e-9).collect();
    if support.is_empty() {
        return (mu, 0);
    }
    let mut cur: Vec<f64> = vec![0.0; k];
    let s: f64 = support.iter().map(|&i| mu[i]).sum();
    for &i in &support {
        cur[i] = mu[i] / s;
    }
    let start_res = residual_inf_f(magma, &mu);
    let mut cur_res = residual_inf_f(magma, &cur);
    let mut steps = 0;
    for _ in 0..POLISH_STEPS {
        if cur_res < 1e-16 {
            break;
        }
        steps += 1;
        let full = jacobian_minus_identity(magma, &cur);
        let sq = square_f(magma, &cur);
        let n = support.len();
        let mut a = DMatrix::<f64>::zeros(k + 1, n);
        let mut b = DVector::<f64>::zeros(k + 1);
        for x in 0..k {
            for (c, &i) in support.iter().enumerate() {
                a[(x, c)] = full[(x, i)];
            }
            b[x] = -(sq[x] - cur[x]);
        }
        for c in 0..n {
            a[(k, c)] = 1.0;
        }
        b[k] = 1.0 - support.iter().map(|&i| cur[i]).sum::<f64>();
        let Ok(delta) = a.svd(true, true).solve(&b, 1e-12) else {
            break;
        };
        let mut next = cur.clone();
        for (c, &i) in support.iter().enumerate() {
            next[i] = (cur[i] + delta[c]).max(0.0);
        }
        let s: f64 = next.iter().sum();
        if !(s.is_finite() && s > 0.0) {
            break;
        }
        next.iter_mut().for_each(|x| *x /= s);
        let next_res = residual_inf_f(magma, &next);
        if next_res >= cur_res {
            break;
        }
        cur = next;
        cur_res = next_res;
    }
    if cur_res <= start_res {
        (cur, steps)
    } else {
        (mu, steps)
    }
}

/// Rationalizes float weights and returns the exactly normalized measure
/// with the smaller exact residual among two roundings.
fn finalize(magma: &Magma, mu: &[f64], max_den: u64, tol: &Q) -> (Measure<usize>, Q) {
    let build = |weights: Vec<Q>| -> Measure<usize> {
        let weights: Vec<Q> = weights
            .into_iter()
            .map(|w| if w.is_negative() { Q::zero() } else { w })
            .collect();
        let total: Q = weights.iter().sum();
        if total.is_zero() {
            return Measure::uniform(0..weights.len());
        }
        let pairs = weights
            .into_iter()
            .enumerate()
            .map(|(i, w)| (i, w / &total));
        Measure::new(pairs).expect("normalized by construction")
    };
    let by_fraction = build(mu.iter().map(|&x| rationalize(x, max_den)).collect());
    let res = verify_idempotent(magma, &by_fraction).unwrap();
    if &res <= tol {
        return (by_fraction, res);
    }
    // fall back to fixed 2^-48 rounding when continued fractions lose too much
    let by_grid = build(
        mu.iter()
            .map(|&x| round_to_denominator(x, 1 << 48))
            .collect(),
    );
    let res_grid = verify_idempotent(magma, &by_grid).unwrap();
    if res_grid < res {
        (by_grid, res_grid)
    } else {
        (by_fraction, res)
    }
}

/// An idempotent with support of size one or two.
#[derive(Debug, Clone, PartialEq)]
pub enum IdempotentClass {
    /// Exact rational idempotent.
    Exact(Measure<usize>),
    /// Weight `p` on `support[0]` (and `1 - p` on `support[1]`) where `p` is
    /// an irrational root in (0, 1) of `a p² + b p + c`.
    Quadratic {
        support: [usize; 2],
        coeffs: [i64; 3],
        root: f64,
    },
    /// Every weight `p ∈ (0, 1)` on `support[0]` gives an idempotent.
    Family { support: [usize; 2] },
}

/// Lists every idempotent whose support has at most two elements, in exact
/// form. Singletons come first, then pairs in lexicographic order.
pub fn classify_small_supports(magma: &Magma) -> Vec<IdempotentClass> {
    let k = magma.size();
    let mut out = Vec::new();
    for i in 0..k {
        if magma.mul(i, i) == i {
            out.push(IdempotentClass::Exact(Measure::dirac(i)));
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            if !magma.is_closed(&[i, j]) {
                continue;
            }
            // mass of i in μ⋆μ with μ = p δ_i + (1-p) δ_j
            let hit = |x: usize, y: usize| i64::from(magma.mul(x, y) == i);
            let a = hit(i, i);
            let b = hit(i, j) + hit(j, i);
            let c = hit(j, j);
            // a p² + b p(1-p) + c (1-p)² - p = 0
            let qa = a - b + c;
            let qb = b - 2 * c - 1;
            let qc = c;
            out.extend(pair_roots(i, j, qa, qb, qc));
        }
    }
    out
}

fn pair_roots(i: usize, j: usize, qa: i64, qb: i64, qc: i64) -> Vec<IdempotentClass> {
    let exact = |p: Q| -> Option<IdempotentClass> {
        (p > Q::zero() && p < Q::from_integer(1.into())).then(|| {
            let rest = Q::from_integer(1.into()) - &p;
            IdempotentClass::Exact(Measure::new([(i, p), (j, rest)]).unwrap())
        })
    };
    if qa == 0 && qb == 0 {
        return if qc == 0 {
            vec![IdempotentClass::Family { support: [i, j] }]
        } else {
            vec![]
        };
    }
    if qa == 0 {
        return exact(Q::new(BigInt::from(-qc), BigInt::from(qb)))
            .into_iter()
            .collect();
    }
    let disc = qb * qb - 4 * qa * qc;
    if disc < 0 {
        return vec![];
    }
    let root = disc.sqrt();
    let mut out = Vec::new();
    if root * root == disc {
        let mut roots = vec![
            Q::new(BigInt::from(-qb - root), BigInt::from(2 * qa)),
            Q::new(BigInt::from(-qb + root), BigInt::from(2 * qa)),
        ];
        roots.sort();
        roots.dedup();
        out.extend(roots.into_iter().filter_map(exact));
    } else {
        let sd = (disc as f64).sqrt();
        let mut roots = [
            (-qb as f64 - sd) / (2.0 * qa as f64),
            (-qb as f64 + sd) / (2.0 * qa as f64),
        ];
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for r in roots {
            if r > 0.0 && r < 1.0 {
                out.push(IdempotentClass::Quadratic {
                    support: [i, j],
                    coeffs: [qa, qb, qc],
                    root: r,
                });
            }
        }
    }
    out
}

fn solve_by_support(magma: &Magma, opts: &SolveOptions) -> SolveReport {
    let tol = tol_q(opts.tol);
    let k = magma.size();
    let mut best: Option<SolveReport> = None;
    for class in classify_small_supports(magma) {
        let mut float = vec![0.0; k];
        let (measure, residual) = match class {
            IdempotentClass::Exact(m) => {
                for (i, w) in m.iter() {
                    float[*i] = to_f64(w);
                }
                (m, Q::zero())
            }
            IdempotentClass::Family { support: [i, j] } => {
                float[i] = 0.5;
                float[j] = 0.5;
                let half = Q::new(1.into(), 2.into());
                (
                    Measure::new([(i, half.clone()), (j, half)]).unwrap(),
                    Q::zero(),
                )
            }
            IdempotentClass::Quadratic {
                support: [i, j],
                root,
                ..
            } => {
                float[i] = root;
                float[j] = 1.0 - root;
                finalize(magma, &float, opts.max_denominator, &tol)
            }
        };
        let success = residual <= tol;
        let report = SolveReport {
            float_weights: float,
            measure,
            residual,
            iterations: 0,
            method: Method::ExhaustiveSupport,
            seed: opts.seed,
            success,
        };
        if success {
            return report;
        }
        if best.as_ref().is_none_or(|b| report.residual < b.residual) {
            best = Some(report);
        }
    }
    best.unwrap_or_else(|| {
        // nothing with small support: report the uniform measure as the best guess
        let uniform = Measure::uniform(0..k);
        let residual = verify_idempotent(magma, &uniform).unwrap();
        SolveReport {
            float_weights: vec![1.0 / k as f64; k],
            success: residual <= tol,
            measure: uniform,
            residual,
            iterations: 0,
            method: Method::ExhaustiveSupport,
            seed: opts.seed,
        }
    })
}

/// Float view of a rational measure on `0..k`.
pub(crate) fn float_weights(mu: &Measure<usize>, k: usize) -> Vec<f64> {
    let mut v = vec![0.0; k];
    for (i, w) in mu.iter() {
        v[*i] = w.to_f64().unwrap_or(0.0);
    }
    v
}
