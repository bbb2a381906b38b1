//! One PASS/FAIL line per acceptance criterion, checked at full tolerance.
//!
//! Run with `cargo test -p caretlab-cli --test acceptance -- --nocapture` to
//! see the lines; the test fails if any criterion does.

use std::collections::HashSet;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use caretlab_core::constructions::{h_r_push, much_less, much_less_sizes, BitPrefix};
use caretlab_core::magma::{
    classify_small_supports, find_idempotent, hindman_pair_engine, verify_idempotent, Evaluation,
    HindmanOptions, IdempotentClass, SolveOptions,
};
use caretlab_core::ramsey::{
    constant_copy_exists, copy_values, min_oscillation_copy, scan_minimal_n,
    strong_min_oscillation_exact, Coloring, ConstantCopy, Verdict,
};
use caretlab_core::rational::q;
use caretlab_core::tree::{admissibility, count_trees, enumerate_trees, right_comb};
use caretlab_core::{convolve, Caret, FElement, Magma, Measure, Tree, Q};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(
        elapsed < limit,
        format!("took {elapsed:?}, limit {limit:?}"),
    )
}

fn trees_up_to(n: usize) -> Vec<Tree> {
    (1..=n).flat_map(|k| enumerate_trees(k).unwrap()).collect()
}

fn random_tree(rng: &mut ChaCha8Rng, sizes: &[usize]) -> Tree {
    let n = sizes[rng.random_range(0..sizes.len())];
    Tree::unrank(n, rng.random_range(0..count_trees(n))).unwrap()
}

/// Random rational measure with support at most `max_support`.
fn random_measure<T: Ord + Clone + std::fmt::Debug>(
    rng: &mut ChaCha8Rng,
    max_support: usize,
    mut point: impl FnMut(&mut ChaCha8Rng) -> T,
) -> Measure<T> {
    let len = rng.random_range(1..=max_support);
    let raw: Vec<(T, i64)> = (0..len)
        .map(|_| (point(rng), rng.random_range(1..=12)))
        .collect();
    let total: i64 = raw.iter().map(|(_, w)| w).sum();
    Measure::new(raw.into_iter().map(|(x, w)| (x, q(w, total)))).unwrap()
}

fn left_depth(t: &Tree) -> usize {
    t.stats().left_depth
}

fn catalan(n: u32) -> u128 {
    // C_n = binom(2n, n) / (n + 1), built up exactly
    (0..n).fold(1u128, |c, k| c * 2 * (2 * k as u128 + 1) / (k as u128 + 2))
}

fn c1_catalan_counts() -> Check {
    let start = Instant::now();
    for n in 1..=12usize {
        let trees = enumerate_trees(n).unwrap();
        let expected = catalan(n as u32 - 1);
        ensure(
            trees.len() as u128 == expected,
            format!("|T_{n}| = {} != {expected}", trees.len()),
        )?;
        ensure(
            trees.iter().collect::<HashSet<_>>().len() == trees.len(),
            format!("T_{n} has repeats"),
        )?;
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("n = 1..12 match, {:?}", start.elapsed()))
}

fn c2_injectivity() -> Check {
    let trees = trees_up_to(9);
    let mut seen = HashSet::new();
    let mut pairs = 0;
    for a in &trees {
        for b in trees.iter().filter(|b| a.size() + b.size() <= 10) {
            pairs += 1;
            let repr = Tree::caret(a.clone(), b.clone()).dyadic_repr();
            ensure(seen.insert(repr), format!("collision at ({a}, {b})"))?;
        }
    }
    Ok(format!("{pairs} pairs, 0 collisions"))
}

fn c3_parity() -> Check {
    let trees = trees_up_to(7);
    let mut instances = 0;
    for a in &trees {
        for b in trees.iter().filter(|b| a.size() + b.size() <= 8) {
            let ab = Tree::caret(a.clone(), b.clone());
            ensure(
                left_depth(a) % 2 != left_depth(&ab) % 2,
                format!("l({a}) = l({ab}) mod 2"),
            )?;
            for c in trees.iter().filter(|c| ab.size() + c.size() <= 8) {
                instances += 1;
                let left = Tree::caret(ab.clone(), c.clone());
                let right = Tree::caret(a.clone(), Tree::caret(b.clone(), c.clone()));
                ensure(
                    left_depth(&left) % 2 != left_depth(&right) % 2,
                    format!("parity agrees at ({a}, {b}, {c})"),
                )?;
            }
        }
    }
    Ok(format!("{instances} triples, 0 exceptions"))
}

fn c4_tensor() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..100 {
        let draw = |rng: &mut ChaCha8Rng| random_measure(rng, 5, |r| r.random_range(0..7u32));
        let (mu, nu, xi) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        let left = mu.tensor(&nu).tensor(&xi).map(|((a, b), c)| (*a, (*b, *c)));
        ensure(left == mu.tensor(&nu.tensor(&xi)), format!("triple {i}"))?;
    }
    Ok("100 triples exact".into())
}

fn c5_reassociation() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let x0 = FElement::generator(0).unwrap();
    for i in 0..100 {
        let draw = |rng: &mut ChaCha8Rng| random_measure(rng, 5, |r| random_tree(r, &[1, 2, 3, 4]));
        let (mu, nu, xi) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        let left = convolve(&Caret, &convolve(&Caret, &mu, &nu).unwrap(), &xi).unwrap();
        let right = convolve(&Caret, &mu, &convolve(&Caret, &nu, &xi).unwrap()).unwrap();
        for (w, weight) in left.iter() {
            let image = x0.partial_apply(w).ok_or(format!("x0 undefined at {w}"))?;
            ensure(
                right.weight(&image) == *weight,
                format!("triple {i} at {w}"),
            )?;
        }
        ensure(
            left.map(|w| x0.partial_apply(w).unwrap()) == right,
            format!("triple {i}"),
        )?;
    }
    Ok("100 triples pointwise exact".into())
}

fn c6_generator_laws() -> Check {
    let trees = trees_up_to(6);
    let x0 = FElement::generator(0).unwrap();
    let x1 = FElement::generator(1).unwrap();
    let caret = |a: &Tree, b: &Tree| Tree::caret(a.clone(), b.clone());
    let (mut n0, mut n1) = (0, 0);
    for a in &trees {
        for b in trees.iter().filter(|b| a.size() + b.size() < 8) {
            for c in trees.iter().filter(|c| a.size() + b.size() + c.size() <= 8) {
                n0 += 1;
                let w = caret(&caret(a, b), c);
                ensure(
                    x0.partial_apply(&w) == Some(caret(a, &caret(b, c))),
                    format!("x0 at {w}"),
                )?;
                for s in trees.iter().filter(|s| s.size() + w.size() <= 8) {
                    n1 += 1;
                    let sw = caret(s, &w);
                    let expected = caret(s, &caret(a, &caret(b, c)));
                    ensure(
                        x1.partial_apply(&sw) == Some(expected),
                        format!("x1 at {sw}"),
                    )?;
                }
            }
        }
    }
    Ok(format!(
        "x0: {n0} instances, x1: {n1} instances, 0 exceptions"
    ))
}

fn c7_idempotents() -> Check {
    let opts = SolveOptions {
        tol: 1e-8,
        ..SolveOptions::default()
    };
    let bound = q(1, 100_000_000);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let tables: Vec<Magma> = (0..16)
        .map(|i| Magma::nth_table(2, i))
        .chain((0..1000).map(|_| Magma::nth_table(3, rng.random_range(0..19683))))
        .collect();
    for m in &tables {
        let report = find_idempotent(m, &opts);
        let residual = verify_idempotent(m, &report.measure).unwrap();
        ensure(
            residual <= bound && report.iterations <= 10_000,
            format!(
                "{m}: residual {residual} after {} iterations",
                report.iterations
            ),
        )?;
    }
    let found: Vec<Measure<usize>> = classify_small_supports(&Magma::cyclic_add(2))
        .into_iter()
        .map(|class| match class {
            IdempotentClass::Exact(mu) => Ok(mu),
            other => Err(format!("Z/2 gave a non-rational class {other:?}")),
        })
        .collect::<Result<_, _>>()?;
    let expected = [Measure::dirac(0), Measure::uniform([0, 1])];
    ensure(
        found.len() == expected.len() && expected.iter().all(|mu| found.contains(mu)),
        format!("Z/2 idempotents {found:?}"),
    )?;
    Ok(format!(
        "{} tables verified; Z/2 gives exactly delta_0 and (1/2, 1/2)",
        tables.len()
    ))
}

fn c8_hindman() -> Check {
    let start = Instant::now();
    let shift = Magma::shift(2);
    let f = [Q::zero(), Q::one()];
    let out = hindman_pair_engine(&shift, 0, &f, &HindmanOptions::new(q(1, 100), 5, 0))
        .map_err(|e| e.to_string())?;
    let half = q(1, 2);
    ensure(out.r == half, format!("r = {}", out.r))?;
    // recompute every value from the measures themselves
    let ev = Evaluation::new(&shift, 0).unwrap();
    let color = |mu: &Measure<Tree>| -> Q { mu.iter().map(|(t, w)| w * &f[ev.eval(t)]).sum() };
    let mus = &out.measures;
    ensure(mus.len() == 5, format!("{} measures", mus.len()))?;
    for (i, mu) in mus.iter().enumerate() {
        ensure(
            color(mu) == half,
            format!("c(mu_{}) = {}", i + 1, color(mu)),
        )?;
        for (j, nu) in mus.iter().enumerate().skip(i + 1) {
            let c = color(&convolve(&Caret, mu, nu).unwrap());
            ensure(c == half, format!("c(mu_{} ^ mu_{}) = {c}", i + 1, j + 1))?;
        }
    }
    ensure(
        out.certificate.passed && out.certificate.max_deviation.is_zero(),
        "certificate rejected",
    )?;
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!(
        "5 singles and 10 pairs equal 1/2 exactly, {:?}",
        start.elapsed()
    ))
}

fn c9_admissibility() -> Check {
    for m in 1..=9usize {
        let late: Vec<usize> = (0..m).map(|k| k + m - 1).collect();
        for t in enumerate_trees(m).unwrap() {
            let a = admissibility(&t, &late).unwrap();
            ensure(
                a.bounds.iter().all(|&l| l <= m as i64 - 2),
                format!("{t}: bounds {:?}", a.bounds),
            )?;
            ensure(a.admissible, format!("{t} rejects i_0 = m - 1"))?;
        }
        let comb = admissibility(&right_comb(m), &(0..m).collect::<Vec<_>>()).unwrap();
        ensure(
            comb.bounds.iter().enumerate().all(|(k, &l)| l <= k as i64),
            format!("right comb {m}: {:?}", comb.bounds),
        )?;
    }
    Ok("m <= 9, 0 exceptions".into())
}

fn c10_h_r() -> Check {
    // left sizes below 2^p, right sizes multiples of 2^p, total at most 10
    let families: [(&[usize], &[usize]); 4] = [
        (&[1], &[2, 4, 6, 8]),
        (&[1, 2, 3], &[4]),
        (&[1, 2], &[4, 8]),
        (&[1, 2], &[8]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..100 {
        let (left, right) = families[i % families.len()];
        let mu = random_measure(&mut rng, 4, |r| random_tree(r, left));
        let nu = random_measure(&mut rng, 4, |r| random_tree(r, right));
        for s in mu.support() {
            for t in nu.support() {
                ensure(much_less(s, t), format!("pair {i} is not separated"))?;
            }
        }
        let r = BitPrefix::new((0..10).map(|_| rng.random_range(0..2u8)).collect()).unwrap();
        let lhs = h_r_push(&convolve(&Caret, &mu, &nu).unwrap(), &r).unwrap();
        let rhs = convolve(
            &Caret,
            &h_r_push(&mu, &r).unwrap(),
            &h_r_push(&nu, &r).unwrap(),
        )
        .unwrap();
        ensure(lhs == rhs, format!("pair {i}, r = {r}"))?;
    }
    Ok("100 pairs exact".into())
}

fn c11_divisibility() -> Check {
    let mut instances = 0;
    for p in 0..=5u32 {
        let m = 1usize << p;
        for a in 1..64usize {
            for b in 1..=64 - a {
                if (a + b) % m == 0 && much_less_sizes(a, b) {
                    instances += 1;
                    ensure(
                        a % m == 0 && b % m == 0,
                        format!("a = {a}, b = {b}, p = {p}"),
                    )?;
                }
            }
        }
    }
    Ok(format!("{instances} instances, 0 exceptions"))
}

fn c12_scan() -> Check {
    let start = Instant::now();
    let rows = scan_minimal_n(3, &Q::zero(), 4, 2000, 0).map_err(|e| e.to_string())?;
    let r3 = rows.iter().find(|r| r.n == 3).ok_or("no row for n = 3")?;
    let r4 = rows.iter().find(|r| r.n == 4).ok_or("no row for n = 4")?;
    ensure(
        r3.verdict == Verdict::Fails && r3.certificate_kind == "witness",
        "n = 3 does not fail",
    )?;
    let witness = r3.witness.as_ref().ok_or("n = 3 has no witness")?;
    let osc = min_oscillation_copy(witness, 3).unwrap();
    ensure(
        osc.oscillation == Q::one() && osc.certified,
        format!("witness oscillation {}", osc.oscillation),
    )?;
    ensure(
        r4.verdict == Verdict::Suffices && r4.certificate_kind == "exhaustive",
        "n = 4 not exhaustive",
    )?;
    // recheck all 32 colorings of T_4 with the constant-copy LP
    for mask in 0..32 {
        let c = Coloring::from_mask(4, mask).unwrap();
        match constant_copy_exists(&c, 3).unwrap() {
            ConstantCopy::Witness { copy, value } => {
                let vals = copy_values(&copy, &c).unwrap();
                ensure(
                    vals.values.iter().all(|v| *v == value),
                    format!("mask {mask:05b}: copy is not constant"),
                )?;
            }
            ConstantCopy::Infeasible { .. } => {
                return Err(format!("mask {mask:05b} has no constant copy"))
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!(
        "witness {} has oscillation 1; 32/32 colorings of T_4 constant, {:?}",
        bits(witness),
        start.elapsed()
    ))
}

fn bits(c: &Coloring) -> String {
    c.values()
        .iter()
        .map(|v| if v.is_zero() { '0' } else { '1' })
        .collect()
}

fn c13_strong_gap() -> Check {
    let c = Coloring::from_mask(4, 0b10011).unwrap();
    let convex = match constant_copy_exists(&c, 3).unwrap() {
        ConstantCopy::Witness { copy, value } => {
            let vals = copy_values(&copy, &c).unwrap();
            ensure(vals.oscillation.is_zero(), "convex witness is not constant")?;
            format!("convex copy constant at {value}")
        }
        ConstantCopy::Infeasible { .. } => return Err("no convex constant copy".into()),
    };
    let strong = strong_min_oscillation_exact(&c, 3)
        .unwrap()
        .ok_or("exact strong minimum out of scope")?;
    ensure(
        strong.oscillation == Q::one(),
        format!("strong minimum {}", strong.oscillation),
    )?;
    Ok(format!(
        "coloring {}: {convex}; every strong copy has oscillation 1",
        bits(&c)
    ))
}

fn caretlab(args: &[&str], dir: &Path) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_caretlab"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    assert!(
        matches!(out.status.code(), Some(0 | 2)),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}

fn c14_determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    std::fs::write(dir.path().join("z2add.txt"), "2\n0 1\n1 0\n").unwrap();
    std::fs::write(dir.path().join("shift.txt"), "2\n1 1\n0 0\n").unwrap();
    std::fs::write(dir.path().join("ab.txt"), "3\n0 1 2\n1 2 0\n2 2 1\n").unwrap();
    let c4 = Coloring::from_mask(4, 0b10011).unwrap();
    let mut csv = String::from("tree,value\n");
    for (t, v) in enumerate_trees(4).unwrap().iter().zip(c4.values()) {
        csv.push_str(&format!("{t},{v}\n"));
    }
    std::fs::write(dir.path().join("c4.csv"), csv).unwrap();
    let runs: [&[&str]; 7] = [
        &["magma", "idem", "--magma", "z2add.txt", "--seed", "7"],
        &[
            "magma",
            "idem",
            "--magma",
            "ab.txt",
            "--seed",
            "7",
            "--method",
            "residual-descent",
        ],
        &["hindman", "pairs", "--magma", "shift.txt", "--seed", "3"],
        &[
            "ramsey",
            "adversary",
            "--m",
            "3",
            "--n",
            "5",
            "--seed",
            "5",
            "--budget",
            "40",
        ],
        &[
            "ramsey",
            "scan",
            "--m",
            "3",
            "--max-n",
            "5",
            "--seed",
            "5",
            "--threshold",
            "0",
        ],
        &[
            "ramsey",
            "strong",
            "--coloring",
            "c4.csv",
            "--m",
            "3",
            "--seed",
            "9",
        ],
        &[
            "ramsey",
            "adversary",
            "--m",
            "3",
            "--n",
            "6",
            "--seed",
            "1",
            "--budget",
            "30",
            "--threads",
            "4",
        ],
    ];
    for args in runs {
        let first = caretlab(args, dir.path());
        ensure(!first.is_empty(), format!("{args:?} printed nothing"))?;
        for _ in 0..2 {
            ensure(
                caretlab(args, dir.path()) == first,
                format!("{args:?} differs between runs"),
            )?;
        }
    }
    Ok(format!(
        "{} randomized invocations byte-identical over 3 runs",
        runs.len()
    ))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 14] = [
        ("catalan counts", c1_catalan_counts),
        ("caret injectivity", c2_injectivity),
        ("parity obstruction", c3_parity),
        ("tensor associativity", c4_tensor),
        ("reassociation identity", c5_reassociation),
        ("generator identities", c6_generator_laws),
        ("idempotent solver", c7_idempotents),
        ("hindman pair engine", c8_hindman),
        ("admissibility", c9_admissibility),
        ("h_r multiplicativity", c10_h_r),
        ("divisibility splitting", c11_divisibility),
        ("ramsey scan m = 3", c12_scan),
        ("strong vs convex gap", c13_strong_gap),
        ("determinism", c14_determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
