use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use caretlab_core::constructions::{
    address_profile, h_r_push, h_r_tree, in_e_r, in_e_rp, monotonicity_profile, odometer_bits,
    u_sigma, BitPrefix, SizeOrder,
};
use caretlab_core::io;
use caretlab_core::magma::{
    classify_small_supports, find_idempotent, hindman_pair_engine, quotient_system, reachable_sets,
    Evaluation, HindmanOptions, IdempotentClass, Method, QuotientOutcome, SolveOptions,
};
use caretlab_core::ramsey::{
    adversarial_coloring_search, min_oscillation_copy, scan_minimal_n, strong_copy_search,
    strong_min_oscillation_exact, Coloring, ConstantCopy, CopyProblem, EmbeddingCopy, Verdict,
};
use caretlab_core::rational::{format_q, parse_q};
use caretlab_core::thompson::invariance_defect;
use caretlab_core::tree::{admissibility, enumerate_trees_with_cap};
use caretlab_core::{convolve, Address, Caret, FElement, Magma, Measure, Tree, Q};
use num_traits::{One, Signed, Zero};

use crate::config::*;
use crate::doc::{Doc, Table};

/// Exit code for answers the mathematics rules out.
pub const EXIT_NO: i32 = 2;

const PREFIX_HINT: &str = "the prefix r needs at least #t bits";

pub struct Outcome {
    pub doc: Doc,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(doc: Doc) -> Outcome {
        Outcome { doc, exit_code: 0 }
    }

    fn no_if(doc: Doc, no: bool) -> Outcome {
        Outcome {
            doc,
            exit_code: if no { EXIT_NO } else { 0 },
        }
    }
}

pub fn dispatch(config: &RunConfig) -> Result<Outcome> {
    let g = &config.global;
    match &config.command {
        Command::Trees(cmd) => trees(cmd, g),
        Command::Measure(cmd) => measure(cmd),
        Command::Magma(cmd) => magma(cmd, g),
        Command::Hindman(cmd) => hindman(cmd, g),
        Command::F(cmd) => f_cmd(cmd),
        Command::Stats(cmd) => stats(cmd),
        Command::Constructions(cmd) => constructions(cmd),
        Command::Ramsey(cmd) => ramsey(cmd, g),
        Command::Validate { paths } => Ok(crate::validate::validate_artifacts(paths)),
    }
}

pub fn parse_rational(text: &str, what: &str) -> Result<Q> {
    parse_q(text).ok_or_else(|| anyhow!("{what}: `{text}` is not a rational (expected p/q)"))
}

fn parse_tree_arg(text: &str) -> Result<Tree> {
    text.parse::<Tree>()
        .with_context(|| format!("bad tree `{text}`"))
}

/// `s -> t`, or a word in the generators such as `x0 x1^-1 x2` read as a
/// composition (rightmost letter applied first); `id` is the identity.
pub fn parse_element(text: &str) -> Result<FElement> {
    if text.contains("->") {
        return text
            .parse::<FElement>()
            .with_context(|| format!("bad tree pair `{text}`"));
    }
    let mut out = FElement::identity();
    for letter in text.split_whitespace() {
        if letter == "id" {
            continue;
        }
        let (base, inverse) = match letter.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (letter, false),
        };
        let k: usize = base
            .strip_prefix('x')
            .and_then(|k| k.parse().ok())
            .ok_or_else(|| anyhow!("bad generator `{letter}` (expected x<k> or x<k>^-1)"))?;
        let x = FElement::generator(k)?;
        out = out.compose(&if inverse { x.invert() } else { x });
    }
    Ok(out)
}

fn read_measure(path: &Path) -> Result<Measure<Tree>> {
    let file = fs::File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    io::read_measure(file).with_context(|| format!("in measure file {}", path.display()))
}

fn read_coloring(path: &Path) -> Result<Coloring> {
    let file = fs::File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    io::read_coloring(file).with_context(|| format!("in coloring file {}", path.display()))
}

fn read_magma(path: &Path) -> Result<Magma> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot open {}", path.display()))?;
    text.parse::<Magma>()
        .with_context(|| format!("in magma file {}", path.display()))
}

fn check_size(n: usize, g: &GlobalOpts) -> Result<()> {
    if n == 0 {
        bail!("sizes start at 1");
    }
    if n as u64 > g.cap_size {
        bail!("size {n} exceeds --cap-size {}", g.cap_size);
    }
    Ok(())
}

fn threshold(g: &GlobalOpts) -> Result<Q> {
    let t = parse_rational(&g.threshold, "--threshold")?;
    if t.is_negative() || t > Q::one() {
        bail!("--threshold must lie in [0, 1], got {}", format_q(&t));
    }
    Ok(t)
}

fn join_q(values: &[Q]) -> String {
    values.iter().map(format_q).collect::<Vec<_>>().join(" ")
}

fn measure_table(mu: &Measure<Tree>) -> Table {
    let mut t = Table::new("measure", &["tree", "weight"]);
    for (tree, w) in mu.iter() {
        t.push(vec![tree.to_string(), format_q(w)]);
    }
    t
}

fn element_table(mu: &Measure<usize>) -> Table {
    let mut t = Table::new("measure", &["element", "weight"]);
    for (x, w) in mu.iter() {
        t.push(vec![x.to_string(), format_q(w)]);
    }
    t
}

fn copy_table(copy: &EmbeddingCopy) -> Table {
    let mut t = Table::new("copy", &["weight", "embedding"]);
    for (w, e) in copy.terms() {
        t.push(vec![format_q(w), e.to_string()]);
    }
    t
}

fn coloring_table(c: &Coloring) -> Result<Table> {
    let mut t = Table::new("coloring", &["tree", "value"]);
    for (tree, v) in enumerate_trees_with_cap(c.n(), c.n())?
        .iter()
        .zip(c.values())
    {
        t.push(vec![tree.to_string(), format_q(v)]);
    }
    Ok(t)
}

fn bits_string(bits: &[u8]) -> String {
    bits.iter().map(|b| char::from(b'0' + b)).collect()
}

fn trees(cmd: &TreesCmd, g: &GlobalOpts) -> Result<Outcome> {
    let mut doc = Doc::new();
    match cmd {
        TreesCmd::Enum { size } => {
            check_size(*size, g)?;
            let trees = enumerate_trees_with_cap(*size, g.cap_size as usize)?;
            let mut t = Table::new("trees", &["index", "tree"]);
            for (i, tree) in trees.iter().enumerate() {
                t.push(vec![i.to_string(), tree.to_string()]);
            }
            doc.record("size", size)
                .record("count", trees.len())
                .with_table(t);
        }
        TreesCmd::Stats { tree } => {
            let t = parse_tree_arg(tree)?;
            let s = t.stats();
            let m = t.size();
            let bounds = admissibility(&t, &(0..m).map(|k| k + m).collect::<Vec<_>>())?.bounds;
            doc.record("tree", &t)
                .record("size", s.size)
                .record("left_depth", s.left_depth)
                .record("right_spine", s.right_spine)
                .record("rank", t.rank())
                .record("dyadic", join_q(&t.dyadic_repr()))
                .record(
                    "prune_bounds",
                    bounds
                        .iter()
                        .map(i64::to_string)
                        .collect::<Vec<_>>()
                        .join(" "),
                );
        }
    }
    Ok(Outcome::ok(doc))
}

fn measure(cmd: &MeasureCmd) -> Result<Outcome> {
    let mut doc = Doc::new();
    match cmd {
        MeasureCmd::Conv { left, right } => {
            let (mu, nu) = (read_measure(left)?, read_measure(right)?);
            let conv = convolve(&Caret, &mu, &nu)?;
            doc.record("support", conv.support_len())
                .with_table(measure_table(&conv));
        }
        MeasureCmd::Eval { measure, coloring } => {
            let mu = read_measure(measure)?;
            let c = read_coloring(coloring)?;
            let value = mu
                .evaluate(|t| c.value(t).ok().cloned())
                .with_context(|| format!("the measure must live on T_{}", c.n()))?;
            doc.record("value", format_q(&value));
        }
        MeasureCmd::Push { measure, map } => {
            let mu = read_measure(measure)?;
            if let Some(text) = &map.element {
                let f = parse_element(text)?;
                if let Some(t) = mu.support().find(|t| f.partial_apply(t).is_none()) {
                    bail!(
                        "{f} is not defined at {t}, which carries weight {}",
                        format_q(&mu.weight(t))
                    );
                }
                let pushed = mu.map(|t| f.partial_apply(t).expect("checked"));
                doc.record("element", &f).with_table(measure_table(&pushed));
            } else if let Some(r) = &map.hr {
                let r: BitPrefix = r.parse()?;
                let pushed = h_r_push(&mu, &r).context(PREFIX_HINT)?;
                doc.record("r", &r).with_table(measure_table(&pushed));
            } else if let Some(path) = &map.magma {
                let magma = read_magma(path)?;
                let ev = Evaluation::new(&magma, map.generator)?;
                let pushed = mu.map(|t| ev.eval(t));
                doc.record("generator", map.generator)
                    .with_table(element_table(&pushed));
            }
        }
    }
    Ok(Outcome::ok(doc))
}

fn magma(cmd: &MagmaCmd, g: &GlobalOpts) -> Result<Outcome> {
    let mut doc = Doc::new();
    match cmd {
        MagmaCmd::Idem { magma, method } => {
            let m = read_magma(magma)?;
            let opts = SolveOptions {
                tol: g.tol,
                seed: g.seed,
                method: match method {
                    MethodArg::Auto => Method::Auto,
                    MethodArg::Damped => Method::Damped,
                    MethodArg::ResidualDescent => Method::ResidualDescent,
                    MethodArg::ExhaustiveSupport => Method::ExhaustiveSupport,
                },
                ..SolveOptions::default()
            };
            let report = find_idempotent(&m, &opts);
            let mut t = Table::new("measure", &["element", "weight", "float"]);
            for (x, f) in report.float_weights.iter().enumerate() {
                t.push(vec![
                    x.to_string(),
                    format_q(&report.measure.weight(&x)),
                    format!("{f:.12e}"),
                ]);
            }
            doc.record("method", report.method.name())
                .record("seed", report.seed)
                .record("iterations", report.iterations)
                .record("residual", format_q(&report.residual))
                .record("tol", g.tol)
                .record("success", report.success)
                .with_table(t);
            return Ok(Outcome::no_if(doc, !report.success));
        }
        MagmaCmd::Classify { magma } => {
            let m = read_magma(magma)?;
            let mut t = Table::new("idempotents", &["kind", "support", "detail"]);
            for class in classify_small_supports(&m) {
                t.push(match class {
                    IdempotentClass::Exact(mu) => vec![
                        "exact".into(),
                        mu.support()
                            .map(usize::to_string)
                            .collect::<Vec<_>>()
                            .join(" "),
                        mu.iter()
                            .map(|(_, w)| format_q(w))
                            .collect::<Vec<_>>()
                            .join(" "),
                    ],
                    IdempotentClass::Quadratic {
                        support,
                        coeffs,
                        root,
                    } => vec![
                        "quadratic".into(),
                        format!("{} {}", support[0], support[1]),
                        format!(
                            "{}p^2 + {}p + {} = 0, p = {root:.15}",
                            coeffs[0], coeffs[1], coeffs[2]
                        ),
                    ],
                    IdempotentClass::Family { support } => vec![
                        "family".into(),
                        format!("{} {}", support[0], support[1]),
                        "every p in (0, 1)".into(),
                    ],
                });
            }
            doc.record("classes", t.rows.len()).with_table(t);
        }
        MagmaCmd::Quotient {
            label,
            modulus,
            max_size,
            min_large,
        } => {
            check_size(*max_size, g)?;
            if *modulus == 0 {
                bail!("--modulus must be positive");
            }
            let k = *modulus;
            let label_fn = |t: &Tree| -> Option<usize> {
                Some(match label {
                    LabelArg::LeftDepth => t.left_depth() % k,
                    LabelArg::Size => t.size() % k,
                    LabelArg::RightSpine => t.right_spine() % k,
                    LabelArg::LeftComb => usize::from(t.size() == t.left_depth() + 1),
                })
            };
            let large: Vec<usize> = (*min_large..=*max_size).collect();
            match quotient_system(label_fn, *max_size, &large)? {
                QuotientOutcome::Induced(m) => {
                    let mut t = Table::new("table", &["a", "b", "product"]);
                    for a in 0..m.size() {
                        for b in 0..m.size() {
                            t.push(vec![a.to_string(), b.to_string(), m.mul(a, b).to_string()]);
                        }
                    }
                    doc.record("outcome", "induced")
                        .record("atoms", m.size())
                        .with_table(t);
                }
                QuotientOutcome::Violation {
                    a,
                    b,
                    a_prime,
                    b_prime,
                } => {
                    doc.record("outcome", "violation")
                        .record("a", &a)
                        .record("b", &b)
                        .record("a_prime", &a_prime)
                        .record("b_prime", &b_prime)
                        .record(
                            "label_ab",
                            label_fn(&Tree::caret(a.clone(), b.clone())).unwrap(),
                        )
                        .record(
                            "label_ab_prime",
                            label_fn(&Tree::caret(a_prime.clone(), b_prime.clone())).unwrap(),
                        );
                    return Ok(Outcome::no_if(doc, true));
                }
                QuotientOutcome::Incomplete { missing } => {
                    let pairs: Vec<String> =
                        missing.iter().map(|(a, b)| format!("{a}*{b}")).collect();
                    doc.record("outcome", "incomplete")
                        .record("missing", pairs.join(" "));
                }
            }
        }
        MagmaCmd::Reach {
            magma,
            generator,
            cap,
        } => {
            let m = read_magma(magma)?;
            let reach = reachable_sets(&m, *generator, *cap)?;
            let mut t = Table::new("reachable", &["size", "elements"]);
            for (i, set) in reach.sets().iter().enumerate() {
                let elems: Vec<String> = set.iter().map(usize::to_string).collect();
                t.push(vec![(i + 1).to_string(), elems.join(" ")]);
            }
            match reach.stabilization() {
                Some(s) => {
                    doc.record("stabilized", true)
                        .record("m0", s.m0)
                        .record("period", s.period)
                        .record("base_size", s.base_size());
                }
                None => {
                    doc.record("stabilized", false);
                }
            }
            doc.with_table(t);
        }
    }
    Ok(Outcome::ok(doc))
}

fn hindman(cmd: &HindmanCmd, g: &GlobalOpts) -> Result<Outcome> {
    let HindmanCmd::Pairs {
        magma,
        generator,
        colors,
        eps,
        count,
    } = cmd;
    let m = read_magma(magma)?;
    let f: Vec<Q> = match colors {
        Some(text) => text
            .split(',')
            .map(|v| parse_rational(v, "--colors"))
            .collect::<Result<_>>()?,
        None if m.size() == 2 => vec![Q::zero(), Q::one()],
        None => bail!("--colors is required for magmas with more than two elements"),
    };
    let eps = parse_rational(eps, "--eps")?;
    let mut opts = HindmanOptions::new(eps.clone(), *count, g.seed);
    opts.solve.seed = g.seed;
    let out = hindman_pair_engine(&m, *generator, &f, &opts)?;
    let cert = &out.certificate;
    let mut t = Table::new("checks", &["term", "size", "value"]);
    for (i, v) in cert.singles.iter().enumerate() {
        t.push(vec![
            format!("mu_{}", i + 1),
            ((i + 1) * out.base_size).to_string(),
            format_q(v),
        ]);
    }
    for ((i, j), v) in &cert.pairs {
        t.push(vec![
            format!("mu_{i}^mu_{j}"),
            ((i + j) * out.base_size).to_string(),
            format_q(v),
        ]);
    }
    let mut doc = Doc::new();
    doc.record("r", format_q(&out.r))
        .record("eps", format_q(&eps))
        .record("m0", out.m0)
        .record("period", out.period)
        .record("base_size", out.base_size)
        .record(
            "stable_set",
            out.stable_set
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" "),
        )
        .record(
            "nu",
            out.nu
                .iter()
                .map(|(x, w)| format!("{x}:{}", format_q(w)))
                .collect::<Vec<_>>()
                .join(" "),
        )
        .record("nu_residual", format_q(&out.nu_residual))
        .record("max_deviation", format_q(&cert.max_deviation))
        .record("passed", cert.passed)
        .with_table(t);
    Ok(Outcome::no_if(doc, !cert.passed))
}

fn f_cmd(cmd: &FCmd) -> Result<Outcome> {
    let mut doc = Doc::new();
    match cmd {
        FCmd::Act { element, tree } => {
            let f = parse_element(element)?;
            let t = parse_tree_arg(tree)?;
            doc.record("element", &f).record("tree", &t);
            match f.partial_apply(&t) {
                Some(image) => doc.record("defined", true).record("image", image),
                None => doc.record("defined", false),
            };
        }
        FCmd::Compose { left, right } => {
            let (f, h) = (parse_element(left)?, parse_element(right)?);
            let c = f.compose(&h);
            doc.record("left", &f)
                .record("right", &h)
                .record("composite", &c)
                .record("is_identity", c.is_identity());
        }
        FCmd::Defect { measure, element } => {
            let mu = read_measure(measure)?;
            let f = parse_element(element)?;
            let d = invariance_defect(&mu, &f);
            doc.record("element", &f)
                .record("undefined_mass", format_q(&d.undefined_mass))
                .record("tv_defect", format_q(&d.tv_defect));
        }
    }
    Ok(Outcome::ok(doc))
}

fn stats(cmd: &StatsCmd) -> Result<Outcome> {
    let mut doc = Doc::new();
    match cmd {
        StatsCmd::Addresses {
            measure,
            sigma,
            varsigma,
        } => {
            let mu = read_measure(measure)?;
            let s: Address = sigma.parse()?;
            let v: Address = varsigma.parse()?;
            let p = address_profile(&mu, &s, &v, &SizeOrder)?;
            doc.record("less", format_q(&p.less))
                .record("greater", format_q(&p.greater))
                .record("equiv", format_q(&p.equiv))
                .record("undefined", format_q(&p.undefined));
        }
        StatsCmd::Monotonicity { measure } => {
            let p = monotonicity_profile(&read_measure(measure)?);
            doc.record("chain_a", format_q(&p.chain_a))
                .record("chain_b", format_q(&p.chain_b))
                .record("other", format_q(&p.other));
        }
    }
    Ok(Outcome::ok(doc))
}

fn constructions(cmd: &ConstructionsCmd) -> Result<Outcome> {
    let mut doc = Doc::new();
    match cmd {
        ConstructionsCmd::Hr { tree, r } => {
            let t = parse_tree_arg(tree)?;
            let r: BitPrefix = r.parse()?;
            doc.record("tree", &t)
                .record("r", &r)
                .record("image", h_r_tree(&t, &r).context(PREFIX_HINT)?);
        }
        ConstructionsCmd::Odometer { tree, p, r } => {
            let t = parse_tree_arg(tree)?;
            doc.record("tree", &t)
                .record("right_spine", t.right_spine())
                .record("bits", bits_string(&odometer_bits(&t, *p)));
            if let Some(r) = r {
                let r: BitPrefix = r.parse()?;
                doc.record("r", &r).record("in_e_rp", in_e_rp(&t, &r, *p)?);
            }
        }
        ConstructionsCmd::Er { tree, r, n } => {
            let t = parse_tree_arg(tree)?;
            let r: BitPrefix = r.parse()?;
            doc.record("tree", &t)
                .record("r", &r)
                .record("n", n)
                .record("member", in_e_r(&t, &r, *n).context(PREFIX_HINT)?);
        }
        ConstructionsCmd::U { sigma } => {
            let s: BitPrefix = sigma.parse()?;
            doc.record("sigma", &s).record("u", u_sigma(s.bits())?);
        }
    }
    Ok(Outcome::ok(doc))
}

fn ramsey(cmd: &RamseyCmd, g: &GlobalOpts) -> Result<Outcome> {
    let mut doc = Doc::new();
    match cmd {
        RamseyCmd::Solve { coloring, m } => {
            let c = read_coloring(coloring)?;
            check_size(c.n(), g)?;
            let th = threshold(g)?;
            let r = min_oscillation_copy(&c, *m)?;
            doc.record("m", m)
                .record("n", c.n())
                .record("oscillation", format_q(&r.oscillation))
                .record("certified", r.certified)
                .record("threshold", format_q(&th))
                .record("values", join_q(&r.values))
                .with_table(copy_table(&r.copy));
            Ok(Outcome::no_if(doc, r.oscillation > th))
        }
        RamseyCmd::Constant { coloring, m } => {
            let c = read_coloring(coloring)?;
            check_size(c.n(), g)?;
            let problem = CopyProblem::new(*m, c.n())?;
            Ok(match problem.constant_copy(&c)? {
                ConstantCopy::Witness { copy, value } => {
                    doc.record("constant", true)
                        .record("value", format_q(&value))
                        .with_table(copy_table(&copy));
                    Outcome::ok(doc)
                }
                ConstantCopy::Infeasible { farkas, certified } => {
                    doc.record("constant", false)
                        .record("certified", certified)
                        .record("farkas", join_q(&farkas));
                    Outcome::no_if(doc, true)
                }
            })
        }
        RamseyCmd::Adversary { m, n } => {
            check_size(*n, g)?;
            let th = threshold(g)?;
            let out = adversarial_coloring_search(*m, *n, &th, g.budget, g.seed)?;
            doc.record("m", m)
                .record("n", n)
                .record("threshold", format_q(&th))
                .record("exhaustive", out.exhaustive)
                .record("evaluations", out.evaluations)
                .record("best_oscillation", format_q(&out.best_oscillation))
                .record("found", out.witness.is_some());
            let found = out.witness.is_some();
            match &out.witness {
                Some((c, r)) => {
                    doc.record("witness_oscillation", format_q(&r.oscillation))
                        .record("certified", r.certified)
                        .with_table(coloring_table(c)?);
                }
                None => {
                    doc.with_table(Table::new("coloring", &["tree", "value"]));
                }
            }
            Ok(Outcome::no_if(doc, found))
        }
        RamseyCmd::Scan { m, max_n } => {
            check_size(*max_n, g)?;
            let th = threshold(g)?;
            let rows = scan_minimal_n(*m, &th, *max_n, g.budget, g.seed)?;
            let mut t = Table::new(
                "verdicts",
                &["n", "verdict", "certificate_kind", "oscillation"],
            );
            doc.record("m", m).record("threshold", format_q(&th));
            for r in &rows {
                t.push(vec![
                    r.n.to_string(),
                    r.verdict.to_string(),
                    r.certificate_kind.to_string(),
                    format_q(&r.oscillation),
                ]);
                doc.record(format!("n{}.colorings_checked", r.n), r.colorings_checked);
                if let Some(w) = &r.witness {
                    let bits: String = w
                        .values()
                        .iter()
                        .map(|v| if v.is_one() { '1' } else { '0' })
                        .collect();
                    doc.record(format!("n{}.witness", r.n), bits);
                }
            }
            let minimal = rows
                .iter()
                .find(|r| r.verdict == Verdict::Suffices)
                .map(|r| r.n);
            match minimal {
                Some(n) => doc.record("minimal_n", n),
                None => doc.record("minimal_n", "none"),
            };
            doc.with_table(t);
            Ok(Outcome::no_if(doc, minimal.is_none()))
        }
        RamseyCmd::Strong { coloring, m } => {
            let c = read_coloring(coloring)?;
            check_size(c.n(), g)?;
            let th = threshold(g)?;
            let strong = strong_copy_search(&c, *m, g.budget, g.seed)?;
            let convex = min_oscillation_copy(&c, *m)?;
            doc.record("m", m)
                .record("n", c.n())
                .record("oscillation", format_q(&strong.oscillation))
                .record(
                    "sizes",
                    strong
                        .sizes()
                        .iter()
                        .map(usize::to_string)
                        .collect::<Vec<_>>()
                        .join(" "),
                )
                .record("values", join_q(&strong.values))
                .record("convex_oscillation", format_q(&convex.oscillation));
            match strong_min_oscillation_exact(&c, *m)? {
                Some(exact) => doc.record("exact_oscillation", format_q(&exact.oscillation)),
                None => doc.record("exact_oscillation", "unavailable"),
            };
            let mut t = Table::new("measures", &["slot", "tree", "weight"]);
            for (i, mu) in strong.measures.iter().enumerate() {
                for (tree, w) in mu.iter() {
                    t.push(vec![i.to_string(), tree.to_string(), format_q(w)]);
                }
            }
            doc.with_table(t);
            Ok(Outcome::no_if(doc, strong.oscillation > th))
        }
    }
}
