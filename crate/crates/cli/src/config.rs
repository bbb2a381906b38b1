use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact experiments on the free binary system, finite magmas, Thompson's
/// group F, and Ramsey copies of `T_m`.
#[derive(Debug, Clone, Parser)]
#[command(name = "caretlab", version)]
pub struct RunConfig {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest tree size any command will enumerate.
    #[arg(long, global = true, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..=16))]
    pub cap_size: u64,
    /// LP solves (ramsey) allowed per search.
    #[arg(long, global = true, default_value_t = 2000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Exact residual tolerance for idempotent solving.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Oscillation threshold as `p/q`.
    #[arg(long, global = true, default_value = "1/2")]
    pub threshold: String,
    /// Write the payload here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads (default: logical cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    /// `key = value` lines.
    Text,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    #[command(subcommand)]
    Trees(TreesCmd),
    #[command(subcommand)]
    Measure(MeasureCmd),
    #[command(subcommand)]
    Magma(MagmaCmd),
    #[command(subcommand)]
    Hindman(HindmanCmd),
    #[command(subcommand)]
    F(FCmd),
    #[command(subcommand)]
    Stats(StatsCmd),
    #[command(subcommand)]
    Constructions(ConstructionsCmd),
    #[command(subcommand)]
    Ramsey(RamseyCmd),
    /// Check measure, coloring and magma files.
    Validate {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum TreesCmd {
    /// All trees of one size in canonical order.
    Enum {
        #[arg(long)]
        size: usize,
    },
    /// Size, left depth, right spine, dyadic points and pruning bounds.
    Stats {
        #[arg(long)]
        tree: String,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum MeasureCmd {
    /// `μ ^ ν` of two tree measures.
    Conv {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// `Σ μ(t) c(t)` for a coloring of the measure's size.
    Eval {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Pushforward along an element of F, along `h_r`, or into a magma.
    Push {
        #[arg(long)]
        measure: PathBuf,
        #[command(flatten)]
        map: PushMap,
    },
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct PushMap {
    /// Tree pair `s -> t` or a word such as `x0 x1^-1`.
    #[arg(long)]
    pub element: Option<String>,
    /// Bit prefix `r` for `h_r`.
    #[arg(long)]
    pub hr: Option<String>,
    /// Magma file; trees are evaluated with generator `--generator`.
    #[arg(long)]
    pub magma: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub generator: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Damped,
    ResidualDescent,
    ExhaustiveSupport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LabelArg {
    /// `l(t) mod k`.
    LeftDepth,
    /// `#t mod k`.
    Size,
    /// Right spine length mod `k`.
    RightSpine,
    /// 1 on left combs, 0 elsewhere.
    LeftComb,
}

#[derive(Debug, Clone, Subcommand)]
pub enum MagmaCmd {
    /// Find and exactly verify an idempotent probability measure.
    Idem {
        #[arg(long)]
        magma: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Every idempotent supported on at most two elements.
    Classify {
        #[arg(long)]
        magma: PathBuf,
    },
    /// Induce a table from a labeling of trees.
    Quotient {
        #[arg(long, value_enum)]
        label: LabelArg,
        #[arg(long, default_value_t = 2)]
        modulus: usize,
        /// Label trees up to this size.
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        /// Smallest size admitted as a factor.
        #[arg(long, default_value_t = 1)]
        min_large: usize,
    },
    /// Reachable sets `R_m = ev(T_m)` and their stabilization.
    Reach {
        #[arg(long)]
        magma: PathBuf,
        #[arg(long, default_value_t = 0)]
        generator: usize,
        #[arg(long, default_value_t = 64)]
        cap: usize,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum HindmanCmd {
    /// Measures `μ_1..μ_count` with `c(μ_i)` and `c(μ_i ^ μ_j)` near `r`.
    Pairs {
        #[arg(long)]
        magma: PathBuf,
        #[arg(long, default_value_t = 0)]
        generator: usize,
        /// Colors of the magma elements, comma separated `p/q`. Defaults to
        /// the element index for two-element magmas.
        #[arg(long)]
        colors: Option<String>,
        #[arg(long, default_value = "1/100")]
        eps: String,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum FCmd {
    /// `f · t`.
    Act {
        #[arg(long)]
        element: String,
        #[arg(long)]
        tree: String,
    },
    /// `f ∘ g` (apply `g` first), reduced.
    Compose {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Undefined mass and total-variation defect of `f_* μ` against `μ`.
    Defect {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        element: String,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum StatsCmd {
    /// Mass split by comparing the sizes of `t/σ` and `t/ς`.
    Addresses {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        varsigma: String,
    },
    /// Mass on the two size chains of addresses 001, 01, 10.
    Monotonicity {
        #[arg(long)]
        measure: PathBuf,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum ConstructionsCmd {
    /// `h_r(t)`.
    Hr {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        r: String,
    },
    /// Odometer bits of `t`, and `t ∈ E_{r,p}` when `r` is given.
    Odometer {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        r: Option<String>,
    },
    /// `t ∈ E_{r,n}`.
    Er {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        r: String,
        #[arg(long)]
        n: usize,
    },
    /// `u_σ`.
    U {
        #[arg(long)]
        sigma: String,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum RamseyCmd {
    /// Minimum oscillation of a coloring over all copies of `T_m`.
    Solve {
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        m: usize,
    },
    /// A copy on which a 0/1 coloring is constant, or a Farkas certificate.
    Constant {
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        m: usize,
    },
    /// Look for a coloring of `T_n` no copy of `T_m` tames.
    Adversary {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Verdicts for `n = m..=max_n`.
    Scan {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        max_n: usize,
    },
    /// Strong copies `t ↦ t(μ_0, ..., μ_{m-1})`.
    Strong {
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        m: usize,
    },
}
