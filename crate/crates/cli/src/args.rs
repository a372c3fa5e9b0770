use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "stochord",
    version,
    about = "Majorization, extreme order statistics and stochastic-order verification"
)]
pub struct Cli {
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Output format; plots default to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Majorization preorders.
    #[command(subcommand)]
    Maj(MajCmd),
    /// Single distributions and extremes: evaluation and quantiles.
    #[command(subcommand)]
    Dist(DistCmd),
    /// Stochastic-order comparison of two models.
    #[command(subcommand)]
    Order(OrderCmd),
    /// Extreme order statistics.
    #[command(subcommand)]
    Extreme(ExtremeCmd),
    /// Theorem drivers and fixture suites.
    #[command(subcommand)]
    Theorem(TheoremCmd),
    /// Seeded counterexample search.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Plot data as CSV.
    #[command(subcommand)]
    Plot(PlotCmd),
}

#[derive(Debug, Subcommand)]
pub enum MajCmd {
    /// Is x below y in the chosen preorder?
    Check {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// One of weak_sub, weak_super, majorize, log_weak, log, p_larger,
        /// reciprocal, exp_weak, exp. Ignored when --map is given.
        #[arg(long, default_value = "majorize")]
        order: String,
        /// f-majorization through this map (identity, log, reciprocal, exp,
        /// power:p=.., affine:a=..,b=..).
        #[arg(long)]
        map: Option<String>,
        /// Flavor for --map: weak_sub, weak_super or major.
        #[arg(long, default_value = "major")]
        flavor: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Every preorder of the implication chain for one pair.
    Chain {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub model: String,
    /// cdf, sf, pdf, hazard or rev_hazard.
    #[arg(long = "fn", default_value = "cdf")]
    pub func: String,
    /// Comma-separated evaluation points.
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
}

#[derive(Debug, Subcommand)]
pub enum DistCmd {
    Eval(EvalArgs),
    Quantile {
        #[arg(long)]
        model: String,
        /// Comma-separated probabilities.
        #[arg(long)]
        p: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExtremeCmd {
    /// Evaluate `min[..]`, `max[..]` or `max-arch[..]` models.
    Eval(EvalArgs),
}

#[derive(Debug, Args, Default)]
pub struct GridArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub lo: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub hi: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    /// linear or log.
    #[arg(long)]
    pub spacing: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum OrderCmd {
    /// Is F ≤ G in the chosen order?
    Check {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        /// st, hr, rh or disp.
        #[arg(long)]
        order: String,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Sign-change brackets of a difference of the two models.
    Crossings {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        /// sf_diff, hazard_diff or rev_hazard_diff.
        #[arg(long, default_value = "sf_diff")]
        quantity: String,
        #[command(flatten)]
        grid: GridArgs,
    },
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    #[arg(long)]
    pub id: String,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long = "lambda-star")]
    pub lambda_star: Option<String>,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long = "alpha-star")]
    pub alpha_star: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    #[arg(long = "mu-star", allow_hyphen_values = true)]
    pub mu_star: Option<String>,
    #[arg(long)]
    pub map: Option<String>,
    /// exp, weibull(k=..) or gengamma(p=..,q=..).
    #[arg(long)]
    pub baseline: Option<String>,
    /// Generator of X: independence, clayton:theta=.., gumbel:theta=..
    #[arg(long)]
    pub generator: Option<String>,
    #[arg(long = "generator-star")]
    pub generator_star: Option<String>,
    /// dec or inc.
    #[arg(long)]
    pub case: Option<String>,
    /// i or ii.
    #[arg(long)]
    pub part: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum TheoremCmd {
    Verify {
        #[command(flatten)]
        instance: Box<InstanceArgs>,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Seeded random valid instances of one theorem (or `all`).
    Suite {
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Archimedean statements: measured directions and the claim conflict.
    ArchBatch {
        #[arg(long, default_value_t = 40)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum SearchCmd {
    /// Look for pairs meeting the hypothesis whose extremes break the expectation.
    Run {
        /// ge, es, scale or frechet.
        #[arg(long)]
        family: String,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<f64>,
        #[arg(long)]
        baseline: Option<String>,
        /// Majorization kind required of (star, varied).
        #[arg(long)]
        hypothesis: String,
        #[arg(long, default_value = "st")]
        conclusion: String,
        /// le, ge or either.
        #[arg(long, default_value = "either")]
        expect: String,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "max-dim", default_value_t = 2)]
        max_dim: usize,
        /// `varied;star`, e.g. `4,0.5;2,3`. Repeatable; tried first.
        #[arg(long)]
        fixture: Vec<String>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// First refuted report among seeded valid instances of a theorem.
    Theorem {
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum PlotCmd {
    /// One column per model over a grid.
    Emit {
        /// Repeatable.
        #[arg(long, required = true)]
        model: Vec<String>,
        #[arg(long = "fn", default_value = "sf")]
        func: String,
        #[arg(long, allow_hyphen_values = true)]
        lo: f64,
        #[arg(long, allow_hyphen_values = true)]
        hi: f64,
        #[arg(long, default_value_t = 500)]
        n: usize,
        #[arg(long, default_value = "linear")]
        spacing: String,
    },
}
