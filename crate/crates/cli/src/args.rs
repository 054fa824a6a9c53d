use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_POLY: &str = "5*(x^4+y^4+z^4) - 3*(x^2+y^2+z^2)^2";

#[derive(Debug, Parser)]
#[command(name = "lhsum", version, about = "Lattice sums of homogeneous polynomials over spheres")]
pub struct Cli {
    /// Worker threads for parallel reductions (results do not depend on it).
    #[arg(long, global = true, env = "LH_THREADS")]
    pub threads: Option<usize>,

    /// Seed for every random draw.
    #[arg(long, global = true, env = "LH_SEED", default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact sum of P over the ball |x|^2 <= r_sq.
    Sum {
        #[arg(long, default_value = DEFAULT_POLY)]
        poly: String,
        #[arg(long)]
        r_sq: u64,
    },
    /// Theta coefficients a_n as CSV, or a coefficient-bound report.
    Coeffs {
        #[arg(long, default_value = DEFAULT_POLY)]
        poly: String,
        #[arg(long)]
        n_max: u64,
        /// Print a JSON report of max |a_n| against the chosen bound instead of the series.
        #[arg(long, value_enum)]
        report: Option<BoundArg>,
    },
    /// Smoothed sum over the shell R <= |x| <= R + H.
    Shortsum(RadiusArgs),
    /// Smoothed sum over the ball of radius R + H.
    Longsum(RadiusArgs),
    /// Frequency-side evaluation of the long sum, truncated at |xi|^2 <= n_trunc.
    Freqsum {
        #[command(flatten)]
        radius: RadiusArgs,
        #[arg(long, default_value_t = 1024)]
        n_trunc: u64,
    },
    /// Oscillatory exponential sums against their bounds, as CSV `N,abs_V,bound,ratio`.
    Expsum {
        #[arg(long, default_value = "x^2+y^2+z^2")]
        poly: String,
        /// Strictly ascending comma-separated N values.
        #[arg(long, value_delimiter = ',', default_value = "8,16,32,64")]
        n_list: Vec<u64>,
        #[arg(long)]
        r: f64,
        /// Shift h as `h1,h2,h3`.
        #[arg(long, value_delimiter = ',', default_value = "0.5,0.25,0.125")]
        h: Vec<f64>,
        /// Use the two-dimensional grid sum with D = N / d_div instead.
        #[arg(long)]
        grid: bool,
        #[arg(long, default_value_t = 4)]
        d_div: u64,
        /// Print the full JSON report.
        #[arg(long)]
        json: bool,
    },
    /// Apply a process word to an exponent pair.
    Pair {
        /// `k,l`, optionally suffixed with `+eps`.
        #[arg(long)]
        pair: String,
        /// Letters A and B applied right to left, e.g. `BA2`.
        #[arg(long, default_value = "")]
        word: String,
        /// Also print the closed-form exponent for the result.
        #[arg(long)]
        theta: bool,
    },
    /// Balance long-sum against short-sum error terms over H = R^alpha.
    Balance(BalanceArgs),
    /// Regenerate the table of exponents.
    Table {
        #[arg(long)]
        csv: bool,
    },
    /// Fit the growth exponent of the ball sum.
    Fit(FitArgs),
    /// Check the modular transformation law of the theta series.
    ThetaCheck(ThetaArgs),
    /// Quadratic Gauss sums, direct and closed form.
    Gauss {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        c: i64,
        /// Also evaluate S(xi, d, c).
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<i64>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BoundArg {
    Sarnak,
    BlomerHarcos,
}

#[derive(Debug, Args)]
pub struct RadiusArgs {
    #[arg(long, default_value = DEFAULT_POLY)]
    pub poly: String,
    #[arg(long)]
    pub r: f64,
    #[arg(long)]
    pub h: f64,
}

#[derive(Debug, Args)]
pub struct BalanceArgs {
    /// Long-sum terms from this exponent pair.
    #[arg(long, conflicts_with = "long_terms")]
    pub pair: Option<String>,
    /// Explicit long-sum terms `a:b;c:d` for R^a H^b.
    #[arg(long, allow_hyphen_values = true)]
    pub long_terms: Option<String>,
    /// Short-sum model: trivial, ci, hb, cusp, glh or rc.
    #[arg(long, default_value = "cusp", conflicts_with = "short_terms")]
    pub short: String,
    #[arg(long, allow_hyphen_values = true)]
    pub short_terms: Option<String>,
    /// Lower end of the alpha range, or `none`.
    #[arg(long, default_value = "-1", allow_hyphen_values = true)]
    pub lo: String,
    /// Upper end of the alpha range, or `none`.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub hi: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long, default_value = DEFAULT_POLY)]
    pub poly: String,
    #[arg(long, default_value_t = 128)]
    pub r_max: u64,
    /// Dyadic windows per doubling of R.
    #[arg(long, default_value_t = 8)]
    pub window: u32,
    /// Subtract the volume term before fitting.
    #[arg(long)]
    pub mean_subtract: bool,
    /// Write the (R, sum) series as CSV here.
    #[arg(long)]
    pub series: Option<PathBuf>,
    /// Fit a previously written series instead of computing one.
    #[arg(long, conflicts_with_all = ["series", "mean_subtract"])]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ThetaArgs {
    /// Harmonic polynomial.
    #[arg(long, default_value = DEFAULT_POLY)]
    pub poly: String,
    /// `a,b,c,d` with ad - bc = 1 and 4 | c.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    pub gamma: Option<Vec<i64>>,
    /// `re,im`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,0.5")]
    pub z: Vec<f64>,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Instead of one check, run this many sampled checks.
    #[arg(long, conflicts_with = "gamma")]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 16)]
    pub c_max: i64,
    #[arg(long, default_value_t = 0.001)]
    pub y_min: f64,
    #[arg(long, default_value_t = 20_000)]
    pub n_max: u64,
    #[arg(long)]
    pub json: bool,
}
