use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "pseudolab", version, about = "Pseudospectra of matrices and block-diagonal operator families")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Resolvent-norm field on a lattice, as re,im,value rows.
    Field {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Level-set mask of a field, as re,im,member rows.
    Levelset {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutArgs,
        #[arg(long)]
        epsilon: f64,
        /// open: value > 1/eps; closed: value >= 1/eps; closure: lattice closure of the open set.
        #[arg(long, value_enum, default_value_t = MaskMode::Closed)]
        mode: MaskMode,
    },
    /// Hausdorff distance between two point or mask CSV files.
    Hausdorff {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Level-set convergence along the model's approximating sequence.
    Converge {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutArgs,
        #[command(flatten)]
        study: StudyArgs,
        /// Replace the default sequence by (1 -+ 1/k) times the model.
        #[arg(long, value_enum)]
        scaling: Option<DirectionArg>,
    },
    /// Run a named study and exit 0 on pass, 1 on fail.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(pseudolab::STUDY_NAMES))]
        study: String,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutArgs,
        #[command(flatten)]
        study_args: StudyArgs,
    },
    /// Resolvent decay along the ray r e^{i phi} for f = x^beta.
    Decay {
        #[arg(long, default_value_t = 0.5)]
        beta: f64,
        /// Ray angle; defaults to 2 pi / 5.
        #[arg(long, allow_hyphen_values = true)]
        phi: Option<f64>,
        #[arg(long, default_value_t = 10.0)]
        r_min: f64,
        #[arg(long, default_value_t = 100.0)]
        r_max: f64,
        #[arg(long, default_value_t = 9)]
        points: usize,
        /// Use alpha_k = k + 1 instead of the dense log grid over [1, 1e5].
        #[arg(long)]
        sparse: bool,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MaskMode {
    Open,
    Closed,
    Closure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Shrink,
    Grow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args, Default)]
pub struct ModelArgs {
    /// Named example.
    #[arg(long)]
    pub model: Option<String>,
    /// Square matrix file: CSV rows of interleaved re,im pairs, no header.
    #[arg(long, conflicts_with_all = ["model", "config"])]
    pub matrix: Option<PathBuf>,
    /// JSON file with named-example parameters, e.g. {"name": "decay", "beta": 0.3}.
    #[arg(long, conflicts_with = "model")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Default)]
pub struct GridArgs {
    /// Window re_min,re_max,im_min,im_max.
    #[arg(long, allow_hyphen_values = true)]
    pub region: Option<String>,
    #[arg(long)]
    pub nx: Option<usize>,
    #[arg(long)]
    pub ny: Option<usize>,
    /// Lattice spacing; overrides --nx/--ny.
    #[arg(long, conflicts_with_all = ["nx", "ny"])]
    pub h: Option<f64>,
    /// Power exponent: the field is ||(T - z)^(-2^n)||^(1/2^n).
    #[arg(long)]
    pub n: Option<u32>,
}

#[derive(Debug, Clone, Args, Default)]
pub struct OutArgs {
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args, Default)]
pub struct StudyArgs {
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Sequence indices, comma separated, or a range a..=b.
    #[arg(long)]
    pub ks: Option<String>,
    /// Lower bound for global-min and constant-region.
    #[arg(long = "M")]
    pub m: Option<f64>,
    /// Resolvent power for global-min (a power of two).
    #[arg(long)]
    pub l: Option<u32>,
    #[arg(long, value_enum)]
    pub direction: Option<DirectionArg>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda2: Option<f64>,
    /// Complex point re,im for empty-resolvent.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Truncation sizes for empty-resolvent, comma separated.
    #[arg(long)]
    pub ns: Option<String>,
    /// Probe point re,im for constant-region; repeatable.
    #[arg(long = "probe", allow_hyphen_values = true)]
    pub probes: Vec<String>,
    #[arg(long)]
    pub tol: Option<f64>,
}
