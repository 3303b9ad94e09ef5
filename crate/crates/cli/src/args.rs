use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "fracsense", version, about = "Chirped-filter qubit sensing: sweeps, transforms and checks")]
pub struct Cli {
    /// JSON experiment config; unknown keys are rejected.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Master seed, overriding `noise.seed`.
    #[arg(long, global = true, value_name = "U64")]
    pub seed: Option<u64>,

    /// Output directory, overriding `output_dir`.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,

    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pulse table and sampled kernel of one filter.
    Filter(FilterArgs),
    /// Simulated spectra for every (q1, filter mode, f1) of the config.
    Spectrum,
    /// Estimation and detection statistics against q1.
    Stats,
    /// Fractional Fourier transform of the signal or a filter kernel.
    Frft(FrftArgs),
    /// Wigner distribution of the signal or a filter kernel.
    Wigner(WignerArgs),
    /// Numerical identity checks with a pass/fail table.
    Verify(VerifyArgs),
    /// Figure reproductions at the default parameters.
    Reproduce {
        #[arg(value_enum)]
        figure: Figure,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    /// Spectra against q1 (matched and unchirped filters).
    Fig3,
    /// MSE, bounds and detection errors against q1.
    Fig4,
}

#[derive(Debug, Args)]
pub struct FilterArgs {
    /// Chirp rate q (MHz²).
    #[arg(long, allow_hyphen_values = true)]
    pub q: f64,
    /// Initial frequency f_j (MHz).
    #[arg(long)]
    pub f: f64,
    /// Window length T (µs); defaults to the config's signal duration.
    #[arg(long = "duration", short = 'T')]
    pub duration: Option<f64>,
    /// Phase offset φ (rad).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi: f64,
}

/// Waveform a transform is applied to: the configured signal by default,
/// a filter kernel when `--kernel-f` is given.
#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Signal chirp q1 (MHz²).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub q1: f64,
    /// Signal frequency f1 (MHz); defaults to the config's first f1.
    #[arg(long)]
    pub f1: Option<f64>,
    /// Transform the kernel with this initial frequency instead of the signal.
    #[arg(long)]
    pub kernel_f: Option<f64>,
    /// Kernel chirp rate (MHz²).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub kernel_q: f64,
    /// Kernel phase offset (rad).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub kernel_phi: f64,
}

#[derive(Debug, Args)]
pub struct FrftArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Transform order α (rad).
    #[arg(long, conflicts_with = "order_q", allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Order given as a chirp rate, α = arccot(q) (MHz²).
    #[arg(long, allow_hyphen_values = true)]
    pub order_q: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub u_min: f64,
    #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
    pub u_max: f64,
    #[arg(long, default_value_t = 301)]
    pub u_points: usize,
}

#[derive(Debug, Args)]
pub struct WignerArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub f_min: f64,
    #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
    pub f_max: f64,
    #[arg(long, default_value_t = 121)]
    pub f_points: usize,
    /// Transform the analytic signal (removes negative-frequency cross terms).
    #[arg(long)]
    pub analytic: bool,
    /// Display smoothing width along t (µs).
    #[arg(long, default_value_t = 0.0)]
    pub smooth_t: f64,
    /// Display smoothing width along f (MHz).
    #[arg(long, default_value_t = 0.0)]
    pub smooth_f: f64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Inflate the variance feeding the Monte-Carlo side of the stochastic
    /// check by this fraction (negative control, e.g. 0.1).
    #[arg(long, default_value_t = 0.0)]
    pub perturb_variance: f64,
}
