//! Command-line surface: flags, subcommands, and the small parsed types they
//! share.
//!
//! Every numeric flag accepts negative values (coefficients of the raw system
//! are signed), ranges use the inclusive `lo:hi:count` form, and brackets use
//! `lo:hi`. Parse errors surface through clap and exit with the usage code.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hardclock_core::{Component, CycleBranch};

/// Bifurcation analysis and simulation of a planar hard-excitation clock.
///
/// The model is a radial limit-cycle oscillator driven by a constant input:
/// x' = g(r) x - omega y + input, y' = g(r) y + omega x with
/// g(r) = -1 + alpha r - r^2. Subcommands tabulate its equilibria, trace its
/// bifurcation curves, and measure its cycles by direct integration.
#[derive(Debug, Parser)]
#[command(name = "hardclock", version, disable_help_subcommand = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate rest points over frequency and input values.
    Equilibria(EquilibriaArgs),
    /// Trace bifurcation curves and points in the frequency-input plane.
    #[command(subcommand)]
    Bifurcation(BifurcationCommand),
    /// Integrate one trajectory from a given initial state.
    Simulate(SimulateArgs),
    /// Measure the period of one cycle branch across an input range.
    PeriodSweep(PeriodSweepArgs),
    /// Locate where a cycle branch collides with a nascent equilibrium pair.
    Snlc(SnlcArgs),
    /// Bin one coordinate of a settled cycle into an occupancy histogram.
    Histogram(HistogramArgs),
    /// Record one steady-state waveform covering whole periods.
    Waveform(WaveformArgs),
    /// Classify the unforced system from raw coefficients.
    Autonomous(RawArgs),
    /// Reduce raw coefficients to the three normalized parameters.
    Normalize(RawArgs),
}

/// An inclusive linearly spaced range, written `lo:hi:count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeSpec {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl RangeSpec {
    /// Parses `lo:hi:count` with `lo < hi` and `count >= 2`.
    pub fn parse(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, count] = parts.as_slice() else {
            return Err(format!("expected lo:hi:count, got `{s}`"));
        };
        let lo: f64 = lo.parse().map_err(|_| format!("`{lo}` is not a number"))?;
        let hi: f64 = hi.parse().map_err(|_| format!("`{hi}` is not a number"))?;
        let count: usize = count
            .parse()
            .map_err(|_| format!("`{count}` is not a sample count"))?;
        if !lo.is_finite() || !hi.is_finite() {
            return Err("range endpoints must be finite".into());
        }
        if lo >= hi {
            return Err(format!("range needs lo < hi, got {lo}:{hi}"));
        }
        if count < 2 {
            return Err(format!("range needs at least 2 samples, got {count}"));
        }
        Ok(RangeSpec { lo, hi, count })
    }

    /// The `count` evenly spaced values from `lo` to `hi` inclusive.
    pub fn values(&self) -> Vec<f64> {
        let step = (self.hi - self.lo) / (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                if k + 1 == self.count {
                    self.hi
                } else {
                    self.lo + step * k as f64
                }
            })
            .collect()
    }
}

impl std::fmt::Display for RangeSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", self.lo, self.hi, self.count)
    }
}

/// An ordered pair of endpoints, written `lo:hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketSpec {
    pub lo: f64,
    pub hi: f64,
}

impl BracketSpec {
    /// Parses `lo:hi` with `lo < hi`.
    pub fn parse(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi] = parts.as_slice() else {
            return Err(format!("expected lo:hi, got `{s}`"));
        };
        let lo: f64 = lo.parse().map_err(|_| format!("`{lo}` is not a number"))?;
        let hi: f64 = hi.parse().map_err(|_| format!("`{hi}` is not a number"))?;
        if !lo.is_finite() || !hi.is_finite() {
            return Err("bracket endpoints must be finite".into());
        }
        if lo >= hi {
            return Err(format!("bracket needs lo < hi, got {lo}:{hi}"));
        }
        Ok(BracketSpec { lo, hi })
    }
}

impl std::fmt::Display for BracketSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

/// Serialization format of the emitted table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Comma-separated values with a header row; metadata as `#` lines.
    Csv,
    /// One object holding `params`, `columns`, and `rows`.
    Json,
}

/// Which cycle of the bistable band a measurement follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    /// The outer attracting cycle.
    Stable,
    /// The inner repelling cycle (measured in reversed time).
    Unstable,
}

impl From<BranchArg> for CycleBranch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::Stable => CycleBranch::Stable,
            BranchArg::Unstable => CycleBranch::Unstable,
        }
    }
}

impl BranchArg {
    pub fn name(self) -> &'static str {
        match self {
            BranchArg::Stable => "stable",
            BranchArg::Unstable => "unstable",
        }
    }
}

/// Which state coordinate a histogram bins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComponentArg {
    X,
    Y,
}

impl From<ComponentArg> for Component {
    fn from(c: ComponentArg) -> Self {
        match c {
            ComponentArg::X => Component::X,
            ComponentArg::Y => Component::Y,
        }
    }
}

impl ComponentArg {
    pub fn name(self) -> &'static str {
        match self {
            ComponentArg::X => "x",
            ComponentArg::Y => "y",
        }
    }
}

/// Destination and format flags shared by every tabular subcommand.
#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Serialization format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Suppress the `#`-prefixed metadata lines of CSV output.
    #[arg(long)]
    pub no_meta: bool,
}

/// Exactly one way of giving the angular frequency.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct OmegaSpec {
    /// Single angular frequency.
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    /// Frequency sweep as lo:hi:count.
    #[arg(long, value_name = "LO:HI:COUNT", value_parser = RangeSpec::parse)]
    pub omega_range: Option<RangeSpec>,
}

impl OmegaSpec {
    pub fn values(&self) -> Vec<f64> {
        match (self.omega, self.omega_range) {
            (Some(w), _) => vec![w],
            (None, Some(r)) => r.values(),
            (None, None) => unreachable!("clap enforces exactly one"),
        }
    }

    pub fn describe(&self) -> String {
        match (self.omega, self.omega_range) {
            (Some(w), _) => format!("{w}"),
            (None, Some(r)) => format!("{r}"),
            (None, None) => unreachable!("clap enforces exactly one"),
        }
    }
}

/// Exactly one way of giving the constant input.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct InputSpec {
    /// Single input level.
    #[arg(long, allow_negative_numbers = true)]
    pub input: Option<f64>,
    /// Input sweep as lo:hi:count.
    #[arg(long, value_name = "LO:HI:COUNT", value_parser = RangeSpec::parse)]
    pub input_range: Option<RangeSpec>,
}

impl InputSpec {
    pub fn values(&self) -> Vec<f64> {
        match (self.input, self.input_range) {
            (Some(i), _) => vec![i],
            (None, Some(r)) => r.values(),
            (None, None) => unreachable!("clap enforces exactly one"),
        }
    }

    pub fn describe(&self) -> String {
        match (self.input, self.input_range) {
            (Some(i), _) => format!("{i}"),
            (None, Some(r)) => format!("{r}"),
            (None, None) => unreachable!("clap enforces exactly one"),
        }
    }
}

#[derive(Debug, Args)]
pub struct EquilibriaArgs {
    /// Radial shape parameter.
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[command(flatten)]
    pub omega: OmegaSpec,
    #[command(flatten)]
    pub input: InputSpec,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Subcommand)]
pub enum BifurcationCommand {
    /// Both branches of the Hopf curve over a frequency range.
    Hopf(HopfArgs),
    /// The fold (saddle-node) locus traced from its radius parametrization.
    Snlocus(SnlocusArgs),
    /// The two Bogdanov-Takens points terminating the Hopf branches.
    Bt(BtArgs),
    /// The fold locus recovered by scanning the discriminant on a grid.
    Discriminant(DiscriminantArgs),
}

#[derive(Debug, Args)]
pub struct HopfArgs {
    /// Radial shape parameter.
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Frequency sweep as lo:hi:count.
    #[arg(long, value_name = "LO:HI:COUNT", value_parser = RangeSpec::parse,
          default_value = "0.05:2:200")]
    pub omega_range: RangeSpec,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SnlocusArgs {
    /// Radial shape parameter.
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BtArgs {
    /// Radial shape parameter.
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DiscriminantArgs {
    /// Radial shape parameter.
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Frequency grid as lo:hi:count (one scan column per value).
    ///
    /// Columns also set how finely the assembled polylines follow the locus
    /// sideways: branches whose input moves faster than three input-grid
    /// steps per column break apart, so keep the two grids comparably dense.
    #[arg(long, value_name = "LO:HI:COUNT", value_parser = RangeSpec::parse,
          default_value = "0.05:2:1000")]
    pub omega_range: RangeSpec,
    /// Input grid as lo:hi:count (scan resolution along each column).
    #[arg(long, value_name = "LO:HI:COUNT", value_parser = RangeSpec::parse,
          default_value = "0.01:3:1000")]
    pub input_range: RangeSpec,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Radial shape parameter.
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Angular frequency.
    #[arg(long, allow_negative_numbers = true)]
    pub omega: f64,
    /// Constant input level.
    #[arg(long, allow_negative_numbers = true)]
    pub input: f64,
    /// Initial x coordinate.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub x0: f64,
    /// Initial y coordinate.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub y0: f64,
    /// Integration span in time units.
    #[arg(long, default_value_t = 1500.0)]
    pub t_final: f64,
    /// Fixed step size (ignored when --tol selects the adaptive stepper).
    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,
    /// Relative tolerance of the adaptive stepper; absolute is 1000x tighter.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Integrate the negated field (time reversed).
    #[arg(long)]
    pub backward: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PeriodSweepArgs {
    /// Radial shape parameter.
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Angular frequency.
    #[arg(long, allow_negative_numbers = true)]
    pub omega: f64,
    /// Input sweep as lo:hi:count.
    #[arg(long, value_name = "LO:HI:COUNT", value_parser = RangeSpec::parse)]
    pub input_range: RangeSpec,
    /// Cycle branch to follow.
    #[arg(long, value_enum, default_value_t = BranchArg::Stable)]
    pub branch: BranchArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SnlcArgs {
    /// Radial shape parameter.
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Angular frequency.
    #[arg(long, allow_negative_numbers = true)]
    pub omega: f64,
    /// Input bracket lo:hi with the cycle present at lo and absent at hi.
    #[arg(long, value_name = "LO:HI", value_parser = BracketSpec::parse)]
    pub bracket: BracketSpec,
    /// Cycle branch whose disappearance is located.
    #[arg(long, value_enum, default_value_t = BranchArg::Stable)]
    pub branch: BranchArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct HistogramArgs {
    /// Radial shape parameter.
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Angular frequency.
    #[arg(long, allow_negative_numbers = true)]
    pub omega: f64,
    /// Constant input level.
    #[arg(long, allow_negative_numbers = true)]
    pub input: f64,
    /// Cycle branch to settle onto before binning.
    #[arg(long, value_enum, default_value_t = BranchArg::Stable)]
    pub branch: BranchArg,
    /// State coordinate to bin.
    #[arg(long, value_enum, default_value_t = ComponentArg::X)]
    pub component: ComponentArg,
    /// Number of equal-width bins.
    #[arg(long, default_value_t = 60)]
    pub bins: usize,
    /// Length of the uniformly sampled run that is binned.
    #[arg(long, default_value_t = 1500.0)]
    pub t_final: f64,
    /// Sampling interval of that run.
    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct WaveformArgs {
    /// Radial shape parameter.
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Angular frequency.
    #[arg(long, allow_negative_numbers = true)]
    pub omega: f64,
    /// Constant input level.
    #[arg(long, allow_negative_numbers = true)]
    pub input: f64,
    /// Cycle branch whose waveform is recorded.
    #[arg(long, value_enum, default_value_t = BranchArg::Stable)]
    pub branch: BranchArg,
    /// Upper bound on the recorded span (trimmed to whole periods).
    #[arg(long, default_value_t = 1500.0)]
    pub t_final: f64,
    /// Sampling interval.
    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Raw (unnormalized) coefficients of the clock.
#[derive(Debug, Args)]
pub struct RawArgs {
    /// Constant radial coefficient (negative in the hard-excitation regime).
    #[arg(long, allow_negative_numbers = true)]
    pub sigma0: f64,
    /// Linear radial coefficient (positive in the hard-excitation regime).
    #[arg(long, allow_negative_numbers = true)]
    pub sigma1: f64,
    /// Quadratic radial coefficient (negative in the hard-excitation regime).
    #[arg(long, allow_negative_numbers = true)]
    pub sigma2: f64,
    /// Angular frequency of the raw system.
    #[arg(long, allow_negative_numbers = true)]
    pub omega0: f64,
    /// Constant input of the raw system.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub input0: f64,
    /// Serialization format; these subcommands emit json only.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}
