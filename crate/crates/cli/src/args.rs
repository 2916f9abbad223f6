use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "curvekit",
    version,
    about = "Polar curves, their intersections and areas, and roulettes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Common points of two polar curves.
    Intersect(IntersectArgs),
    /// Areas of polar regions and their intersections.
    Area(AreaArgs),
    /// Polar period as a multiple of π.
    Period(PeriodArgs),
    /// Rotation and reflection symmetry tests.
    Symmetry(SymmetryArgs),
    /// Trace of a point on a circle rolling along a base curve.
    Roulette(RouletteArgs),
    /// Split a polar curve into pieces with non-negative radius.
    Decompose(DecomposeArgs),
    /// Sample polar curves as CSV or SVG.
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// Parameter binding, `name=value`; the value may be an expression such as `pi/3`.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,
}

#[derive(Debug, Args)]
pub struct IntersectArgs {
    #[arg(long)]
    pub c1: String,
    #[arg(long)]
    pub c2: String,
    #[command(flatten)]
    pub curve: CurveArgs,
}

#[derive(Debug, Args)]
pub struct AreaArgs {
    #[arg(long, conflicts_with_all = ["rose_n", "limacon_lambda"])]
    pub c1: Option<String>,
    #[arg(long, requires = "c1", conflicts_with = "loop_area")]
    pub c2: Option<String>,
    /// `½∫f²` over the domain of `--c1`, which must be non-negative there.
    #[arg(long = "loop", requires = "c1")]
    pub loop_area: bool,
    /// Angle interval `a:b`; endpoints may be expressions.
    #[arg(long, requires = "c1")]
    pub domain: Option<String>,
    /// Common area of the roses `r = sin Nθ` and `r = cos Nθ`.
    #[arg(long = "rose-N", value_name = "N", conflicts_with = "limacon_lambda")]
    pub rose_n: Option<u32>,
    /// Common area of the large loop of `1 − λ sin θ` and the small loop of `1 + λ cos θ`.
    #[arg(long = "limacon-lambda", value_name = "LAMBDA")]
    pub limacon_lambda: Option<f64>,
    /// Also report a Monte Carlo estimate with this many samples.
    #[arg(long = "monte-carlo", value_name = "SAMPLES")]
    pub monte_carlo: Option<usize>,
    #[arg(long, default_value_t = curvekit::montecarlo::DEFAULT_SEED)]
    pub seed: u64,
    #[command(flatten)]
    pub curve: CurveArgs,
}

#[derive(Debug, Args)]
pub struct PeriodArgs {
    #[arg(long)]
    pub c1: String,
    /// Largest multiple of π tried.
    #[arg(long, default_value_t = curvekit::polar::DEFAULT_MAX_PERIOD)]
    pub max_n: u32,
    #[command(flatten)]
    pub curve: CurveArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    X,
    Y,
    Origin,
}

#[derive(Debug, Args)]
pub struct SymmetryArgs {
    #[arg(long)]
    pub c1: String,
    /// Reflection in the x or y axis, or the half-turn about the origin.
    #[arg(long, value_enum, required_unless_present_any = ["rotate", "reflect"])]
    pub axis: Option<Axis>,
    /// Rotation by this angle.
    #[arg(long, conflicts_with_all = ["axis", "reflect"], allow_hyphen_values = true)]
    pub rotate: Option<String>,
    /// Reflection in the line through the origin at this angle.
    #[arg(long, conflicts_with = "axis", allow_hyphen_values = true)]
    pub reflect: Option<String>,
    #[arg(long, default_value_t = curvekit::polar::DEFAULT_MAX_PERIOD)]
    pub max_n: u32,
    #[command(flatten)]
    pub curve: CurveArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Base {
    Line,
    Circle,
    Ellipse,
    Limacon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Normal,
    Antinormal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TraceFormat {
    Csv,
    Svg,
}

#[derive(Debug, Args)]
pub struct RouletteArgs {
    #[arg(long, value_enum)]
    pub base: Base,
    /// Radius of the base circle.
    #[arg(long = "R", default_value_t = 1.0)]
    pub big_r: f64,
    /// Ellipse semi-axes.
    #[arg(long, default_value_t = 3.0)]
    pub a: f64,
    #[arg(long, default_value_t = 2.0)]
    pub b: f64,
    /// Limaçon parameter.
    #[arg(long, default_value_t = 2.0)]
    pub lambda: f64,
    /// Radius of the rolling circle.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long, value_enum, default_value_t = SideArg::Normal)]
    pub side: SideArg,
    #[arg(long)]
    pub reverse: bool,
    /// Trochoid factor; 0 traces the contact point itself.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub k: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub t0: f64,
    /// Start parameter; defaults to `--t0`.
    #[arg(long, allow_hyphen_values = true)]
    pub from: Option<f64>,
    /// End parameter; defaults to one turn, or `4πr` along the line.
    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<f64>,
    #[arg(long, default_value_t = 500)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = TraceFormat::Csv)]
    pub format: TraceFormat,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[arg(long)]
    pub c1: String,
    #[arg(long)]
    pub domain: Option<String>,
    #[command(flatten)]
    pub curve: CurveArgs,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Curves to sample; repeat for several.
    #[arg(long = "c", required = true)]
    pub curves: Vec<String>,
    #[arg(long)]
    pub domain: Option<String>,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = TraceFormat::Svg)]
    pub format: TraceFormat,
    #[command(flatten)]
    pub curve: CurveArgs,
}
