use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nevai::{Complex64, Family, FunctionId, GridSpec};

#[derive(Debug, Clone, Parser)]
#[command(name = "nevai", version, about = "Complex Nevai-type operators on Chebyshev node grids")]
pub struct Cli {
    /// Worker threads; defaults to the number of available cores.
    #[arg(long, global = true, env = "NEVAI_THREADS")]
    pub threads: Option<usize>,

    /// Directory receiving outputs and the run manifest.
    #[arg(long, global = true, default_value = "nevai-out")]
    pub out_dir: PathBuf,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Chebyshev nodes and Cotes numbers.
    Nodes(NodesArgs),
    /// Evaluate an operator on a grid next to the exact function.
    Eval(EvalArgs),
    /// Error table over several n.
    Table(TableArgs),
    /// Modulus matrices |f|, |Op f| and their difference.
    Contour(EvalArgs),
    /// Reconstruct an amplitude image (and optional phase) with the Kantorovich family.
    Image(ImageArgs),
    /// Empirical rate of the Kantorovich operator on the distance function.
    Rate(RateArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Nodes(_) => "nodes",
            Command::Eval(_) => "eval",
            Command::Table(_) => "table",
            Command::Contour(_) => "contour",
            Command::Image(_) => "image",
            Command::Rate(_) => "rate",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct NodesArgs {
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Clone, Args)]
pub struct OperatorArgs {
    /// nevai (alias generalized), kantorovich or hermite.
    #[arg(long, default_value = "nevai")]
    pub operator: Family,

    #[arg(long, default_value_t = 2.0)]
    pub s: f64,

    /// Taylor degree for the Hermite family.
    #[arg(long, default_value_t = 3)]
    pub r: usize,

    /// Gauss–Legendre points per cell axis (Kantorovich).
    #[arg(long, default_value_t = 4)]
    pub cell_subdivision: usize,
}

#[derive(Debug, Clone, Args)]
pub struct TargetArgs {
    /// Built-in function id: f1..f4, g1..g3.
    #[arg(long, required_unless_present = "constant", conflicts_with = "constant")]
    pub function: Option<FunctionId>,

    /// Constant function `RE,IM` (or `RE`).
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub constant: Option<Complex64>,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Points per axis of the evaluation grid.
    #[arg(long = "grid", default_value_t = 101)]
    pub grid_size: usize,

    /// Distance kept from the boundary; defaults to 1/(2 * grid).
    #[arg(long)]
    pub grid_margin: Option<f64>,
}

impl GridArgs {
    pub fn spec(&self) -> nevai::Result<GridSpec> {
        spec_for(self.grid_size, self.grid_margin)
    }
}

fn spec_for(size: usize, margin: Option<f64>) -> nevai::Result<GridSpec> {
    let margin = margin.unwrap_or(1.0 / (2.0 * size.max(1) as f64));
    GridSpec::new(size, size, margin)
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub op: OperatorArgs,
    #[command(flatten)]
    pub target: TargetArgs,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    /// Comma-separated values of n.
    #[arg(long, value_delimiter = ',', default_value = "10,20,30,40,50")]
    pub n_list: Vec<usize>,
    #[command(flatten)]
    pub op: OperatorArgs,
    #[command(flatten)]
    pub target: TargetArgs,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ImageFormat {
    Png,
    Pgm,
}

impl ImageFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ImageFormat::Png => "png",
            ImageFormat::Pgm => "pgm",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ImageArgs {
    /// 8-bit grayscale amplitude image (PNG or binary PGM).
    #[arg(long)]
    pub amplitude: PathBuf,

    /// Phase matrix in radians, CSV with a `rows,cols` header; zero phase if absent.
    #[arg(long)]
    pub phase: Option<PathBuf>,

    #[arg(long)]
    pub n: usize,

    #[arg(long, default_value_t = 2.0)]
    pub s: f64,

    /// Output shape `ROWSxCOLS`; defaults to the input shape.
    #[arg(long, value_parser = parse_shape)]
    pub out_shape: Option<(usize, usize)>,

    #[arg(long, value_enum, default_value_t = ImageFormat::Png)]
    pub format: ImageFormat,

    /// Also report mean SSIM over sliding windows of this size.
    #[arg(long)]
    pub ssim_window: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct RateArgs {
    #[arg(long, default_value_t = 2.0)]
    pub s: f64,

    #[arg(long, value_delimiter = ',', default_value = "8,16,32,64")]
    pub n_list: Vec<usize>,

    /// Points per axis of the grid the supremum is taken over.
    #[arg(long = "grid", default_value_t = 41)]
    pub grid_size: usize,

    #[arg(long)]
    pub grid_margin: Option<f64>,

    #[arg(long, default_value_t = 4)]
    pub points_per_axis: usize,
}

impl RateArgs {
    pub fn spec(&self) -> nevai::Result<GridSpec> {
        spec_for(self.grid_size, self.grid_margin)
    }
}

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let mut parts = s.split(',').map(str::trim);
    let re = parts.next().unwrap_or_default();
    let im = parts.next().unwrap_or("0");
    if parts.next().is_some() {
        return Err(format!("expected RE,IM, got `{s}`"));
    }
    let parse = |t: &str| t.parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    Ok(Complex64::new(parse(re)?, parse(im)?))
}

pub fn parse_shape(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected ROWSxCOLS, got `{s}`"))?;
    let parse = |t: &str| match t.trim().parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(format!("`{t}` is not a positive integer")),
    };
    Ok((parse(a)?, parse(b)?))
}
