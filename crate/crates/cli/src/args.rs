use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "cyclotome", version, about = "Exact computations with cyclic sets, subdivision and Hochschild homology")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Directory of the result cache; caching is off without it.
    #[arg(long, global = true, env = "CYCLOTOME_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Recompute and overwrite any cached result.
    #[arg(long, global = true)]
    pub refresh: bool,
    /// Add wall-clock time to the report (bypasses the cache).
    #[arg(long, global = true)]
    pub timing: bool,
    /// Cap on enumerated cells, morphisms and chain generators.
    #[arg(long, global = true, env = "CYCLOTOME_MAX_CELLS")]
    pub max_cells: Option<u128>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Morphism tables of Δ, Λ and Λ_r.
    #[command(subcommand)]
    Lambda(LambdaCommand),
    /// Levels and homology of a cyclic set.
    Realize(RealizeArgs),
    /// Cyclic nerve of a finite monoid or category.
    Nerve(NerveArgs),
    /// Edgewise subdivision and its C_r-fixed points.
    Subdivide(SubdivideArgs),
    /// Hochschild homology of a finite-dimensional graded algebra.
    Hh(HhArgs),
    /// Cyclic homology of a finite-dimensional graded algebra.
    Hc(HcArgs),
    /// Square-zero models of spheres.
    Sphere(SphereArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum LambdaCommand {
    /// Enumerate all morphisms [m] -> [n].
    Enum(EnumArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Delta,
    Lambda,
    Rcyclic,
}

#[derive(Debug, Args, Serialize)]
pub struct EnumArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(short)]
    pub m: usize,
    #[arg(short)]
    pub n: usize,
    /// Period of Λ_r; required for `rcyclic`.
    #[arg(long)]
    pub r: Option<usize>,
}

#[derive(Debug, Args, Serialize)]
pub struct RealizeArgs {
    /// Cyclic set: a colimit presentation, a monoid or a category (JSON).
    #[arg(long)]
    #[serde(skip)]
    pub input: PathBuf,
    #[arg(long)]
    pub max_level: usize,
    #[arg(long, default_value = "Q")]
    pub ring: String,
    #[arg(long)]
    pub homology: bool,
}

#[derive(Debug, Args, Serialize)]
#[command(group(ArgGroup::new("source").required(true).multiple(false).args(["monoid", "category"])))]
pub struct NerveArgs {
    #[arg(long)]
    #[serde(skip)]
    pub monoid: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub category: Option<PathBuf>,
    #[arg(long)]
    pub max_level: usize,
    #[arg(long)]
    pub homology: bool,
    #[arg(long, default_value = "Q")]
    pub ring: String,
}

#[derive(Debug, Args, Serialize)]
pub struct SubdivideArgs {
    #[arg(long)]
    #[serde(skip)]
    pub input: PathBuf,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub max_level: usize,
    #[arg(long)]
    pub fixed_points: bool,
    #[arg(long)]
    pub homology: bool,
    #[arg(long, default_value = "Q")]
    pub ring: String,
}

#[derive(Debug, Args, Serialize)]
#[command(group(ArgGroup::new("range").required(true).multiple(false).args(["total_degrees", "simplicial_max"])))]
pub struct HhArgs {
    #[arg(long)]
    #[serde(skip)]
    pub algebra: PathBuf,
    /// Total degrees `A..B` (internal minus simplicial).
    #[arg(long, allow_hyphen_values = true)]
    pub total_degrees: Option<String>,
    #[arg(long)]
    pub simplicial_max: Option<usize>,
    /// Use the normalized complex (the default).
    #[arg(long, overrides_with = "unnormalized")]
    #[serde(skip)]
    pub normalized: bool,
    /// Use the un-normalized complex.
    #[arg(long, overrides_with = "normalized")]
    pub unnormalized: bool,
    /// Hodge decomposition and Adams operations (over Q, commutative algebras).
    #[arg(long)]
    pub hodge: bool,
    /// Adams operations to check; defaults to 2 and 3.
    #[arg(long, requires = "hodge", value_delimiter = ',')]
    pub adams: Vec<i64>,
    /// Also compute the cohomology of the dual complex.
    #[arg(long)]
    pub dual: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct HcArgs {
    #[arg(long)]
    #[serde(skip)]
    pub algebra: PathBuf,
    #[arg(long)]
    pub max_degree: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Debug, Args, Serialize)]
#[command(group(ArgGroup::new("action").required(true).multiple(false).args(["emit_algebra", "check_remark"])))]
pub struct SphereArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum)]
    pub parity: Parity,
    /// Print the algebra document.
    #[arg(long)]
    pub emit_algebra: bool,
    /// Compare HH ranks by total degree with the divided power ⊗ exterior table.
    #[arg(long)]
    pub check_remark: bool,
    #[arg(long, default_value_t = 12)]
    pub max_degree: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Lambda,
    Latching,
    Subdivision,
    Cyclotomic,
    Hochschild,
    Duality,
    Chain,
    All,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
