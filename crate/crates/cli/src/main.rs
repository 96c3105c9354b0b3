//! `tricolor`: seeded, deterministic runs of the library's searches, each
//! writing a JSON artifact that embeds its own configuration.
//!
//! Exit codes: 0 success or verdict yes, 1 verdict no or a failure result,
//! 2 usage, input or budget error.

mod artifact;
mod commands;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "tricolor",
    version,
    about = "Triangle-coloring Ramsey searches with checkable certificates"
)]
struct Cli {
    /// Worker threads; 0 uses every core. Never changes the output.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Generate a graph in the text format.
    Gen(GenArgs),
    /// List the triangles of a graph, or color them.
    Triangles(TrianglesArgs),
    /// Check that a triple system is linear.
    CheckLinear(SystemArgs),
    /// Check that a triple system is a tight tree.
    CheckTree(SystemArgs),
    /// Decide G ⇒ (F)^Δ, or search for the smallest such G.
    Arrow(ArrowArgs),
    /// Find a clique whose triangles all share one color.
    MonoClique(MonoCliqueArgs),
    /// Shrink a partite 3-graph to a dense sub-tuple by density increment.
    Regularize(RegularizeArgs),
    /// Greedily embed a linear triple system into a partite host.
    Embed(EmbedArgs),
    /// Embed a tight path of triangles into a colored random graph.
    EmbedTree(EmbedTreeArgs),
    /// Build the bipartite Ramsey host and check its size identities.
    HostBuild(HostBuildArgs),
    /// Decode a monochromatic copy of F from a colored host.
    HostExtract(HostExtractArgs),
    /// Check subset-pair edge ratios (property P) or codegree concentration.
    PropertyP(PropertyPArgs),
    /// Count transversal copies and check the counting lower bound.
    Count(CountArgs),
    /// Print the parameter schedule as tower exponents.
    Schedule(ScheduleArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum GraphKind {
    Gnp,
    Complete,
    Empty,
    Path,
    Cycle,
    TightPath,
}

#[derive(Args)]
pub struct GenArgs {
    #[arg(long, value_enum, default_value = "gnp")]
    pub kind: GraphKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ColorChoice {
    Random,
    Red,
    Blue,
}

#[derive(Args)]
pub struct TrianglesArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Emit a coloring of the triangles instead of the bare list.
    #[arg(long, value_enum)]
    pub color: Option<ColorChoice>,
    #[arg(long, default_value_t = 0.5)]
    pub p_red: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct SystemArgs {
    /// Triple system in the `tsys` format.
    #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
    pub triples: Option<PathBuf>,
    /// Use the triangles of this graph.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ArrowModeArg {
    Exhaustive,
    Adversarial,
}

#[derive(Args)]
pub struct ArrowArgs {
    #[arg(long, required_unless_present = "ramsey_max")]
    pub host: Option<PathBuf>,
    #[arg(long)]
    pub pattern: PathBuf,
    #[arg(long, value_enum, default_value = "exhaustive")]
    pub mode: ArrowModeArg,
    /// Most host triangles enumerated exhaustively.
    #[arg(long, default_value_t = 24)]
    pub budget: usize,
    #[arg(long, default_value_t = 20)]
    pub restarts: u32,
    #[arg(long, default_value_t = 2000)]
    pub steps: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Record a witness copy for every coloring.
    #[arg(long)]
    pub witnesses: bool,
    /// Also write a refuting coloring here, in the coloring format.
    #[arg(long)]
    pub refutation: Option<PathBuf>,
    /// Search hosts of order up to this instead of checking one host.
    #[arg(long, conflicts_with = "host")]
    pub ramsey_max: Option<usize>,
    #[arg(long, default_value_t = 50)]
    pub random_candidates: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct MonoCliqueArgs {
    #[arg(long)]
    pub host: PathBuf,
    /// Coloring file; a seeded random coloring when absent.
    #[arg(long)]
    pub coloring: Option<PathBuf>,
    #[arg(long, default_value_t = 0.5)]
    pub p_red: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub n: usize,
    /// Prefix length ℓ; defaults to R(n−1)+1 when known.
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ScanModeArg {
    Exhaustive,
    Heuristic,
}

#[derive(Args)]
pub struct RegularizeArgs {
    /// Partite family as JSON; otherwise a random one is drawn.
    #[arg(long)]
    pub family: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    pub parts: usize,
    #[arg(long, default_value_t = 8)]
    pub block_size: usize,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "1/2")]
    pub epsilon: String,
    /// Target density; the observed density when absent.
    #[arg(long)]
    pub d: Option<String>,
    #[arg(long, value_enum, default_value = "exhaustive")]
    pub mode: ScanModeArg,
    #[arg(long, default_value_t = 100_000_000)]
    pub budget: u128,
    #[arg(long, default_value_t = 16)]
    pub restarts: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct InstanceArgs {
    /// A SystemInstance as JSON; otherwise one is drawn from the flags below.
    #[arg(long, conflicts_with = "pattern")]
    pub instance: Option<PathBuf>,
    #[arg(long, required_unless_present = "instance")]
    pub pattern: Option<PathBuf>,
    /// Triple system on the pattern; all its triangles when absent.
    #[arg(long)]
    pub system: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    pub block_size: usize,
    #[arg(long, default_value_t = 0.5)]
    pub p_edge: f64,
    #[arg(long, default_value_t = 1.0)]
    pub p_triple: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the drawn instance here as JSON.
    #[arg(long)]
    pub save_instance: Option<PathBuf>,
}

#[derive(Args)]
pub struct EmbedArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long)]
    pub epsilon: Option<String>,
    #[arg(long)]
    pub d: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, requires = "d")]
    pub epsilon: Option<String>,
    #[arg(long, requires = "epsilon")]
    pub d: Option<String>,
    #[arg(long, default_value_t = 100_000_000)]
    pub budget: u128,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct EmbedTreeArgs {
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// Host order; n⁴ when absent.
    #[arg(long)]
    pub order: Option<usize>,
    /// Edge probability; 1/(200n) when absent.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.5)]
    pub p_red: f64,
    /// Coloring of the triangles of the seeded host.
    #[arg(long)]
    pub coloring: Option<PathBuf>,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct HostBuildArgs {
    #[arg(long)]
    pub base: PathBuf,
    #[arg(long)]
    pub block_size: usize,
    /// Write the materialized host graph here.
    #[arg(long)]
    pub graph_out: Option<PathBuf>,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_vertices: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct HostExtractArgs {
    #[arg(long)]
    pub base: PathBuf,
    #[arg(long)]
    pub block_size: usize,
    #[arg(long)]
    pub pattern: PathBuf,
    /// Triangle-free side of the split, comma separated.
    #[arg(long, value_delimiter = ',', requires = "b")]
    pub a: Option<Vec<usize>>,
    /// Independent side of the split, comma separated.
    #[arg(long, value_delimiter = ',', requires = "a")]
    pub b: Option<Vec<usize>>,
    #[arg(long, default_value_t = 20)]
    pub decompose_budget: usize,
    /// Coloring of the materialized host's triangles.
    #[arg(long, conflicts_with = "constant")]
    pub coloring: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub constant: Option<ConstantColor>,
    #[arg(long, default_value_t = 0.5)]
    pub p_red: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1 << 20)]
    pub tuple_budget: usize,
    #[arg(long, default_value_t = 1 << 16)]
    pub samples: usize,
    #[arg(long, default_value_t = 1 << 24)]
    pub blowup_budget: u128,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ConstantColor {
    Red,
    Blue,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CheckModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Args)]
pub struct PropertyPArgs {
    #[arg(long, conflicts_with = "t", required_unless_present = "t")]
    pub graph: Option<PathBuf>,
    /// Order of an implicit G(t, p), never stored.
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "sampled")]
    pub mode: CheckModeArg,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: u128,
    /// Check codegree concentration instead.
    #[arg(long)]
    pub concentration: bool,
    #[arg(long, default_value_t = 0.3)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 3)]
    pub s_max: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct ScheduleArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global()
    {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match commands::run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
