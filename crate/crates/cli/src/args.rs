use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ktruss::minimize::{Algorithm, DEFAULT_EXACT_CAP};

#[derive(Debug, Parser)]
#[command(name = "ktruss", version, about = "k-truss decomposition and k-truss minimization")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vertex, edge and triangle counts, maximum support and trussness.
    Stats {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Print the edges of the k-truss in original labels.
    Truss {
        input: PathBuf,
        #[arg(short, long, value_parser = parse_k)]
        k: u32,
        /// Also write the k-truss groups (trussness exactly k) as JSON.
        #[arg(long, value_name = "PATH")]
        dump_groups: Option<PathBuf>,
    },
    /// Print every edge with its trussness.
    Decompose { input: PathBuf },
    /// Choose b edges whose deletion removes the most of the k-truss.
    Minimize(MinimizeArgs),
    /// Run a grid of (k, b, algorithm) cells and print CSV rows.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct MinimizeArgs {
    pub input: PathBuf,
    #[arg(short, long, value_parser = parse_k)]
    pub k: u32,
    #[arg(short, long, value_parser = parse_b)]
    pub b: usize,
    #[arg(short, long, value_parser = parse_algorithm, default_value = "up_edge")]
    pub algorithm: Algorithm,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    pub input: PathBuf,
    /// Comma-separated truss levels.
    #[arg(short, long = "k", value_delimiter = ',', value_parser = parse_k, required = true)]
    pub ks: Vec<u32>,
    /// Comma-separated budgets.
    #[arg(short, long = "b", value_delimiter = ',', value_parser = parse_b, default_value = "1,2,3,4,5")]
    pub bs: Vec<usize>,
    #[arg(
        short,
        long = "algorithms",
        value_delimiter = ',',
        value_parser = parse_algorithm,
        default_value = "baseline,gp_edge,up_edge"
    )]
    pub algorithms: Vec<Algorithm>,
    /// Repetitions of every cell.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub reps: u32,
    /// Write the CSV here instead of standard output.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Worker threads; 0 uses every core, 1 is strictly sequential.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Rebuild UP-Edge's group index from scratch after every deletion.
    #[arg(long)]
    pub full_rebuild: bool,
    /// Largest number of edge subsets the exact solver may try.
    #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
    pub exact_cap: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

fn parse_k(s: &str) -> Result<u32, String> {
    let k: u32 = s.trim().parse().map_err(|_| format!("{s:?} is not a number"))?;
    if k < 3 {
        return Err(format!("k must be at least 3, got {k}"));
    }
    Ok(k)
}

fn parse_b(s: &str) -> Result<usize, String> {
    let b: usize = s.trim().parse().map_err(|_| format!("{s:?} is not a number"))?;
    if b < 1 {
        return Err("budget must be at least 1".into());
    }
    Ok(b)
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.trim().parse().map_err(|e: ktruss::Error| e.to_string())
}
