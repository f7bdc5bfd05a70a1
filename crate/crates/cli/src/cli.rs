use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "fsdet",
    version,
    about = "Coefficient determinant bounds, evaluations, and sharpness searches for starlike functions"
)]
pub struct Cli {
    /// Output format [default: json]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Seed for every randomized step; overrides the config file and FSDET_SEED
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// key=value file supplying defaults for the flags
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Worker threads for parallel searches (does not affect results)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form upper bound of one of the four theorems
    Bound(BoundArgs),
    /// Evaluate a functional on a catalog function or a coefficient CSV
    Eval(EvalArgs),
    /// Numerical supremum of a functional over the starlike class
    Search(SearchArgs),
    /// Run both search backends over a parameter grid
    Sweep(SweepArgs),
    /// Print a reference table
    Table(TableArgs),
    /// Run the property and proof-replay suites
    Verify(VerifyArgs),
    /// Print Taylor coefficients of a catalog function
    Coeffs(CoeffsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    T1,
    T2,
    T3,
    T4,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, value_enum)]
    pub theorem: TheoremArg,
    /// gamma / beta / alpha values, or lambda triples for t4
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true, num_args = 1..)]
    pub params: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Catalog name (koebe, two_symmetric, kfold:<k>, paper_thm2_literal, paper_thm3_literal:<alpha>) or CSV path
    #[arg(long)]
    pub function: String,
    /// fekete_szego, h2_2, b2_1, h3, triangle, hankel or bdet
    #[arg(long)]
    pub functional: String,
    /// Functional parameters; hankel and bdet take n,q,lambda_1..lambda_q
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, num_args = 1..)]
    pub params: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Atoms,
    Lemma3,
}

#[derive(Debug, Args, Default)]
pub struct SearchTuning {
    #[arg(long)]
    pub restarts: Option<usize>,
    /// Atoms per Carathéodory mixture
    #[arg(long)]
    pub atoms: Option<usize>,
    /// Ascent cycles per restart
    #[arg(long)]
    pub max_iters: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Points per axis of the lemma3 grid scan
    #[arg(long)]
    pub lemma3_grid: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// fekete_szego, h2_2, b2_1 or h3
    #[arg(long)]
    pub functional: String,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true, num_args = 1..)]
    pub params: Vec<f64>,
    #[arg(long, value_enum, default_value = "atoms")]
    pub backend: BackendArg,
    #[command(flatten)]
    pub tuning: SearchTuning,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub functional: String,
    /// Inclusive range a:b:step
    #[arg(long, conflicts_with = "params", required_unless_present = "params")]
    pub grid: Option<String>,
    /// Explicit parameter values (lambda triples for h3)
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, num_args = 1..)]
    pub params: Option<Vec<f64>>,
    #[command(flatten)]
    pub tuning: SearchTuning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableName {
    Corollary4,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub name: TableName,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Lemmas,
    Identities,
    Proofs,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: SuiteArg,
    /// Random samples per property suite
    #[arg(long)]
    pub samples: Option<usize>,
    /// Points per axis for proof replay
    #[arg(long)]
    pub grid: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    #[arg(long)]
    pub function: String,
    /// Highest coefficient index
    #[arg(long, default_value_t = 10)]
    pub order: usize,
}
