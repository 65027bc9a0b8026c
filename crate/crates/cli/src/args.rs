use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "spectral-cone",
    version,
    about = "Eigenvalue inequalities for partial traces, Horn inequalities and related checks"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate the inequality system for (d_A, d_B).
    Inequalities(InequalitiesArgs),
    /// Pull a Schubert class back along V -> V ⊗ C^{d_B}.
    PhiStar(PhiStarArgs),
    /// Horn triples and inequalities for n×n Hermitian matrices.
    Horn(HornArgs),
    /// Check a joint spectrum and a reduced spectrum against the system.
    Check(CheckArgs),
    /// Monte Carlo check on random states.
    Verify(VerifyArgs),
    /// Build an operator on C^2 ⊗ C^{d_B} with prescribed spectra.
    Dim2(Dim2Args),
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Dims {
    #[arg(long = "da", value_name = "D_A", value_parser = clap::value_parser!(u64).range(1..=64))]
    pub d_a: u64,
    #[arg(long = "db", value_name = "D_B", value_parser = clap::value_parser!(u64).range(1..=64))]
    pub d_b: u64,
}

impl Dims {
    pub fn get(&self) -> (usize, usize) {
        (self.d_a as usize, self.d_b as usize)
    }
}

#[derive(Args, Debug)]
pub struct InequalitiesArgs {
    #[command(flatten)]
    pub dims: Dims,
    /// Unpruned candidates with their (ν, π) provenance.
    #[arg(long, conflicts_with = "pruned")]
    pub raw: bool,
    /// Irredundant system closed under duality (default).
    #[arg(long)]
    pub pruned: bool,
}

#[derive(Args, Debug)]
pub struct PhiStarArgs {
    #[command(flatten)]
    pub dims: Dims,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
    pub k: u64,
    /// Partition, e.g. "[2,1]".
    #[arg(long)]
    pub pi: String,
}

#[derive(Args, Debug)]
pub struct HornArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=12))]
    pub n: u64,
    /// JSON file {"alpha":[..],"beta":[..],"gamma":[..]} to check.
    #[arg(long, value_name = "FILE")]
    pub check: Option<String>,
    /// List the inequalities implied by the others (exact LP).
    #[arg(long, conflicts_with = "check")]
    pub redundant: bool,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SystemChoice {
    Basic,
    Candidates,
    Pruned,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub dims: Dims,
    /// Joint spectrum: a JSON file or an inline comma list.
    #[arg(long, allow_hyphen_values = true)]
    pub spectrum: String,
    /// Reduced spectrum: a JSON file or an inline comma list.
    #[arg(long, allow_hyphen_values = true)]
    pub reduced: String,
    #[arg(long, value_enum, default_value_t = SystemChoice::Pruned)]
    pub system: SystemChoice,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub dims: Dims,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sample positive unit-trace spectra instead of general Hermitian ones.
    #[arg(long)]
    pub density: bool,
    #[arg(long, value_enum, default_value_t = SystemChoice::Candidates)]
    pub system: SystemChoice,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct Dim2Args {
    #[arg(long = "db", value_name = "D_B", value_parser = clap::value_parser!(u64).range(1..=64))]
    pub d_b: u64,
    /// Joint spectrum (length 2·d_B): a JSON file or an inline comma list.
    #[arg(long, allow_hyphen_values = true)]
    pub spectrum: String,
    /// Reduced spectrum (length 2): a JSON file or an inline comma list.
    #[arg(long, allow_hyphen_values = true)]
    pub target: String,
}
