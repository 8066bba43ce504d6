use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Parser)]
#[command(
    name = "isodual",
    version,
    about = "Construct, certify and measure iso-dual AG codes"
)]
pub struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for distance and census sharding (results do not depend on it).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Message budget for exact distance.
    #[arg(long, global = true, default_value_t = isodual::codes::DEFAULT_CAP)]
    pub cap: u64,
    /// Allow GGS-scale runs.
    #[arg(long, global = true)]
    pub long: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Build a code and write its JSON.
    Construct(ConstructArgs),
    /// Decide iso-duality of a code file.
    Certify(CertifyArgs),
    /// Minimum distance of a code file.
    Distance(DistanceArgs),
    /// Rational place and splitting censuses.
    Census(CensusArgs),
    /// Closed-form parameter tuples.
    Params(ParamsArgs),
    /// Genus of the cyclotomic function field K_n.
    Genus(GenusArgs),
    /// Carlitz module polynomials and expansion checks.
    Carlitz(CarlitzArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructFamily {
    Rational,
    Eab,
    Hermitian,
    HermitianCover,
    CurvexStep1,
    Ggs,
    Suzuki,
}

/// Field `F_q`, given either as `--q` or as `--p` with `--m-ext`.
#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long = "m-ext")]
    pub m_ext: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub family: ConstructFamily,
    #[command(flatten)]
    pub field: FieldArgs,
    /// Degree q' of the additive polynomial (defaults to p).
    #[arg(long)]
    pub qprime: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub mu: u32,
    /// Right-hand side f(x), e.g. "x^3" or "2x^2+1".
    #[arg(long)]
    pub fx: Option<String>,
    /// "auto" or a comma-separated list of element codes.
    #[arg(long, default_value = "auto")]
    pub alphas: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub beta: Option<i64>,
    #[arg(long)]
    pub l: Option<u64>,
    #[arg(long)]
    pub r: Option<u32>,
    /// Certify, measure and record the code in this catalog directory.
    #[arg(long)]
    pub catalog: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CertifyArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Also check the closed-form Hermitian certificate y^(2β+2−q²).
    #[arg(long)]
    pub closed_form_x: bool,
}

#[derive(Debug, Clone, Args)]
pub struct DistanceArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Fail with BudgetExceeded instead of falling back to bounds.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CensusCurve {
    Eab,
    Hermitian,
    #[value(name = "curveX")]
    CurveX,
    Suzuki,
    Ggs,
}

#[derive(Debug, Clone, Args)]
pub struct CensusArgs {
    #[arg(long, value_enum)]
    pub curve: CensusCurve,
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub qprime: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub mu: u32,
    #[arg(long)]
    pub fx: Option<String>,
    #[arg(long)]
    pub r: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct ParamsArgs {
    /// hermitian, suzuki, ggs, eab, hermitian-cover, curvex-step1, curvex-step2,
    /// cyclotomic-binary or cyclotomic-ternary.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub q: Option<i64>,
    #[arg(long)]
    pub r: Option<i64>,
    #[arg(long)]
    pub l: Option<i64>,
    #[arg(long)]
    pub n: Option<i64>,
    #[arg(long)]
    pub m: Option<i64>,
}

#[derive(Debug, Clone, Args)]
pub struct GenusArgs {
    #[arg(long)]
    pub q: u64,
    /// A single n; omitted means the table n = 2..=max-n.
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long, default_value_t = 12)]
    pub max_n: u64,
    /// Evaluate the formula for q outside {2, 3}.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Clone, Args)]
pub struct CarlitzArgs {
    #[arg(long)]
    pub q: u64,
    /// Print ρ_f for this polynomial in x.
    #[arg(long)]
    pub f: Option<String>,
    /// Check the binomial expansion of ρ_{(x+1)^i}.
    #[arg(long)]
    pub i: Option<u64>,
    /// Truncation index for the expansion check.
    #[arg(long)]
    pub n: Option<u64>,
}
