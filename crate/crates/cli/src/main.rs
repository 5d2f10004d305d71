mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

/// Verify q-series identities, expand their sides, and check their
/// partition-theoretic readings by brute force.
#[derive(Debug, Parser)]
#[command(name = "qrsl", version)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Worker threads; defaults to one per core.
    #[arg(long, global = true, env = "QRSL_JOBS", value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Lhs,
    Rhs,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Builtin identities, relations and crosscheck theorems.
    List {
        /// Keep entries whose name or label contains this text.
        #[arg(long)]
        grep: Option<String>,
    },
    /// Compare both sides coefficient by coefficient.
    Verify(VerifyArgs),
    /// Print the coefficients of one side or of an expression.
    Expand(ExpandArgs),
    /// Count partitions in a class.
    Count(CountArgs),
    /// Compare partition counts with series coefficients.
    Crosscheck(CrosscheckArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("input").required(true).args(["builtin", "file"])))]
pub struct VerifyArgs {
    /// Comma-separated builtin names, or `all`.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Identity file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[arg(long, default_value_t = 100)]
    pub order: usize,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("input").required(true).args(["builtin", "file", "expr"])))]
pub struct ExpandArgs {
    #[arg(long)]
    pub builtin: Option<String>,
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Which identity in --file; may be omitted when the file holds one.
    #[arg(long, requires = "file")]
    pub name: Option<String>,
    /// A lone sum side or product, e.g. "1 / pochinf(q^1; q^1)".
    #[arg(long)]
    pub expr: Option<String>,
    /// The product side includes its `q^shift` factor, so both sides of an
    /// identity expand to the same coefficients.
    #[arg(long, value_enum, default_value_t = Side::Lhs)]
    pub side: Side,
    #[arg(long, default_value_t = 100)]
    pub order: usize,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// partitions, gap2, rr1-gap2, rr2-gap2-no1, residues, andrews-lewis-9,
    /// s-count, t-count, or a signed class such as ram36-signed.
    pub class: String,
    /// Weight; without it every weight up to --n-max is counted.
    pub n: Option<u32>,
    #[arg(long = "n", id = "n_flag", conflicts_with = "n")]
    pub n_flag: Option<u32>,
    #[arg(long, default_value_t = 24)]
    pub n_max: u32,
    /// Number of parts, for s-count and t-count; without it every l is shown.
    #[arg(long)]
    pub l: Option<u32>,
    /// Smallest allowed part, for gap2.
    #[arg(long, default_value_t = 1)]
    pub min_part: u32,
    #[arg(long)]
    pub modulus: Option<u32>,
    #[arg(long, value_delimiter = ',')]
    pub residues: Vec<u32>,
    #[arg(long)]
    pub as_stated: bool,
    /// List the members of a signed class instead of counting them.
    #[arg(long)]
    pub show: bool,
}

#[derive(Debug, Args)]
pub struct CrosscheckArgs {
    /// Theorem name, or `all`.
    pub theorem: String,
    #[arg(long, default_value_t = 24)]
    pub n_max: u32,
    #[arg(long)]
    pub as_stated: bool,
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = cli.jobs {
        builder = builder.num_threads(k as usize);
    }
    let pool = builder.build()?;
    let fmt = cli.format;
    pool.install(|| match cli.command {
        Command::List { grep } => commands::list(fmt, grep.as_deref()),
        Command::Verify(a) => commands::verify(fmt, &a),
        Command::Expand(a) => commands::expand(fmt, &a),
        Command::Count(a) => commands::count(fmt, &a),
        Command::Crosscheck(a) => commands::crosscheck(fmt, &a),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("qrsl: {e:#}");
            ExitCode::from(2)
        }
    }
}
