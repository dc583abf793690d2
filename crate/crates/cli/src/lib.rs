//! Command-line frontend: load belief bases, answer queries against a
//! persisted session, print activation tables and export the network.

mod commands;
mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::Failure;

#[derive(Debug, Parser)]
#[command(
    name = "actinf",
    version,
    about = "Activation-based focused inference over conditional belief bases"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output layout.
    #[arg(long, value_enum, default_value_t = OutputFormat::Table, global = true)]
    pub format: OutputFormat,

    /// Print exact rationals instead of values rounded to 2 decimals.
    #[arg(long, global = true)]
    pub exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    /// Tab-separated, always exact.
    Tsv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report whether the base is consistent (exit 1 if not).
    Check(BaseArg),
    /// Print the layers of the Z-partition.
    Zpartition(BaseArg),
    /// Print base level, weighting, spreading and total activation per conditional.
    Activation(ActivationArgs),
    /// Answer a query by activation-based focusing and update the session.
    Query(QueryArgs),
    /// Print the conditionals within `depth` association steps of the query.
    Focus(FocusArgs),
    /// Write the spreading network in dot syntax.
    ExportDot(DotArgs),
    /// Print the stored base levels of a session.
    SessionShow(SessionShowArgs),
}

#[derive(Debug, Args)]
pub struct BaseArg {
    /// Belief-base file.
    #[arg(long, short)]
    pub base: PathBuf,
}

#[derive(Debug, Args)]
pub struct ActivationArgs {
    #[command(flatten)]
    pub base: BaseArg,
    /// Query conditional, e.g. "(f | c && !s)".
    #[arg(long, short)]
    pub query: String,
    /// Read base levels from this session instead of starting fresh.
    #[arg(long)]
    pub session: Option<PathBuf>,
    /// Mark conditionals whose activation reaches this threshold.
    #[arg(long)]
    pub theta: Option<String>,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    #[command(flatten)]
    pub base: BaseArg,
    #[arg(long, short)]
    pub query: String,
    /// Session file; created if missing, rewritten after the query.
    #[arg(long)]
    pub session: Option<PathBuf>,
    /// Starting threshold; lowered by 1/2 per step down to 0.
    #[arg(long, conflicts_with = "schedule", required_unless_present = "schedule")]
    pub theta: Option<String>,
    /// Explicit strictly decreasing thresholds ending in 0, e.g. "2.3,1,0".
    #[arg(long)]
    pub schedule: Option<String>,
    /// Forgetting rate.
    #[arg(long, default_value = "1/5")]
    pub delta: String,
    /// Leave base levels (and the session file) untouched.
    #[arg(long)]
    pub no_forget: bool,
    /// Start over from initial base levels if the session does not match the base.
    #[arg(long)]
    pub reset_session: bool,
}

#[derive(Debug, Args)]
pub struct FocusArgs {
    #[command(flatten)]
    pub base: BaseArg,
    #[arg(long, short)]
    pub query: String,
    #[arg(long, default_value_t = 0)]
    pub depth: usize,
}

#[derive(Debug, Args)]
pub struct DotArgs {
    #[command(flatten)]
    pub base: BaseArg,
    /// Annotate vertices with triggering values for this query.
    #[arg(long, short)]
    pub query: Option<String>,
}

#[derive(Debug, Args)]
pub struct SessionShowArgs {
    #[arg(long)]
    pub session: PathBuf,
    /// Check the session against this base and list it in base order.
    #[arg(long, short)]
    pub base: Option<PathBuf>,
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return e.exit_code();
        }
    };
    match commands::execute(&cli) {
        Ok(report) => {
            let _ = out.write_all(report.text.as_bytes());
            report.code
        }
        Err(failure) => {
            let _ = out.write_all(failure.stdout.as_bytes());
            let _ = writeln!(err, "error: {:#}", failure.error);
            failure.code
        }
    }
}
