//! `isingser`: exact Ising correlation series from the command line.
//!
//! Exit status: 0 success, 1 usage error, 2 resource refusal, 3 mismatch
//! against reference data (or a failed cache audit).

mod cache;
mod commands;
mod error;
mod pool;
mod render;
mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use isingser_core::{CorrelationId, TableSide};

use crate::error::CliError;
use crate::render::Format;

#[derive(Parser, Debug)]
#[command(name = "isingser", version, about = "Exact series for square-lattice Ising spin correlations")]
#[command(args_conflicts_with_subcommands = true, arg_required_else_help = true)]
struct Cli {
    /// Print every reference comparison for one side of the critical point.
    #[arg(long, value_enum)]
    emit: Option<Emit>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    /// High-temperature series, critical values and the high-side table.
    #[value(name = "appendixB")]
    High,
    /// Low-temperature series and the low-side table.
    #[value(name = "appendixC")]
    Low,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// High-temperature series of a correlation (native variable v).
    Ht(SeriesArgs),
    /// Low-temperature series of a correlation (native variable u).
    Lt(SeriesArgs),
    /// Fit a coefficient family as a polynomial in the separation n.
    Fit(FitArgs),
    /// Check the sigma-form Painleve VI equation on diagonal correlations.
    Painleve(PainleveArgs),
    /// Row correlation at the critical point.
    Critical(CriticalArgs),
    /// Compare stored reference series with the oracles.
    Golden(GoldenArgs),
    /// Print a numeric reference table, optionally against series sums.
    Table(TableArgs),
}

#[derive(Args, Debug, Clone)]
#[group(id = "target", required = true, multiple = false)]
pub struct Target {
    /// Row correlation <s(0,0) s(N,0)>.
    #[arg(long, value_name = "N", group = "target")]
    row: Option<u32>,
    /// Diagonal correlation <s(0,0) s(N,N)>.
    #[arg(long, value_name = "N", group = "target")]
    diag: Option<u32>,
    /// General correlation <s(0,0) s(m,n)>.
    #[arg(long, value_name = "M,N", value_parser = parse_offset, group = "target")]
    offset: Option<(u32, u32)>,
}

impl Target {
    pub fn id(&self) -> CorrelationId {
        match (self.row, self.diag, self.offset) {
            (Some(n), _, _) => CorrelationId::row(n),
            (_, Some(n), _) => CorrelationId::diagonal(n),
            (_, _, Some((m, n))) => CorrelationId::general(m, n),
            _ => unreachable!("clap requires one target"),
        }
    }
}

fn parse_offset(s: &str) -> Result<(u32, u32), String> {
    let (m, n) = s.split_once(',').ok_or("expected M,N")?;
    let p = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
    Ok((p(m)?, p(n)?))
}

#[derive(Args, Debug, Clone)]
pub struct SeriesArgs {
    #[command(flatten)]
    target: Target,
    /// Highest power of the native variable kept (default: distance + 10).
    #[arg(long)]
    order: Option<i64>,
    /// Output variable: v, x, wgt, kgt_hat above; u, z, klt_hat below.
    #[arg(long = "var", value_name = "TAG")]
    var: Option<String>,
    /// Subtract the squared magnetization (low temperature only).
    #[arg(long)]
    connected: bool,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Override the oracle's window padding.
    #[arg(long)]
    padding: Option<i64>,
    /// Refuse work beyond this many frontier states.
    #[arg(long, value_name = "STATES")]
    state_cap: Option<usize>,
    #[command(flatten)]
    cache: CacheArgs,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct CacheArgs {
    /// Neither read nor write the series cache.
    #[arg(long, conflicts_with = "audit_cache")]
    no_cache: bool,
    /// Recompute and fail (exit 3) if a cached record differs.
    #[arg(long)]
    audit_cache: bool,
}

impl CacheArgs {
    pub fn mode(self) -> cache::Mode {
        if self.no_cache {
            cache::Mode::Bypass
        } else if self.audit_cache {
            cache::Mode::Audit
        } else {
            cache::Mode::Use
        }
    }
}

#[derive(Args, Debug)]
pub struct FitArgs {
    /// ht_row, ht_row_khat, lt_conn or lt_conn_khat.
    #[arg(long)]
    family: String,
    /// Offset j of the coefficient past the leading one.
    #[arg(long)]
    offset: i64,
    #[arg(long, default_value_t = 1)]
    nmin: i64,
    #[arg(long, default_value_t = 6)]
    nmax: i64,
    /// Check that p(n+1) - p(n) equals this polynomial (exit 3 if not).
    #[arg(long, value_name = "POLY")]
    difference: Option<String>,
    /// Check that p(n) is an integer for 1 <= n <= N.
    #[arg(long, value_name = "N")]
    integral_to: Option<i64>,
    /// With --integral-to, also require even values.
    #[arg(long, requires = "integral_to")]
    even: bool,
    /// Report real roots and extrema for n >= 1.
    #[arg(long)]
    stationary: bool,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Plus,
    Minus,
}

#[derive(Args, Debug)]
pub struct PainleveArgs {
    #[arg(long)]
    n: u32,
    /// Order of the diagonal series (x = v^2 above, u below).
    #[arg(long)]
    order: i64,
    #[arg(long, value_enum, default_value_t = BranchArg::Plus)]
    branch: BranchArg,
    /// Also compare coefficient ratios with their closed forms up to this offset (max 5).
    #[arg(long, value_name = "L")]
    ratios: Option<u32>,
}

#[derive(Args, Debug)]
pub struct CriticalArgs {
    #[arg(long)]
    n: u32,
    /// Decimal places (default: as printed in the reference).
    #[arg(long)]
    digits: Option<usize>,
    /// Also show the closed form.
    #[arg(long)]
    form: bool,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
}

#[derive(Args, Debug)]
#[group(id = "golden_action", required = true, multiple = false)]
pub struct GoldenArgs {
    /// `all` or a fixture label.
    #[arg(long, value_name = "LABEL", group = "golden_action")]
    check: Option<String>,
    /// List fixture labels.
    #[arg(long, group = "golden_action")]
    list: bool,
    /// Print one fixture as stored.
    #[arg(long, value_name = "LABEL", group = "golden_action")]
    show: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long, value_parser = parse_side)]
    side: TableSide,
    /// Add series partial sums and their difference from each entry.
    #[arg(long)]
    compare: bool,
    /// Order of the oracle series used by --compare.
    #[arg(long)]
    order: Option<i64>,
    #[command(flatten)]
    cache: CacheArgs,
}

fn parse_side(s: &str) -> Result<TableSide, String> {
    s.parse().map_err(|_| format!("{s:?}: expected high or low"))
}

fn run(cli: Cli) -> Result<String, CliError> {
    if let Some(which) = cli.emit {
        return report::emit(which);
    }
    match cli.command.expect("clap requires a command or --emit") {
        Command::Ht(a) => commands::series(commands::Side::High, &a),
        Command::Lt(a) => commands::series(commands::Side::Low, &a),
        Command::Fit(a) => commands::fit(&a),
        Command::Painleve(a) => commands::painleve(&a),
        Command::Critical(a) => commands::critical(&a),
        Command::Golden(a) => report::golden(&a),
        Command::Table(a) => report::table(&a),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            if !out.is_empty() {
                println!("{out}");
            }
        }
        Err(CliError::Mismatch(out)) => {
            println!("{out}");
            std::process::exit(3);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
