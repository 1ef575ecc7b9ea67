//! Command-line surface over `g2-core`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use g2_core::cauchon::{tower, TOP};
use g2_core::checks::{self, Report, Status};
use g2_core::deriv::{self, DerivError};
use g2_core::expr::parse;
use g2_core::ore::MonomialOrder;

/// Exit code for a failed check.
pub const EXIT_FAIL: u8 = 1;
/// Exit code for bad usage or unparsable input.
pub const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "g2",
    about = "Exact computations in U+ of the two-parameter quantum group of type G2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the normal form of an expression.
    Normalize {
        expr: String,
        /// Tower level to normalize at (7 = U+, 1 = quantum torus).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=7))]
        level: Option<u8>,
        #[arg(long, value_enum, default_value_t = Order::Asc)]
        order: Order,
    },
    /// Run one verification suite, or `all`.
    Verify { suite: String },
    /// Inspect the deleting-derivations tower.
    Tower {
        #[command(subcommand)]
        action: TowerAction,
    },
    /// Split the derivation in a file as ad_g + mu5 D5 + mu6 D6.
    Decompose {
        #[arg(long)]
        input: PathBuf,
    },
    /// Run every suite and print the full report.
    Report {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
enum TowerAction {
    /// Presentations and change-of-variable formulas of every level.
    Dump,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Order {
    Asc,
    Desc,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match run(cli, out, err) {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.to_string(),
    }
}

fn failed(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_FAIL,
        message: message.to_string(),
    }
}

fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, Failure> {
    let io = |e: std::io::Error| failed(e);
    match cli.command {
        Command::Normalize { expr, level, order } => {
            let tree = parse(&expr).map_err(usage)?;
            // lowest level among the families used
            let level = level
                .map(usize::from)
                .unwrap_or_else(|| tree.generators().iter().map(|g| g.family.level()).min().unwrap_or(TOP));
            let value = tower().eval_at(&expr, level).map_err(usage)?;
            let order = match order {
                Order::Asc => MonomialOrder::Ascending,
                Order::Desc => MonomialOrder::Descending,
            };
            writeln!(out, "{}", value.display_with(order).map_err(failed)?).map_err(io)?;
            Ok(0)
        }
        Command::Verify { suite } => {
            if suite != "all" && !checks::SUITES.contains(&suite.as_str()) {
                return Err(usage(format!(
                    "unknown suite `{suite}`; expected one of: all, {}",
                    checks::SUITES.join(", ")
                )));
            }
            let reports = checks::run_suite(&suite).map_err(failed)?;
            out.write_all(render_text(&reports).as_bytes()).map_err(io)?;
            Ok(finish(&reports, err))
        }
        Command::Tower {
            action: TowerAction::Dump,
        } => {
            out.write_all(tower().dump().as_bytes()).map_err(io)?;
            Ok(0)
        }
        Command::Decompose { input } => {
            let text = std::fs::read_to_string(&input).map_err(|e| usage(format!("{}: {e}", input.display())))?;
            let d = deriv::parse_derivation(&text).map_err(|e| match e {
                DerivError::Input { .. } => usage(format!("{}: {e}", input.display())),
                e => usage(e),
            })?;
            let r = deriv::decompose(&d).map_err(failed)?;
            writeln!(out, "g = {}, mu5 = {}, mu6 = {}", r.g, r.mu5, r.mu6).map_err(io)?;
            Ok(0)
        }
        Command::Report { format } => {
            let reports = checks::run_all().map_err(failed)?;
            match format {
                Format::Text => out.write_all(render_text(&reports).as_bytes()).map_err(io)?,
                Format::Json => {
                    let s = serde_json::to_string_pretty(&reports).map_err(failed)?;
                    writeln!(out, "{s}").map_err(io)?;
                }
            }
            Ok(finish(&reports, err))
        }
    }
}

/// One line per report, then a summary line.
pub fn render_text(reports: &[Report]) -> String {
    let mut s = String::new();
    for r in reports {
        s.push_str(&format!(
            "{:<17} {}: {} | {} @ {}\n",
            r.status.to_string(),
            r.id,
            r.left,
            r.right,
            r.citation
        ));
    }
    let (p, f, m) = checks::tally(reports);
    s.push_str(&format!(
        "{} checks: {p} pass, {f} fail, {m} mismatch-reported\n",
        reports.len()
    ));
    s
}

/// Warns about reported mismatches and picks the exit code.
fn finish(reports: &[Report], err: &mut dyn Write) -> u8 {
    for r in reports.iter().filter(|r| r.status == Status::MismatchReported) {
        let _ = writeln!(err, "warning: {} differs from its transcription ({})", r.id, r.citation);
    }
    if reports.iter().any(|r| r.status == Status::Fail) {
        EXIT_FAIL
    } else {
        0
    }
}
