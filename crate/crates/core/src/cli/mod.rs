//! The `bpu` command line: argument grammar, dispatch and exit codes.

mod render;
pub mod suites;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{self, formulas};
use crate::page::{Page, RuleTable};

pub use suites::{run_suite, Suite, SuiteFailure, SuiteResult};

/// An inclusive range `A..B`, or a single value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: u32,
    pub end: u32,
}

impl Span {
    pub fn iter(self) -> impl Iterator<Item = u32> {
        self.start..=self.end
    }
}

impl FromStr for Span {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |x: &str| x.trim().parse::<u32>().map_err(|_| format!("not a number: {x:?}"));
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
            None => (num(s)?, num(s)?),
        };
        if start > end {
            return Err(format!("empty range {s}"));
        }
        Ok(Span { start, end })
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

fn parse_entry(s: &str) -> std::result::Result<(u32, u32), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected S,T, got {s:?}"))?;
    let p = |x: &str| x.trim().parse::<u32>().map_err(|_| format!("not a number: {x:?}"));
    Ok((p(a)?, p(b)?))
}

fn parse_page(s: &str) -> std::result::Result<Page, String> {
    match s {
        "3" => Ok(Page::Finite(3)),
        "4" => Ok(Page::Finite(4)),
        "inf" | "infinity" => Ok(Page::Infinity),
        _ => Err(format!("page must be 3, 4 or inf, got {s:?}")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Markdown,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Markdown)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct RulesArg {
    /// Rule table to use instead of the built-in one.
    #[arg(long, value_name = "PATH")]
    pub rules: Option<PathBuf>,
}

impl RulesArg {
    pub fn load(&self) -> Result<RuleTable> {
        match &self.rules {
            Some(p) => RuleTable::load(p),
            None => Ok(RuleTable::builtin()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "bpu", version, about = "Low-degree cohomology of BPU(n) from its Serre spectral sequence")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Torsion of H^s(BPU_n) for s in 12..14.
    Torsion {
        #[arg(long = "n-range", value_name = "A..B")]
        n_range: Span,
        #[arg(long, value_name = "A..B", default_value = "12..14")]
        deg: Span,
        #[command(flatten)]
        output: Output,
        #[command(flatten)]
        rules: RulesArg,
    },
    /// One spectral sequence entry on page 3, 4 or infinity.
    Page {
        #[arg(long)]
        n: u32,
        #[arg(long, value_name = "S,T", value_parser = parse_entry)]
        entry: (u32, u32),
        #[arg(long, value_parser = parse_page)]
        page: Page,
        #[command(flatten)]
        output: Output,
        #[command(flatten)]
        rules: RulesArg,
    },
    /// Invariant lattices, generators and the weight-6 quotient.
    Invariants {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 6)]
        max_weight: u32,
        #[command(flatten)]
        output: Output,
    },
    /// The weight-6 relation `λ^3 α6 = b e4e2 + c e3^2 + d e2^3 + f e6`.
    Relation {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Runs a verification suite over a range of n.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long = "n-range", value_name = "A..B", default_value = "2..32")]
        n_range: Span,
        #[command(flatten)]
        output: Output,
        #[command(flatten)]
        rules: RulesArg,
    },
}

/// Exit status for an error: 2 for requests outside the supported window, 1 otherwise.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::OutOfRange(_) | Error::Parse { .. } | Error::Io(_) => 2,
        _ => 1,
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, format: Format, value: &T, markdown: impl FnOnce() -> String) -> Result<()> {
    let text = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("serializable report");
            s.push('\n');
            s
        }
        Format::Markdown => markdown(),
    };
    out.write_all(text.as_bytes()).map_err(|e| Error::Io(e.to_string()))
}

fn check_n(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("n must be at least 2, got {n}")));
    }
    Ok(())
}

/// Runs a parsed command, writing its report to `out`. Returns the exit status.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8> {
    match &cli.command {
        Command::Torsion {
            n_range,
            deg,
            output,
            rules,
        } => {
            check_n(n_range.start)?;
            if deg.start < 12 || deg.end > 14 {
                return Err(Error::OutOfRange(format!("degrees must lie in 12..14, got {deg}")));
            }
            let rules = rules.load()?;
            let rows = suites::torsion_reports(*n_range, *deg, &rules)?;
            emit(out, output.format, &rows, || render::torsion(&rows))?;
            Ok(0)
        }
        Command::Page {
            n,
            entry,
            page,
            output,
            rules,
        } => {
            check_n(*n)?;
            let (s, t) = *entry;
            if s > 15 || s + t > 15 {
                return Err(Error::OutOfRange(format!("entry ({s},{t}) needs s ≤ 15 and s+t ≤ 15")));
            }
            let report = render::page_report(*n, s, t, *page, &rules.load()?)?;
            emit(out, output.format, &report, || render::page(&report))?;
            Ok(0)
        }
        Command::Invariants { n, max_weight, output } => {
            check_n(*n)?;
            let report = invariants::invariants_report(*n, *max_weight)?;
            emit(out, output.format, &report, || render::invariants(&report))?;
            Ok(if report.formula_checks.iter().all(|c| c.pass) { 0 } else { 1 })
        }
        Command::Relation { n, output } => {
            check_n(*n)?;
            let witness = invariants::solve_relation(*n)?;
            let seq = invariants::construct_e(*n, 6)?;
            emit(out, output.format, &witness, || render::relation(&witness, &seq))?;
            Ok(0)
        }
        Command::Verify {
            suite,
            n_range,
            output,
            rules,
        } => {
            check_n(n_range.start)?;
            let result = run_suite(*suite, *n_range, &rules.load()?);
            emit(out, output.format, &result, || render::suite(&result))?;
            Ok(if result.passed { 0 } else { 1 })
        }
    }
}

/// The n = 5 element used for the worked relation.
pub fn worked_alpha6() -> crate::chern::ChernPolynomial {
    crate::chern::ChernPolynomial::parse(5, formulas::ALPHA6_N5).expect("valid literal")
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spans() {
        assert_eq!("2..64".parse::<Span>().unwrap(), Span { start: 2, end: 64 });
        assert_eq!("7".parse::<Span>().unwrap(), Span { start: 7, end: 7 });
        assert_eq!("2..=3".parse::<Span>().unwrap().end, 3);
        assert!("9..3".parse::<Span>().is_err());
        assert!("x..3".parse::<Span>().is_err());
        assert_eq!(parse_entry("0,12").unwrap(), (0, 12));
        assert!(parse_page("5").is_err());
    }

    #[test]
    fn grammar() {
        let cli = Cli::try_parse_from(["bpu", "torsion", "--n-range", "2..4", "--deg", "12..14", "--format", "json"]);
        assert!(cli.is_ok());
        let cli = Cli::try_parse_from(["bpu", "verify", "--suite", "theorem-1.1", "--n-range", "2..4"]);
        assert!(cli.is_ok());
        assert!(Cli::try_parse_from(["bpu", "page", "--n", "6", "--entry", "0,12", "--page", "5"]).is_err());
    }
}
