//! Subcommands. Each returns the rendered report and an exit code; `main`
//! only parses arguments and writes the output.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use knotfilt_core::bracket::{bracket, evaluations, Family, FiltrationClaim};
use knotfilt_core::invariants::{fingerprint_with, DEFAULT_BRACKET_BUDGET};
use knotfilt_core::moves::MoveGroup;
use knotfilt_core::Error;
use serde::Serialize;

use crate::io::{read_diagram, read_json, write_text, BracketInput, IoError};
use crate::report::{opt, table, to_json, EvaluationsReport, FingerprintReport, Format};
use crate::suites::{run, Suite, SuiteConfig};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "knotfilt",
    version,
    about = "Exact checks of knot filtrations by crossing changes and interdependent moves"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// v2, v3 and Jones of a PD JSON or Gauss code file.
    Invariants {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BRACKET_BUDGET)]
        budget_crossings: usize,
    },
    /// Run a seeded suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// `n`, `a,b,..` or an inclusive range `a..b`.
        #[arg(long, value_parser = parse_k)]
        k: Option<KList>,
        #[arg(long)]
        instances: Option<usize>,
        #[arg(long, default_value_t = 5)]
        exhaustive_upto: usize,
        #[arg(long, default_value_t = 10_000)]
        random_graphs: usize,
        #[arg(long)]
        budget_crossings: Option<usize>,
        #[arg(long, default_value_t = 12)]
        budget_terms: usize,
        #[arg(long, default_value_t = 1000)]
        branch_budget: usize,
    },
    /// Evaluate the bracket of a marked diagram and move groups.
    Bracket {
        file: PathBuf,
        /// JSON list of move groups replacing those in FILE.
        #[arg(long)]
        moves: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BRACKET_BUDGET)]
        budget_crossings: usize,
        #[arg(long, default_value_t = 12)]
        budget_terms: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KList(pub Vec<usize>);

pub fn parse_k(s: &str) -> Result<KList, String> {
    let num = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        if a > b {
            return Err(format!("empty range {s}"));
        }
        return Ok(KList((a..=b).collect()));
    }
    s.split(',').map(num).collect::<Result<_, _>>().map(KList)
}

pub struct Outcome {
    pub text: String,
    pub code: i32,
    /// Error reports go to stderr.
    pub error: bool,
}

fn error_code(e: &IoError) -> i32 {
    match e {
        IoError::Core(Error::CrossingBudget { .. } | Error::TermBudget { .. }) => EXIT_BUDGET,
        IoError::Core(Error::CheckFailed(_)) => EXIT_FAIL,
        _ => EXIT_INPUT,
    }
}

#[derive(Serialize)]
struct ErrorReport {
    error: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    violations: Vec<String>,
}

pub fn error_outcome(e: &IoError) -> Outcome {
    let violations = match e {
        IoError::Invalid { violations } | IoError::Core(Error::Invalid(violations)) => {
            violations.iter().map(|v| format!("{v:?}")).collect()
        }
        _ => Vec::new(),
    };
    Outcome {
        text: to_json(&ErrorReport {
            error: e.to_string(),
            violations,
        }),
        code: error_code(e),
        error: true,
    }
}

pub fn invariants(file: &Path, budget: usize, format: Format) -> Result<Outcome, IoError> {
    let d = read_diagram(file)?;
    let f = FingerprintReport::from(&fingerprint_with(&d, budget)?);
    let text = match format {
        Format::Json => to_json(&f),
        Format::Table => table(&[
            ("components".into(), f.components.to_string()),
            ("v2".into(), opt(&f.v2)),
            ("v3".into(), opt(&f.v3)),
            (
                "jones".into(),
                f.jones.as_ref().map_or_else(|| "-".into(), |j| j.join(" ")),
            ),
        ]),
    };
    Ok(Outcome {
        text,
        code: EXIT_PASS,
        error: false,
    })
}

#[derive(Serialize)]
pub struct BracketReport {
    pub claim: String,
    pub groups: usize,
    pub term_count: usize,
    pub evaluations: EvaluationsReport,
    /// Invariants whose vanishing the claim predicts.
    pub predicted_zero: Vec<String>,
    pub pass: bool,
}

pub fn bracket_cmd(
    file: &Path,
    moves: Option<&Path>,
    budget: usize,
    terms: usize,
    format: Format,
) -> Result<Outcome, IoError> {
    let mut input: BracketInput = read_json(file)?;
    if let Some(p) = moves {
        input.moves = read_json::<Vec<MoveGroup>>(p)?;
    }
    let s = &input.moves;
    if s.len() > terms {
        return Err(Error::TermBudget {
            terms: s.len(),
            budget: terms,
        }
        .into());
    }
    let family = if !s.is_empty()
        && s.iter()
            .all(|g| matches!(g, MoveGroup::Interdependent { .. }))
    {
        Family::Alt
    } else {
        Family::Vassiliev
    };
    let claim = if s.is_empty() {
        None
    } else {
        FiltrationClaim::for_groups(family, s).ok()
    };
    let fs = bracket(&input.marked, s)?;
    let e = EvaluationsReport::from(&evaluations(&fs, budget)?);
    let mut predicted_zero = Vec::new();
    let mut pass = true;
    if let Some(c) = &claim {
        for (name, k, v) in [("v2", 2, e.v2), ("v3", 3, e.v3)] {
            if c.predicts_vanishing(k) {
                predicted_zero.push(name.to_string());
                pass &= v == Some(0);
            }
        }
    }
    let r = BracketReport {
        claim: claim.map_or_else(|| "none".into(), |c| c.label()),
        groups: s.len(),
        term_count: fs.len(),
        evaluations: e,
        predicted_zero,
        pass,
    };
    let text = match format {
        Format::Json => to_json(&r),
        Format::Table => table(&[
            ("claim".into(), r.claim.clone()),
            ("terms".into(), r.term_count.to_string()),
            ("v2".into(), opt(&r.evaluations.v2)),
            ("v3".into(), opt(&r.evaluations.v3)),
            (
                "jones".into(),
                r.evaluations
                    .jones
                    .as_ref()
                    .map_or_else(|| "-".into(), |j| j.join(" ")),
            ),
            ("pass".into(), r.pass.to_string()),
        ]),
    };
    Ok(Outcome {
        text,
        code: if r.pass { EXIT_PASS } else { EXIT_FAIL },
        error: false,
    })
}

pub fn verify(suite: Suite, config: &SuiteConfig, format: Format) -> Result<Outcome, IoError> {
    let r = run(suite, config)?;
    let text = match format {
        Format::Json => to_json(&r),
        Format::Table => r.table(),
    };
    Ok(Outcome {
        text,
        code: if r.pass { EXIT_PASS } else { EXIT_FAIL },
        error: false,
    })
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Outcome {
    let res = match &cli.command {
        Command::Invariants {
            file,
            budget_crossings,
        } => invariants(file, *budget_crossings, cli.format),
        Command::Verify {
            suite,
            seed,
            k,
            instances,
            exhaustive_upto,
            random_graphs,
            budget_crossings,
            budget_terms,
            branch_budget,
        } => {
            let config = SuiteConfig {
                seed: *seed,
                k: k.as_ref().map(|k| k.0.clone()),
                instances: *instances,
                exhaustive_upto: *exhaustive_upto,
                random_graphs: *random_graphs,
                budget_crossings: *budget_crossings,
                budget_terms: *budget_terms,
                branch_budget: *branch_budget,
            };
            verify(*suite, &config, cli.format)
        }
        Command::Bracket {
            file,
            moves,
            budget_crossings,
            budget_terms,
        } => bracket_cmd(
            file,
            moves.as_deref(),
            *budget_crossings,
            *budget_terms,
            cli.format,
        ),
    };
    let out = res.unwrap_or_else(|e| error_outcome(&e));
    match &cli.out {
        Some(p) => match write_text(p, &out.text) {
            Ok(()) => Outcome {
                text: String::new(),
                ..out
            },
            Err(e) => error_outcome(&e),
        },
        None => out,
    }
}
