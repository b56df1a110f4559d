use std::io::Write;
use std::process::ExitCode;

use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand};

use pjl::commands::{self, Outcome, RunConfig, EXIT_USAGE};
use pjl_core::caselab::builtin_case;
use pjl_core::rational::{parse_rational, Rational};
use pjl_core::tree::DEFAULT_EXT_BUDGET;

/// Newton-Puiseux root trees at infinity, intersection numbers and case
/// analyses for plane polynomial maps.
#[derive(Parser)]
#[command(name = "pjl", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Cutoff order for root expansions (default: heuristic, doubled until
    /// the roots separate)
    #[arg(long, value_parser = rational, allow_hyphen_values = true, global = true)]
    cutoff: Option<Rational>,
    /// Largest absolute degree of the coefficient field tower
    #[arg(long, default_value_t = DEFAULT_EXT_BUDGET, global = true)]
    ext_budget: usize,
    /// Random seed
    #[arg(long, env = "PJL_SEED", default_value_t = 0, global = true)]
    seed: u64,
    /// Print JSON instead of text
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Expand the roots of f - xi at x = infinity as a pi-root tree
    Expand {
        f: String,
        /// Shift xi (default: a random generic value)
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        xi: Option<Rational>,
        #[command(flatten)]
        common: Common,
    },
    /// Re-analyze a tree saved by `expand --json`
    Tree {
        file: std::path::PathBuf,
        /// Classify the roots against g
        #[arg(long)]
        g: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Intersection numbers at infinity of f and g along every route
    Intersect {
        f: String,
        g: String,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        xi: Option<Rational>,
        #[command(flatten)]
        common: Common,
    },
    /// Splitting-pattern case analysis for a degree pair
    Caselab {
        #[command(subcommand)]
        cmd: CaseCmd,
    },
    /// d/q/M sequences and the semigroup lemma for a delta-sequence
    Semigroup {
        #[arg(required = true, num_args = 1..)]
        delta: Vec<i64>,
        /// Require q_i >= 1 and the semigroup condition
        #[arg(long)]
        strict: bool,
        /// Test membership of this value in the semigroup of the entries instead
        #[arg(long, allow_hyphen_values = true)]
        member: Option<i64>,
        #[command(flatten)]
        common: Common,
    },
    /// Solve D(m, m(l-1), p, q) = c p^l for q
    Ode {
        /// p as a polynomial in pi
        p: String,
        #[arg(long)]
        l: usize,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        c: Rational,
        /// Defaults to deg p
        #[arg(long)]
        m: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Run a property suite (or `all`)
    Verify {
        suite: String,
        /// Corpus size (default depends on the suite)
        #[arg(long)]
        count: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum CaseCmd {
    /// List the built-in cases
    List {
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate patterns and compare the minor and major routes
    Analyze {
        /// Built-in case, e.g. 99x66
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        case: Option<String>,
        /// Case data as JSON
        #[arg(long)]
        file: Option<std::path::PathBuf>,
        /// Do not exclude principal splits at order 1
        #[arg(long)]
        no_obstruction: bool,
        #[command(flatten)]
        common: Common,
    },
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("not a rational number: {s:?}"))
}

fn config(c: &Common) -> RunConfig {
    RunConfig { cutoff: c.cutoff.clone(), ext_budget: c.ext_budget, seed: c.seed, json: c.json }
}

fn read_json(path: &std::path::Path) -> Result<serde_json::Value> {
    let text = std::fs::read_to_string(path).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    Ok(serde_json::from_str(&text)?)
}

fn run(cli: Cli) -> (Result<Outcome>, bool) {
    match cli.cmd {
        Cmd::Expand { f, xi, common } => (commands::cmd_expand(&f, xi, &config(&common)), common.json),
        Cmd::Tree { file, g, common } => {
            (read_json(&file).and_then(|d| commands::cmd_tree(&d, g.as_deref())), common.json)
        }
        Cmd::Intersect { f, g, xi, common } => (commands::cmd_intersect(&f, &g, xi, &config(&common)), common.json),
        Cmd::Caselab { cmd: CaseCmd::List { common } } => (Ok(commands::cmd_caselab_list()), common.json),
        Cmd::Caselab { cmd: CaseCmd::Analyze { case, file, no_obstruction, common } } => {
            let data = match (case, file) {
                (Some(k), _) => {
                    builtin_case(&k).ok_or_else(|| anyhow!("no built-in case {k:?}; see `pjl caselab list`"))
                }
                (None, Some(p)) => read_json(&p).and_then(|v| pjl::json::case_from_json(&v)),
                (None, None) => Err(anyhow!("give --case or --file")),
            };
            (data.and_then(|c| commands::cmd_caselab_analyze(&c, !no_obstruction)), common.json)
        }
        Cmd::Semigroup { delta, strict, member, common } => {
            let r = match member {
                Some(t) => commands::cmd_member(t, &delta),
                None => commands::cmd_semigroup(&delta, strict),
            };
            (r, common.json)
        }
        Cmd::Ode { p, l, c, m, common } => (commands::cmd_ode(&p, l, &c, m), common.json),
        Cmd::Verify { suite, count, common } => (commands::cmd_verify(&suite, count, &config(&common)), common.json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (r, as_json) = run(cli);
    match r {
        Ok(out) => {
            let mut text = out.render(as_json);
            if as_json {
                text.push('\n');
            }
            // a closed pipe is not an error for a report printer
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(out.exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
