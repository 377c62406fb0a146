//! `meadow`: normalize, compare, differentiate and evaluate meadow terms, and
//! run the axiom suites.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use meadow_core::oracle::{eval_term, format_rational, Point, Rationals};
use meadow_core::verifier::{Suite, Verifier};
use meadow_core::{parse_term, MeadowTerm, Normalized, Normalizer, SmfNode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "meadow",
    version,
    about = "Differential meadow normal forms and axiom checks"
)]
struct Cli {
    /// Number of formal variables X1..Xn.
    #[arg(short = 'n', long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    nvars: u64,

    #[arg(long, global = true, env = "MEADOW_SEED", default_value_t = 42)]
    seed: u64,

    /// Random trials per check.
    #[arg(long, global = true, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,

    /// Maximum depth of generated terms.
    #[arg(long, global = true, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    max_depth: u64,

    /// Monomial budget for intermediate polynomials.
    #[arg(long, global = true, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,

    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,

    /// Scale numerator and denominator to integer coefficients when printing.
    #[arg(long, global = true)]
    clear_denominators: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the rational normal form of an expression and its bad set.
    Normalize { expr: String },
    /// Decide generic equality; exits 0 for EQUAL and 1 for NOT-EQUAL.
    Eq { lhs: String, rhs: String },
    /// Differentiate with respect to X<index> and normalize.
    Diff { index: usize, expr: String },
    /// Run an axiom suite: md, derived, de, propagation, cancellation or all.
    Check { suite: String },
    /// Collapse an SMF tree read from a JSON file.
    Smf { file: PathBuf },
    /// Evaluate pointwise with 0^-1 = 0.
    Eval {
        expr: String,
        /// Assignment such as X1=2,X2=-1/3.
        #[arg(long)]
        at: String,
    },
}

impl Cli {
    fn nvars(&self) -> usize {
        self.nvars as usize
    }

    fn normalizer(&self) -> Normalizer {
        Normalizer::with_budget(self.nvars(), self.budget as usize)
    }

    fn term(&self, src: &str) -> Result<MeadowTerm> {
        parse_term(src, Some(self.nvars())).map_err(|e| anyhow!(e.render(src)))
    }

    fn emit(&self, text: &str, json: Value) {
        let mut out = std::io::stdout().lock();
        let _ = match self.output {
            Output::Text => writeln!(out, "{text}"),
            Output::Json => writeln!(out, "{json}"),
        };
    }

    fn print_normalized(&self, schema: &str, n: &Normalized) {
        let badset: Vec<String> = n.badset.iter().map(|p| p.render()).collect();
        let text = format!(
            "{}\nbadset: [{}]",
            n.nf.render(self.clear_denominators),
            badset.join(", ")
        );
        let mut json = serde_json::to_value(n).expect("normal form serializes");
        json["schema"] = Value::from(schema);
        json["rendered"] = Value::from(n.nf.render(self.clear_denominators));
        self.emit(&text, json);
    }

    fn run(&self) -> Result<ExitCode> {
        match &self.command {
            Command::Normalize { expr } => {
                let t = self.term(expr)?;
                let n = self.normalizer().normalize(&t)?;
                self.print_normalized("meadow.normalize/v1", &n);
                Ok(ExitCode::SUCCESS)
            }
            Command::Eq { lhs, rhs } => {
                let (a, b) = (self.term(lhs)?, self.term(rhs)?);
                let equal = self.normalizer().decide_eq(&a, &b)?;
                let verdict = if equal { "EQUAL" } else { "NOT-EQUAL" };
                self.emit(
                    verdict,
                    json!({"schema": "meadow.eq/v1", "equal": equal, "verdict": verdict}),
                );
                Ok(if equal {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                })
            }
            Command::Diff { index, expr } => {
                if *index == 0 || *index > self.nvars() {
                    bail!("derivative index {index} is outside 1..={}", self.nvars());
                }
                let t = MeadowTerm::diff(*index, self.term(expr)?);
                let n = self.normalizer().normalize(&t)?;
                self.print_normalized("meadow.diff/v1", &n);
                Ok(ExitCode::SUCCESS)
            }
            Command::Check { suite } => {
                let suites = Suite::parse(suite).ok_or_else(|| {
                    anyhow!(
                        "unknown suite `{suite}` (md, derived, de, propagation, cancellation, all)"
                    )
                })?;
                let mut v = Verifier::new(self.nvars(), self.seed);
                v.trials = self.trials as usize;
                v.gen.max_depth = self.max_depth as usize;
                v.normalizer.budget = self.budget as usize;
                let reports = v.run_suites(&suites)?;
                let passed = reports.iter().filter(|r| r.passed()).count();
                let all = passed == reports.len();
                let mut text: Vec<String> = reports.iter().map(|r| r.to_string()).collect();
                text.push(format!("{passed}/{} passed", reports.len()));
                self.emit(
                    &text.join("\n"),
                    json!({
                        "schema": "meadow.check/v1",
                        "suite": suite,
                        "nvars": self.nvars,
                        "seed": self.seed,
                        "trials": self.trials,
                        "max_depth": self.max_depth,
                        "passed": all,
                        "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                    }),
                );
                Ok(if all {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                })
            }
            Command::Smf { file } => {
                let src = std::fs::read_to_string(file)
                    .with_context(|| format!("cannot read {}", file.display()))?;
                let value: Value = serde_json::from_str(&src)
                    .with_context(|| format!("{} is not valid JSON", file.display()))?;
                let tree = SmfNode::from_json(&value, self.nvars())?;
                let nf = tree.collapse();
                self.emit(
                    &nf.render(self.clear_denominators),
                    json!({
                        "schema": "meadow.smf/v1",
                        "level": tree.level(),
                        "nf": nf,
                        "rendered": nf.render(self.clear_denominators),
                    }),
                );
                Ok(ExitCode::SUCCESS)
            }
            Command::Eval { expr, at } => {
                let t = self.term(expr)?;
                let point = Point::parse(at, self.nvars())?;
                let value = eval_term(&Rationals, &t, &point.0, &Default::default())?;
                let text = format_rational(&value);
                self.emit(
                    &text,
                    json!({"schema": "meadow.eval/v1", "at": point.to_json(), "value": text}),
                );
                Ok(ExitCode::SUCCESS)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.run() {
        Ok(code) => code,
        Err(err) => {
            let msg = format!("{err:#}");
            if msg.starts_with("error:") {
                eprintln!("{msg}");
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(2)
        }
    }
}
