//! `sumbounds`: evaluate uncertainty bounds, sweep the worked examples, fuzz.
//!
//! Exit codes: 0 on success, 1 on input or usage errors, 2 when some bound
//! exceeds the uncertainty sum it is supposed to bound.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use sumbounds::bounds::{EvaluationOptions, DEFAULT_BUDGET, DEFAULT_TOLERANCE};
use sumbounds::fuzz::{self, FuzzConfig};
use sumbounds::output::{write_fuzz_csv, write_report_csv, write_sweep_csv};
use sumbounds::problem::ProblemInput;
use sumbounds::scenarios::{run_sweep, Grid, Parameter, Scenario, SweepSpec};

#[derive(Parser)]
#[command(
    name = "sumbounds",
    version,
    about = "Variance and skew-information sum uncertainty bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every bound for a problem file.
    Evaluate {
        #[arg(long)]
        input: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Overrides `options.budget` from the input file.
        #[arg(long)]
        budget: Option<u64>,
        /// Overrides `options.tolerance` from the input file.
        #[arg(long, allow_negative_numbers = true)]
        tolerance: Option<f64>,
    },
    /// Sweep one of the worked examples over a theta grid and write CSV.
    Sweep {
        #[arg(long)]
        scenario: Scenario,
        /// `start:stop:step` in radians.
        #[arg(long)]
        theta_grid: Option<Grid>,
        #[arg(long)]
        phi: Option<f64>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE, allow_negative_numbers = true)]
        tolerance: f64,
    },
    /// Check every bound on random instances and write a summary CSV.
    Fuzz {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        dims: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        ns: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Summary CSV; violations go to `<output>.violations.json`.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE, allow_negative_numbers = true)]
        tolerance: f64,
    },
}

enum Outcome {
    Clean,
    Violations,
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => io::stdout().write_all(bytes).context("writing to stdout"),
    }
}

fn evaluate(
    input: &Path,
    output: Option<&Path>,
    format: Format,
    budget: Option<u64>,
    tolerance: Option<f64>,
) -> Result<Outcome> {
    let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let mut problem = ProblemInput::from_json(&text)?;
    if let Some(b) = budget {
        problem.options.budget = b;
    }
    if let Some(t) = tolerance {
        problem.options.tolerance = t;
    }
    let report = problem.evaluate()?;
    let mut buf = Vec::new();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut buf, &report)?;
            buf.push(b'\n');
        }
        Format::Csv => write_report_csv(&report, &mut buf)?,
    }
    write_output(output, &buf)?;
    for name in &report.violations {
        eprintln!("violation: {name} exceeds its uncertainty sum");
    }
    Ok(if report.has_violations() {
        Outcome::Violations
    } else {
        Outcome::Clean
    })
}

fn sweep(
    scenario: Scenario,
    theta_grid: Option<Grid>,
    phi: Option<f64>,
    output: Option<&Path>,
    options: EvaluationOptions,
) -> Result<Outcome> {
    let mut spec = SweepSpec::default_for(scenario);
    if let Some(grid) = theta_grid {
        spec.grid = grid;
    }
    if let Some(phi) = phi {
        spec.fixed.insert(Parameter::Phi, phi);
    }
    let result = run_sweep(&spec, &options)?;
    let mut buf = Vec::new();
    write_sweep_csv(&result, &mut buf)?;
    write_output(output, &buf)?;
    let violated = result.rows.iter().any(|r| r.report.has_violations());
    Ok(if violated { Outcome::Violations } else { Outcome::Clean })
}

fn fuzz_cmd(config: FuzzConfig, output: Option<&Path>) -> Result<Outcome> {
    let summary = fuzz::run(&config)?;
    if !summary.is_clean() {
        let path = match output {
            Some(p) => {
                let mut name = p.as_os_str().to_owned();
                name.push(".violations.json");
                PathBuf::from(name)
            }
            None => PathBuf::from("fuzz.violations.json"),
        };
        let json = serde_json::to_vec_pretty(&summary.violations)?;
        fs::write(&path, json).with_context(|| format!("writing {}", path.display()))?;
        eprintln!(
            "{} violation(s); reproducers written to {}",
            summary.violations.len(),
            path.display()
        );
    }
    let mut buf = Vec::new();
    write_fuzz_csv(&summary, &mut buf)?;
    write_output(output, &buf)?;
    Ok(if summary.is_clean() {
        Outcome::Clean
    } else {
        Outcome::Violations
    })
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Evaluate {
            input,
            output,
            format,
            budget,
            tolerance,
        } => evaluate(&input, output.as_deref(), format, budget, tolerance),
        Command::Sweep {
            scenario,
            theta_grid,
            phi,
            output,
            budget,
            tolerance,
        } => sweep(
            scenario,
            theta_grid,
            phi,
            output.as_deref(),
            EvaluationOptions { budget, tolerance },
        ),
        Command::Fuzz {
            trials,
            dims,
            ns,
            seed,
            output,
            budget,
            tolerance,
        } => fuzz_cmd(
            FuzzConfig {
                trials,
                dims,
                ns,
                seed,
                options: EvaluationOptions { budget, tolerance },
            },
            output.as_deref(),
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Violations) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
