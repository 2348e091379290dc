//! Randomized validity checks.
//!
//! Each `(d, N)` cell runs `trials` instances. Even trials use a Haar-random
//! pure state, odd trials a Ginibre mixed state; observables are GUE samples.
//! Every instance gets its own seed derived from the master seed and its
//! `(d, N, trial)` coordinates, so any single instance can be regenerated.

use serde::Serialize;

use crate::bounds::{evaluate_all, BoundName, BoundReport, EvaluationOptions, ObservableSet};
use crate::error::Result;
use crate::problem::{ProblemInput, ProblemOptions};
use crate::states::{random_mixed, random_observable, random_pure, DensityMatrix};

#[derive(Clone, Debug, PartialEq)]
pub struct FuzzConfig {
    pub trials: usize,
    pub dims: Vec<usize>,
    pub ns: Vec<usize>,
    pub seed: u64,
    pub options: EvaluationOptions,
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of one instance, a hash of the master seed and its coordinates.
pub fn instance_seed(master: u64, dim: usize, n: usize, trial: usize) -> u64 {
    [dim as u64, n as u64, trial as u64]
        .into_iter()
        .fold(splitmix64(master), |acc, x| splitmix64(acc ^ x))
}

#[derive(Clone, Debug)]
pub struct FuzzInstance {
    pub dim: usize,
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
    pub pure: bool,
    pub state: DensityMatrix,
    pub observables: ObservableSet,
}

pub fn generate_instance(master: u64, dim: usize, n: usize, trial: usize) -> Result<FuzzInstance> {
    let seed = instance_seed(master, dim, n, trial);
    let pure = trial.is_multiple_of(2);
    let state = if pure {
        random_pure(dim, seed)?
    } else {
        random_mixed(dim, seed)?
    };
    let observables = (0..n)
        .map(|i| random_observable(dim, splitmix64(seed.wrapping_add(i as u64 + 1))))
        .collect::<Result<Vec<_>>>()?;
    Ok(FuzzInstance {
        dim,
        n,
        trial,
        seed,
        pure,
        state,
        observables: ObservableSet::new(observables)?,
    })
}

/// Slack statistics of one bound within one cell.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundStats {
    pub name: BoundName,
    pub checked: usize,
    pub min_slack: f64,
    pub max_slack: f64,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CellSummary {
    pub dim: usize,
    pub n: usize,
    pub trials: usize,
    pub stats: Vec<BoundStats>,
}

/// Everything needed to replay a failing instance with `evaluate`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ViolationRecord {
    pub dim: usize,
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
    pub bound: BoundName,
    pub value: f64,
    pub target: f64,
    pub problem: ProblemInput,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FuzzSummary {
    pub cells: Vec<CellSummary>,
    pub violations: Vec<ViolationRecord>,
}

impl FuzzSummary {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs every cell and calls `inspect` on each evaluated instance.
pub fn run_with(config: &FuzzConfig, mut inspect: impl FnMut(&FuzzInstance, &BoundReport)) -> Result<FuzzSummary> {
    let mut summary = FuzzSummary::default();
    if config.trials == 0 {
        return Ok(summary);
    }
    for &dim in &config.dims {
        for &n in &config.ns {
            let mut stats: Vec<BoundStats> = BoundName::CATALOG
                .into_iter()
                .filter(|b| b.applies_to(n))
                .map(|name| BoundStats {
                    name,
                    checked: 0,
                    min_slack: f64::INFINITY,
                    max_slack: f64::NEG_INFINITY,
                    violations: 0,
                })
                .collect();
            for trial in 0..config.trials {
                let instance = generate_instance(config.seed, dim, n, trial)?;
                let mut report = evaluate_all(&instance.state, &instance.observables, &config.options)?;
                report.metadata.seed = Some(instance.seed);
                for s in &mut stats {
                    let slack = report.slack(s.name).expect("applicable bound has a target");
                    s.checked += 1;
                    s.min_slack = s.min_slack.min(slack);
                    s.max_slack = s.max_slack.max(slack);
                }
                for &name in &report.violations {
                    if let Some(s) = stats.iter_mut().find(|s| s.name == name) {
                        s.violations += 1;
                    }
                    summary.violations.push(ViolationRecord {
                        dim,
                        n,
                        trial,
                        seed: instance.seed,
                        bound: name,
                        value: report.value(name).unwrap_or(f64::NAN),
                        target: report.target(name.family()).unwrap_or(f64::NAN),
                        problem: ProblemInput::from_parts(
                            &instance.state,
                            &instance.observables,
                            ProblemOptions {
                                budget: config.options.budget,
                                tolerance: config.options.tolerance,
                            },
                        ),
                    });
                }
                inspect(&instance, &report);
            }
            summary.cells.push(CellSummary {
                dim,
                n,
                trials: config.trials,
                stats,
            });
        }
    }
    Ok(summary)
}

pub fn run(config: &FuzzConfig) -> Result<FuzzSummary> {
    run_with(config, |_, _| {})
}
