//! Front-end plumbing for the `knapsack` binary: instance files, seeded
//! generators and the solve / verify / bench drivers.

pub mod format;
pub mod gen;

use std::time::{Duration, Instant};

use knapsack_core::oracles::{bellman_bounded, brute_force_01};
use knapsack_core::reduction::{perturb_profits, solve_bounded_with};
use knapsack_core::solver01::{solve_01_auto_with, SolverConfig};
use knapsack_core::{BoundedInstance, Error, ExtProfit, Instance01, Item01};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use format::InstanceFile;
use gen::{CapacityRule, GenSpec};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_MISMATCH: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

/// Copies the untrimmed expansion used by `proximity` and `brute` may create.
pub const MAX_EXPANDED_COPIES: u128 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Algo {
    /// Trim, perturb, partition and combine.
    Auto,
    /// Expand every copy, perturb, partition and combine.
    Proximity,
    Bellman,
    Brute,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Auto => "auto",
            Algo::Proximity => "proximity",
            Algo::Bellman => "bellman",
            Algo::Brute => "brute",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunStats {
    pub parts: usize,
    pub delta_sum: u128,
    pub items_01: usize,
    pub reduction: Duration,
    pub partition: Duration,
    pub combine: Duration,
    pub total: Duration,
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } | Error::TooLarge(_) => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

fn expand_all(b: &BoundedInstance) -> Result<Instance01, Error> {
    let copies = b.total_multiplicity();
    if copies > MAX_EXPANDED_COPIES {
        return Err(Error::BudgetExceeded {
            what: "copy expansion",
            needed: copies,
            budget: MAX_EXPANDED_COPIES,
        });
    }
    let items = b
        .items()
        .iter()
        .flat_map(|it| {
            std::iter::repeat_n(Item01::new(it.weight, it.profit), it.multiplicity as usize)
        })
        .collect();
    Instance01::new(items, b.capacity())
}

pub fn run(
    file: &InstanceFile,
    algo: Algo,
    config: &SolverConfig,
) -> Result<(ExtProfit, RunStats), Error> {
    let start = Instant::now();
    let bounded = file.to_bounded();
    let mut stats = RunStats::default();
    let value = match algo {
        Algo::Auto => {
            let (v, s) = solve_bounded_with(&bounded, config)?;
            stats.parts = s.solve.parts;
            stats.delta_sum = s.solve.delta_sum;
            stats.items_01 = s.n_bar;
            stats.reduction = s.reduction_time;
            stats.partition = s.solve.partition_time;
            stats.combine = s.solve.combine_time;
            v
        }
        Algo::Proximity => {
            let t = Instant::now();
            let expanded = expand_all(&bounded)?.canonical_sort();
            let (perturbed, scale) = perturb_profits(&expanded)?;
            stats.reduction = t.elapsed();
            stats.items_01 = perturbed.len();
            let (v, s) = solve_01_auto_with(&perturbed, config)?;
            stats.parts = s.parts;
            stats.delta_sum = s.delta_sum;
            stats.partition = s.partition_time;
            stats.combine = s.combine_time;
            let v = v.finite().expect("optimum is finite");
            ExtProfit::new(v / scale)
        }
        Algo::Bellman => bellman_bounded(&bounded)?,
        Algo::Brute => brute_force_01(&expand_all(&bounded)?)?,
    };
    stats.total = start.elapsed();
    Ok((value, stats))
}

/// Ranges sampled by `verify`. Each trial draws `n`, `w_max` and `u_max`
/// uniformly up to the given bounds and a capacity fraction from
/// {0.25, 0.5, 0.9, 1.0}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifySpec {
    pub seed: u64,
    pub trials: u64,
    pub n_max: usize,
    pub w_max: u64,
    pub p_max: u64,
    pub u_max: u64,
}

pub const FRACTIONS: [f64; 4] = [0.25, 0.5, 0.9, 1.0];

pub fn trial_spec(spec: &VerifySpec, trial: u64) -> GenSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    GenSpec {
        seed: rng.gen(),
        n: rng.gen_range(1..=spec.n_max.max(1)),
        w_max: rng.gen_range(1..=spec.w_max),
        p_max: spec.p_max,
        u_max: rng.gen_range(1..=spec.u_max),
        capacity: CapacityRule::Fraction(FRACTIONS[rng.gen_range(0..FRACTIONS.len())]),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub trial: u64,
    pub file: InstanceFile,
    pub solver: ExtProfit,
    pub oracle: ExtProfit,
}

impl TrialOutcome {
    pub fn matches(&self) -> bool {
        self.solver == self.oracle
    }
}

/// Runs every trial through `auto` and `bellman`. Results are ordered by
/// trial index.
pub fn verify(spec: &VerifySpec, config: &SolverConfig) -> Result<Vec<TrialOutcome>, Error> {
    (0..spec.trials)
        .into_par_iter()
        .map(|trial| {
            let file = gen::gen(&trial_spec(spec, trial));
            let (solver, _) = run(&file, Algo::Auto, config)?;
            let (oracle, _) = run(&file, Algo::Bellman, config)?;
            Ok(TrialOutcome {
                trial,
                file,
                solver,
                oracle,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchGrid {
    pub seeds: Vec<u64>,
    pub ns: Vec<usize>,
    pub w_maxes: Vec<u64>,
    pub algos: Vec<Algo>,
    pub p_max: u64,
    pub u_max: u64,
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub seed: u64,
    pub n: usize,
    pub w_max: u64,
    pub algo: Algo,
    pub result: Result<(ExtProfit, Duration), Error>,
}

pub const BENCH_HEADER: &str = "seed,n,w_max,algo,micros,value";

impl BenchRow {
    pub fn csv(&self) -> Option<String> {
        let (v, t) = self.result.as_ref().ok()?;
        Some(format!(
            "{},{},{},{},{},{}",
            self.seed,
            self.n,
            self.w_max,
            self.algo.name(),
            t.as_micros(),
            v
        ))
    }
}

/// Solves are timed one at a time so that wall-clock figures are not
/// distorted by sibling work.
pub fn bench(grid: &BenchGrid, config: &SolverConfig, mut sink: impl FnMut(BenchRow)) {
    for &seed in &grid.seeds {
        for &n in &grid.ns {
            for &w_max in &grid.w_maxes {
                let file = gen::gen(&GenSpec {
                    seed,
                    n,
                    w_max,
                    p_max: grid.p_max,
                    u_max: grid.u_max,
                    capacity: CapacityRule::Fraction(grid.fraction),
                });
                for &algo in &grid.algos {
                    let result = run(&file, algo, config).map(|(v, s)| (v, s.total));
                    sink(BenchRow {
                        seed,
                        n,
                        w_max,
                        algo,
                        result,
                    });
                }
            }
        }
    }
}
