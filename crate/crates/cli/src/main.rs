use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use knapsack_cli::format::{emit, parse};
use knapsack_cli::gen::{gen, CapacityRule, GenSpec};
use knapsack_cli::{
    bench, exit_code, run, verify, Algo, BenchGrid, VerifySpec, BENCH_HEADER, EXIT_MISMATCH,
    EXIT_USAGE,
};
use knapsack_core::proximity::ProximityConfig;
use knapsack_core::solver01::SolverConfig;

#[derive(Parser)]
#[command(
    name = "knapsack",
    version,
    about = "Exact 0-1 and Bounded Knapsack solver"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a seeded random instance.
    Gen(GenArgs),
    /// Solve an instance file and print "OPT <value>".
    Solve(SolveArgs),
    /// Compare the solver against the DP oracle on random instances.
    Verify(VerifyArgs),
    /// Time solvers over a grid of random instances; CSV on stdout.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SolverArgs {
    /// Override the proximity step constant (exactness is no longer guaranteed).
    #[arg(long)]
    delta_constant: Option<f64>,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            proximity: ProximityConfig {
                delta_constant_override: self.delta_constant,
            },
            ..SolverConfig::default()
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    w_max: u64,
    #[arg(long)]
    p_max: u64,
    #[arg(long, default_value_t = 1)]
    u_max: u64,
    /// Capacity as a fraction of the total weight.
    #[arg(long, conflicts_with = "capacity", default_value_t = 0.5)]
    fraction: f64,
    #[arg(long)]
    capacity: Option<u64>,
    /// Output path; stdout when absent.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file, or "-" for stdin.
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Algo::Auto)]
    algo: Algo,
    /// Print part count, delta sum and timings to stderr.
    #[arg(long)]
    stats: bool,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 30)]
    n_max: usize,
    #[arg(long, default_value_t = 30)]
    w_max: u64,
    #[arg(long, default_value_t = 100)]
    p_max: u64,
    #[arg(long, default_value_t = 20)]
    u_max: u64,
    /// Directory for the counterexample file.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "0")]
    seeds: Vec<u64>,
    #[arg(long, value_delimiter = ',', default_value = "1000")]
    n: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "10,20,40")]
    w_max: Vec<u64>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "auto")]
    algos: Vec<Algo>,
    #[arg(long, default_value_t = 1000)]
    p_max: u64,
    #[arg(long, default_value_t = 1)]
    u_max: u64,
    #[arg(long, default_value_t = 0.5)]
    fraction: f64,
    #[command(flatten)]
    solver: SolverArgs,
}

enum Failure {
    Code(u8),
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

fn core(e: knapsack_core::Error) -> Failure {
    eprintln!("error: {e}");
    Failure::Code(exit_code(&e))
}

fn cmd_gen(a: GenArgs) -> Result<(), Failure> {
    let spec = GenSpec {
        seed: a.seed,
        n: a.n,
        w_max: a.w_max,
        p_max: a.p_max,
        u_max: a.u_max,
        capacity: match a.capacity {
            Some(w) => CapacityRule::Explicit(w),
            None => CapacityRule::Fraction(a.fraction),
        },
    };
    spec.validate().map_err(anyhow::Error::msg)?;
    let text = emit(&gen(&spec));
    match a.out {
        Some(path) => {
            std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .context("writing stdout")?,
    }
    Ok(())
}

fn cmd_solve(a: SolveArgs) -> Result<(), Failure> {
    let text = if a.file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        s
    } else {
        std::fs::read_to_string(&a.file).with_context(|| format!("reading {}", a.file.display()))?
    };
    let file = parse(&text).with_context(|| a.file.display().to_string())?;
    let (value, stats) = run(&file, a.algo, &a.solver.config()).map_err(core)?;
    println!("OPT {value}");
    if a.stats {
        eprintln!("algo {}", a.algo.name());
        eprintln!("items_01 {}", stats.items_01);
        eprintln!("parts {}", stats.parts);
        eprintln!("delta_sum {}", stats.delta_sum);
        eprintln!("reduction_us {}", stats.reduction.as_micros());
        eprintln!("partition_us {}", stats.partition.as_micros());
        eprintln!("combine_us {}", stats.combine.as_micros());
        eprintln!("total_us {}", stats.total.as_micros());
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> Result<(), Failure> {
    if a.w_max == 0 || a.p_max == 0 || a.u_max == 0 || a.n_max == 0 {
        return Err(anyhow::anyhow!("ranges must be positive").into());
    }
    let spec = VerifySpec {
        seed: a.seed,
        trials: a.trials,
        n_max: a.n_max,
        w_max: a.w_max,
        p_max: a.p_max,
        u_max: a.u_max,
    };
    let outcomes = verify(&spec, &a.solver.config()).map_err(core)?;
    match outcomes.iter().find(|o| !o.matches()) {
        None => {
            println!("verify: {} trials, all match", outcomes.len());
            Ok(())
        }
        Some(o) => {
            let path = a
                .out_dir
                .join(format!("counterexample-{}-{}.txt", a.seed, o.trial));
            let body = format!(
                "# trial {} seed {}: solver {} oracle {}\n{}",
                o.trial,
                a.seed,
                o.solver,
                o.oracle,
                emit(&o.file)
            );
            std::fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
            println!(
                "verify: MISMATCH at trial {}: solver {} oracle {}; counterexample {}",
                o.trial,
                o.solver,
                o.oracle,
                path.display()
            );
            Err(Failure::Code(EXIT_MISMATCH))
        }
    }
}

fn cmd_bench(a: BenchArgs) -> Result<(), Failure> {
    let grid = BenchGrid {
        seeds: a.seeds,
        ns: a.n,
        w_maxes: a.w_max,
        algos: a.algos,
        p_max: a.p_max,
        u_max: a.u_max,
        fraction: a.fraction,
    };
    let probe = GenSpec {
        seed: 0,
        n: 0,
        w_max: grid.w_maxes.iter().copied().min().unwrap_or(1),
        p_max: grid.p_max,
        u_max: grid.u_max,
        capacity: CapacityRule::Fraction(grid.fraction),
    };
    probe.validate().map_err(anyhow::Error::msg)?;
    let mut out = std::io::stdout().lock();
    writeln!(out, "{BENCH_HEADER}").context("writing stdout")?;
    let mut io_err = None;
    bench(&grid, &a.solver.config(), |row| match row.csv() {
        Some(line) => {
            if let Err(e) = writeln!(out, "{line}").and_then(|_| out.flush()) {
                io_err.get_or_insert(e);
            }
        }
        None => {
            if let Err(e) = &row.result {
                eprintln!(
                    "skip seed={} n={} w_max={} algo={}: {e}",
                    row.seed,
                    row.n,
                    row.w_max,
                    row.algo.name()
                );
            }
        }
    });
    if let Some(e) = io_err {
        return Err(anyhow::Error::from(e).context("writing stdout").into());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Code(c)) => ExitCode::from(c),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
