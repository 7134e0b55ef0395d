use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use qwb_core::harness::{
    self, write_metrics_csv, write_sweep_csv, write_trace_decisions_csv, write_trace_dist_csv,
    DEFAULT_TRACE_DECISIONS,
};
use qwb_core::oracle::{run_equivalence_suite, EquivalenceGrid};
use qwb_core::{Error, ExperimentConfig, SweepSpec, WalkKind};

const EXIT_INVALID_CONFIG: u8 = 1;
const EXIT_IO: u8 = 2;
const EXIT_VERIFY_FAILED: u8 = 3;

const QW_TOLERANCE: f64 = 1e-12;
const RW_TOLERANCE: f64 = 1e-12;
const UNITARITY_TOLERANCE: f64 = 1e-10;

#[derive(Parser, Debug)]
#[command(
    name = "qwb",
    version,
    about = "Random-walk and quantum-walk bandit experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run K episodes and write `<output>/metrics.csv` (j,M,rho,cdr).
    Run {
        /// Experiment config (JSON).
        config: PathBuf,
        /// Override the config's thread count.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Run one experiment per axis value and write `<output>/sweep.csv`.
    Sweep {
        /// Sweep spec (JSON with `axis`, `values`, `base`).
        spec: PathBuf,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Replay the runs in `trace_runs` and write their decisions and sampling
    /// distributions.
    Trace {
        config: PathBuf,
        /// Decision indices whose distributions are written.
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_TRACE_DECISIONS)]
        decisions: Vec<u32>,
    },
    /// Check the fast walk engines against the dense reference operators.
    Verify {
        #[arg(long, default_value_t = EquivalenceGrid::default().seed)]
        seed: u64,
    },
    /// Print the benchmark config for a model as JSON.
    Preset {
        #[arg(value_parser = parse_kind)]
        model: WalkKind,
        #[arg(short = 'T', long = "steps", default_value_t = 8)]
        steps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn parse_kind(s: &str) -> Result<WalkKind, String> {
    match s {
        "rw" => Ok(WalkKind::Rw),
        "qw" => Ok(WalkKind::Qw),
        _ => Err(format!("unknown model {s:?}, expected `rw` or `qw`")),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io { .. } => EXIT_IO,
        _ => EXIT_INVALID_CONFIG,
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Run { config, threads } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if let Some(t) = threads {
                cfg.threads = t;
            }
            let started = Instant::now();
            let result = harness::run_experiment(&cfg)?;
            let path = cfg.output.join("metrics.csv");
            write_metrics_csv(&path, &result.series)?;
            let s = result.summary;
            println!(
                "model={} T={} K={} J={}: M(J)={:.3} rho(J)={:.3} max(CDR)={:.4} [{:.1}s] -> {}",
                cfg.model,
                cfg.t,
                cfg.k,
                cfg.j,
                s.final_reward,
                s.final_regret,
                s.max_cdr,
                started.elapsed().as_secs_f64(),
                path.display()
            );
        }
        Command::Sweep { spec, threads } => {
            let mut spec = SweepSpec::load(&spec)?;
            if let Some(t) = threads {
                spec.base.threads = t;
            }
            let rows = harness::run_sweep(&spec)?;
            let path = spec.base.output.join("sweep.csv");
            write_sweep_csv(&path, &rows)?;
            for r in &rows {
                println!(
                    "{}={}: M(J)={:.3} rho(J)={:.3} max(CDR)={:.4}",
                    r.axis,
                    r.value,
                    r.summary.final_reward,
                    r.summary.final_regret,
                    r.summary.max_cdr
                );
            }
            println!("-> {}", path.display());
        }
        Command::Trace { config, decisions } => {
            let cfg = ExperimentConfig::load(&config)?;
            for t in harness::run_trace(&cfg)? {
                let dec = cfg.output.join(format!("trace_run{}_decisions.csv", t.run));
                let dist = cfg.output.join(format!("trace_run{}_dist.csv", t.run));
                write_trace_decisions_csv(&dec, &t.records)?;
                write_trace_dist_csv(&dist, &t, &decisions)?;
                let total: u64 = t.records.iter().map(|r| r.reward.value() as u64).sum();
                println!(
                    "run {}: total reward {} -> {}, {}",
                    t.run,
                    total,
                    dec.display(),
                    dist.display()
                );
            }
        }
        Command::Verify { seed } => {
            let grid = EquivalenceGrid {
                seed,
                ..EquivalenceGrid::default()
            };
            let r = run_equivalence_suite(&grid);
            let ok = r.qw_max_error < QW_TOLERANCE
                && r.rw_max_error < RW_TOLERANCE
                && r.unitarity_defect < UNITARITY_TOLERANCE;
            println!(
                "{} cases over N in {:?}, T <= {}: qw max err {:.3e} (< {:e}), rw max err {:.3e} (< {:e}), unitarity defect {:.3e} (< {:e})",
                r.cases,
                grid.sizes,
                grid.max_steps,
                r.qw_max_error,
                QW_TOLERANCE,
                r.rw_max_error,
                RW_TOLERANCE,
                r.unitarity_defect,
                UNITARITY_TOLERANCE
            );
            if !ok {
                println!("FAIL");
                return Ok(EXIT_VERIFY_FAILED);
            }
            println!("PASS");
        }
        Command::Preset { model, steps, seed } => {
            println!(
                "{}",
                ExperimentConfig::benchmark(model, steps, seed).to_json()
            );
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID_CONFIG
            } else {
                0
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
