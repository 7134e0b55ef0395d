//! Experiment orchestration: seeding, parallel ensembles, sweeps, traces and
//! CSV output.
//!
//! Run `k` of an experiment with master seed `s` draws from
//! `ChaCha8Rng::seed_from_u64(derive_seed(s, k))`. Because each run's stream
//! depends only on `(s, k)`, a single run can be replayed in isolation, and the
//! ensemble is byte-identical for any thread count.

mod config;
mod output;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use config::{parse_scalar, Axis, Experiment, ExperimentConfig, Scalar, SweepSpec};
pub use output::{
    format_float, write_metrics_csv, write_sweep_csv, write_trace_decisions_csv,
    write_trace_dist_csv,
};

use crate::agent::{run_episode, AgentStats, DecisionRecord, Episode};
use crate::error::{Error, Result};
use crate::metrics::{MetricSeries, RunEnsemble, Summary};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const SWEEP_SALT: u64 = 0x5357_4545_5053_4545;

/// Decision indices whose sampling distributions are traced by default.
pub const DEFAULT_TRACE_DECISIONS: [u32; 8] = [1, 500, 1000, 1100, 1200, 1300, 1400, 1500];

/// SplitMix64 output function.
pub fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of stream `k` under master seed `seed`: the `(k+1)`-th output of a
/// SplitMix64 generator started at `seed`.
pub fn derive_seed(seed: u64, k: u64) -> u64 {
    splitmix64(seed.wrapping_add(k.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

/// Master seed of sweep cell `i`.
pub fn sweep_cell_seed(seed: u64, i: usize) -> u64 {
    derive_seed(seed ^ SWEEP_SALT, i as u64)
}

pub fn run_rng(seed: u64, k: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, k as u64))
}

#[derive(Clone, Debug)]
pub struct EnsembleRun {
    pub ensemble: RunEnsemble,
    /// Final counters of each run, in run order.
    pub stats: Vec<AgentStats>,
}

#[derive(Clone, Debug)]
pub struct ExperimentResult {
    pub series: MetricSeries,
    pub summary: Summary,
    pub stats: Vec<AgentStats>,
}

fn pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::config("threads", e.to_string()))
}

/// Runs every episode of `exp` on a pool of `exp.threads` workers.
pub fn run_ensemble(exp: &Experiment) -> Result<EnsembleRun> {
    let episodes: Vec<Episode> = pool(exp.threads)?.install(|| {
        (0..exp.runs)
            .into_par_iter()
            .map(|k| {
                let mut rng = run_rng(exp.seed, k);
                run_episode(&exp.agent, &exp.casino, exp.decisions, &mut rng, false)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let (runs, stats) = episodes.into_iter().map(|e| (e.records, e.stats)).unzip();
    Ok(EnsembleRun {
        ensemble: RunEnsemble::new(exp.casino.clone(), runs)?,
        stats,
    })
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    let exp = cfg.resolve()?;
    let run = run_ensemble(&exp)?;
    let series = MetricSeries::from_ensemble(&run.ensemble);
    Ok(ExperimentResult {
        summary: series.summary(),
        series,
        stats: run.stats,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub axis: Axis,
    pub value: f64,
    pub summary: Summary,
}

/// Resolved config of sweep cell `i`, including its derived seed.
pub fn sweep_cell(spec: &SweepSpec, i: usize) -> Result<ExperimentConfig> {
    let value = spec
        .values
        .get(i)
        .ok_or_else(|| Error::config("values", format!("no cell {i}")))?;
    let mut cfg = spec.cell(value)?;
    cfg.seed = sweep_cell_seed(spec.base.seed, i);
    Ok(cfg)
}

/// One experiment per axis value, each with a fresh derived seed.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    if spec.values.is_empty() {
        return Err(Error::config("values", "sweep needs at least one value"));
    }
    // Validate every cell up front so a bad value fails before hours of work.
    let cells = (0..spec.values.len())
        .map(|i| {
            let cfg = sweep_cell(spec, i)?;
            cfg.resolve()?;
            Ok(cfg)
        })
        .collect::<Result<Vec<_>>>()?;
    cells
        .iter()
        .zip(&spec.values)
        .map(|(cfg, v)| {
            let result = run_experiment(cfg)?;
            Ok(SweepRow {
                axis: spec.axis,
                value: v.resolve("values")?,
                summary: result.summary,
            })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct RunTrace {
    pub run: usize,
    pub records: Vec<DecisionRecord>,
}

impl RunTrace {
    /// `(j, distribution)` for each requested decision index present.
    pub fn distributions_at<'a>(
        &'a self,
        decisions: &'a [u32],
    ) -> impl Iterator<Item = (u32, &'a [f64])> + 'a {
        self.records
            .iter()
            .filter(move |r| decisions.contains(&r.j))
            .filter_map(|r| r.dist.as_ref().map(|d| (r.j, d.as_slice())))
    }
}

/// Replays each run listed in `trace_runs` with distributions attached.
pub fn run_trace(cfg: &ExperimentConfig) -> Result<Vec<RunTrace>> {
    let exp = cfg.resolve()?;
    if exp.trace_runs.is_empty() {
        return Err(Error::config("trace_runs", "no runs selected for tracing"));
    }
    exp.trace_runs
        .iter()
        .map(|&k| {
            let mut rng = run_rng(exp.seed, k);
            let ep = run_episode(&exp.agent, &exp.casino, exp.decisions, &mut rng, true)?;
            Ok(RunTrace {
                run: k,
                records: ep.records,
            })
        })
        .collect()
}
