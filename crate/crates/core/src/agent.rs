//! Walk-driven bandit agents.
//!
//! Both agents share the same loop. Each decision runs a walk for `T` steps
//! from the current start vertex, samples the arm from the resulting position
//! law, plays it, updates the per-arm counters, then moves the start vertex to
//! the empirically best arm and recomputes the walk parameter at every vertex
//! as `f(p̂(x)) = c·exp(-a·p̂(x)^b)`. For the random walk `f` is the hop
//! probability `q(x)`; for the quantum walk it is the coin angle `θ(x)`.
//!
//! Random variates consumed, in order: one at initialisation (start vertex),
//! then per decision one for the position sample, one for the reward, and one
//! for the argmax tie-break only when there is a tie.

use std::f64::consts::TAU;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::casino::{Casino, Reward};
use crate::error::{Error, Result};
use crate::walk::{
    inverse_cdf, CoinField, Cycle, CycleIndex, QuantumWalker, RandomWalker, RwDistribution, RwField,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WalkKind {
    Rw,
    Qw,
}

impl std::fmt::Display for WalkKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            WalkKind::Rw => "rw",
            WalkKind::Qw => "qw",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AgentConfig {
    pub kind: WalkKind,
    pub a: f64,
    pub b: f64,
    /// `q°` for the random walk, `θ°` for the quantum walk.
    pub c: f64,
    /// Walk steps per decision (`T`).
    pub steps: usize,
}

impl AgentConfig {
    pub fn new(kind: WalkKind, a: f64, b: f64, c: f64, steps: usize) -> Result<Self> {
        let cfg = AgentConfig {
            kind,
            a,
            b,
            c,
            steps,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a >= 1.0 && self.a.is_finite()) {
            return Err(Error::config(
                "a",
                format!("{} must be finite and >= 1", self.a),
            ));
        }
        if !(self.b >= 1.0 && self.b.is_finite()) {
            return Err(Error::config(
                "b",
                format!("{} must be finite and >= 1", self.b),
            ));
        }
        match self.kind {
            WalkKind::Rw if !(0.0..=0.5).contains(&self.c) => {
                return Err(Error::config(
                    "c",
                    format!("q° = {} must be in [0, 1/2]", self.c),
                ))
            }
            WalkKind::Qw if !(0.0..TAU).contains(&self.c) => {
                return Err(Error::config(
                    "c",
                    format!("θ° = {} must be in [0, 2π)", self.c),
                ))
            }
            _ => {}
        }
        if self.steps == 0 {
            return Err(Error::config("T", "must be at least 1"));
        }
        Ok(())
    }
}

/// `c·exp(-a·p̂^b)`: maps an empirical success probability to the walk
/// parameter for that vertex. Decreasing in `p̂` from `c` down to `c·e^{-a}`.
pub fn f_update(p_hat: f64, cfg: &AgentConfig) -> f64 {
    cfg.c * (-cfg.a * p_hat.powf(cfg.b)).exp()
}

/// Per-arm play counts `H`, win counts `L` and empirical rates `p̂`.
#[derive(Clone, Debug, PartialEq)]
pub struct AgentStats {
    plays: Vec<u64>,
    wins: Vec<u64>,
    p_hat: Vec<f64>,
}

impl AgentStats {
    pub fn new(cycle: Cycle) -> Self {
        let n = cycle.size();
        AgentStats {
            plays: vec![0; n],
            wins: vec![0; n],
            p_hat: vec![0.0; n],
        }
    }

    pub fn plays(&self) -> &[u64] {
        &self.plays
    }

    pub fn wins(&self) -> &[u64] {
        &self.wins
    }

    pub fn p_hat(&self) -> &[f64] {
        &self.p_hat
    }

    pub fn total_plays(&self) -> u64 {
        self.plays.iter().sum()
    }

    pub fn total_wins(&self) -> u64 {
        self.wins.iter().sum()
    }

    /// Increments `H(x)`, and `L(x)` on a win; only `p̂(x)` is recomputed.
    pub fn record(&mut self, x: CycleIndex, reward: Reward) {
        let i = x.value();
        self.plays[i] += 1;
        if reward.is_win() {
            self.wins[i] += 1;
        }
        self.p_hat[i] = self.wins[i] as f64 / self.plays[i] as f64;
    }
}

/// Index of a maximum of `values`, uniform among ties. Consumes one variate
/// only when more than one index attains the maximum.
pub fn argmax_random_ties<R: Rng + ?Sized>(values: &[f64], rng: &mut R) -> usize {
    let top = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let ties = values.iter().filter(|&&v| v == top).count();
    let pick = if ties == 1 {
        0
    } else {
        let u: f64 = rng.random();
        ((u * ties as f64) as usize).min(ties - 1)
    };
    values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v == top)
        .nth(pick)
        .map(|(x, _)| x)
        .expect("at least one maximiser")
}

#[derive(Clone, Debug, PartialEq)]
pub enum WalkField {
    Rw(RwField),
    Qw(CoinField),
}

impl WalkField {
    pub fn values(&self) -> &[f64] {
        match self {
            WalkField::Rw(f) => f.as_slice(),
            WalkField::Qw(f) => f.as_slice(),
        }
    }

    fn values_mut(&mut self) -> &mut [f64] {
        match self {
            WalkField::Rw(f) => f.values_mut(),
            WalkField::Qw(f) => f.values_mut(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AgentState {
    pub stats: AgentStats,
    /// Start vertex of the next decision's walk.
    pub start: CycleIndex,
    /// Walk parameters of the next decision.
    pub field: WalkField,
    /// Decisions completed so far.
    pub decisions: u64,
}

#[derive(Clone, Debug)]
enum Engine {
    Rw(RandomWalker),
    Qw(QuantumWalker),
}

/// One bandit agent with its walk engine and scratch buffers.
#[derive(Clone, Debug)]
pub struct Agent {
    cfg: AgentConfig,
    cycle: Cycle,
    state: AgentState,
    engine: Engine,
    dist: Vec<f64>,
}

impl Agent {
    /// Start vertex uniform over the cycle (one variate), homogeneous field at
    /// `c`, all counters zero.
    pub fn new<R: Rng + ?Sized>(cfg: AgentConfig, cycle: Cycle, rng: &mut R) -> Result<Self> {
        cfg.validate()?;
        let n = cycle.size();
        let u: f64 = rng.random();
        let start = cycle.index(((u * n as f64) as usize).min(n - 1))?;
        let (field, engine) = match cfg.kind {
            WalkKind::Rw => (
                WalkField::Rw(RwField::homogeneous(cycle, cfg.c)?),
                Engine::Rw(RandomWalker::new(cycle)),
            ),
            WalkKind::Qw => {
                let coins = CoinField::homogeneous(cycle, cfg.c)?;
                let mut walker = QuantumWalker::new(cycle);
                walker.set_coins(&coins);
                (WalkField::Qw(coins), Engine::Qw(walker))
            }
        };
        Ok(Agent {
            cfg,
            cycle,
            state: AgentState {
                stats: AgentStats::new(cycle),
                start,
                field,
                decisions: 0,
            },
            engine,
            dist: vec![0.0; n],
        })
    }

    pub fn config(&self) -> &AgentConfig {
        &self.cfg
    }

    pub fn cycle(&self) -> Cycle {
        self.cycle
    }

    pub fn state(&self) -> &AgentState {
        &self.state
    }

    /// Runs the walk from the current start and samples an arm. Returns the
    /// arm and the sampling distribution it was drawn from.
    pub fn decide<R: Rng + ?Sized>(&mut self, rng: &mut R) -> (CycleIndex, &[f64]) {
        let (start, steps) = (self.state.start, self.cfg.steps);
        let probs = match (&mut self.engine, &self.state.field) {
            (Engine::Rw(w), WalkField::Rw(f)) => w.run(f, start, steps),
            (Engine::Qw(w), WalkField::Qw(_)) => w.run(start, steps),
            _ => unreachable!("engine and field kinds always agree"),
        };
        self.dist.copy_from_slice(probs);
        let u: f64 = rng.random();
        let x = self
            .cycle
            .index(inverse_cdf(&self.dist, u))
            .expect("in range");
        (x, &self.dist)
    }

    pub fn update_stats(&mut self, chosen: CycleIndex, reward: Reward) {
        self.state.stats.record(chosen, reward);
        self.state.decisions += 1;
    }

    /// Moves the start to the empirical best arm and recomputes every vertex's
    /// walk parameter from its `p̂`.
    pub fn adjust<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        let p_hat = self.state.stats.p_hat();
        let best = argmax_random_ties(p_hat, rng);
        self.state.start = self.cycle.index(best).expect("in range");
        for (v, &p) in self.state.field.values_mut().iter_mut().zip(p_hat) {
            *v = f_update(p, &self.cfg);
        }
        if let (Engine::Qw(w), WalkField::Qw(coins)) = (&mut self.engine, &self.state.field) {
            w.set_coins(coins);
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecisionRecord {
    /// 1-based decision index.
    pub j: u32,
    pub chosen: CycleIndex,
    pub reward: Reward,
    /// Law `chosen` was sampled from; kept only when tracing.
    pub dist: Option<Box<RwDistribution>>,
}

#[derive(Clone, Debug)]
pub struct Episode {
    pub records: Vec<DecisionRecord>,
    /// Counters after the last decision.
    pub stats: AgentStats,
}

impl Episode {
    pub fn total_reward(&self) -> u64 {
        self.records.iter().map(|r| r.reward.value() as u64).sum()
    }
}

/// Initialises an agent and runs `decisions` rounds of
/// decide → play → update → adjust against `casino`.
pub fn run_episode<R: Rng + ?Sized>(
    cfg: &AgentConfig,
    casino: &Casino,
    decisions: usize,
    rng: &mut R,
    trace: bool,
) -> Result<Episode> {
    if decisions == 0 {
        return Err(Error::config("J", "must be at least 1"));
    }
    let mut agent = Agent::new(*cfg, casino.cycle(), rng)?;
    let mut records = Vec::with_capacity(decisions);
    for j in 1..=decisions {
        let (chosen, dist) = agent.decide(rng);
        let dist = trace.then(|| Box::new(RwDistribution::from_probs_unchecked(dist.to_vec())));
        let reward = casino.draw(chosen, rng);
        agent.update_stats(chosen, reward);
        agent.adjust(rng);
        records.push(DecisionRecord {
            j: j as u32,
            chosen,
            reward,
            dist,
        });
    }
    Ok(Episode {
        records,
        stats: agent.state.stats,
    })
}
