//! Multi-armed bandit agents driven by walks on a cycle.
//!
//! Each arm of an `N`-armed Bernoulli bandit sits on a vertex of the cycle
//! `C_N`. An agent picks an arm by running a short walk from its current best
//! guess and sampling where the walker ends up. Two walk models are provided:
//!
//! * a lazy random walk whose per-vertex hop probability shrinks on arms that
//!   pay well, and
//! * a three-state coined quantum walk whose per-vertex coin angle shrinks on
//!   arms that pay well, so the walker localises there while spreading
//!   ballistically elsewhere.
//!
//! The crate also contains dense reference operators for checking the walk
//! engines ([`oracle`]), ensemble metrics ([`metrics`]) and an experiment
//! harness with deterministic per-run seeding ([`harness`]).

pub mod agent;
pub mod casino;
mod error;
pub mod harness;
pub mod metrics;
pub mod oracle;
pub mod walk;

pub use agent::{
    f_update, run_episode, Agent, AgentConfig, AgentState, AgentStats, DecisionRecord, Episode,
    WalkField, WalkKind,
};
pub use casino::{Casino, CasinoSpec, Reward};
pub use error::{Error, Result};
pub use harness::{ExperimentConfig, SweepSpec};
pub use metrics::{MetricSeries, RunEnsemble, Summary};
pub use walk::{CoinField, CoinMatrix, Cycle, CycleIndex, QwState, RwDistribution, RwField};
