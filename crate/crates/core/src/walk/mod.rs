//! Walk engines on the `N`-cycle: the lazy random walk, the three-state
//! coined quantum walk, and sampling from their position distributions.

mod classical;
mod cycle;
mod quantum;
mod sampling;

pub use classical::{rw_step, RandomWalker, RwDistribution, RwField, DISTRIBUTION_MASS_TOL};
pub use cycle::{Cycle, CycleIndex};
pub use quantum::{
    measurement_distribution, qw_step, Amplitude, CoinField, CoinMatrix, QuantumWalker, QwState,
    MINUS, PLUS, STAY,
};
pub use sampling::{displacement_stddev, inverse_cdf, sample_position};
