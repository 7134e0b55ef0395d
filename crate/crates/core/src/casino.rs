//! Bernoulli slot machines placed on the cycle's vertices.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::walk::{Cycle, CycleIndex};

#[derive(Clone, Debug, PartialEq)]
pub struct Casino {
    p: Vec<f64>,
}

/// Casino description as it appears in a config file: a preset name or an
/// explicit probability array.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CasinoSpec {
    Preset(String),
    Probabilities(Vec<f64>),
}

pub const PAPER_PRESET: &str = "paper32";

impl Casino {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        Cycle::new(p.len())?;
        if let Some(x) = p.iter().position(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::config(
                format!("casino[{x}]"),
                format!("{} is not a probability", p[x]),
            ));
        }
        Ok(Casino { p })
    }

    /// The 32-arm benchmark: `p(14) = 0.9`, `p(15) = 0.1`, 0.7 on the other
    /// even arms and 0.5 on the other odd arms.
    pub fn paper() -> Self {
        let p = (0..32)
            .map(|x| match x {
                14 => 0.9,
                15 => 0.1,
                x if x % 2 == 0 => 0.7,
                _ => 0.5,
            })
            .collect();
        Casino { p }
    }

    pub fn from_spec(spec: &CasinoSpec) -> Result<Self> {
        match spec {
            CasinoSpec::Preset(name) if name == PAPER_PRESET => Ok(Self::paper()),
            CasinoSpec::Preset(name) => Err(Error::config(
                "casino",
                format!("unknown preset {name:?} (known: {PAPER_PRESET:?})"),
            )),
            CasinoSpec::Probabilities(p) => Self::new(p.clone()),
        }
    }

    pub fn cycle(&self) -> Cycle {
        Cycle::new(self.p.len()).expect("validated on construction")
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.p
    }

    pub fn prob(&self, x: CycleIndex) -> f64 {
        self.p[x.value()]
    }

    /// `argmax p`, smallest index on ties.
    pub fn best_arm(&self) -> CycleIndex {
        let mut best = 0;
        for (x, &v) in self.p.iter().enumerate() {
            if v > self.p[best] {
                best = x;
            }
        }
        self.cycle().index(best).expect("in range")
    }

    /// `p(x*) - min_x p(x)`, the largest possible per-decision regret.
    pub fn max_gap(&self) -> f64 {
        let lo = self.p.iter().copied().fold(f64::INFINITY, f64::min);
        self.prob(self.best_arm()) - lo
    }

    /// Plays arm `x`: one uniform `u`, reward 1 iff `u < p(x)`.
    pub fn draw<R: Rng + ?Sized>(&self, x: CycleIndex, rng: &mut R) -> Reward {
        let u: f64 = rng.random();
        Reward::from(u < self.p[x.value()])
    }
}

/// A single 0/1 payout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Reward(u8);

impl Reward {
    pub const LOSS: Reward = Reward(0);
    pub const WIN: Reward = Reward(1);

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_win(self) -> bool {
        self.0 == 1
    }
}

impl From<bool> for Reward {
    fn from(win: bool) -> Self {
        Reward(win as u8)
    }
}
