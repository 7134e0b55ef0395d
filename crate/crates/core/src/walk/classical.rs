//! Lazy random walk on the cycle.
//!
//! A walker at `x` moves clockwise with probability `q(x)`, anti-clockwise
//! with probability `q(x)`, and stays with probability `1 - 2q(x)`.

use crate::error::{Error, Result};
use crate::walk::{Cycle, CycleIndex};

/// Tolerance on total mass accepted by [`RwDistribution::from_probs`].
pub const DISTRIBUTION_MASS_TOL: f64 = 1e-10;

/// Per-vertex transition probabilities `q(x) ∈ [0, 1/2]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RwField {
    q: Vec<f64>,
}

impl RwField {
    pub fn new(q: Vec<f64>) -> Result<Self> {
        Cycle::new(q.len())?;
        for (x, &v) in q.iter().enumerate() {
            if !(0.0..=0.5).contains(&v) {
                return Err(Error::config(
                    format!("q[{x}]"),
                    format!("{v} is outside [0, 1/2]"),
                ));
            }
        }
        Ok(RwField { q })
    }

    pub fn homogeneous(cycle: Cycle, q: f64) -> Result<Self> {
        Self::new(vec![q; cycle.size()])
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.q
    }

    /// Overwrites every entry. Callers guarantee the `[0, 1/2]` bound.
    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.q
    }
}

/// A probability vector over the cycle's vertices. Used both for the
/// random-walk law `ν` and the quantum measurement law `μ`.
#[derive(Clone, Debug, PartialEq)]
pub struct RwDistribution {
    nu: Vec<f64>,
}

impl RwDistribution {
    /// Point mass `δ_s`.
    pub fn point(cycle: Cycle, s: CycleIndex) -> Self {
        let mut nu = vec![0.0; cycle.size()];
        nu[s.value()] = 1.0;
        RwDistribution { nu }
    }

    pub fn uniform(cycle: Cycle) -> Self {
        let n = cycle.size();
        RwDistribution {
            nu: vec![1.0 / n as f64; n],
        }
    }

    pub fn from_probs(nu: Vec<f64>) -> Result<Self> {
        Cycle::new(nu.len())?;
        if let Some(x) = nu.iter().position(|p| p.is_nan() || *p < 0.0) {
            return Err(Error::config(
                format!("nu[{x}]"),
                format!("{} is not a probability", nu[x]),
            ));
        }
        let mass: f64 = nu.iter().sum();
        if (mass - 1.0).abs() > DISTRIBUTION_MASS_TOL {
            return Err(Error::config("nu", format!("total mass {mass} != 1")));
        }
        Ok(RwDistribution { nu })
    }

    pub(crate) fn from_probs_unchecked(nu: Vec<f64>) -> Self {
        RwDistribution { nu }
    }

    pub fn len(&self) -> usize {
        self.nu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nu.is_empty()
    }

    pub fn cycle(&self) -> Cycle {
        Cycle::new(self.nu.len()).expect("distribution built on a valid cycle")
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.nu
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.nu
    }

    pub fn prob(&self, x: CycleIndex) -> f64 {
        self.nu[x.value()]
    }

    pub fn total_mass(&self) -> f64 {
        self.nu.iter().sum()
    }
}

/// Mass arriving at vertex `x` in one step.
#[inline(always)]
fn inflow(q: &[f64], nu: &[f64], prev: usize, x: usize, next: usize) -> f64 {
    q[next] * nu[next] + (1.0 - 2.0 * q[x]) * nu[x] + q[prev] * nu[prev]
}

/// One step of the distribution recurrence
/// `ν'(x) = q(x+1)ν(x+1) + (1-2q(x))ν(x) + q(x-1)ν(x-1)`.
pub fn rw_step(nu: &RwDistribution, field: &RwField) -> Result<RwDistribution> {
    if nu.len() != field.len() {
        return Err(Error::LengthMismatch {
            expected: nu.len(),
            found: field.len(),
        });
    }
    let n = nu.len();
    let (q, p) = (field.as_slice(), nu.as_slice());
    let out = (0..n)
        .map(|x| {
            let prev = if x == 0 { n - 1 } else { x - 1 };
            let next = if x + 1 == n { 0 } else { x + 1 };
            inflow(q, p, prev, x, next)
        })
        .collect();
    Ok(RwDistribution::from_probs_unchecked(out))
}

/// Reusable evolver for `T` steps from a point mass.
///
/// Only the light cone `s-t ..= s+t` is touched while it is narrower than the
/// cycle, which is what makes the bandit agents cheap for small `T`.
#[derive(Clone, Debug)]
pub struct RandomWalker {
    cycle: Cycle,
    cur: Vec<f64>,
    next: Vec<f64>,
}

impl RandomWalker {
    pub fn new(cycle: Cycle) -> Self {
        let n = cycle.size();
        RandomWalker {
            cycle,
            cur: vec![0.0; n],
            next: vec![0.0; n],
        }
    }

    /// Distribution after `steps` steps from `δ_start`.
    pub fn run(&mut self, field: &RwField, start: CycleIndex, steps: usize) -> &[f64] {
        let n = self.cycle.size();
        assert_eq!(field.len(), n, "field size must match the walker's cycle");
        let q = field.as_slice();
        self.cur.fill(0.0);
        self.next.fill(0.0);
        self.cur[start.value()] = 1.0;
        for t in 0..steps {
            let reach = t + 1;
            if 2 * reach + 1 >= n {
                for x in 0..n {
                    let prev = if x == 0 { n - 1 } else { x - 1 };
                    let next = if x + 1 == n { 0 } else { x + 1 };
                    self.next[x] = inflow(q, &self.cur, prev, x, next);
                }
            } else {
                let s = start.value() as isize;
                for d in -(reach as isize)..=(reach as isize) {
                    let x = (s + d).rem_euclid(n as isize) as usize;
                    let prev = if x == 0 { n - 1 } else { x - 1 };
                    let next = if x + 1 == n { 0 } else { x + 1 };
                    self.next[x] = inflow(q, &self.cur, prev, x, next);
                }
            }
            std::mem::swap(&mut self.cur, &mut self.next);
        }
        &self.cur
    }
}
