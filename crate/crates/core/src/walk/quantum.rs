//! Three-state coined quantum walk on the cycle.
//!
//! Internal states are ordered `(|−⟩, |O⟩, |+⟩)` everywhere in this crate:
//! index 0 moves anti-clockwise, index 1 stays, index 2 moves clockwise.
//! A full state is flattened vertex-major, internal-state-minor.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::walk::classical::{RwDistribution, DISTRIBUTION_MASS_TOL};
use crate::walk::{Cycle, CycleIndex};

pub type Amplitude = [Complex64; 3];

pub const MINUS: usize = 0;
pub const STAY: usize = 1;
pub const PLUS: usize = 2;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Per-vertex coin angles `θ(x) ∈ [0, 2π)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoinField {
    theta: Vec<f64>,
}

impl CoinField {
    pub fn new(theta: Vec<f64>) -> Result<Self> {
        Cycle::new(theta.len())?;
        for (x, &v) in theta.iter().enumerate() {
            if !(0.0..TAU).contains(&v) {
                return Err(Error::config(
                    format!("theta[{x}]"),
                    format!("{v} is outside [0, 2π)"),
                ));
            }
        }
        Ok(CoinField { theta })
    }

    pub fn homogeneous(cycle: Cycle, theta: f64) -> Result<Self> {
        Self::new(vec![theta; cycle.size()])
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.theta
    }

    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.theta
    }

    pub fn matrices(&self) -> Vec<CoinMatrix> {
        self.theta
            .iter()
            .map(|&t| CoinMatrix::from_angle(t))
            .collect()
    }
}

/// A 3×3 complex matrix on the coin space, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoinMatrix(pub [[Complex64; 3]; 3]);

impl CoinMatrix {
    pub const ZERO: CoinMatrix = CoinMatrix([[ZERO; 3]; 3]);

    /// The one-parameter coin family
    ///
    /// ```text
    /// ⎡ -(1+c)/2   s/√2   (1-c)/2 ⎤
    /// ⎢   s/√2      c      s/√2   ⎥     c = cos θ, s = sin θ
    /// ⎣ (1-c)/2    s/√2  -(1+c)/2 ⎦
    /// ```
    ///
    /// At `cos θ = -1/3` this is the Grover diffusion matrix. At `θ = 0` it is
    /// `diag(-1, 1, -1)`, which leaves `|O⟩` fixed.
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::from_cos_sin(c, s)
    }

    /// Same family, parametrised directly by `(cos θ, sin θ)`.
    pub fn from_cos_sin(c: f64, s: f64) -> Self {
        let d = Complex64::new(-(1.0 + c) / 2.0, 0.0);
        let o = Complex64::new(s * FRAC_1_SQRT_2, 0.0);
        let a = Complex64::new((1.0 - c) / 2.0, 0.0);
        let m = Complex64::new(c, 0.0);
        CoinMatrix([[d, o, a], [o, m, o], [a, o, d]])
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        CoinMatrix([[one, ZERO, ZERO], [ZERO, one, ZERO], [ZERO, ZERO, one]])
    }

    /// Row projections `(P, Q, R)`: `P` keeps the `|−⟩` row (anti-clockwise
    /// weight), `Q` the `|+⟩` row (clockwise), `R` the `|O⟩` row (stay).
    pub fn split(&self) -> (CoinMatrix, CoinMatrix, CoinMatrix) {
        let keep = |row: usize| {
            let mut m = CoinMatrix::ZERO;
            m.0[row] = self.0[row];
            m
        };
        (keep(MINUS), keep(PLUS), keep(STAY))
    }

    pub fn add(&self, other: &CoinMatrix) -> CoinMatrix {
        let mut out = *self;
        for (r, row) in out.0.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v += other.0[r][c];
            }
        }
        out
    }

    pub fn adjoint(&self) -> CoinMatrix {
        let mut out = CoinMatrix::ZERO;
        for r in 0..3 {
            for c in 0..3 {
                out.0[c][r] = self.0[r][c].conj();
            }
        }
        out
    }

    pub fn mul(&self, other: &CoinMatrix) -> CoinMatrix {
        let mut out = CoinMatrix::ZERO;
        for r in 0..3 {
            for c in 0..3 {
                out.0[r][c] = (0..3).map(|k| self.0[r][k] * other.0[k][c]).sum();
            }
        }
        out
    }

    pub fn apply(&self, v: &Amplitude) -> Amplitude {
        [self.row_dot(0, v), self.row_dot(1, v), self.row_dot(2, v)]
    }

    #[inline(always)]
    fn row_dot(&self, row: usize, v: &Amplitude) -> Complex64 {
        let r = &self.0[row];
        r[0] * v[0] + r[1] * v[1] + r[2] * v[2]
    }

    pub fn max_abs_diff(&self, other: &CoinMatrix) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..3 {
            for c in 0..3 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }

    /// Largest entry of `|C†C - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        self.adjoint()
            .mul(self)
            .max_abs_diff(&CoinMatrix::identity())
    }
}

/// Walker superposition: one amplitude 3-vector per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct QwState {
    psi: Vec<Amplitude>,
}

impl QwState {
    /// `|s⟩ ⊗ |O⟩`.
    pub fn initial(cycle: Cycle, s: CycleIndex) -> Self {
        let mut psi = vec![[ZERO; 3]; cycle.size()];
        psi[s.value()][STAY] = Complex64::new(1.0, 0.0);
        QwState { psi }
    }

    /// Checked constructor from explicit amplitudes; total norm must be 1.
    pub fn from_amplitudes(psi: Vec<Amplitude>) -> Result<Self> {
        Cycle::new(psi.len())?;
        let state = QwState { psi };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > DISTRIBUTION_MASS_TOL {
            return Err(Error::config("psi", format!("squared norm {norm} != 1")));
        }
        Ok(state)
    }

    pub(crate) fn from_amplitudes_unchecked(psi: Vec<Amplitude>) -> Self {
        QwState { psi }
    }

    pub fn len(&self) -> usize {
        self.psi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.psi.is_empty()
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.psi
    }

    pub fn at(&self, x: CycleIndex) -> &Amplitude {
        &self.psi[x.value()]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.psi.iter().map(amp_norm_sqr).sum()
    }

    pub fn max_abs_diff(&self, other: &QwState) -> f64 {
        self.psi
            .iter()
            .zip(&other.psi)
            .flat_map(|(a, b)| (0..3).map(move |i| (a[i] - b[i]).norm()))
            .fold(0.0, f64::max)
    }
}

#[inline(always)]
fn amp_norm_sqr(a: &Amplitude) -> f64 {
    a[0].norm_sqr() + a[1].norm_sqr() + a[2].norm_sqr()
}

/// `ψ'(x) = P(x+1)ψ(x+1) + R(x)ψ(x) + Q(x-1)ψ(x-1)`.
#[inline(always)]
fn evolve_vertex(
    coins: &[CoinMatrix],
    psi: &[Amplitude],
    prev: usize,
    x: usize,
    next: usize,
) -> Amplitude {
    [
        coins[next].row_dot(MINUS, &psi[next]),
        coins[x].row_dot(STAY, &psi[x]),
        coins[prev].row_dot(PLUS, &psi[prev]),
    ]
}

/// One application of the time-evolution operator `U = S·C`.
pub fn qw_step(state: &QwState, coins: &CoinField) -> Result<QwState> {
    if state.len() != coins.len() {
        return Err(Error::LengthMismatch {
            expected: state.len(),
            found: coins.len(),
        });
    }
    let mats = coins.matrices();
    Ok(qw_step_with(state, &mats))
}

pub(crate) fn qw_step_with(state: &QwState, mats: &[CoinMatrix]) -> QwState {
    let n = state.len();
    let psi = (0..n)
        .map(|x| {
            let prev = if x == 0 { n - 1 } else { x - 1 };
            let next = if x + 1 == n { 0 } else { x + 1 };
            evolve_vertex(mats, &state.psi, prev, x, next)
        })
        .collect();
    QwState::from_amplitudes_unchecked(psi)
}

/// Born-rule distribution `μ(x) = ‖ψ(x)‖²`.
pub fn measurement_distribution(state: &QwState) -> RwDistribution {
    RwDistribution::from_probs_unchecked(state.psi.iter().map(amp_norm_sqr).collect())
}

/// Reusable evolver for `T` steps from `|s⟩ ⊗ |O⟩`, restricted to the light
/// cone while it is narrower than the cycle.
#[derive(Clone, Debug)]
pub struct QuantumWalker {
    cycle: Cycle,
    coins: Vec<CoinMatrix>,
    cur: Vec<Amplitude>,
    next: Vec<Amplitude>,
    probs: Vec<f64>,
}

impl QuantumWalker {
    pub fn new(cycle: Cycle) -> Self {
        let n = cycle.size();
        QuantumWalker {
            cycle,
            coins: vec![CoinMatrix::identity(); n],
            cur: vec![[ZERO; 3]; n],
            next: vec![[ZERO; 3]; n],
            probs: vec![0.0; n],
        }
    }

    pub fn set_coins(&mut self, field: &CoinField) {
        assert_eq!(
            field.len(),
            self.cycle.size(),
            "field size must match the walker's cycle"
        );
        for (m, &t) in self.coins.iter_mut().zip(field.as_slice()) {
            *m = CoinMatrix::from_angle(t);
        }
    }

    /// Evolves `steps` times from `|start⟩ ⊗ |O⟩` under the current coins and
    /// returns the state.
    pub fn evolve(&mut self, start: CycleIndex, steps: usize) -> &[Amplitude] {
        let n = self.cycle.size();
        self.cur.fill([ZERO; 3]);
        self.next.fill([ZERO; 3]);
        self.cur[start.value()][STAY] = Complex64::new(1.0, 0.0);
        let s = start.value() as isize;
        for t in 0..steps {
            let reach = t + 1;
            if 2 * reach + 1 >= n {
                for x in 0..n {
                    let prev = if x == 0 { n - 1 } else { x - 1 };
                    let next = if x + 1 == n { 0 } else { x + 1 };
                    self.next[x] = evolve_vertex(&self.coins, &self.cur, prev, x, next);
                }
            } else {
                for d in -(reach as isize)..=(reach as isize) {
                    let x = (s + d).rem_euclid(n as isize) as usize;
                    let prev = if x == 0 { n - 1 } else { x - 1 };
                    let next = if x + 1 == n { 0 } else { x + 1 };
                    self.next[x] = evolve_vertex(&self.coins, &self.cur, prev, x, next);
                }
            }
            std::mem::swap(&mut self.cur, &mut self.next);
        }
        &self.cur
    }

    /// Measurement distribution after `steps` steps from `|start⟩ ⊗ |O⟩`.
    pub fn run(&mut self, start: CycleIndex, steps: usize) -> &[f64] {
        self.evolve(start, steps);
        for (p, a) in self.probs.iter_mut().zip(&self.cur) {
            *p = amp_norm_sqr(a);
        }
        &self.probs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn grover_reduction() {
        let cos = -1.0 / 3.0;
        let sin = 2.0 * SQRT_2 / 3.0;
        let m = CoinMatrix::from_cos_sin(cos, sin);
        for r in 0..3 {
            for col in 0..3 {
                let want = if r == col { -1.0 / 3.0 } else { 2.0 / 3.0 };
                assert!((m.0[r][col] - c(want)).norm() < 1e-15, "({r},{col})");
            }
        }
        let via_angle = CoinMatrix::from_angle(cos.acos());
        assert!(via_angle.max_abs_diff(&m) < 1e-15);
    }

    #[test]
    fn zero_angle_is_reflection_not_identity() {
        let m = CoinMatrix::from_angle(0.0);
        let want = CoinMatrix([
            [c(-1.0), c(0.0), c(0.0)],
            [c(0.0), c(1.0), c(0.0)],
            [c(0.0), c(0.0), c(-1.0)],
        ]);
        assert_eq!(m, want);
        assert_eq!(m.unitarity_defect(), 0.0);
    }

    #[test]
    fn right_angle_entries() {
        let m = CoinMatrix::from_angle(FRAC_PI_2);
        let h = FRAC_1_SQRT_2;
        let want = [[-0.5, h, 0.5], [h, 0.0, h], [0.5, h, -0.5]];
        for (row, want_row) in m.0.iter().zip(want) {
            for (z, w) in row.iter().zip(want_row) {
                assert!((z - c(w)).norm() < 1e-15);
            }
        }
        assert!(m.unitarity_defect() < 1e-15);
    }

    #[test]
    fn family_is_unitary_and_real() {
        for k in 0..64 {
            let m = CoinMatrix::from_angle(k as f64 * TAU / 64.0);
            assert!(m.unitarity_defect() < 1e-15);
            assert!(m.0.iter().flatten().all(|z| z.im == 0.0));
        }
    }

    #[test]
    fn split_rows() {
        let g = CoinMatrix::from_cos_sin(-1.0 / 3.0, 2.0 * SQRT_2 / 3.0);
        let (p, q, r) = g.split();
        assert_eq!(p.0[0], g.0[0]);
        assert_eq!(p.0[1], [ZERO; 3]);
        assert_eq!(p.0[2], [ZERO; 3]);
        assert_eq!(q.0[2], g.0[2]);
        assert_eq!(r.0[1], g.0[1]);
        assert_eq!(p.add(&q).add(&r), g);

        let (_, _, r0) = CoinMatrix::from_angle(0.0).split();
        let mut want = CoinMatrix::ZERO;
        want.0[1][1] = c(1.0);
        assert_eq!(r0, want);
    }

    #[test]
    fn initial_state_is_point_mass() {
        let cy = Cycle::new(4).unwrap();
        let st = QwState::initial(cy, cy.index(0).unwrap());
        assert_eq!(st.amplitudes()[0], [ZERO, c(1.0), ZERO]);
        assert!(st.amplitudes()[1..].iter().all(|a| *a == [ZERO; 3]));
        let mu = measurement_distribution(&st);
        assert_eq!(mu.as_slice(), &[1.0, 0.0, 0.0, 0.0]);

        let cy = Cycle::new(32).unwrap();
        let st = QwState::initial(cy, cy.index(31).unwrap());
        let nonzero: Vec<usize> = (0..32)
            .filter(|&x| st.amplitudes()[x] != [ZERO; 3])
            .collect();
        assert_eq!(nonzero, vec![31]);
    }

    #[test]
    fn one_step_closed_form() {
        let cy = Cycle::new(7).unwrap();
        let s = cy.index(0).unwrap();
        let theta = 5.0 * PI / 16.0;
        let coins = CoinField::homogeneous(cy, theta).unwrap();
        let st = qw_step(&QwState::initial(cy, s), &coins).unwrap();
        let (sn, cs) = theta.sin_cos();
        let a = sn / SQRT_2;
        let close = |x: &Amplitude, y: [f64; 3]| (0..3).all(|i| (x[i] - c(y[i])).norm() < 1e-15);
        assert!(close(st.at(cy.prev(s)), [a, 0.0, 0.0]));
        assert!(close(st.at(s), [0.0, cs, 0.0]));
        assert!(close(st.at(cy.next(s)), [0.0, 0.0, a]));

        let mu = measurement_distribution(&st);
        assert!((mu.prob(cy.prev(s)) - sn * sn / 2.0).abs() < 1e-15);
        assert!((mu.prob(s) - cs * cs).abs() < 1e-15);
        assert!((mu.prob(cy.next(s)) - sn * sn / 2.0).abs() < 1e-15);
    }

    #[test]
    fn zero_coins_trap_the_stay_state() {
        let cy = Cycle::new(6).unwrap();
        let s = cy.index(2).unwrap();
        let coins = CoinField::homogeneous(cy, 0.0).unwrap();
        let init = QwState::initial(cy, s);
        let mut st = init.clone();
        for _ in 0..50 {
            st = qw_step(&st, &coins).unwrap();
            assert_eq!(st, init);
        }
    }

    #[test]
    fn born_rule_on_split_amplitudes() {
        let h = FRAC_1_SQRT_2;
        let st = QwState::from_amplitudes(vec![[c(h), ZERO, ZERO], [ZERO, ZERO, c(h)], [ZERO; 3]])
            .unwrap();
        let mu = measurement_distribution(&st);
        assert!((mu.as_slice()[0] - 0.5).abs() < 1e-15);
        assert!((mu.as_slice()[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn mismatched_lengths_rejected() {
        let st = QwState::initial(
            Cycle::new(4).unwrap(),
            Cycle::new(4).unwrap().index(0).unwrap(),
        );
        let coins = CoinField::homogeneous(Cycle::new(5).unwrap(), 1.0).unwrap();
        assert!(matches!(
            qw_step(&st, &coins),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn coin_field_bounds() {
        assert!(CoinField::new(vec![0.0, 1.0, TAU]).is_err());
        assert!(CoinField::new(vec![0.0, 1.0, -0.1]).is_err());
        assert!(CoinField::new(vec![0.0, 1.0, 6.0]).is_ok());
    }

    #[test]
    fn walker_matches_plain_steps() {
        let cy = Cycle::new(9).unwrap();
        let theta: Vec<f64> = (0..9).map(|x| 0.7 * x as f64).collect();
        let field = CoinField::new(theta).unwrap();
        let s = cy.index(1).unwrap();
        let mut walker = QuantumWalker::new(cy);
        walker.set_coins(&field);
        for steps in 0..14 {
            let mut st = QwState::initial(cy, s);
            for _ in 0..steps {
                st = qw_step(&st, &field).unwrap();
            }
            assert_eq!(walker.evolve(s, steps), st.amplitudes(), "steps = {steps}");
            assert_eq!(
                walker.run(s, steps),
                measurement_distribution(&st).as_slice()
            );
        }
    }
}
