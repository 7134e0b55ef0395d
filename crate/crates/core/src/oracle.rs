//! Slow dense reference implementations of both walks.
//!
//! These build the full evolution operators explicitly and are used to check
//! the local-recurrence engines in [`crate::walk`]. The dense quantum index of
//! `(vertex x, internal state e)` is `3 * x + e`, with `e` ordered
//! `(|−⟩, |O⟩, |+⟩)`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::walk::{
    qw_step, rw_step, Amplitude, CoinField, CoinMatrix, Cycle, QwState, RwDistribution, RwField,
};

/// Time-evolution operator `U = Σ_x |x-1⟩⟨x|⊗P(x) + |x⟩⟨x|⊗R(x) + |x+1⟩⟨x|⊗Q(x)`.
#[derive(Clone, Debug)]
pub struct DenseUnitary {
    dim: usize,
    entries: Vec<Complex64>,
}

/// Column-stochastic transition matrix; column `x` holds the outgoing law of `x`.
#[derive(Clone, Debug)]
pub struct DenseStochastic {
    n: usize,
    entries: Vec<f64>,
}

impl DenseUnitary {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    /// The 3×3 block mapping vertex `from` to vertex `to`.
    pub fn block(&self, to: usize, from: usize) -> CoinMatrix {
        let mut m = CoinMatrix::ZERO;
        for r in 0..3 {
            for c in 0..3 {
                m.0[r][c] = self.get(3 * to + r, 3 * from + c);
            }
        }
        m
    }

    fn add_block(&mut self, to: usize, from: usize, m: &CoinMatrix) {
        for r in 0..3 {
            for c in 0..3 {
                self.entries[(3 * to + r) * self.dim + 3 * from + c] += m.0[r][c];
            }
        }
    }

    /// Largest entry of `|U†U - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..d {
                    acc += self.get(k, i).conj() * self.get(k, j);
                }
                if i == j {
                    acc -= 1.0;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }

    fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|r| {
                self.entries[r * self.dim..(r + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }
}

impl DenseStochastic {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.n + col]
    }

    /// Largest deviation of a column sum from 1.
    pub fn column_sum_defect(&self) -> f64 {
        (0..self.n)
            .map(|c| ((0..self.n).map(|r| self.get(r, c)).sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    fn apply(&self, v: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|r| (0..self.n).map(|c| self.get(r, c) * v[c]).sum())
            .collect()
    }
}

pub fn build_dense_unitary(coins: &CoinField) -> Result<DenseUnitary> {
    let n = Cycle::new(coins.len())?.size();
    let dim = 3 * n;
    let mut u = DenseUnitary {
        dim,
        entries: vec![Complex64::new(0.0, 0.0); dim * dim],
    };
    for (x, &theta) in coins.as_slice().iter().enumerate() {
        let (p, q, r) = CoinMatrix::from_angle(theta).split();
        u.add_block((x + n - 1) % n, x, &p);
        u.add_block(x, x, &r);
        u.add_block((x + 1) % n, x, &q);
    }
    Ok(u)
}

pub fn build_dense_stochastic(field: &RwField) -> Result<DenseStochastic> {
    let n = Cycle::new(field.len())?.size();
    let mut entries = vec![0.0; n * n];
    for (x, &q) in field.as_slice().iter().enumerate() {
        entries[((x + 1) % n) * n + x] += q;
        entries[((x + n - 1) % n) * n + x] += q;
        entries[x * n + x] += 1.0 - 2.0 * q;
    }
    Ok(DenseStochastic { n, entries })
}

/// `U^steps |state⟩` by repeated matrix-vector products.
pub fn dense_evolve(state: &QwState, u: &DenseUnitary, steps: usize) -> Result<QwState> {
    if 3 * state.len() != u.dim {
        return Err(Error::LengthMismatch {
            expected: u.dim,
            found: 3 * state.len(),
        });
    }
    let mut v: Vec<Complex64> = state.amplitudes().iter().flatten().copied().collect();
    for _ in 0..steps {
        v = u.apply(&v);
    }
    let psi = v.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
    Ok(QwState::from_amplitudes_unchecked(psi))
}

/// `P^steps ν₀` with the dense transition matrix of `field`.
pub fn rw_matrix_power(
    field: &RwField,
    nu0: &RwDistribution,
    steps: usize,
) -> Result<RwDistribution> {
    if field.len() != nu0.len() {
        return Err(Error::LengthMismatch {
            expected: nu0.len(),
            found: field.len(),
        });
    }
    let p = build_dense_stochastic(field)?;
    let mut v = nu0.as_slice().to_vec();
    for _ in 0..steps {
        v = p.apply(&v);
    }
    Ok(RwDistribution::from_probs_unchecked(v))
}

pub fn random_coin_field<R: Rng + ?Sized>(cycle: Cycle, rng: &mut R) -> CoinField {
    let theta = (0..cycle.size())
        .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
        .collect();
    CoinField::new(theta).expect("angles drawn from [0, 2π)")
}

pub fn random_rw_field<R: Rng + ?Sized>(cycle: Cycle, rng: &mut R) -> RwField {
    let q = (0..cycle.size())
        .map(|_| rng.random_range(0.0..=0.5))
        .collect();
    RwField::new(q).expect("probabilities drawn from [0, 1/2]")
}

/// Random normalised state with complex amplitudes on every vertex.
pub fn random_qw_state<R: Rng + ?Sized>(cycle: Cycle, rng: &mut R) -> QwState {
    let mut psi: Vec<Amplitude> = (0..cycle.size())
        .map(|_| {
            std::array::from_fn(|_| {
                Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
            })
        })
        .collect();
    let norm: f64 = psi
        .iter()
        .flatten()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt();
    psi.iter_mut().flatten().for_each(|z| *z /= norm);
    QwState::from_amplitudes(psi).expect("normalised")
}

pub fn random_distribution<R: Rng + ?Sized>(cycle: Cycle, rng: &mut R) -> RwDistribution {
    let mut nu: Vec<f64> = (0..cycle.size()).map(|_| rng.random::<f64>()).collect();
    let total: f64 = nu.iter().sum();
    nu.iter_mut().for_each(|p| *p /= total);
    RwDistribution::from_probs(nu).expect("normalised")
}

/// Grid for [`run_equivalence_suite`].
#[derive(Clone, Debug)]
pub struct EquivalenceGrid {
    pub sizes: std::ops::RangeInclusive<usize>,
    pub max_steps: usize,
    pub fields_per_size: usize,
    pub seed: u64,
}

impl Default for EquivalenceGrid {
    fn default() -> Self {
        EquivalenceGrid {
            sizes: 3..=8,
            max_steps: 20,
            fields_per_size: 50,
            seed: 0x0dd5_eed5,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceReport {
    pub cases: usize,
    /// Max amplitude difference, fast quantum engine vs dense `U^T`.
    pub qw_max_error: f64,
    /// Max probability difference, fast random-walk engine vs dense `P^T`.
    pub rw_max_error: f64,
    /// Max `|U†U - I|` entry over all sampled coin fields.
    pub unitarity_defect: f64,
}

/// Fast engines against the dense operators over every `(N, T, field)` of the
/// grid. Each case starts from a random state / distribution.
pub fn run_equivalence_suite(grid: &EquivalenceGrid) -> EquivalenceReport {
    let mut rng = ChaCha8Rng::seed_from_u64(grid.seed);
    let mut report = EquivalenceReport {
        cases: 0,
        qw_max_error: 0.0,
        rw_max_error: 0.0,
        unitarity_defect: 0.0,
    };
    for n in grid.sizes.clone() {
        let cycle = Cycle::new(n).expect("grid sizes are at least 3");
        for _ in 0..grid.fields_per_size {
            let coins = random_coin_field(cycle, &mut rng);
            let u = build_dense_unitary(&coins).expect("valid field");
            report.unitarity_defect = report.unitarity_defect.max(u.unitarity_defect());
            let psi0 = random_qw_state(cycle, &mut rng);

            let field = random_rw_field(cycle, &mut rng);
            let nu0 = random_distribution(cycle, &mut rng);

            let mut psi = psi0.clone();
            let mut nu = nu0.clone();
            for t in 1..=grid.max_steps {
                psi = qw_step(&psi, &coins).expect("sizes agree");
                nu = rw_step(&nu, &field).expect("sizes agree");
                let dense_psi = dense_evolve(&psi0, &u, t).expect("sizes agree");
                let dense_nu = rw_matrix_power(&field, &nu0, t).expect("sizes agree");
                report.qw_max_error = report.qw_max_error.max(psi.max_abs_diff(&dense_psi));
                let rw_err = nu
                    .as_slice()
                    .iter()
                    .zip(dense_nu.as_slice())
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                report.rw_max_error = report.rw_max_error.max(rw_err);
                report.cases += 1;
            }
        }
    }
    report
}
