use rand::Rng;

use crate::error::{Error, Result};
use crate::walk::{CycleIndex, RwDistribution};

/// Inverse-CDF lookup over ascending vertex index for a uniform `u ∈ [0, 1)`.
///
/// Rounding residue (`u` beyond the accumulated mass) lands on the last vertex
/// carrying positive probability.
pub fn inverse_cdf(probs: &[f64], u: f64) -> usize {
    let mut acc = 0.0;
    let mut last_positive = 0;
    for (x, &p) in probs.iter().enumerate() {
        if p > 0.0 {
            acc += p;
            last_positive = x;
            if u < acc {
                return x;
            }
        }
    }
    last_positive
}

/// Draws a vertex from `dist`, consuming exactly one uniform variate.
pub fn sample_position<R: Rng + ?Sized>(dist: &RwDistribution, rng: &mut R) -> CycleIndex {
    let u: f64 = rng.random();
    let x = inverse_cdf(dist.as_slice(), u);
    dist.cycle().index(x).expect("inverse_cdf stays in range")
}

/// Standard deviation of the signed displacement from `s`.
///
/// Fails if any vertex with positive mass is at or next to the antipode of
/// `s`, where the signed representative would be ambiguous.
pub fn displacement_stddev(dist: &RwDistribution, s: CycleIndex) -> Result<f64> {
    let cycle = dist.cycle();
    let n = cycle.size() as isize;
    let (mut m1, mut m2) = (0.0, 0.0);
    for x in cycle.vertices() {
        let p = dist.prob(x);
        if p == 0.0 {
            continue;
        }
        let d = cycle.displacement(s, x);
        if 2 * d.abs() >= n - 1 {
            return Err(Error::Wraparound {
                vertex: x.value(),
                start: s.value(),
                size: cycle.size(),
            });
        }
        let d = d as f64;
        m1 += p * d;
        m2 += p * d * d;
    }
    Ok((m2 - m1 * m1).max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::{rw_step, Cycle, RwField};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn uniform_boundaries() {
        let probs = [0.25; 4];
        assert_eq!(inverse_cdf(&probs, 0.0), 0);
        assert_eq!(inverse_cdf(&probs, 0.30), 1);
        assert_eq!(inverse_cdf(&probs, 0.5), 2);
        assert_eq!(inverse_cdf(&probs, 0.999), 3);
    }

    #[test]
    fn residue_goes_to_last_supported_vertex() {
        let probs = [0.0, 0.4, 0.6 - 1e-12, 0.0];
        assert_eq!(inverse_cdf(&probs, 1.0 - 1e-13), 2);
    }

    #[test]
    fn point_mass_always_sampled() {
        let c = Cycle::new(8).unwrap();
        let x = c.index(5).unwrap();
        let d = RwDistribution::point(c, x);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!((0..1000).all(|_| sample_position(&d, &mut rng) == x));
    }

    #[test]
    fn empirical_frequencies() {
        let d = RwDistribution::from_probs(vec![0.05, 0.3, 0.15, 0.4, 0.1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let draws = 1_000_000;
        let mut counts = [0usize; 5];
        for _ in 0..draws {
            counts[sample_position(&d, &mut rng).value()] += 1;
        }
        for (x, &k) in counts.iter().enumerate() {
            let f = k as f64 / draws as f64;
            assert!((f - d.as_slice()[x]).abs() < 0.002, "x = {x}: {f}");
        }
    }

    #[test]
    fn stddev_examples() {
        let c = Cycle::new(9).unwrap();
        let s = c.index(4).unwrap();
        assert_eq!(
            displacement_stddev(&RwDistribution::point(c, s), s).unwrap(),
            0.0
        );

        let mut two = vec![0.0; 9];
        two[3] = 0.5;
        two[5] = 0.5;
        let two = RwDistribution::from_probs(two).unwrap();
        assert!((displacement_stddev(&two, s).unwrap() - 1.0).abs() < 1e-15);

        let f = RwField::homogeneous(c, 0.5).unwrap();
        let one = rw_step(&RwDistribution::point(c, s), &f).unwrap();
        assert!((displacement_stddev(&one, s).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn stddev_rejects_antipodal_support() {
        let c = Cycle::new(8).unwrap();
        let s = c.index(0).unwrap();
        let mut p = vec![0.0; 8];
        p[0] = 0.5;
        p[4] = 0.5;
        let d = RwDistribution::from_probs(p).unwrap();
        assert!(matches!(
            displacement_stddev(&d, s),
            Err(Error::Wraparound { vertex: 4, .. })
        ));
    }
}
