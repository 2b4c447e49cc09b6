//! Seeded instance generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::reduction::PartitionInstance;
use crate::schedule::Instance;
use crate::time::TimeValue;

/// Denominator of generated execution times.
pub const GRID: u64 = 1000;

/// `n` unit-window jobs with sizes `k / 1000`, `k` uniform in `0..=1000`,
/// and `round(zero_fraction · n)` of them (chosen at random) forced to 0.
pub fn gen_random(n: usize, b: usize, seed: u64, zero_fraction: f64) -> Result<Instance> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be ≥ 1".into()));
    }
    if b < 2 {
        return Err(Error::BoundTooSmall(b as u64));
    }
    if !(0.0..=1.0).contains(&zero_fraction) {
        return Err(Error::InvalidParameter(format!(
            "zero fraction must lie in [0, 1], got {zero_fraction}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ks: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=GRID)).collect();
    let zeros = (zero_fraction * n as f64).round() as usize;
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(&mut rng);
    for &i in &idx[..zeros] {
        ks[i] = 0;
    }
    let jobs = ks.into_iter().map(|k| TimeValue::from_ratio(k, GRID)).collect();
    Instance::unit(b, jobs)
}

/// `2m` integers uniform in `1..=max_value`, redrawn until the total is even.
pub fn gen_partition(m: usize, max_value: u64, seed: u64) -> Result<PartitionInstance> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be ≥ 1".into()));
    }
    if max_value == 0 {
        return Err(Error::InvalidParameter("max value must be ≥ 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let values: Vec<u64> = (0..2 * m).map(|_| rng.gen_range(1..=max_value)).collect();
        if values.iter().sum::<u64>() % 2 == 0 {
            return PartitionInstance::new(values);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_instances_repeat() {
        let a = gen_random(7, 3, 42, 0.25).unwrap();
        let b = gen_random(7, 3, 42, 0.25).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, gen_random(7, 3, 43, 0.25).unwrap());
    }

    #[test]
    fn all_zero() {
        let inst = gen_random(6, 2, 1, 1.0).unwrap();
        assert!(inst.jobs().iter().all(TimeValue::is_zero));
    }

    #[test]
    fn range_contract() {
        let inst = gen_random(5, 2, 9, 0.0).unwrap();
        assert_eq!(inst.n(), 5);
        assert!(inst.jobs().iter().all(|s| s <= &TimeValue::one()));
        assert!(gen_random(0, 2, 1, 0.0).is_err());
        assert!(gen_random(3, 1, 1, 0.0).is_err());
        assert!(gen_random(3, 2, 1, 1.5).is_err());
    }

    #[test]
    fn partitions() {
        let p = gen_partition(2, 9, 5).unwrap();
        assert_eq!(p.values().len(), 4);
        assert!(p.values().iter().all(|&v| (1..=9).contains(&v)));
        assert_eq!(p.total() % 2, 0);
        assert_eq!(p, gen_partition(2, 9, 5).unwrap());
        assert_eq!(gen_partition(3, 1, 77).unwrap().values(), &[1; 6]);
        assert!(gen_partition(0, 3, 1).is_err());
        assert!(gen_partition(1, 0, 1).is_err());
    }
}
