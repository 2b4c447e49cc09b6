//! Reduction from cardinality-constrained partition to the scheduling
//! decision problem with `B = 2`.
//!
//! Given `2m` positive integers with half-sum `U`, the image instance has the
//! values themselves as jobs, two zero-jobs and one job of length `U`, window
//! `U`, and threshold `y = (m + 2)·U`. An equal-sum split into two `m`-sets
//! exists iff the optimal makespan is at most `y`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::solve_exact;
use crate::schedule::{
    check_feasible, check_prefix_dominance, evaluate_greedy, Instance, Permutation, ScheduleTrace,
};
use crate::time::TimeValue;

/// `2m` positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionInstance {
    values: Vec<u64>,
}

impl PartitionInstance {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidPartition("no values given".into()));
        }
        if values.len() % 2 != 0 {
            return Err(Error::InvalidPartition(format!(
                "expected an even number of values, got {}",
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|&v| v == 0) {
            return Err(Error::InvalidPartition(format!(
                "value {} is zero; all values must be positive",
                pos + 1
            )));
        }
        Ok(PartitionInstance { values })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Half the number of values.
    pub fn m(&self) -> usize {
        self.values.len() / 2
    }

    pub fn total(&self) -> u64 {
        self.values.iter().sum()
    }
}

/// The scheduling instance built from a partition instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionImage {
    pub instance: Instance,
    pub threshold: TimeValue,
    pub u: TimeValue,
}

impl ReductionImage {
    /// Job index of the first zero-job (`2m`, zero-based).
    pub fn first_zero(&self) -> usize {
        self.instance.n() - 3
    }

    pub fn second_zero(&self) -> usize {
        self.instance.n() - 2
    }

    pub fn u_job(&self) -> usize {
        self.instance.n() - 1
    }
}

pub fn build_reduction(part: &PartitionInstance) -> Result<ReductionImage> {
    let total = part.total();
    if total % 2 != 0 {
        return Err(Error::OddSum(total));
    }
    let m = part.m() as u64;
    let u = total / 2;
    let mut jobs: Vec<TimeValue> = part.values.iter().map(|&a| TimeValue::from(a)).collect();
    jobs.extend([TimeValue::zero(), TimeValue::zero(), TimeValue::from(u)]);
    let instance = Instance::new(2, TimeValue::from(u), jobs)?;
    Ok(ReductionImage {
        instance,
        threshold: TimeValue::from((m + 2) * u),
        u: TimeValue::from(u),
    })
}

fn validate_split(part: &PartitionInstance, side1: &[usize], side2: &[usize]) -> Result<()> {
    let n = part.values.len();
    let m = part.m();
    if side1.len() != m || side2.len() != m {
        return Err(Error::InvalidSplit(format!(
            "sides have sizes {} and {}, expected {m} each",
            side1.len(),
            side2.len()
        )));
    }
    let mut seen = vec![false; n];
    for &i in side1.iter().chain(side2) {
        if i >= n {
            return Err(Error::InvalidSplit(format!("index {} out of range", i + 1)));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidSplit(format!("index {} used twice", i + 1)));
        }
    }
    let s1: u64 = side1.iter().map(|&i| part.values[i]).sum();
    let s2: u64 = side2.iter().map(|&i| part.values[i]).sum();
    if s1 != s2 {
        return Err(Error::InvalidSplit(format!("side sums differ: {s1} vs {s2}")));
    }
    Ok(())
}

/// The two interleaved sequences of the witness order: `side1` by
/// nonincreasing value and `side2` by nondecreasing value (index order on
/// ties).
pub fn witness_interleaving(
    part: &PartitionInstance,
    side1: &[usize],
    side2: &[usize],
) -> Result<(Vec<usize>, Vec<usize>)> {
    validate_split(part, side1, side2)?;
    let v = &part.values;
    let mut odd = side1.to_vec();
    odd.sort_by(|&a, &b| v[b].cmp(&v[a]).then(a.cmp(&b)));
    let mut even = side2.to_vec();
    even.sort_by(|&a, &b| v[a].cmp(&v[b]).then(a.cmp(&b)));
    Ok((odd, even))
}

/// Whether the interleaving satisfies the prefix condition
/// `Σ_{j≤i} even_j ≤ Σ_{j≤i} odd_j` for every `i`.
pub fn witness_prefix_condition(
    part: &PartitionInstance,
    side1: &[usize],
    side2: &[usize],
) -> Result<bool> {
    let (odd, even) = witness_interleaving(part, side1, side2)?;
    let as_q = |idx: &[usize]| -> Vec<BigRational> {
        idx.iter()
            .map(|&i| BigRational::from_integer(BigInt::from(part.values[i])))
            .collect()
    };
    check_prefix_dominance(&as_q(&even), &as_q(&odd))
}

/// The order `(zero, odd_1, even_1, …, odd_m, even_m, U-job, zero)`
/// evaluated greedily on the reduction image. Its makespan is exactly
/// `(m + 2)·U`.
pub fn build_witness_schedule(
    part: &PartitionInstance,
    side1: &[usize],
    side2: &[usize],
) -> Result<ScheduleTrace> {
    let (odd, even) = witness_interleaving(part, side1, side2)?;
    let image = build_reduction(part)?;
    let mut order = Vec::with_capacity(image.instance.n());
    order.push(image.first_zero());
    for (a, b) in odd.iter().zip(&even) {
        order.push(*a);
        order.push(*b);
    }
    order.push(image.u_job());
    order.push(image.second_zero());
    let perm = Permutation::new(order, image.instance.n())?;
    evaluate_greedy(&image.instance, &perm)
}

/// Decide the partition instance by solving its reduction image exactly.
pub fn decide_partition(part: &PartitionInstance, limit: usize) -> Result<bool> {
    if part.total() % 2 != 0 {
        return Ok(false);
    }
    let image = build_reduction(part)?;
    let opt = solve_exact(&image.instance, limit)?;
    Ok(opt.optimum <= image.threshold)
}

/// Move both zero-jobs to the two ends of `order`.
fn zeros_to_ends(order: &mut [usize], z1: usize, z2: usize) {
    let n = order.len();
    let is_zero = |j: usize| j == z1 || j == z2;
    if !is_zero(order[0]) {
        let pos = (1..n)
            .find(|&p| is_zero(order[p]) && p != n - 1)
            .or_else(|| (1..n).find(|&p| is_zero(order[p])))
            .expect("two zero-jobs exist");
        order.swap(0, pos);
    }
    if !is_zero(order[n - 1]) {
        let pos = (1..n - 1)
            .find(|&p| is_zero(order[p]))
            .expect("second zero-job lies in the interior");
        order.swap(n - 1, pos);
    }
}

/// Recover an equal-sum split from a feasible schedule of the reduction
/// image whose makespan is exactly the threshold.
///
/// The zero-jobs are first moved to the two ends (this never increases the
/// greedy makespan). Of the remaining `2m + 1` jobs, those at odd positions
/// carry `U` more than those at even positions, so some `U`-valued job sits
/// at an odd position; among them the one with the highest job index is
/// dropped. Sides are returned as zero-based value indices, ascending.
pub fn extract_partition(
    part: &PartitionInstance,
    trace: &ScheduleTrace,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let image = build_reduction(part)?;
    let inst = &image.instance;
    if !check_feasible(inst, trace)? {
        return Err(Error::InconsistentTrace(
            "trace violates the B-constraint".into(),
        ));
    }
    if trace.makespan() != &image.threshold {
        return Err(Error::ThresholdMismatch {
            makespan: trace.makespan().to_string(),
            threshold: image.threshold.to_string(),
        });
    }

    let n = inst.n();
    let mut order = trace.order().as_slice().to_vec();
    zeros_to_ends(&mut order, image.first_zero(), image.second_zero());
    let normal = evaluate_greedy(inst, &Permutation::new(order.clone(), n)?)?;
    if normal.makespan() != &image.threshold {
        return Err(Error::ExtractionFailed(format!(
            "normalized order has makespan {}, expected {}",
            normal.makespan(),
            image.threshold
        )));
    }

    let interior = &order[1..n - 1];
    let mut odd: Vec<usize> = interior.iter().step_by(2).copied().collect();
    let mut even: Vec<usize> = interior.iter().skip(1).step_by(2).copied().collect();

    let jobs = inst.jobs();
    let stand_in = odd
        .iter()
        .copied()
        .filter(|&j| jobs[j] == image.u)
        .max()
        .ok_or_else(|| Error::ExtractionFailed("no U-valued job at an odd position".into()))?;
    odd.retain(|&j| j != stand_in);
    // A value equal to U took the U-job's role; the U-job stands for it.
    if stand_in != image.u_job() {
        for j in even.iter_mut().filter(|j| **j == image.u_job()) {
            *j = stand_in;
        }
    }

    let m = part.m();
    let sum = |side: &[usize]| -> u64 { side.iter().map(|&j| part.values[j]).sum() };
    let u = part.total() / 2;
    if odd.len() != m || even.len() != m || odd.iter().chain(&even).any(|&j| j >= 2 * m) {
        return Err(Error::ExtractionFailed(format!(
            "side sizes {} and {} (expected {m})",
            odd.len(),
            even.len()
        )));
    }
    if sum(&odd) != u || sum(&even) != u {
        return Err(Error::ExtractionFailed(format!(
            "side sums {} and {} (expected {u})",
            sum(&odd),
            sum(&even)
        )));
    }
    odd.sort_unstable();
    even.sort_unstable();
    Ok((odd, even))
}
