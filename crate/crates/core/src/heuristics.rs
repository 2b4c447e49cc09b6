//! Longest-processing-time-first ordering.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Result;
use crate::schedule::{evaluate_greedy, Instance, Permutation, ScheduleTrace};
use crate::time::TimeValue;

/// Job indices by nonincreasing execution time, ascending index on ties.
pub fn lpt_order(instance: &Instance) -> Permutation {
    let jobs = instance.jobs();
    let mut idx: Vec<usize> = (0..jobs.len()).collect();
    idx.sort_by(|&a, &b| jobs[b].cmp(&jobs[a]).then(a.cmp(&b)));
    Permutation::new(idx, jobs.len()).expect("sorted indices form a permutation")
}

pub fn lpt_schedule(instance: &Instance) -> ScheduleTrace {
    evaluate_greedy(instance, &lpt_order(instance)).expect("LPT order is a valid permutation")
}

/// `(2 − 2/B)·opt + W`.
pub fn lpt_guarantee(instance: &Instance, opt: &TimeValue) -> TimeValue {
    let b = instance.b() as i64;
    let factor = BigRational::new(BigInt::from(2 * b - 2), BigInt::from(b));
    opt.scale(&factor).expect("factor is nonnegative") + instance.window()
}

/// Whether the LPT makespan respects `(2 − 2/B)·opt + W`.
pub fn check_lpt_bound(instance: &Instance, opt: &TimeValue) -> Result<bool> {
    Ok(lpt_schedule(instance).makespan() <= &lpt_guarantee(instance, opt))
}
