//! Instances, permutations, the greedy placement recurrence and the two
//! feasibility checkers.
//!
//! A schedule is determined by a job order together with the idle gap after
//! each job. The B-constraint says that no half-open window `[x, x + W)` may
//! intersect more than `B` jobs. Two independent deciders are provided: the
//! gap-sum characterization ([`check_feasible`]) and a direct sweep over all
//! window positions ([`check_feasible_geometric`]).

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::time::TimeValue;

/// A scheduling instance: bound `b`, window length `window` and the job
/// execution times in index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    b: usize,
    window: TimeValue,
    jobs: Vec<TimeValue>,
}

impl Instance {
    pub fn new(b: usize, window: TimeValue, jobs: Vec<TimeValue>) -> Result<Self> {
        if b < 2 {
            return Err(Error::BoundTooSmall(b as u64));
        }
        if window.is_zero() {
            return Err(Error::NonPositiveWindow(window.to_string()));
        }
        if jobs.is_empty() {
            return Err(Error::EmptyInstance);
        }
        Ok(Instance { b, window, jobs })
    }

    /// Unit-window instance.
    pub fn unit(b: usize, jobs: Vec<TimeValue>) -> Result<Self> {
        Instance::new(b, TimeValue::one(), jobs)
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn window(&self) -> &TimeValue {
        &self.window
    }

    pub fn jobs(&self) -> &[TimeValue] {
        &self.jobs
    }

    pub fn n(&self) -> usize {
        self.jobs.len()
    }

    pub fn total_work(&self) -> TimeValue {
        self.jobs.iter().sum()
    }

    /// A copy with one extra job appended.
    pub fn with_job(&self, s: TimeValue) -> Instance {
        let mut jobs = self.jobs.clone();
        jobs.push(s);
        Instance {
            b: self.b,
            window: self.window.clone(),
            jobs,
        }
    }

    /// Multiply every execution time and the window by `factor > 0`.
    pub fn scaled(&self, factor: &BigRational) -> Result<Instance> {
        let jobs = self
            .jobs
            .iter()
            .map(|s| s.scale(factor))
            .collect::<Result<Vec<_>>>()?;
        Instance::new(self.b, self.window.scale(factor)?, jobs)
    }
}

/// A bijection on the job indices `0..n`, listing jobs in processing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(order: Vec<usize>, n: usize) -> Result<Self> {
        if order.len() != n {
            return Err(Error::InvalidPermutation(format!(
                "expected {n} entries, got {}",
                order.len()
            )));
        }
        let mut seen = vec![false; n];
        for &j in &order {
            if j >= n {
                return Err(Error::InvalidPermutation(format!(
                    "index {} out of range 1..={n}",
                    j + 1
                )));
            }
            if std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidPermutation(format!(
                    "index {} appears twice",
                    j + 1
                )));
            }
        }
        Ok(Permutation(order))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Permutation {
        Permutation(self.0.iter().rev().copied().collect())
    }
}

/// A concrete schedule: order, start and completion times, and the idle gap
/// after every job but the last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleTrace {
    order: Permutation,
    starts: Vec<TimeValue>,
    completions: Vec<TimeValue>,
    gaps: Vec<TimeValue>,
    makespan: TimeValue,
}

impl ScheduleTrace {
    /// Lay out `order` with the given idle gaps, first job at time 0.
    pub fn from_gaps(instance: &Instance, order: Permutation, gaps: Vec<TimeValue>) -> Result<Self> {
        let n = instance.n();
        if order.len() != n {
            return Err(Error::InvalidPermutation(format!(
                "expected {n} entries, got {}",
                order.len()
            )));
        }
        if gaps.len() + 1 != n {
            return Err(Error::InconsistentTrace(format!(
                "expected {} gaps, got {}",
                n - 1,
                gaps.len()
            )));
        }
        let mut starts = Vec::with_capacity(n);
        let mut completions = Vec::with_capacity(n);
        let mut t = TimeValue::zero();
        for (pos, &job) in order.as_slice().iter().enumerate() {
            if pos > 0 {
                t += &gaps[pos - 1];
            }
            starts.push(t.clone());
            t += &instance.jobs[job];
            completions.push(t.clone());
        }
        Ok(ScheduleTrace {
            order,
            starts,
            completions,
            gaps,
            makespan: t,
        })
    }

    /// Assemble a trace from all of its parts, checking every invariant.
    pub fn from_parts(
        instance: &Instance,
        order: Permutation,
        starts: Vec<TimeValue>,
        completions: Vec<TimeValue>,
        gaps: Vec<TimeValue>,
        makespan: TimeValue,
    ) -> Result<Self> {
        let trace = ScheduleTrace {
            order,
            starts,
            completions,
            gaps,
            makespan,
        };
        trace.validate(instance)?;
        Ok(trace)
    }

    pub fn order(&self) -> &Permutation {
        &self.order
    }

    pub fn starts(&self) -> &[TimeValue] {
        &self.starts
    }

    pub fn completions(&self) -> &[TimeValue] {
        &self.completions
    }

    pub fn gaps(&self) -> &[TimeValue] {
        &self.gaps
    }

    pub fn makespan(&self) -> &TimeValue {
        &self.makespan
    }

    /// Check the structural invariants against `instance`.
    pub fn validate(&self, instance: &Instance) -> Result<()> {
        let n = instance.n();
        let bad = |msg: String| Err(Error::InconsistentTrace(msg));
        Permutation::new(self.order.0.clone(), n)?;
        if self.starts.len() != n || self.completions.len() != n || self.gaps.len() + 1 != n {
            return bad(format!(
                "lengths (starts {}, completions {}, gaps {}) do not match n = {n}",
                self.starts.len(),
                self.completions.len(),
                self.gaps.len()
            ));
        }
        if !self.starts[0].is_zero() {
            return bad(format!("first start is {}, expected 0", self.starts[0]));
        }
        for (pos, &job) in self.order.0.iter().enumerate() {
            if self.completions[pos] != &self.starts[pos] + &instance.jobs[job] {
                return bad(format!("completion at position {} is not start + s", pos + 1));
            }
            if pos + 1 < n && self.starts[pos + 1] != &self.completions[pos] + &self.gaps[pos] {
                return bad(format!("start at position {} is not completion + gap", pos + 2));
            }
        }
        if self.makespan != self.completions[n - 1] {
            return bad("makespan differs from the last completion".into());
        }
        Ok(())
    }
}

/// Earliest-placement schedule for a fixed order: the first `B` jobs run
/// back to back, later jobs wait until `W` after the completion of the job
/// `B` positions earlier.
pub fn evaluate_greedy(instance: &Instance, perm: &Permutation) -> Result<ScheduleTrace> {
    let n = instance.n();
    let perm = Permutation::new(perm.0.clone(), n)?;
    let b = instance.b;
    let mut starts: Vec<TimeValue> = Vec::with_capacity(n);
    let mut completions: Vec<TimeValue> = Vec::with_capacity(n);
    for (pos, &job) in perm.0.iter().enumerate() {
        let start = if pos == 0 {
            TimeValue::zero()
        } else if pos < b {
            completions[pos - 1].clone()
        } else {
            let released = &completions[pos - b] + &instance.window;
            std::cmp::max(released, completions[pos - 1].clone())
        };
        completions.push(&start + &instance.jobs[job]);
        starts.push(start);
    }
    let gaps = (0..n.saturating_sub(1))
        .map(|i| {
            starts[i + 1]
                .checked_sub(&completions[i])
                .expect("greedy starts never precede the previous completion")
        })
        .collect();
    let makespan = completions[n - 1].clone();
    Ok(ScheduleTrace {
        order: perm,
        starts,
        completions,
        gaps,
        makespan,
    })
}

/// Gap-sum feasibility: for every `i ≤ n − B` the distance from the end of
/// the `i`-th job to the start of the `(i+B)`-th, accumulated as
/// `d(i) + Σ_{j=i+1}^{i+B−1} (s_[j] + d(j))`, must be at least `W`.
pub fn check_feasible(instance: &Instance, trace: &ScheduleTrace) -> Result<bool> {
    trace.validate(instance)?;
    let n = instance.n();
    let b = instance.b;
    if n <= b {
        return Ok(true);
    }
    let order = trace.order.as_slice();
    for i in 0..n - b {
        let mut span = trace.gaps[i].clone();
        for j in i + 1..i + b {
            span += &instance.jobs[order[j]];
            span += &trace.gaps[j];
        }
        if span < instance.window {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of jobs of `trace` intersecting `[x, x + W)`. A positive job
/// occupies `[start, completion)`; a zero-job occupies the single point
/// `start`.
fn jobs_in_window(trace: &ScheduleTrace, x: &BigRational, window: &BigRational) -> usize {
    let end = x + window;
    trace
        .starts
        .iter()
        .zip(&trace.completions)
        .filter(|(st, c)| {
            let (st, c) = (st.as_rational(), c.as_rational());
            if st == c {
                x <= st && st < &end
            } else {
                x < c && st < &end
            }
        })
        .count()
}

/// Direct window sweep: decide whether some `[x, x + W)` intersects more
/// than `B` jobs. The intersection count is piecewise constant in `x` with
/// breakpoints among the completion times and the start times shifted by
/// `−W`, so probing every breakpoint, every midpoint between consecutive
/// breakpoints and one point beyond the last covers every window. Windows
/// with `x < 0` see a subset of what `[0, W)` sees.
pub fn check_feasible_geometric(instance: &Instance, trace: &ScheduleTrace) -> Result<bool> {
    trace.validate(instance)?;
    let w = instance.window.as_rational();
    let zero = BigRational::from_integer(BigInt::from(0));
    let mut points: Vec<BigRational> = vec![zero.clone()];
    for (st, c) in trace.starts.iter().zip(&trace.completions) {
        points.push(c.as_rational().clone());
        points.push(st.as_rational().clone());
        points.push(st.as_rational() - w);
    }
    points.retain(|p| *p >= zero);
    points.sort();
    points.dedup();

    let two = BigRational::from_integer(BigInt::from(2));
    let mut probes = points.clone();
    for pair in points.windows(2) {
        probes.push((&pair[0] + &pair[1]) / &two);
    }
    if let Some(last) = points.last() {
        probes.push(last + BigRational::from_integer(BigInt::from(1)));
    }
    Ok(probes
        .iter()
        .all(|x| jobs_in_window(trace, x, w) <= instance.b))
}

/// `max(Σ s_i, W·(n − B)/B)` for `n > B`, otherwise `Σ s_i`.
pub fn lower_bound(instance: &Instance) -> TimeValue {
    let total = instance.total_work();
    let (n, b) = (instance.n(), instance.b);
    if n <= b {
        return total;
    }
    let frac = BigRational::new(BigInt::from(n - b), BigInt::from(b));
    let windows = instance
        .window
        .scale(&frac)
        .expect("positive factor keeps times nonnegative");
    std::cmp::max(total, windows)
}

/// True iff every prefix sum of `xs` is at most the matching prefix sum of
/// `ys`.
pub fn check_prefix_dominance(xs: &[BigRational], ys: &[BigRational]) -> Result<bool> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch {
            left: xs.len(),
            right: ys.len(),
        });
    }
    if xs.is_empty() {
        return Err(Error::InvalidParameter("sequences must be nonempty".into()));
    }
    let mut sx = BigRational::from_integer(BigInt::from(0));
    let mut sy = sx.clone();
    for (x, y) in xs.iter().zip(ys) {
        sx += x;
        sy += y;
        if sx > sy {
            return Ok(false);
        }
    }
    Ok(true)
}
