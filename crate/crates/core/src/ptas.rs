//! Approximation scheme for constant `B` on the unit window.
//!
//! Execution times are rounded up onto the geometric ladder
//! `ε(1+ε)^k`, and a dynamic program finds the shortest *regular* schedule
//! of the rounded instance: every idle gap between consecutive jobs is also
//! a ladder value. The program state is the multiset of jobs scheduled so
//! far together with the last `B` (idle, job) pairs, which is exactly what
//! the next window check needs. The optimal regular order is then replayed
//! greedily on the original execution times.

use std::collections::HashMap;
use std::ops::Add;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::schedule::{evaluate_greedy, Instance, Permutation, ScheduleTrace};
use crate::time::TimeValue;

/// Accuracy parameter and the derived ladder length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PtasConfig {
    epsilon: BigRational,
    tau: usize,
}

impl PtasConfig {
    /// `tau` is the least `k` with `ε(1+ε)^k ≥ 1`, i.e.
    /// `⌈log(1/ε) / log(1+ε)⌉`, computed exactly.
    pub fn new(epsilon: BigRational) -> Result<Self> {
        if epsilon <= BigRational::zero() || epsilon >= BigRational::one() {
            return Err(Error::InvalidEpsilon(crate::time::format_rational(&epsilon)));
        }
        let growth = BigRational::one() + &epsilon;
        let mut value = epsilon.clone();
        let mut tau = 0;
        while value < BigRational::one() {
            value *= &growth;
            tau += 1;
        }
        Ok(PtasConfig { epsilon, tau })
    }

    pub fn epsilon(&self) -> &BigRational {
        &self.epsilon
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    /// `ε(1+ε)^k`.
    pub fn ladder_value(&self, k: usize) -> TimeValue {
        let growth = BigRational::one() + &self.epsilon;
        let v = &self.epsilon * num_traits::pow(growth, k);
        TimeValue::new(v).expect("ladder values are positive")
    }
}

/// Idle ladder `ε(1+ε)^k` for `k = 0..=tau`. Its last element is at least 1.
pub fn idle_ladder(cfg: &PtasConfig) -> Vec<TimeValue> {
    (0..=cfg.tau).map(|k| cfg.ladder_value(k)).collect()
}

/// An instance with execution times rounded onto the ladder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundedInstance {
    pub b: usize,
    /// Distinct rounded sizes, ascending.
    pub classes: Vec<TimeValue>,
    /// Ladder exponent of each class.
    pub exponents: Vec<usize>,
    /// Number of jobs per class.
    pub counts: Vec<usize>,
    /// Class of each original job.
    pub origin: Vec<usize>,
}

impl RoundedInstance {
    pub fn n(&self) -> usize {
        self.origin.len()
    }

    /// Rounded execution time of each original job.
    pub fn rounded_sizes(&self) -> Vec<TimeValue> {
        self.origin.iter().map(|&c| self.classes[c].clone()).collect()
    }
}

/// Round each execution time up to the nearest ladder value (sizes at most
/// `ε` become `ε`). Sizes above the top of the idle ladder keep climbing
/// the same geometric ladder.
pub fn round_instance(instance: &Instance, cfg: &PtasConfig) -> Result<RoundedInstance> {
    if !instance.window().as_rational().is_one() {
        return Err(Error::WindowNotUnit(instance.window().to_string()));
    }
    let growth = BigRational::one() + &cfg.epsilon;
    let exps: Vec<usize> = instance
        .jobs()
        .iter()
        .map(|s| {
            let mut k = 0;
            let mut v = cfg.epsilon.clone();
            while &v < s.as_rational() {
                v *= &growth;
                k += 1;
            }
            k
        })
        .collect();
    let mut exponents = exps.clone();
    exponents.sort_unstable();
    exponents.dedup();
    let classes = exponents.iter().map(|&k| cfg.ladder_value(k)).collect();
    let origin: Vec<usize> = exps
        .iter()
        .map(|k| exponents.binary_search(k).expect("exponent present"))
        .collect();
    let mut counts = vec![0; exponents.len()];
    for &c in &origin {
        counts[c] += 1;
    }
    Ok(RoundedInstance {
        b: instance.b(),
        classes,
        exponents,
        counts,
        origin,
    })
}

/// One (idle, job) pair of a DP window: the idle time before the job and
/// the job's class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WindowSlot {
    pub idle: TimeValue,
    pub class: usize,
}

/// A DP state: class counts of the scheduled prefix (window jobs included)
/// and the last `B` slots, oldest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpState {
    pub counts: Vec<usize>,
    pub window: Vec<WindowSlot>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DpStats {
    /// Distinct states whose value was computed.
    pub states: usize,
    /// Of those, states failing the window check (value +∞).
    pub infeasible: usize,
    /// `Π(n_i + 1) · (|ladder| + 1)^B · |classes|^B`.
    pub state_ceiling: u128,
}

/// Optimum over regular schedules plus one optimal schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpSolution {
    pub f_star: TimeValue,
    /// States from the optimal top state down to its base state.
    pub path: Vec<DpState>,
    /// Class of each job in the optimal regular order.
    pub classes_in_order: Vec<usize>,
    /// Idle gap after each job but the last.
    pub idles: Vec<TimeValue>,
    pub stats: DpStats,
}

/// Internal arithmetic: all ladder values share the denominator
/// `q^(K+1)` for `ε = p/q`, so the DP runs on integer numerators.
trait Scalar: Clone + Ord + Add<Output = Self> + Zero {}
impl Scalar for i128 {}
impl Scalar for BigInt {}

/// Slot encoding inside the DP: idle index 0 is the zero idle (first job
/// only), `1..=L` is ladder entry `idx - 1`.
type Slot = (u16, u16);

struct Dp<T> {
    b: usize,
    ladder: Vec<T>,
    classes: Vec<T>,
    unit: T,
    memo: HashMap<(Vec<u16>, Vec<Slot>), Option<T>>,
    // Best continuation for (counts after removing the last job, the older
    // B−1 slots): value and the chosen new oldest slot.
    tails: HashMap<(Vec<u16>, Vec<Slot>), Option<(T, Slot)>>,
    infeasible: usize,
}

impl<T: Scalar> Dp<T> {
    fn idle(&self, i: u16) -> T {
        if i == 0 {
            T::zero()
        } else {
            self.ladder[i as usize - 1].clone()
        }
    }

    fn consistent(counts: &[u16], slots: &[Slot]) -> bool {
        let mut used = vec![0u16; counts.len()];
        for &(_, c) in slots {
            used[c as usize] += 1;
            if used[c as usize] > counts[c as usize] {
                return false;
            }
        }
        true
    }

    /// Value of a consistent state; `None` is +∞.
    fn value(&mut self, counts: &[u16], window: &[Slot]) -> Option<T> {
        let key = (counts.to_vec(), window.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let total: usize = counts.iter().map(|&c| c as usize).sum();
        let v = if total == self.b {
            // Base: the window is the whole prefix and starts at time 0.
            let mut sum = T::zero();
            for &(u, c) in window {
                sum = sum + self.idle(u) + self.classes[c as usize].clone();
            }
            Some(sum)
        } else {
            let mut span = T::zero();
            for (i, &(u, c)) in window.iter().enumerate() {
                span = span + self.idle(u);
                if i + 1 < window.len() {
                    span = span + self.classes[c as usize].clone();
                }
            }
            if span < self.unit {
                self.infeasible += 1;
                None
            } else {
                let &(u_last, c_last) = window.last().expect("window has B slots");
                let mut rest = counts.to_vec();
                rest[c_last as usize] -= 1;
                let older = &window[..window.len() - 1];
                self.tail(&rest, older).map(|(t, _)| {
                    t + self.idle(u_last) + self.classes[c_last as usize].clone()
                })
            }
        };
        self.memo.insert(key, v.clone());
        v
    }

    /// `min over (x, y)` of the state obtained by prepending slot `(x, y)`
    /// to `older` with class counts `rest`. Ties go to the smallest `x`,
    /// then the smallest `y`.
    fn tail(&mut self, rest: &[u16], older: &[Slot]) -> Option<(T, Slot)> {
        let key = (rest.to_vec(), older.to_vec());
        if let Some(v) = self.tails.get(&key) {
            return v.clone();
        }
        let remaining: usize = rest.iter().map(|&c| c as usize).sum();
        let idles: Vec<u16> = if remaining == self.b {
            vec![0]
        } else {
            (1..=self.ladder.len() as u16).collect()
        };
        let mut best: Option<(T, Slot)> = None;
        let mut child = Vec::with_capacity(self.b);
        for &x in &idles {
            for y in 0..self.classes.len() as u16 {
                child.clear();
                child.push((x, y));
                child.extend_from_slice(older);
                if !Self::consistent(rest, &child) {
                    continue;
                }
                if let Some(v) = self.value(rest, &child) {
                    if best.as_ref().is_none_or(|(b, _)| v < *b) {
                        best = Some((v, (x, y)));
                    }
                }
            }
        }
        self.tails.insert(key, best.clone());
        best
    }

    /// Minimize over every top window. Returns the value and the window.
    fn solve(&mut self, counts: &[u16]) -> Option<(T, Vec<Slot>)> {
        let n: usize = counts.iter().map(|&c| c as usize).sum();
        let l = self.ladder.len() as u16;
        let k = self.classes.len() as u16;
        let mut best: Option<(T, Vec<Slot>)> = None;
        let mut slots: Vec<Slot> = vec![(0, 0); self.b];
        let first_idles: Vec<u16> = if n == self.b { vec![0] } else { (1..=l).collect() };
        // Odometer over (u_1, v_1, …, u_B, v_B), earliest slot most significant.
        let radices: Vec<u16> = (0..self.b).flat_map(|i| [if i == 0 { first_idles.len() as u16 } else { l }, k]).collect();
        let mut digits = vec![0u16; radices.len()];
        loop {
            for i in 0..self.b {
                let u = if i == 0 { first_idles[digits[0] as usize] } else { digits[2 * i] + 1 };
                slots[i] = (u, digits[2 * i + 1]);
            }
            if Self::consistent(counts, &slots) {
                if let Some(v) = self.value(counts, &slots) {
                    if best.as_ref().is_none_or(|(b, _)| v < *b) {
                        best = Some((v, slots.clone()));
                    }
                }
            }
            let mut pos = radices.len();
            loop {
                if pos == 0 {
                    return best;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < radices[pos] {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }
}

fn scaled_ladder(cfg: &PtasConfig, top: usize) -> (Vec<BigInt>, BigInt) {
    let p = cfg.epsilon.numer().clone();
    let q = cfg.epsilon.denom().clone();
    let denom = num_traits::pow(q.clone(), top + 1);
    let nums = (0..=top)
        .map(|k| &p * num_traits::pow(&p + &q, k) * num_traits::pow(q.clone(), top - k))
        .collect();
    (nums, denom)
}

/// Solve on integer numerators and unwind the optimal path.
fn run_dp<T: Scalar>(
    b: usize,
    ladder: Vec<T>,
    classes: Vec<T>,
    unit: T,
    counts: &[u16],
) -> Result<(T, Chain, usize, usize)> {
    let mut dp = Dp {
        b,
        ladder,
        classes,
        unit,
        memo: HashMap::new(),
        tails: HashMap::new(),
        infeasible: 0,
    };
    let (value, top) = dp
        .solve(counts)
        .ok_or_else(|| Error::DpInternal("no regular schedule found".into()))?;
    let chain = unwind(&dp, counts, &top)?;
    Ok((value, chain, dp.memo.len(), dp.infeasible))
}

/// Minimum makespan over regular schedules of `rounded`, with one optimal
/// schedule.
pub fn dp_solve(rounded: &RoundedInstance, cfg: &PtasConfig) -> Result<DpSolution> {
    let b = rounded.b;
    let n = rounded.n();
    if n < b {
        return Err(Error::TooFewJobs { n, b });
    }
    if n > u16::MAX as usize {
        return Err(Error::InvalidParameter(format!("too many jobs for the DP: {n}")));
    }
    let top = rounded.exponents.iter().copied().max().unwrap_or(0).max(cfg.tau);
    let (nums, denom) = scaled_ladder(cfg, top);
    let ladder_big: Vec<BigInt> = nums[..=cfg.tau].to_vec();
    let class_big: Vec<BigInt> = rounded.exponents.iter().map(|&k| nums[k].clone()).collect();
    let counts: Vec<u16> = rounded.counts.iter().map(|&c| c as u16).collect();

    // Every partial sum is bounded by this; i128 is used when it fits.
    let bound: BigInt = class_big.iter().zip(&rounded.counts).map(|(v, &c)| v * c).sum::<BigInt>()
        + ladder_big.last().expect("ladder is nonempty") * BigInt::from(n + b)
        + &denom;
    let fits = bound.bits() < 120;

    let (value, chain, states, infeasible) = if fits {
        let conv = |v: &BigInt| v.to_i128().expect("checked bound");
        let (v, chain, states, infeasible) = run_dp(
            b,
            ladder_big.iter().map(conv).collect(),
            class_big.iter().map(conv).collect(),
            conv(&denom),
            &counts,
        )?;
        (BigInt::from(v), chain, states, infeasible)
    } else {
        run_dp(b, ladder_big, class_big, denom.clone(), &counts)?
    };

    let ladder = idle_ladder(cfg);
    let idle_value = |i: u16| {
        if i == 0 {
            TimeValue::zero()
        } else {
            ladder[i as usize - 1].clone()
        }
    };
    let path: Vec<DpState> = chain
        .iter()
        .map(|(c, w)| DpState {
            counts: c.iter().map(|&x| x as usize).collect(),
            window: w
                .iter()
                .map(|&(u, v)| WindowSlot {
                    idle: idle_value(u),
                    class: v as usize,
                })
                .collect(),
        })
        .collect();

    // Base window first, then the last slot of each state from the bottom up.
    let (_, base_window) = chain.last().expect("chain ends at a base state");
    let mut sequence: Vec<Slot> = base_window.clone();
    for (_, w) in chain.iter().rev().skip(1) {
        sequence.push(*w.last().expect("window has B slots"));
    }
    let classes_in_order = sequence.iter().map(|&(_, c)| c as usize).collect();
    let idles = sequence.iter().skip(1).map(|&(u, _)| idle_value(u)).collect();

    let f_star = TimeValue::new(BigRational::new(value, denom))?;
    let ceiling = state_ceiling(rounded, cfg);
    Ok(DpSolution {
        f_star,
        path,
        classes_in_order,
        idles,
        stats: DpStats {
            states,
            infeasible,
            state_ceiling: ceiling,
        },
    })
}

type Chain = Vec<(Vec<u16>, Vec<Slot>)>;

/// Follow the stored argmins from the top state down to a base state.
fn unwind<T: Scalar>(dp: &Dp<T>, counts: &[u16], top: &[Slot]) -> Result<Chain> {
    let mut chain = vec![(counts.to_vec(), top.to_vec())];
    loop {
        let (c, w) = chain.last().expect("nonempty").clone();
        let total: usize = c.iter().map(|&x| x as usize).sum();
        if total == dp.b {
            return Ok(chain);
        }
        let &(_, c_last) = w.last().expect("window has B slots");
        let mut rest = c.clone();
        rest[c_last as usize] -= 1;
        let older = w[..w.len() - 1].to_vec();
        let choice = dp
            .tails
            .get(&(rest.clone(), older.clone()))
            .cloned()
            .flatten()
            .ok_or_else(|| Error::DpInternal("missing argmin on the optimal path".into()))?;
        let mut child = vec![choice.1];
        child.extend(older);
        chain.push((rest, child));
    }
}

/// `Π(n_i + 1) · (|ladder| + 1)^B · |classes|^B`.
pub fn state_ceiling(rounded: &RoundedInstance, cfg: &PtasConfig) -> u128 {
    let b = rounded.b as u32;
    let prod: u128 = rounded.counts.iter().map(|&c| c as u128 + 1).product();
    let idle_choices = (cfg.tau as u128 + 2).pow(b);
    let class_choices = (rounded.classes.len() as u128).pow(b);
    prod.saturating_mul(idle_choices).saturating_mul(class_choices)
}

/// The schedule returned by [`ptas_solve`] together with the DP optimum it
/// was derived from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PtasResult {
    pub trace: ScheduleTrace,
    pub f_star: TimeValue,
    pub rounded: RoundedInstance,
}

/// Round, solve the DP, and replay the optimal regular order greedily on
/// the original execution times. The replayed makespan never exceeds `f*`.
pub fn ptas_solve(instance: &Instance, cfg: &PtasConfig) -> Result<PtasResult> {
    let rounded = round_instance(instance, cfg)?;
    let sol = dp_solve(&rounded, cfg)?;
    // Jobs of one class are taken in ascending index order.
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); rounded.classes.len()];
    for (job, &c) in rounded.origin.iter().enumerate().rev() {
        members[c].push(job);
    }
    let order = sol
        .classes_in_order
        .iter()
        .map(|&c| {
            members[c]
                .pop()
                .ok_or_else(|| Error::DpInternal("class used more often than it occurs".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let perm = Permutation::new(order, instance.n())?;
    let trace = evaluate_greedy(instance, &perm)?;
    Ok(PtasResult {
        trace,
        f_star: sol.f_star,
        rounded,
    })
}

/// Exact `ε` from a `"p/q"` string.
pub fn parse_epsilon(s: &str) -> Result<PtasConfig> {
    PtasConfig::new(crate::time::parse_rational(s)?)
}
