//! Independent oracles shared by the integration suites. Nothing here calls
//! the solver being checked.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tsched::{Instance, TimeValue};

pub fn t(s: &str) -> TimeValue {
    s.parse().unwrap()
}

pub fn ts(xs: &[&str]) -> Vec<TimeValue> {
    xs.iter().map(|s| t(s)).collect()
}

pub fn q(s: &str) -> BigRational {
    tsched::time::parse_rational(s).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random instance: `n` jobs drawn from a small grid with a share of zero
/// and unit jobs, so ties and degenerate stacking occur often.
pub fn random_instance(rng: &mut ChaCha8Rng, n: usize, b: usize, window: TimeValue) -> Instance {
    let jobs = (0..n)
        .map(|_| match rng.gen_range(0..10) {
            0 | 1 => TimeValue::zero(),
            2 => TimeValue::one(),
            _ => TimeValue::from_ratio(rng.gen_range(1..=12), 10),
        })
        .collect();
    Instance::new(b, window, jobs).unwrap()
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for j in 0..used.len() {
            if !used[j] {
                used[j] = true;
                cur.push(j);
                rec(cur, used, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Does some `m`-subset of `values` sum to half the total? Checked over all
/// `C(2m, m)` subsets as bitmasks.
pub fn brute_force_partition(values: &[u64]) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = values.len();
    let total: u64 = values.iter().sum();
    if total % 2 != 0 || n % 2 != 0 {
        return None;
    }
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != n / 2 {
            continue;
        }
        let sum: u64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| values[i]).sum();
        if 2 * sum == total {
            let a = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let b = (0..n).filter(|i| mask >> i & 1 == 0).collect();
            return Some((a, b));
        }
    }
    None
}

/// All `m`-subsets splitting `values` evenly.
pub fn all_equal_splits(values: &[u64]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = values.len();
    let total: u64 = values.iter().sum();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != n / 2 {
            continue;
        }
        let sum: u64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| values[i]).sum();
        if 2 * sum == total {
            out.push((
                (0..n).filter(|i| mask >> i & 1 == 1).collect(),
                (0..n).filter(|i| mask >> i & 1 == 0).collect(),
            ));
        }
    }
    out
}

/// Nondecreasing sequences of length `len` over `lo..=hi`.
pub fn multisets(len: usize, lo: u64, hi: u64) -> Vec<Vec<u64>> {
    fn rec(cur: &mut Vec<u64>, len: usize, from: u64, hi: u64, out: &mut Vec<Vec<u64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in from..=hi {
            cur.push(v);
            rec(cur, len, v, hi, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), len, lo, hi, &mut out);
    out
}

/// Minimum makespan over regular schedules: every permutation of the
/// (rounded) sizes times every assignment of idle gaps from `ladder`,
/// feasible iff each run of `b` consecutive (gap, job) pairs after a job has
/// total length at least 1. Exact, on integers over a common denominator.
pub fn brute_force_regular(sizes: &[BigRational], b: usize, ladder: &[BigRational]) -> BigRational {
    let denom = sizes
        .iter()
        .chain(ladder)
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scale = |x: &BigRational| -> i128 {
        (x * BigRational::from_integer(denom.clone()))
            .to_integer()
            .to_i128()
            .expect("fits in i128")
    };
    let mut s: Vec<i128> = sizes.iter().map(scale).collect();
    s.sort_unstable();
    let gaps: Vec<i128> = ladder.iter().map(scale).collect();
    let unit = denom.to_i128().expect("fits");
    let n = s.len();
    let mut best = i128::MAX;

    // Distinct permutations of the multiset via next_permutation.
    let mut order = s.clone();
    loop {
        if n == 1 {
            best = best.min(order[0]);
        } else {
            let mut chosen = vec![0i128; n - 1];
            search_gaps(&order, b, &gaps, unit, 0, &mut chosen, &mut best);
        }
        if !next_permutation(&mut order) {
            break;
        }
    }
    BigRational::new(BigInt::from(best), denom)
}

fn search_gaps(
    order: &[i128],
    b: usize,
    ladder: &[i128],
    unit: i128,
    k: usize,
    chosen: &mut [i128],
    best: &mut i128,
) {
    let n = order.len();
    if k == n - 1 {
        let total: i128 = order.iter().sum::<i128>() + chosen.iter().sum::<i128>();
        *best = (*best).min(total);
        return;
    }
    for &g in ladder {
        chosen[k] = g;
        // Gap k is the last gap of the window starting after job k + 1 − b.
        if k + 1 >= b {
            let i = k + 1 - b;
            let span: i128 = chosen[i] + (i + 1..i + b).map(|j| order[j] + chosen[j]).sum::<i128>();
            if span < unit {
                continue;
            }
        }
        search_gaps(order, b, ladder, unit, k + 1, chosen, best);
    }
}

pub fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// Ladder `ε(1+ε)^k` for `k = 0..` until a value reaches 1, recomputed here
/// from scratch.
pub fn ladder(eps: &BigRational) -> Vec<BigRational> {
    let mut out = vec![eps.clone()];
    while out.last().unwrap() < &BigRational::one() {
        let next = out.last().unwrap() * (BigRational::one() + eps);
        out.push(next);
    }
    out
}

/// Smallest ladder value at least `s` (sizes ≤ ε map to ε).
pub fn round_up(s: &BigRational, eps: &BigRational) -> BigRational {
    let mut v = eps.clone();
    while &v < s {
        v = v * (BigRational::one() + eps);
    }
    v
}

pub fn zero() -> BigRational {
    BigRational::zero()
}
