//! Exact optimal makespan by permutation search.
//!
//! For a fixed order the greedy placement is earliest-possible, so the
//! optimum is the minimum greedy makespan over all orders. The pruned search
//! uses two facts:
//!
//! * some optimal order has the two shortest jobs at its two ends (moving a
//!   longer job into the interior only lengthens the windows it belongs to),
//!   and the gap-sum condition is symmetric under reversal, so the shortest
//!   job can be pinned first and the second shortest last;
//! * completion times never decrease as jobs are appended, so a prefix whose
//!   last completion already exceeds the incumbent cannot improve on it.

use crate::error::{Error, Result};
use crate::schedule::{evaluate_greedy, Instance, Permutation, ScheduleTrace};
use crate::time::TimeValue;

pub const DEFAULT_EXACT_LIMIT: usize = 12;
pub const DEFAULT_UNPRUNED_LIMIT: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub optimum: TimeValue,
    pub witness: ScheduleTrace,
    /// Complete permutations whose makespan was evaluated.
    pub explored: u64,
}

/// Incremental greedy evaluation over a growing prefix.
struct Search<'a> {
    instance: &'a Instance,
    prefix: Vec<usize>,
    completions: Vec<TimeValue>,
    used: Vec<bool>,
    best: Option<(TimeValue, Vec<usize>)>,
    explored: u64,
    prune: bool,
}

impl<'a> Search<'a> {
    fn new(instance: &'a Instance, prune: bool) -> Self {
        let n = instance.n();
        Search {
            instance,
            prefix: Vec::with_capacity(n),
            completions: Vec::with_capacity(n),
            used: vec![false; n],
            best: None,
            explored: 0,
            prune,
        }
    }

    fn push(&mut self, job: usize) {
        let pos = self.prefix.len();
        let b = self.instance.b();
        let s = &self.instance.jobs()[job];
        let c = if pos == 0 {
            s.clone()
        } else if pos < b {
            &self.completions[pos - 1] + s
        } else {
            let released = &self.completions[pos - b] + self.instance.window();
            std::cmp::max(released, self.completions[pos - 1].clone()) + s
        };
        self.prefix.push(job);
        self.completions.push(c);
        self.used[job] = true;
    }

    fn pop(&mut self) {
        let job = self.prefix.pop().expect("pop on empty prefix");
        self.completions.pop();
        self.used[job] = false;
    }

    fn cut(&self) -> bool {
        match (&self.best, self.completions.last()) {
            (Some((best, _)), Some(c)) => self.prune && c > best,
            _ => false,
        }
    }

    fn record(&mut self) {
        self.explored += 1;
        let c = self.completions.last().expect("complete permutation").clone();
        let better = self.best.as_ref().is_none_or(|(best, _)| c < *best);
        if better {
            self.best = Some((c, self.prefix.clone()));
        }
    }

    /// Enumerate the unused jobs in lexicographic order, then finish with
    /// `tail` if given.
    fn descend(&mut self, interior: usize, tail: Option<usize>) {
        if self.cut() {
            return;
        }
        if interior == 0 {
            if let Some(last) = tail {
                self.push(last);
                self.record();
                self.pop();
            } else {
                self.record();
            }
            return;
        }
        for job in 0..self.instance.n() {
            if self.used[job] || Some(job) == tail {
                continue;
            }
            self.push(job);
            self.descend(interior - 1, tail);
            self.pop();
        }
    }

    fn finish(self) -> Result<ExactResult> {
        let (_, order) = self.best.expect("search visits at least one permutation");
        let perm = Permutation::new(order, self.instance.n())?;
        let witness = evaluate_greedy(self.instance, &perm)?;
        Ok(ExactResult {
            optimum: witness.makespan().clone(),
            witness,
            explored: self.explored,
        })
    }
}

fn guard(instance: &Instance, limit: usize) -> Result<()> {
    if instance.n() > limit {
        return Err(Error::TooLarge {
            n: instance.n(),
            limit,
        });
    }
    Ok(())
}

/// Indices of the shortest and second-shortest jobs, lower index first on
/// ties. Requires `n ≥ 2`.
pub fn two_smallest(jobs: &[TimeValue]) -> (usize, usize) {
    let mut idx: Vec<usize> = (0..jobs.len()).collect();
    idx.sort_by(|&a, &b| jobs[a].cmp(&jobs[b]).then(a.cmp(&b)));
    (idx[0], idx[1])
}

/// Optimal makespan with endpoint pinning and incumbent cut-offs.
pub fn solve_exact(instance: &Instance, limit: usize) -> Result<ExactResult> {
    guard(instance, limit)?;
    let n = instance.n();
    let mut search = Search::new(instance, true);
    if n == 1 {
        search.push(0);
        search.record();
    } else {
        let (first, last) = two_smallest(instance.jobs());
        search.push(first);
        search.descend(n - 2, Some(last));
    }
    search.finish()
}

/// Optimal makespan by plain enumeration of all `n!` orders.
pub fn solve_exact_unpruned(instance: &Instance, limit: usize) -> Result<ExactResult> {
    guard(instance, limit)?;
    let mut search = Search::new(instance, false);
    search.descend(instance.n(), None);
    search.finish()
}
