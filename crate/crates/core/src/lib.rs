//! Single-processor scheduling with time restrictions.
//!
//! Jobs run one at a time on a single processor, and no half-open window of
//! length `W` may intersect more than `B` jobs. The crate provides:
//!
//! * [`schedule`]: instances, the greedy placement recurrence, two
//!   independent feasibility checkers and a makespan lower bound;
//! * [`exact`]: optimal makespan by pruned permutation search;
//! * [`heuristics`]: the LPT ordering and its worst-case guarantee;
//! * [`reduction`]: the reduction from cardinality-constrained partition,
//!   with witness construction and split extraction;
//! * [`ptas`]: geometric rounding plus a dynamic program over regular
//!   schedules;
//! * [`io`], [`generate`], [`bench`], [`cli`]: file formats, instance
//!   generators, the benchmark table and the `tsched` command line.
//!
//! All times are exact rationals.

pub mod bench;
pub mod cli;
pub mod error;
pub mod exact;
pub mod generate;
pub mod heuristics;
pub mod io;
pub mod ptas;
pub mod reduction;
pub mod schedule;
pub mod time;

pub use error::{Error, Result};
pub use exact::{solve_exact, solve_exact_unpruned, ExactResult};
pub use heuristics::{check_lpt_bound, lpt_schedule};
pub use ptas::{dp_solve, idle_ladder, ptas_solve, round_instance, PtasConfig, RoundedInstance};
pub use reduction::{
    build_reduction, build_witness_schedule, decide_partition, extract_partition,
    PartitionInstance, ReductionImage,
};
pub use schedule::{
    check_feasible, check_feasible_geometric, check_prefix_dominance, evaluate_greedy,
    lower_bound, Instance, Permutation, ScheduleTrace,
};
pub use time::TimeValue;
