//! Benchmark table over a suite of instances: exact optimum, LPT, the PTAS
//! at several accuracies and the lower bound, with hard sanity assertions.

use std::fmt::Write as _;
use std::time::Instant;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{solve_exact, DEFAULT_EXACT_LIMIT};
use crate::heuristics::{lpt_guarantee, lpt_schedule};
use crate::io::InstanceFile;
use crate::ptas::{parse_epsilon, ptas_solve, PtasConfig};
use crate::schedule::{lower_bound, Instance};
use crate::time::{format_rational, format_significant, TimeValue};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteEntry {
    pub id: String,
    pub b: i64,
    pub window: String,
    pub jobs: Vec<String>,
}

impl SuiteEntry {
    fn instance_file(&self) -> InstanceFile {
        InstanceFile {
            b: self.b,
            window: self.window.clone(),
            jobs: self.jobs.clone(),
        }
    }
}

/// `{"limit": 10, "epsilons": ["1/2"], "instances": [{"id": ..., "b": ..., "window": ..., "jobs": [...]}]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteFile {
    #[serde(default)]
    pub limit: Option<usize>,
    #[serde(default)]
    pub epsilons: Vec<String>,
    pub instances: Vec<SuiteEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PtasCell {
    pub makespan: TimeValue,
    pub f_star: TimeValue,
    pub millis: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub id: String,
    pub n: usize,
    pub b: usize,
    pub opt: TimeValue,
    pub lpt: TimeValue,
    /// `lpt / opt`; absent when `opt = 0`.
    pub lpt_ratio: Option<BigRational>,
    /// One entry per configured epsilon; absent when the PTAS does not
    /// apply (window ≠ 1 or n < B).
    pub ptas: Vec<Option<PtasCell>>,
    pub lower_bound: TimeValue,
    pub opt_millis: u128,
    pub lpt_millis: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchReport {
    pub epsilons: Vec<String>,
    pub rows: Vec<BenchRow>,
    pub timing: bool,
}

pub fn parse_suite(text: &str) -> Result<SuiteFile> {
    serde_json::from_str(text).map_err(|e| Error::format("$", e.to_string()))
}

fn bench_row(
    id: &str,
    inst: &Instance,
    configs: &[PtasConfig],
    limit: usize,
) -> Result<BenchRow> {
    let t0 = Instant::now();
    let exact = solve_exact(inst, limit)?;
    let opt_millis = t0.elapsed().as_millis();

    let t0 = Instant::now();
    let lpt = lpt_schedule(inst).makespan().clone();
    let lpt_millis = t0.elapsed().as_millis();

    let lb = lower_bound(inst);
    let fail = |message: String| Error::BenchAssertion {
        id: id.to_string(),
        message,
    };
    if exact.optimum < lb {
        return Err(fail(format!("opt {} below lower bound {lb}", exact.optimum)));
    }
    let guarantee = lpt_guarantee(inst, &exact.optimum);
    if lpt > guarantee {
        return Err(fail(format!("lpt {lpt} exceeds (2 − 2/B)·opt + W = {guarantee}")));
    }

    let unit = inst.window() == &TimeValue::one() && inst.n() >= inst.b();
    let ptas = configs
        .iter()
        .map(|cfg| {
            if !unit {
                return Ok(None);
            }
            let t0 = Instant::now();
            let r = ptas_solve(inst, cfg)?;
            Ok(Some(PtasCell {
                makespan: r.trace.makespan().clone(),
                f_star: r.f_star,
                millis: t0.elapsed().as_millis(),
            }))
        })
        .collect::<Result<Vec<_>>>()?;

    let lpt_ratio = (!exact.optimum.is_zero())
        .then(|| lpt.as_rational() / exact.optimum.as_rational());
    Ok(BenchRow {
        id: id.to_string(),
        n: inst.n(),
        b: inst.b(),
        opt: exact.optimum,
        lpt,
        lpt_ratio,
        ptas,
        lower_bound: lb,
        opt_millis,
        lpt_millis,
    })
}

/// Solve every suite entry. Rows are sorted by id (stable on duplicates).
pub fn run_bench(suite: &SuiteFile, timing: bool) -> Result<BenchReport> {
    let limit = suite.limit.unwrap_or(DEFAULT_EXACT_LIMIT);
    let configs = suite
        .epsilons
        .iter()
        .map(|e| parse_epsilon(e))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = suite
        .instances
        .iter()
        .enumerate()
        .map(|(i, entry)| {
            let inst = entry
                .instance_file()
                .into_instance()
                .map_err(|e| match e {
                    Error::Format { path, message } => {
                        Error::format(format!("instances[{i}].{path}"), message)
                    }
                    other => other,
                })?;
            bench_row(&entry.id, &inst, &configs, limit)
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(BenchReport {
        epsilons: suite.epsilons.clone(),
        rows,
        timing,
    })
}

fn dec(t: &TimeValue) -> String {
    format_significant(t.as_rational(), 6)
}

fn millis(timing: bool, ms: u128) -> String {
    if timing {
        ms.to_string()
    } else {
        "-".into()
    }
}

impl BenchReport {
    /// Decimal columns (6 significant digits) each followed by an exact
    /// `p/q` column.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let mut header = vec![
            "id", "n", "b", "opt", "opt_exact", "lower_bound", "lower_bound_exact", "lpt",
            "lpt_exact", "lpt_ratio", "lpt_ratio_exact",
        ]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>();
        for e in &self.epsilons {
            for col in ["ptas", "ptas_exact", "fstar", "fstar_exact"] {
                header.push(format!("{col}[eps={e}]"));
            }
        }
        header.push("time_opt_ms".into());
        header.push("time_lpt_ms".into());
        for e in &self.epsilons {
            header.push(format!("time_ptas_ms[eps={e}]"));
        }
        let _ = writeln!(out, "{}", header.join(","));
        for row in &self.rows {
            let mut cells = vec![
                row.id.clone(),
                row.n.to_string(),
                row.b.to_string(),
                dec(&row.opt),
                row.opt.to_string(),
                dec(&row.lower_bound),
                row.lower_bound.to_string(),
                dec(&row.lpt),
                row.lpt.to_string(),
            ];
            match &row.lpt_ratio {
                Some(r) => {
                    cells.push(format_significant(r, 6));
                    cells.push(format_rational(r));
                }
                None => cells.extend([String::new(), String::new()]),
            }
            for cell in &row.ptas {
                match cell {
                    Some(c) => cells.extend([
                        dec(&c.makespan),
                        c.makespan.to_string(),
                        dec(&c.f_star),
                        c.f_star.to_string(),
                    ]),
                    None => cells.extend(std::iter::repeat_n(String::new(), 4)),
                }
            }
            cells.push(millis(self.timing, row.opt_millis));
            cells.push(millis(self.timing, row.lpt_millis));
            for cell in &row.ptas {
                cells.push(match cell {
                    Some(c) => millis(self.timing, c.millis),
                    None => String::new(),
                });
            }
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    /// Tab-separated decimals only, one header line, for plotting tools.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        let mut header: Vec<String> = ["id", "n", "b", "opt", "lower_bound", "lpt", "lpt_ratio"]
            .into_iter()
            .map(String::from)
            .collect();
        for e in &self.epsilons {
            header.push(format!("ptas[eps={e}]"));
            header.push(format!("fstar[eps={e}]"));
        }
        let _ = writeln!(out, "{}", header.join("\t"));
        for row in &self.rows {
            let mut cells = vec![
                row.id.clone(),
                row.n.to_string(),
                row.b.to_string(),
                dec(&row.opt),
                dec(&row.lower_bound),
                dec(&row.lpt),
                row.lpt_ratio
                    .as_ref()
                    .map(|r| format_significant(r, 6))
                    .unwrap_or_else(|| "NaN".into()),
            ];
            for cell in &row.ptas {
                match cell {
                    Some(c) => cells.extend([dec(&c.makespan), dec(&c.f_star)]),
                    None => cells.extend(["NaN".to_string(), "NaN".to_string()]),
                }
            }
            let _ = writeln!(out, "{}", cells.join("\t"));
        }
        out
    }
}
