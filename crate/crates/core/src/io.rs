//! JSON file formats. Rationals travel as `"p/q"` or integer strings and
//! permutations are 1-based.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::reduction::{PartitionInstance, ReductionImage};
use crate::schedule::{Instance, Permutation, ScheduleTrace};
use crate::time::{parse_rational, TimeValue};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub b: i64,
    pub window: String,
    pub jobs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionFile {
    pub values: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceFile {
    pub order: Vec<usize>,
    pub starts: Vec<String>,
    pub completions: Vec<String>,
    pub gaps: Vec<String>,
    pub makespan: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReductionFile {
    pub instance: InstanceFile,
    pub threshold: String,
    pub u: String,
}

fn from_json<'de, T: Deserialize<'de>>(text: &'de str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::format("$", e.to_string()))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain structs serialize")
}

fn time_at(path: &str, s: &str) -> Result<TimeValue> {
    let q = parse_rational(s).map_err(|_| Error::format(path, format!("invalid rational `{s}`")))?;
    TimeValue::new(q).map_err(|_| Error::format(path, format!("negative value `{s}`")))
}

fn times_at(field: &str, xs: &[String]) -> Result<Vec<TimeValue>> {
    xs.iter()
        .enumerate()
        .map(|(i, s)| time_at(&format!("{field}[{i}]"), s))
        .collect()
}

fn strings(xs: &[TimeValue]) -> Vec<String> {
    xs.iter().map(TimeValue::to_string).collect()
}

impl InstanceFile {
    pub fn into_instance(self) -> Result<Instance> {
        if self.b < 2 {
            return Err(Error::format("b", format!("b must be ≥ 2, got {}", self.b)));
        }
        let window = time_at("window", &self.window)?;
        if window.is_zero() {
            return Err(Error::format("window", "window must be positive"));
        }
        if self.jobs.is_empty() {
            return Err(Error::format("jobs", "at least one job is required"));
        }
        let jobs = times_at("jobs", &self.jobs)?;
        Instance::new(self.b as usize, window, jobs)
    }

    pub fn from_instance(inst: &Instance) -> Self {
        InstanceFile {
            b: inst.b() as i64,
            window: inst.window().to_string(),
            jobs: strings(inst.jobs()),
        }
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    from_json::<InstanceFile>(text)?.into_instance()
}

pub fn emit_instance(inst: &Instance) -> String {
    to_json(&InstanceFile::from_instance(inst))
}

pub fn parse_partition(text: &str) -> Result<PartitionInstance> {
    let file: PartitionFile = from_json(text)?;
    if file.values.is_empty() {
        return Err(Error::format("values", "at least two values are required"));
    }
    if file.values.len() % 2 != 0 {
        return Err(Error::format(
            "values",
            format!("expected an even count, got {}", file.values.len()),
        ));
    }
    let mut values = Vec::with_capacity(file.values.len());
    for (i, &v) in file.values.iter().enumerate() {
        if v < 1 {
            return Err(Error::format(format!("values[{i}]"), format!("must be positive, got {v}")));
        }
        values.push(v as u64);
    }
    PartitionInstance::new(values)
}

pub fn emit_partition(part: &PartitionInstance) -> String {
    to_json(&PartitionFile {
        values: part.values().iter().map(|&v| v as i64).collect(),
    })
}

impl TraceFile {
    pub fn from_trace(trace: &ScheduleTrace) -> Self {
        TraceFile {
            order: trace.order().as_slice().iter().map(|j| j + 1).collect(),
            starts: strings(trace.starts()),
            completions: strings(trace.completions()),
            gaps: strings(trace.gaps()),
            makespan: trace.makespan().to_string(),
        }
    }

    pub fn into_trace(self, instance: &Instance) -> Result<ScheduleTrace> {
        let n = instance.n();
        let order = self
            .order
            .iter()
            .enumerate()
            .map(|(i, &j)| {
                if j == 0 || j > n {
                    Err(Error::format(format!("order[{i}]"), format!("index {j} out of range 1..={n}")))
                } else {
                    Ok(j - 1)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let order = Permutation::new(order, n).map_err(|e| Error::format("order", e.to_string()))?;
        ScheduleTrace::from_parts(
            instance,
            order,
            times_at("starts", &self.starts)?,
            times_at("completions", &self.completions)?,
            times_at("gaps", &self.gaps)?,
            time_at("makespan", &self.makespan)?,
        )
    }
}

/// Parse a trace file and check it against `instance`.
pub fn parse_trace(text: &str, instance: &Instance) -> Result<ScheduleTrace> {
    from_json::<TraceFile>(text)?.into_trace(instance)
}

pub fn emit_trace(trace: &ScheduleTrace) -> String {
    to_json(&TraceFile::from_trace(trace))
}

impl ReductionFile {
    pub fn from_image(image: &ReductionImage) -> Self {
        ReductionFile {
            instance: InstanceFile::from_instance(&image.instance),
            threshold: image.threshold.to_string(),
            u: image.u.to_string(),
        }
    }
}

pub fn emit_reduction(image: &ReductionImage) -> String {
    to_json(&ReductionFile::from_image(image))
}

pub fn parse_reduction(text: &str) -> Result<ReductionImage> {
    let file: ReductionFile = from_json(text)?;
    Ok(ReductionImage {
        instance: file.instance.into_instance()?,
        threshold: time_at("threshold", &file.threshold)?,
        u: time_at("u", &file.u)?,
    })
}

/// Parse a 1-based, comma-separated permutation such as `"2,1,3"`.
pub fn parse_permutation(text: &str, n: usize) -> Result<Permutation> {
    let order = text
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            match tok.parse::<usize>() {
                Ok(j) if j >= 1 => Ok(j - 1),
                _ => Err(Error::InvalidPermutation(format!("bad entry `{tok}`"))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Permutation::new(order, n)
}
