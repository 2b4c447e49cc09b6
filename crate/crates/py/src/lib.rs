//! Python bindings. Times cross the boundary as exact strings (`"3/10"`,
//! `"2"`), job indices as zero-based integers.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use tsched::heuristics::lpt_guarantee;
use tsched::ptas::parse_epsilon;
use tsched::TimeValue;

create_exception!(pytsched, TschedError, PyValueError);

fn err(e: tsched::Error) -> PyErr {
    TschedError::new_err(format!("{}: {e}", e.kind()))
}

fn time(s: &str) -> PyResult<TimeValue> {
    s.parse().map_err(err)
}

fn times(xs: &[TimeValue]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

/// Jobs with execution times, a window length and a per-window job bound.
#[pyclass(module = "pytsched", skip_from_py_object)]
#[derive(Clone)]
struct Instance {
    inner: tsched::Instance,
}

#[pymethods]
impl Instance {
    #[new]
    #[pyo3(signature = (b, window, jobs))]
    fn new(b: usize, window: &str, jobs: Vec<String>) -> PyResult<Self> {
        let jobs = jobs.iter().map(|s| time(s)).collect::<PyResult<Vec<_>>>()?;
        let inner = tsched::Instance::new(b, time(window)?, jobs).map_err(err)?;
        Ok(Instance { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = tsched::io::parse_instance(text).map_err(err)?;
        Ok(Instance { inner })
    }

    fn to_json(&self) -> String {
        tsched::io::emit_instance(&self.inner)
    }

    #[getter]
    fn b(&self) -> usize {
        self.inner.b()
    }

    #[getter]
    fn window(&self) -> String {
        self.inner.window().to_string()
    }

    #[getter]
    fn jobs(&self) -> Vec<String> {
        times(self.inner.jobs())
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(b={}, window='{}', jobs={:?})",
            self.inner.b(),
            self.inner.window(),
            self.jobs()
        )
    }

    fn lower_bound(&self) -> String {
        tsched::lower_bound(&self.inner).to_string()
    }

    /// Greedy earliest-start schedule of `order`.
    fn evaluate(&self, order: Vec<usize>) -> PyResult<Trace> {
        let perm = tsched::Permutation::new(order, self.inner.n()).map_err(err)?;
        let inner = tsched::evaluate_greedy(&self.inner, &perm).map_err(err)?;
        Ok(Trace { inner })
    }

    /// Schedule with explicit idle gaps between consecutive jobs.
    fn layout(&self, order: Vec<usize>, gaps: Vec<String>) -> PyResult<Trace> {
        let perm = tsched::Permutation::new(order, self.inner.n()).map_err(err)?;
        let gaps = gaps.iter().map(|s| time(s)).collect::<PyResult<Vec<_>>>()?;
        let inner = tsched::ScheduleTrace::from_gaps(&self.inner, perm, gaps).map_err(err)?;
        Ok(Trace { inner })
    }

    fn is_feasible(&self, trace: &Trace) -> PyResult<bool> {
        tsched::check_feasible(&self.inner, &trace.inner).map_err(err)
    }

    /// `(optimum, witness, explored)`.
    #[pyo3(signature = (limit = tsched::exact::DEFAULT_EXACT_LIMIT, pruned = true))]
    fn solve_exact(&self, limit: usize, pruned: bool) -> PyResult<(String, Trace, u64)> {
        let r = if pruned {
            tsched::solve_exact(&self.inner, limit)
        } else {
            tsched::solve_exact_unpruned(&self.inner, limit)
        }
        .map_err(err)?;
        Ok((r.optimum.to_string(), Trace { inner: r.witness }, r.explored))
    }

    fn lpt(&self) -> Trace {
        Trace {
            inner: tsched::lpt_schedule(&self.inner),
        }
    }

    /// `(2 − 2/B)·opt + W`.
    fn lpt_guarantee(&self, opt: &str) -> PyResult<String> {
        Ok(lpt_guarantee(&self.inner, &time(opt)?).to_string())
    }

    /// `(trace, f_star)`; requires a unit window and at least `b` jobs.
    fn ptas(&self, epsilon: &str) -> PyResult<(Trace, String)> {
        let cfg = parse_epsilon(epsilon).map_err(err)?;
        let r = tsched::ptas_solve(&self.inner, &cfg).map_err(err)?;
        Ok((Trace { inner: r.trace }, r.f_star.to_string()))
    }
}

/// A schedule: job order with start and completion times.
#[pyclass(module = "pytsched", skip_from_py_object)]
#[derive(Clone)]
struct Trace {
    inner: tsched::ScheduleTrace,
}

#[pymethods]
impl Trace {
    #[getter]
    fn order(&self) -> Vec<usize> {
        self.inner.order().as_slice().to_vec()
    }

    #[getter]
    fn starts(&self) -> Vec<String> {
        times(self.inner.starts())
    }

    #[getter]
    fn completions(&self) -> Vec<String> {
        times(self.inner.completions())
    }

    #[getter]
    fn gaps(&self) -> Vec<String> {
        times(self.inner.gaps())
    }

    #[getter]
    fn makespan(&self) -> String {
        self.inner.makespan().to_string()
    }

    fn to_json(&self) -> String {
        tsched::io::emit_trace(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Trace(order={:?}, makespan='{}')", self.order(), self.makespan())
    }
}

/// `2m` positive integers to split into two `m`-sets of equal sum.
#[pyclass(module = "pytsched", skip_from_py_object)]
#[derive(Clone)]
struct Partition {
    inner: tsched::PartitionInstance,
}

#[pymethods]
impl Partition {
    #[new]
    fn new(values: Vec<u64>) -> PyResult<Self> {
        let inner = tsched::PartitionInstance::new(values).map_err(err)?;
        Ok(Partition { inner })
    }

    #[getter]
    fn values(&self) -> Vec<u64> {
        self.inner.values().to_vec()
    }

    /// `(instance, threshold)` of the scheduling image.
    fn reduce(&self) -> PyResult<(Instance, String)> {
        let img = tsched::build_reduction(&self.inner).map_err(err)?;
        Ok((Instance { inner: img.instance }, img.threshold.to_string()))
    }

    #[pyo3(signature = (limit = tsched::exact::DEFAULT_EXACT_LIMIT))]
    fn decide(&self, limit: usize) -> PyResult<bool> {
        tsched::decide_partition(&self.inner, limit).map_err(err)
    }

    fn witness(&self, side1: Vec<usize>, side2: Vec<usize>) -> PyResult<Trace> {
        let inner = tsched::build_witness_schedule(&self.inner, &side1, &side2).map_err(err)?;
        Ok(Trace { inner })
    }

    fn extract(&self, trace: &Trace) -> PyResult<(Vec<usize>, Vec<usize>)> {
        tsched::extract_partition(&self.inner, &trace.inner).map_err(err)
    }
}

#[pyfunction]
#[pyo3(signature = (n, b, seed = 0, zero_fraction = 0.0))]
fn gen_random(n: usize, b: usize, seed: u64, zero_fraction: f64) -> PyResult<Instance> {
    let inner = tsched::generate::gen_random(n, b, seed, zero_fraction).map_err(err)?;
    Ok(Instance { inner })
}

#[pymodule]
fn pytsched(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Instance>()?;
    m.add_class::<Trace>()?;
    m.add_class::<Partition>()?;
    m.add_function(wrap_pyfunction!(gen_random, m)?)?;
    m.add("TschedError", m.py().get_type::<TschedError>())?;
    Ok(())
}
