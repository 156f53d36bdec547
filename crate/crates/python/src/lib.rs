//! Python bindings for `ccm-core`.
//!
//! Integers cross the boundary as Python `int`, so seeds of any size work.
//! Reports (`verify`, `sweep`, tree JSON) come back as plain dicts.

use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use ccm_core::arith::{self, PosInt, PosOdd};
use ccm_core::matrices::{self, Branch, Coord};
use ccm_core::sequences::{self, DEFAULT_BUDGET};
use ccm_core::tree::{self, ComponentId, ExportFormat};
use ccm_core::verify::{self as checks, Suite, VerifyConfig};

create_exception!(ccm, Undecided, PyException, "Sequence did not reach 1 within its step budget.");

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn pos_int(n: BigUint) -> PyResult<PosInt> {
    PosInt::new(n).map_err(value_err)
}

fn pos_odd(n: BigUint) -> PyResult<PosOdd> {
    PosOdd::new(n).map_err(value_err)
}

fn branch(a: u64) -> PyResult<Branch> {
    Branch::try_from(a).map_err(value_err)
}

fn json_to_py<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// 2-adic valuation of a positive integer.
#[pyfunction]
fn v2(n: BigUint) -> PyResult<u64> {
    Ok(arith::v2(&pos_int(n)?))
}

/// Odd part of 3n + 1 for odd n.
#[pyfunction]
fn syr(n: BigUint) -> PyResult<BigUint> {
    Ok(arith::syr(&pos_odd(n)?).into_inner())
}

/// One Collatz step.
#[pyfunction]
fn col_step(n: BigUint) -> PyResult<BigUint> {
    Ok(arith::col_step(&pos_int(n)?).into_inner())
}

/// Matrix coordinate `(a, p, q)` of odd n.
#[pyfunction]
fn locate(n: BigUint) -> PyResult<(u32, u32, BigUint)> {
    let c = matrices::locate(&pos_odd(n)?);
    Ok((c.a.value(), c.p, c.q))
}

/// Entry `I_a(p, q)`.
#[pyfunction]
fn entry(a: u64, p: u32, q: BigUint) -> PyResult<BigUint> {
    Ok(matrices::entry(&Coord::new(branch(a)?, p, q)).into_inner())
}

/// Syracuse image computed as `6q + a` from the coordinate of n.
#[pyfunction]
fn syr_via_matrix(n: BigUint) -> PyResult<BigUint> {
    Ok(matrices::syr_via_matrix(&pos_odd(n)?).into_inner())
}

/// `"r1"`, `"r3"` or `"r5"`.
#[pyfunction]
fn residue6(n: BigUint) -> PyResult<String> {
    Ok(matrices::residue6(&pos_odd(n)?).to_string())
}

/// Column `m` of `I_child` attaching to `I_parent(x, q)`, or None.
#[pyfunction]
fn connection(child: u64, parent: u64, x: u32, q: BigUint) -> PyResult<Option<BigUint>> {
    Ok(matrices::connection(branch(child)?, branch(parent)?, x, &q)
        .defined()
        .cloned())
}

fn finish(terms: Vec<BigUint>, truncated: bool, budget: u64, strict: bool) -> PyResult<Vec<BigUint>> {
    if truncated && strict {
        return Err(Undecided::new_err(format!("undecided at budget {budget}")));
    }
    Ok(terms)
}

/// Syracuse sequence generated through the matrices. Raises `Undecided`
/// when the budget runs out, unless `strict=False`.
#[pyfunction]
#[pyo3(signature = (n, budget = DEFAULT_BUDGET, strict = true))]
fn syrgen(n: BigUint, budget: u64, strict: bool) -> PyResult<Vec<BigUint>> {
    let s = sequences::syrgen(&pos_odd(n)?, budget);
    finish(s.terms, s.truncated, budget, strict)
}

/// Syracuse sequence by direct iteration.
#[pyfunction]
#[pyo3(signature = (n, budget = DEFAULT_BUDGET, strict = true))]
fn syr_seq_oracle(n: BigUint, budget: u64, strict: bool) -> PyResult<Vec<BigUint>> {
    let s = sequences::syr_seq_oracle(&pos_odd(n)?, budget);
    finish(s.terms, s.truncated, budget, strict)
}

/// Collatz sequence; the budget counts Collatz steps.
#[pyfunction]
#[pyo3(signature = (n, budget = DEFAULT_BUDGET, strict = true))]
fn col_seq(n: BigUint, budget: u64, strict: bool) -> PyResult<Vec<BigUint>> {
    let s = sequences::col_seq(&pos_int(n)?, budget);
    finish(s.terms, s.truncated, budget, strict)
}

/// `{"stopping_time", "max_term", "odd_steps", "truncated"}` for a seed.
/// `stopping_time` is None when the budget ran out.
#[pyfunction]
#[pyo3(signature = (n, kind = "col", budget = DEFAULT_BUDGET))]
fn stats<'py>(py: Python<'py>, n: BigUint, kind: &str, budget: u64) -> PyResult<Bound<'py, PyAny>> {
    let st = match kind {
        "col" => sequences::col_stats(&pos_int(n)?, budget),
        "syr" => sequences::stats(&sequences::syrgen(&pos_odd(n)?, budget)),
        other => return Err(PyValueError::new_err(format!("kind must be 'col' or 'syr', got {other:?}"))),
    };
    let d = pyo3::types::PyDict::new(py);
    d.set_item("stopping_time", st.stopping_time)?;
    d.set_item("truncated", st.stopping_time.is_none())?;
    d.set_item("max_term", st.max_term)?;
    d.set_item("odd_steps", st.odd_steps)?;
    Ok(d.into_any())
}

/// Components visited from n down to the root, as `(a, q, term)` triples.
#[pyfunction]
#[pyo3(signature = (n, max_steps = DEFAULT_BUDGET))]
fn path_to_root(n: BigUint, max_steps: u64) -> PyResult<Vec<(u32, BigUint, BigUint)>> {
    let path = tree::path_to_root(&pos_odd(n)?, max_steps);
    if !path.reached_root() {
        return Err(Undecided::new_err(format!("root not reached in {max_steps} steps")));
    }
    Ok(path
        .steps
        .into_iter()
        .map(|s| (s.component.a.value(), s.component.q, s.term))
        .collect())
}

type Edge = ((u32, BigUint), (u32, BigUint), u32, BigUint);

/// Component connection tree.
#[pyclass(name = "Tree", frozen)]
struct PyTree {
    inner: tree::Tree,
}

#[pymethods]
impl PyTree {
    #[new]
    #[pyo3(signature = (levels, max_p = 4, max_value = None, black = false))]
    fn new(py: Python<'_>, levels: u32, max_p: u32, max_value: Option<BigUint>, black: bool) -> Self {
        let inner = py.detach(|| tree::build_tree_with(levels, max_p, max_value, black));
        PyTree { inner }
    }

    #[getter]
    fn depth(&self) -> usize {
        self.inner.depth()
    }

    #[getter]
    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    /// Components at level r as `(a, q)` pairs.
    fn level(&self, r: usize) -> Vec<(u32, BigUint)> {
        self.inner
            .level_nodes(r)
            .into_iter()
            .map(|c| (c.a.value(), c.q.clone()))
            .collect()
    }

    /// Edges as `((a, q) parent, (a, q) child, p, via)`.
    fn edges(&self) -> Vec<Edge> {
        let pair = |c: &ComponentId| (c.a.value(), c.q.clone());
        self.inner
            .edges()
            .map(|e| (pair(&e.parent), pair(&e.child), e.p, e.via.clone()))
            .collect()
    }

    fn to_dot(&self) -> String {
        self.inner.to_dot()
    }

    fn to_json(&self) -> PyResult<String> {
        let mut buf = Vec::new();
        self.inner
            .export(ExportFormat::Json, &mut buf)
            .map_err(value_err)?;
        String::from_utf8(buf).map_err(value_err)
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        json_to_py(py, &self.to_json()?)
    }

    fn __len__(&self) -> usize {
        self.inner.node_count()
    }

    fn __repr__(&self) -> String {
        format!("Tree(depth={}, nodes={})", self.inner.depth(), self.inner.node_count())
    }
}

/// Run verification suites and return the report as a dict.
/// `suites` takes ids such as "T2.9" or "sweep"; None runs all of them.
#[pyfunction]
#[pyo3(signature = (suites = None, bound = None, from_ = None, budget = DEFAULT_BUDGET, workers = None))]
fn verify<'py>(
    py: Python<'py>,
    suites: Option<Vec<String>>,
    bound: Option<u64>,
    from_: Option<u64>,
    budget: u64,
    workers: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let suites: Vec<Suite> = match suites {
        None => Suite::ALL.to_vec(),
        Some(ids) => ids
            .iter()
            .map(|s| s.parse::<Suite>().map_err(value_err))
            .collect::<PyResult<_>>()?,
    };
    if workers == Some(0) {
        return Err(PyValueError::new_err("workers must be at least 1"));
    }
    let cfg = VerifyConfig {
        from: from_,
        bound,
        budget,
        workers,
        ..VerifyConfig::default()
    };
    let report = py.detach(|| checks::run_suites(&suites, &cfg));
    json_to_py(py, &report.to_json())
}

/// Convergence sweep of `[lo, hi]`; the report as a dict.
#[pyfunction]
#[pyo3(signature = (lo, hi, budget = DEFAULT_BUDGET))]
fn sweep<'py>(py: Python<'py>, lo: u64, hi: u64, budget: u64) -> PyResult<Bound<'py, PyAny>> {
    if lo == 0 || lo > hi {
        return Err(PyValueError::new_err("need 1 <= lo <= hi"));
    }
    let report = py.detach(|| checks::sweep_convergence(lo, hi, budget));
    json_to_py(py, &serde_json::to_string(&report).map_err(value_err)?)
}

/// Table A rows as `(q, (8q+1, 8q+3, 8q+5, 8q+7), (S_1, S_3, S_5, S_7))`.
#[pyfunction]
#[pyo3(signature = (rows = 16))]
fn table_a(rows: u64) -> Vec<(u64, [u64; 4], [u64; 4])> {
    checks::table_a(rows).into_iter().map(|r| (r.q, r.n, r.s)).collect()
}

/// Defined Table B cells as `(parent, child, x, y, m)`.
#[pyfunction]
#[pyo3(signature = (max_x = 8, columns = 16))]
fn table_b(max_x: u32, columns: u64) -> Vec<(u32, u32, u32, u64, BigUint)> {
    checks::table_b(max_x, columns)
        .into_iter()
        .map(|c| (c.parent.value(), c.child.value(), c.x, c.y, c.m))
        .collect()
}

#[pymodule]
fn ccm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("Undecided", m.py().get_type::<Undecided>())?;
    m.add("DEFAULT_BUDGET", DEFAULT_BUDGET)?;
    m.add_class::<PyTree>()?;
    m.add_function(wrap_pyfunction!(v2, m)?)?;
    m.add_function(wrap_pyfunction!(syr, m)?)?;
    m.add_function(wrap_pyfunction!(col_step, m)?)?;
    m.add_function(wrap_pyfunction!(locate, m)?)?;
    m.add_function(wrap_pyfunction!(entry, m)?)?;
    m.add_function(wrap_pyfunction!(syr_via_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(residue6, m)?)?;
    m.add_function(wrap_pyfunction!(connection, m)?)?;
    m.add_function(wrap_pyfunction!(syrgen, m)?)?;
    m.add_function(wrap_pyfunction!(syr_seq_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(col_seq, m)?)?;
    m.add_function(wrap_pyfunction!(stats, m)?)?;
    m.add_function(wrap_pyfunction!(path_to_root, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(table_a, m)?)?;
    m.add_function(wrap_pyfunction!(table_b, m)?)?;
    Ok(())
}
