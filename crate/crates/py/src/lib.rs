use kindep_core::covering::{self, CoveringParams};
use kindep_core::graph::{self, Multigraph, Scripted};
use kindep_core::{loops, omega, order, DegreeSequence, Error};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(kindep, LimitExceeded, PyException);

fn py_err(e: Error) -> PyErr {
    if e.is_resource_guard() {
        LimitExceeded::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

/// A degree sequence, stored as a multiset of nonnegative integers.
#[pyclass(
    name = "DegreeSequence",
    module = "kindep",
    frozen,
    eq,
    hash,
    from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyDegreeSequence(DegreeSequence);

#[derive(FromPyObject)]
enum SeqArg {
    Seq(PyDegreeSequence),
    List(Vec<i64>),
}

impl SeqArg {
    fn into_inner(self) -> PyResult<DegreeSequence> {
        match self {
            SeqArg::Seq(d) => Ok(d.0),
            SeqArg::List(v) => DegreeSequence::new(v).map_err(py_err),
        }
    }
}

#[pymethods]
impl PyDegreeSequence {
    #[new]
    fn new(values: Vec<i64>) -> PyResult<Self> {
        DegreeSequence::new(values).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(py_err)
    }

    fn values(&self) -> Vec<u32> {
        self.0.to_vec()
    }

    fn __len__(&self) -> usize {
        self.0.order()
    }

    fn __repr__(&self) -> String {
        format!("DegreeSequence({})", self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    #[getter]
    fn sum(&self) -> u64 {
        self.0.sum()
    }

    #[getter]
    fn max(&self) -> Option<u32> {
        self.0.max()
    }

    fn mu(&self, z: u32) -> usize {
        self.0.mu(z)
    }

    fn sigma(&self) -> Vec<usize> {
        self.0.sigma().values().to_vec()
    }

    fn is_graphical(&self) -> bool {
        self.0.is_graphical()
    }

    fn is_trivial(&self, k: u32) -> bool {
        self.0.is_trivial(k)
    }

    #[pyo3(signature = (k=None))]
    fn ferrers(&self, k: Option<u32>) -> String {
        self.0.render_ferrers(k)
    }
}

fn wrap(d: DegreeSequence) -> PyDegreeSequence {
    PyDegreeSequence(d)
}

/// `b_k(D)`: the fewest vertices MAX can leave on any multigraph with these degrees.
#[pyfunction]
fn b(degrees: SeqArg, k: u32) -> PyResult<usize> {
    omega::b_value(&degrees.into_inner()?, k).map_err(py_err)
}

/// The Ω-chain `D, Ω(D), …` up to and including the first trivial term.
#[pyfunction]
fn omega_chain(degrees: SeqArg, k: u32) -> PyResult<Vec<PyDegreeSequence>> {
    let t = omega::b(&degrees.into_inner()?, k).map_err(py_err)?;
    Ok(t.chain.into_iter().map(wrap).collect())
}

#[pyfunction(name = "omega")]
fn omega_once(degrees: SeqArg, k: u32) -> PyResult<PyDegreeSequence> {
    omega::omega(&degrees.into_inner()?, k)
        .map(wrap)
        .map_err(py_err)
}

#[pyfunction]
fn decrement_sequence(degrees: SeqArg, k: u32) -> PyResult<Vec<u32>> {
    Ok(omega::decrement_sequence(&degrees.into_inner()?, k)
        .map_err(py_err)?
        .a)
}

#[pyfunction]
fn precedes(d: SeqArg, e: SeqArg, k: u32) -> PyResult<bool> {
    order::precedes(&d.into_inner()?, &e.into_inner()?, k).map_err(py_err)
}

#[pyfunction]
fn pseudo_reductions(degrees: SeqArg, k: u32) -> PyResult<Vec<PyDegreeSequence>> {
    let prs = order::pseudo_reductions(&degrees.into_inner()?, k).map_err(py_err)?;
    Ok(prs.into_iter().map(wrap).collect())
}

type EdgeList = Vec<(usize, usize, u32)>;

/// Returns `(n, edges, deletion_script)` for a multigraph where that MAX run
/// leaves exactly `b_k(D)` vertices.
#[pyfunction]
fn construct_worst_case(degrees: SeqArg, k: u32) -> PyResult<(usize, EdgeList, Vec<usize>)> {
    let w = graph::construct_worst_case(&degrees.into_inner()?, k).map_err(py_err)?;
    Ok((
        w.graph.order(),
        w.graph.edges().collect(),
        w.script.deletions,
    ))
}

/// Exact worst case of MAX: `(min_size, deletion_script)`.
#[pyfunction]
fn max_worst_case(n: usize, edges: EdgeList, k: u32) -> PyResult<(usize, Vec<usize>)> {
    let g = Multigraph::from_edges(n, edges).map_err(py_err)?;
    let wc = graph::max_worst_case(&g, k).map_err(py_err)?;
    Ok((wc.min_size, wc.script.deletions))
}

/// Replays a deletion script and returns the surviving vertices.
#[pyfunction]
fn max_run(n: usize, edges: EdgeList, k: u32, script: Vec<usize>) -> PyResult<Vec<usize>> {
    let g = Multigraph::from_edges(n, edges).map_err(py_err)?;
    let run = graph::max_run(&g, k, &mut Scripted::new(script)).map_err(py_err)?;
    Ok(run.independent_set)
}

#[pyfunction]
#[pyo3(signature = (v, kappa, lambda_=1))]
fn schonheim(v: u64, kappa: u64, lambda_: u64) -> PyResult<u64> {
    let params = CoveringParams::new(v, kappa, lambda_).map_err(py_err)?;
    Ok(covering::schonheim(&params))
}

/// Smallest block count not ruled out, searching upward from `start`
/// (the Schönheim bound by default).
#[pyfunction]
#[pyo3(signature = (v, kappa, lambda_=1, start=None))]
fn covering_lower_bound(v: u64, kappa: u64, lambda_: u64, start: Option<u64>) -> PyResult<u64> {
    let params = CoveringParams::new(v, kappa, lambda_).map_err(py_err)?;
    let z0 = start.unwrap_or_else(|| covering::schonheim(&params));
    Ok(covering::covering_lower_bound(&params, z0)
        .map_err(py_err)?
        .0)
}

#[pyfunction]
fn alpha_k_min_loops(degrees: SeqArg, k: u32) -> PyResult<usize> {
    loops::alpha_k_min_loops(&degrees.into_inner()?, k).map_err(py_err)
}

#[pymodule]
fn kindep(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDegreeSequence>()?;
    m.add("LimitExceeded", m.py().get_type::<LimitExceeded>())?;
    m.add_function(wrap_pyfunction!(b, m)?)?;
    m.add_function(wrap_pyfunction!(omega_chain, m)?)?;
    m.add_function(wrap_pyfunction!(omega_once, m)?)?;
    m.add_function(wrap_pyfunction!(decrement_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(precedes, m)?)?;
    m.add_function(wrap_pyfunction!(pseudo_reductions, m)?)?;
    m.add_function(wrap_pyfunction!(construct_worst_case, m)?)?;
    m.add_function(wrap_pyfunction!(max_worst_case, m)?)?;
    m.add_function(wrap_pyfunction!(max_run, m)?)?;
    m.add_function(wrap_pyfunction!(schonheim, m)?)?;
    m.add_function(wrap_pyfunction!(covering_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(alpha_k_min_loops, m)?)?;
    Ok(())
}
