//! Python bindings. Colorings cross the boundary as lists of 1-based colors
//! indexed by edge; verifier results come back as `(valid, witness)` with
//! `witness` set to `None` when the coloring is valid.

use lab::{EdgeColoring, Family, FamilySpec, TieBreak, Verdict};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(cfclab, BudgetExceeded, PyException);

fn err(e: lab::Error) -> PyErr {
    match e {
        lab::Error::BudgetExceeded { .. } => BudgetExceeded::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn coloring(colors: Vec<u32>) -> PyResult<EdgeColoring> {
    EdgeColoring::new(colors).map_err(err)
}

fn verdict(v: Verdict) -> (bool, Option<(usize, usize)>) {
    match v {
        Verdict::Valid => (true, None),
        Verdict::Invalid { witness } => (false, Some(witness)),
    }
}

/// A tree on vertices `0..n` with an indexed edge list.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Tree {
    inner: lab::Tree,
}

#[pymethods]
impl Tree {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Tree {
            inner: lab::Tree::new(n, edges).map_err(err)?,
        })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Tree {
            inner: lab::io::read_tree(text).map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn degree(&self, v: usize) -> usize {
        self.inner.degree(v)
    }

    fn max_degree(&self) -> usize {
        self.inner.max_degree()
    }

    fn diameter(&self) -> usize {
        self.inner.diameter()
    }

    fn path_edges(&self, u: usize, v: usize) -> PyResult<Vec<usize>> {
        self.inner.path_edges(u, v).map_err(err)
    }

    fn balanced_edges(&self) -> PyResult<Vec<usize>> {
        self.inner.balanced_edges().map_err(err)
    }

    fn canonical(&self) -> Tree {
        Tree {
            inner: self.inner.canonical(),
        }
    }

    fn to_edge_list(&self) -> String {
        lab::io::write_tree(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Tree(n={}, edges={:?})", self.inner.n(), self.inner.edges())
    }
}

#[pyfunction]
fn is_cfc_coloring(tree: &Tree, colors: Vec<u32>) -> PyResult<(bool, Option<(usize, usize)>)> {
    Ok(verdict(lab::is_cfc_coloring(&tree.inner, &coloring(colors)?).map_err(err)?))
}

#[pyfunction]
fn is_odd_connected(tree: &Tree, colors: Vec<u32>) -> PyResult<(bool, Option<(usize, usize)>)> {
    Ok(verdict(lab::is_odd_connected(&tree.inner, &coloring(colors)?).map_err(err)?))
}

#[pyfunction]
fn is_edge_ranking(tree: &Tree, labels: Vec<u32>) -> PyResult<(bool, Option<(usize, usize)>)> {
    Ok(verdict(lab::is_edge_ranking(&tree.inner, &coloring(labels)?).map_err(err)?))
}

/// Parity vector of the `u`–`v` path as a list of bools, color 1 first.
#[pyfunction]
fn parity_vector(tree: &Tree, colors: Vec<u32>, u: usize, v: usize) -> PyResult<Vec<bool>> {
    Ok(lab::parity_vector(&tree.inner, &coloring(colors)?, u, v).map_err(err)?.bits())
}

/// Returns `(coloring, rounds)`; `rounds[i]` lists the edges deleted in
/// round `i + 1`.
#[pyfunction]
#[pyo3(signature = (tree, seed=None))]
fn algorithm1(tree: &Tree, seed: Option<u64>) -> PyResult<(Vec<u32>, Vec<Vec<usize>>)> {
    let policy = seed.map_or(TieBreak::LowestEdgeIndex, TieBreak::SeededRandom);
    let (c, trace) = lab::algorithm1(&tree.inner, policy).map_err(err)?;
    Ok((c.colors().to_vec(), trace.rounds))
}

#[pyfunction]
#[pyo3(signature = (tree, seed=None))]
fn depth(tree: &Tree, seed: Option<u64>) -> u32 {
    lab::depth(&tree.inner, seed.map_or(TieBreak::LowestEdgeIndex, TieBreak::SeededRandom))
}

#[pyfunction]
fn min_depth(py: Python<'_>, tree: &Tree) -> PyResult<u32> {
    let t = tree.inner.clone();
    py.detach(move || lab::min_depth(&t)).map_err(err)
}

fn report(py: Python<'_>, r: lab::SearchReport) -> PyResult<Bound<'_, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("value", r.value)?;
    d.set_item("certificate", r.certificate.colors().to_vec())?;
    d.set_item("lb", r.lower_bound_used)?;
    d.set_item("ub", r.upper_bound_used)?;
    d.set_item("nodes", r.nodes_explored)?;
    d.set_item("closed_form", r.closed_form)?;
    Ok(d)
}

macro_rules! solver {
    ($name:ident, $f:path) => {
        #[pyfunction]
        #[pyo3(signature = (tree, budget=lab::DEFAULT_BUDGET))]
        fn $name<'py>(py: Python<'py>, tree: &Tree, budget: u64) -> PyResult<Bound<'py, PyDict>> {
            let t = tree.inner.clone();
            let r = py.detach(move || $f(&t, budget)).map_err(err)?;
            report(py, r)
        }
    };
}

solver!(cfc_exact, lab::cfc_exact);
solver!(rank_exact, lab::rank_exact);
solver!(oc_exact, lab::oc_exact);

#[pyfunction]
fn cfc_lower_bound(tree: &Tree) -> PyResult<u32> {
    lab::cfc_lower_bound(&tree.inner).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (tree, budget=lab::DEFAULT_BUDGET))]
fn is_cfc_critical(py: Python<'_>, tree: &Tree, budget: u64) -> PyResult<bool> {
    let t = tree.inner.clone();
    Ok(py.detach(move || lab::is_cfc_critical(&t, budget)).map_err(err)?.is_critical)
}

/// Cut-edge bounds for a connected simple graph: `(h, lower, upper, resolved)`.
#[pyfunction]
#[pyo3(signature = (n, edges, budget=lab::DEFAULT_BUDGET))]
fn general_bounds(
    py: Python<'_>,
    n: usize,
    edges: Vec<(usize, usize)>,
    budget: u64,
) -> PyResult<(u32, u32, u32, Option<u32>)> {
    let g = lab::Graph::new(n, edges).map_err(err)?;
    let b = py.detach(move || lab::general_bounds(&g, budget)).map_err(err)?;
    Ok((b.h, b.lower, b.upper, b.resolved))
}

fn family_spec(family: &str, params: Vec<usize>) -> PyResult<FamilySpec> {
    let family: Family = family.parse().map_err(err)?;
    Ok(FamilySpec::new(family, &params))
}

#[pyfunction]
#[pyo3(signature = (family, *params))]
fn generate(family: &str, params: Vec<usize>) -> PyResult<Tree> {
    Ok(Tree {
        inner: lab::generate(&family_spec(family, params)?).map_err(err)?,
    })
}

/// Returns `(tree, coloring, k)` for families with a known construction.
#[pyfunction]
#[pyo3(signature = (family, *params))]
fn generate_with_certificate(family: &str, params: Vec<usize>) -> PyResult<(Tree, Vec<u32>, u32)> {
    let (t, c, k) = lab::generate_with_certificate(&family_spec(family, params)?).map_err(err)?;
    Ok((Tree { inner: t }, c.colors().to_vec(), k))
}

#[pyfunction]
fn random_tree(n: usize, seed: u64) -> Tree {
    Tree {
        inner: lab::random_tree(n, seed),
    }
}

#[pymodule]
fn cfclab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Tree>()?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add("DEFAULT_BUDGET", lab::DEFAULT_BUDGET)?;
    m.add_function(wrap_pyfunction!(is_cfc_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(is_odd_connected, m)?)?;
    m.add_function(wrap_pyfunction!(is_edge_ranking, m)?)?;
    m.add_function(wrap_pyfunction!(parity_vector, m)?)?;
    m.add_function(wrap_pyfunction!(algorithm1, m)?)?;
    m.add_function(wrap_pyfunction!(depth, m)?)?;
    m.add_function(wrap_pyfunction!(min_depth, m)?)?;
    m.add_function(wrap_pyfunction!(cfc_exact, m)?)?;
    m.add_function(wrap_pyfunction!(rank_exact, m)?)?;
    m.add_function(wrap_pyfunction!(oc_exact, m)?)?;
    m.add_function(wrap_pyfunction!(cfc_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(is_cfc_critical, m)?)?;
    m.add_function(wrap_pyfunction!(general_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(generate_with_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(random_tree, m)?)?;
    Ok(())
}
