//! Python bindings. Reports cross the boundary as JSON strings in the same
//! formats the command line writes.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use mumford_spectra::config::RunConfig;
use mumford_spectra::graphs::{classify_spectrum, enumerate_stable_graphs, Multigraph};
use mumford_spectra::spectral::spectrum_in_lattice as lattice;
use mumford_spectra::teichmueller::{epsilon_report, search_norm_decreasing, spectrum_table};
use mumford_spectra::Error;

fn err(e: Error) -> PyErr {
    match e {
        Error::TailBoundExceeded { .. } | Error::PrecisionExhausted(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_json<T: Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

fn config(json: Option<&str>) -> PyResult<RunConfig> {
    let cfg = match json {
        Some(s) => RunConfig::from_json(s).map_err(err)?,
        None => RunConfig::default(),
    };
    cfg.validate().map_err(err)?;
    Ok(cfg)
}

fn graph(json: &str, tree: Option<Vec<usize>>) -> PyResult<(Multigraph, Vec<usize>)> {
    let (g, file_tree) = Multigraph::from_json(json).map_err(err)?;
    let tree = match tree.or(file_tree) {
        Some(t) => t,
        None => g.spanning_trees().into_iter().next().ok_or_else(|| PyValueError::new_err("graph is not connected"))?,
    };
    Ok((g, tree))
}

/// Classification of a graph given as JSON; returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (graph_json, tree = None))]
fn classify(graph_json: &str, tree: Option<Vec<usize>>) -> PyResult<String> {
    let (g, t) = graph(graph_json, tree)?;
    to_json(&classify_spectrum(&g, &t).map_err(err)?)
}

/// Stable graphs of the given genus, as a JSON list of graphs.
#[pyfunction]
fn enumerate(genus: usize) -> PyResult<String> {
    let gs: Vec<_> = enumerate_stable_graphs(genus).map_err(err)?.iter().map(|g| g.to_json_struct()).collect();
    to_json(&gs)
}

#[pyfunction]
#[pyo3(signature = (config_json = None, points = 10, s = None))]
fn family(config_json: Option<&str>, points: usize, s: Option<i64>) -> PyResult<String> {
    let c = config(config_json)?;
    to_json(&epsilon_report(c.prime, c.degree, c.precision, c.norm_base, points, s, c.root_order).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (graph_json, config_json = None, tree = None))]
fn search(graph_json: &str, config_json: Option<&str>, tree: Option<Vec<usize>>) -> PyResult<String> {
    let c = config(config_json)?;
    let (g, t) = graph(graph_json, tree)?;
    let field = c.field().map_err(err)?;
    to_json(&search_norm_decreasing(&g, &t, &field, &c.grid()).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (graph_json, config_json = None, tree = None))]
fn spectrum(graph_json: &str, config_json: Option<&str>, tree: Option<Vec<usize>>) -> PyResult<String> {
    let c = config(config_json)?;
    let (g, t) = graph(graph_json, tree)?;
    let field = c.field().map_err(err)?;
    let report = search_norm_decreasing(&g, &t, &field, &c.grid()).map_err(err)?;
    to_json(&spectrum_table(&report, &c.symbol().map_err(err)?, c.rho))
}

/// Whether every `v + λ` is an integer power of `base`.
#[pyfunction]
fn spectrum_in_lattice(values: Vec<f64>, lam: f64, base: f64) -> bool {
    lattice(&values, lam, base).is_contained()
}

#[pyfunction]
#[pyo3(signature = (config_json = None))]
fn selftest(config_json: Option<&str>) -> PyResult<String> {
    let c = config(config_json)?;
    to_json(&mumford_spectra::selftest::selftest(&c).map_err(err)?)
}

#[pymodule]
fn mumford_spectra_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(family, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum_in_lattice, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
