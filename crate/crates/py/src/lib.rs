//! Python bindings. Structured results cross the boundary as JSON text and
//! are decoded by the `operadlab` Python package.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde_json::json;

use operadlab::cochain::{CochainComplex, PAlgebra};
use operadlab::cupnat::zp_solve;
use operadlab::linalg::cohomology_dims;
use operadlab::liecplx::soul_complex;
use operadlab::operads::catalog::planar_counterpart;
use operadlab::operads::{catalog, catalog_names as names};
use operadlab::permcplx::{block_acyclicity, primitives};
use operadlab::verify::{run_suite, suite_ids, SuiteConfig};
use operadlab::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::ResourceBound(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_json(v: serde_json::Value) -> String {
    v.to_string()
}

#[pyfunction]
fn catalog_names() -> Vec<String> {
    names().iter().map(|s| s.to_string()).collect()
}

#[pyfunction]
#[pyo3(signature = (operad, cap = 6, non_sigma = false))]
fn soul_cohomology(py: Python<'_>, operad: &str, cap: usize, non_sigma: bool) -> PyResult<String> {
    py.detach(|| {
        let e = if non_sigma { planar_counterpart(operad, cap)? } else { catalog(operad, cap)? };
        let t = cohomology_dims(&soul_complex(&e)?)?;
        Ok(to_json(json!({ "operad": e.name, "cap": cap, "table": t })))
    })
    .map_err(py_err)
}

#[pyfunction]
fn zp_dim(py: Python<'_>, operad: &str, n: usize) -> PyResult<usize> {
    py.detach(|| zp_solve(operad, n).map(|b| b.dim)).map_err(py_err)
}

#[pyfunction]
fn perm_blocks(py: Python<'_>, arity: usize) -> PyResult<String> {
    py.detach(|| {
        let mut out = Vec::new();
        for n in 1..=arity {
            for k in primitives(n) {
                out.push(block_acyclicity(&k, arity)?);
            }
        }
        Ok(to_json(json!(out)))
    })
    .map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (algebra_json, cap = 4))]
fn cochain_cohomology(py: Python<'_>, algebra_json: &str, cap: usize) -> PyResult<String> {
    py.detach(|| {
        let a = PAlgebra::from_json(algebra_json)?;
        Ok(to_json(json!(CochainComplex::new(&a, cap)?.cohomology()?)))
    })
    .map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (suite = "all", cap = 7, seed = 0))]
fn verify(py: Python<'_>, suite: &str, cap: usize, seed: u64) -> PyResult<String> {
    py.detach(|| {
        let r = run_suite(&suite_ids(suite)?, &SuiteConfig { soul_cap: cap, seed })?;
        Ok(to_json(json!(r)))
    })
    .map_err(py_err)
}

#[pymodule]
fn _core(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(soul_cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(zp_dim, m)?)?;
    m.add_function(wrap_pyfunction!(perm_blocks, m)?)?;
    m.add_function(wrap_pyfunction!(cochain_cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
