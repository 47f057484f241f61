//! Python bindings: documents go in and out as JSON text.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use stokes_gauss::io_cli::{self, Document};
use stokes_gauss::laplace::{inverse_laplace_transform, laplace_transform};
use stokes_gauss::laplace_oracle::verify_theorem;
use stokes_gauss::stokes_core::{rigidity_index, to_filtrations, to_matrices, StokesMatrices};
use stokes_gauss::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Parse { .. } => PyValueError::new_err(format!("{}: {}", e.kind(), e)),
        other => PyRuntimeError::new_err(format!("{}: {}", other.kind(), other)),
    }
}

fn matrices(text: &str) -> PyResult<StokesMatrices> {
    match io_cli::parse(text).map_err(py_err)? {
        Document::Matrices(m) => Ok(m),
        Document::Filtrations(f) => to_matrices(&f).map_err(py_err),
        Document::Report(_) => Err(PyValueError::new_err("expected Stokes data, got a report")),
    }
}

/// Violations of a matrices or filtrations document; empty when valid.
#[pyfunction]
fn validate(text: &str) -> PyResult<Vec<String>> {
    match io_cli::parse(text).map_err(py_err)? {
        Document::Matrices(m) => Ok(m.validate()),
        Document::Filtrations(f) => Ok(f.validate()),
        Document::Report(_) => Err(PyValueError::new_err("expected Stokes data, got a report")),
    }
}

#[pyfunction]
fn normalize(text: &str) -> PyResult<String> {
    let m = matrices(text)?.normalize().map_err(py_err)?;
    Ok(io_cli::serialize(&Document::Matrices(m)))
}

#[pyfunction]
fn filtrations(text: &str) -> PyResult<String> {
    let f = to_filtrations(&matrices(text)?).map_err(py_err)?;
    Ok(io_cli::serialize(&Document::Filtrations(f)))
}

/// Transformed filtrations document.
#[pyfunction]
#[pyo3(signature = (text, inverse = false))]
fn laplace(text: &str, inverse: bool) -> PyResult<String> {
    let f = to_filtrations(&matrices(text)?).map_err(py_err)?;
    let out = if inverse { inverse_laplace_transform(&f) } else { laplace_transform(&f) }.map_err(py_err)?;
    Ok(io_cli::serialize(&Document::Filtrations(out)))
}

#[pyfunction]
fn rigidity(text: &str) -> PyResult<usize> {
    Ok(rigidity_index(&matrices(text)?).map_err(py_err)?.index)
}

/// Verification report as JSON text.
#[pyfunction]
fn verify_laplace(text: &str) -> PyResult<String> {
    let rep = verify_theorem(&matrices(text)?, None).map_err(py_err)?;
    Ok(io_cli::json::to_value(&Document::Report(io_cli::Report { field: None, payload: io_cli::verify_report_json(&rep) })).to_string())
}

/// The command line: returns (exit code, stdout).
#[pyfunction]
#[pyo3(signature = (args, stdin = ""))]
fn run(args: Vec<String>, stdin: &str) -> (i32, String) {
    let argv = std::iter::once("stokes-gauss".to_string()).chain(args);
    io_cli::run(argv, &mut stdin.as_bytes())
}

#[pymodule]
fn stokes_gauss_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(filtrations, m)?)?;
    m.add_function(wrap_pyfunction!(laplace, m)?)?;
    m.add_function(wrap_pyfunction!(rigidity, m)?)?;
    m.add_function(wrap_pyfunction!(verify_laplace, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
