use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use redform::cli::{self, CommandOptions};
use redform::doc::SystemDocument;
use redform::Error;

create_exception!(redform_py, RedformError, PyException);
create_exception!(redform_py, AlgebraicExtensionRequired, RedformError);
create_exception!(redform_py, ComponentExplosion, RedformError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Contract(_) | Error::Parse { .. } => PyValueError::new_err(e.to_string()),
        Error::AlgebraicExtensionRequired(_) => AlgebraicExtensionRequired::new_err(e.to_string()),
        Error::ComponentExplosion(_) => ComponentExplosion::new_err(e.to_string()),
        _ => RedformError::new_err(e.to_string()),
    }
}

fn run<R: Serialize>(
    document: &str,
    opts: CommandOptions,
    f: fn(&SystemDocument, &CommandOptions) -> redform::Result<R>,
) -> PyResult<String> {
    let doc = SystemDocument::from_json(document).map_err(to_py)?;
    let report = f(&doc, &opts).map_err(to_py)?;
    Ok(serde_json::to_string(&report).expect("reports serialize"))
}

fn options(check: bool, component_cap: usize, seed: u64, parallel: bool) -> CommandOptions {
    CommandOptions {
        check,
        component_cap,
        seed,
        parallel,
    }
}

/// Reduces a system document; returns the JSON report.
#[pyfunction]
#[pyo3(signature = (document, check=false, component_cap=64, seed=0, parallel=false))]
fn reduce(
    document: &str,
    check: bool,
    component_cap: usize,
    seed: u64,
    parallel: bool,
) -> PyResult<String> {
    run(
        document,
        options(check, component_cap, seed, parallel),
        cli::cmd_reduce,
    )
}

/// Lie algebra of a system document; returns the JSON report.
#[pyfunction]
#[pyo3(signature = (document, check=false))]
fn lie(document: &str, check: bool) -> PyResult<String> {
    run(document, options(check, 64, 0, false), cli::cmd_lie)
}

/// Adjoint action of a two-block system; returns the JSON report.
#[pyfunction]
#[pyo3(signature = (document, seed=0))]
fn psi(document: &str, seed: u64) -> PyResult<String> {
    run(document, options(false, 64, seed, false), cli::cmd_psi)
}

/// Rational solutions of a system document with optional right-hand sides.
#[pyfunction]
#[pyo3(signature = (document, check=false))]
fn ratsol(document: &str, check: bool) -> PyResult<String> {
    run(document, options(check, 64, 0, false), cli::cmd_ratsol)
}

/// Dense generators of the connected Galois group.
#[pyfunction]
#[pyo3(signature = (document, check=false))]
fn generators(document: &str, check: bool) -> PyResult<String> {
    run(document, options(check, 64, 0, false), cli::cmd_generators)
}

#[pymodule]
fn redform_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(lie, m)?)?;
    m.add_function(wrap_pyfunction!(psi, m)?)?;
    m.add_function(wrap_pyfunction!(ratsol, m)?)?;
    m.add_function(wrap_pyfunction!(generators, m)?)?;
    m.add("RedformError", m.py().get_type::<RedformError>())?;
    m.add(
        "AlgebraicExtensionRequired",
        m.py().get_type::<AlgebraicExtensionRequired>(),
    )?;
    m.add(
        "ComponentExplosion",
        m.py().get_type::<ComponentExplosion>(),
    )?;
    Ok(())
}
