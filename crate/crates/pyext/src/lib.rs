//! Python bindings: field arithmetic, code construction, and the certifier
//! cascade, mirroring the `tgrs` CLI. Certification results cross the
//! boundary as JSON so the Python side sees the same records the CLI emits.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use tgrs_core as core;
use tgrs_core::{CertifyOptions, Family, InstanceSpec};

fn to_py(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(frozen, name = "Field")]
struct PyField {
    ctx: core::Field,
}

#[pymethods]
impl PyField {
    /// Field spec: "p", "p^m", or "p^m:coeffs" with modulus coefficients
    /// listed from the highest degree down.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(PyField { ctx: core::FieldCtx::parse(spec).map_err(to_py)? })
    }

    #[getter]
    fn q(&self) -> usize {
        self.ctx.q()
    }

    #[getter]
    fn p(&self) -> u64 {
        self.ctx.spec().p
    }

    #[getter]
    fn m(&self) -> u32 {
        self.ctx.spec().m
    }

    fn add(&self, a: u64, b: u64) -> PyResult<u64> {
        let (a, b) = (self.ctx.felt(a).map_err(to_py)?, self.ctx.felt(b).map_err(to_py)?);
        Ok(self.ctx.add(a, b).0 as u64)
    }

    fn mul(&self, a: u64, b: u64) -> PyResult<u64> {
        let (a, b) = (self.ctx.felt(a).map_err(to_py)?, self.ctx.felt(b).map_err(to_py)?);
        Ok(self.ctx.mul(a, b).0 as u64)
    }

    fn inv(&self, a: u64) -> PyResult<u64> {
        let a = self.ctx.felt(a).map_err(to_py)?;
        Ok(self.ctx.inv(a).map_err(to_py)?.0 as u64)
    }

    fn neg(&self, a: u64) -> PyResult<u64> {
        let a = self.ctx.felt(a).map_err(to_py)?;
        Ok(self.ctx.neg(a).0 as u64)
    }

    fn pow(&self, a: u64, e: u64) -> PyResult<u64> {
        let a = self.ctx.felt(a).map_err(to_py)?;
        Ok(self.ctx.pow(a, e).0 as u64)
    }

    fn __repr__(&self) -> String {
        format!("Field({:?})", self.ctx.spec().display_string())
    }
}

#[pyclass(name = "Code")]
struct PyCode {
    inner: core::LinearCode,
}

#[pymethods]
impl PyCode {
    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    /// RREF-canonical generator rows as integer encodings.
    fn generator(&self) -> Vec<Vec<u64>> {
        self.inner.generator().row_encodings()
    }

    fn dual(&self) -> PyCode {
        PyCode { inner: self.inner.dual() }
    }

    fn schur_square(&self) -> PyCode {
        PyCode { inner: self.inner.schur_square() }
    }

    #[pyo3(signature = (cap = core::DEFAULT_DISTANCE_CAP))]
    fn min_distance(&self, cap: u64) -> Option<usize> {
        self.inner.min_distance_exhaustive(cap).map(|w| w.weight)
    }

    fn contains(&self, word: Vec<u64>) -> PyResult<bool> {
        let v = core::VectorGF::from_encodings(self.inner.ctx().clone(), &word)
            .map_err(to_py)?;
        self.inner.contains(&v).map_err(to_py)
    }

    fn same_code(&self, other: &PyCode) -> PyResult<bool> {
        self.inner.same_code(&other.inner).map_err(to_py)
    }

    #[pyo3(signature = (limit = core::DEFAULT_ORACLE_LIMIT as u64))]
    fn oracle_is_grs(&self, limit: u64) -> Option<bool> {
        core::exhaustive_grs_oracle(&self.inner, limit as u128)
    }

    fn __repr__(&self) -> String {
        format!("Code(n={}, k={})", self.inner.n(), self.inner.k())
    }
}

fn spec_for(
    field: &str,
    family: Family,
    alpha: Vec<u64>,
    k: usize,
    twist: Option<(usize, usize, u64)>,
    v: Option<Vec<u64>>,
) -> InstanceSpec {
    let v = v.unwrap_or_else(|| vec![1; alpha.len()]);
    let (t, h, eta) = match twist {
        Some((t, h, eta)) => (Some(t), Some(h), Some(eta)),
        None => (None, None, None),
    };
    InstanceSpec { field: field.to_string(), family, alpha, v, k, t, h, eta }
}

#[pyfunction]
#[pyo3(signature = (field, alpha, k, v = None))]
fn grs(field: &str, alpha: Vec<u64>, k: usize, v: Option<Vec<u64>>) -> PyResult<PyCode> {
    let spec = spec_for(field, Family::Grs, alpha, k, None, v);
    Ok(PyCode { inner: spec.build().map_err(to_py)? })
}

#[pyfunction]
#[pyo3(signature = (field, alpha, k, t, h, eta, v = None, extended = false))]
#[allow(clippy::too_many_arguments)]
fn tgrs(
    field: &str,
    alpha: Vec<u64>,
    k: usize,
    t: usize,
    h: usize,
    eta: u64,
    v: Option<Vec<u64>>,
    extended: bool,
) -> PyResult<PyCode> {
    let family = if extended { Family::Etgrs } else { Family::Tgrs };
    let spec = spec_for(field, family, alpha, k, Some((t, h, eta)), v);
    Ok(PyCode { inner: spec.build().map_err(to_py)? })
}

/// Parity-check matrix of the length-n twisted code.
#[pyfunction]
#[pyo3(signature = (field, alpha, k, t, h, eta, v = None))]
fn parity_check(
    field: &str,
    alpha: Vec<u64>,
    k: usize,
    t: usize,
    h: usize,
    eta: u64,
    v: Option<Vec<u64>>,
) -> PyResult<Vec<Vec<u64>>> {
    let spec = spec_for(field, Family::Tgrs, alpha, k, Some((t, h, eta)), v);
    let ctx = spec.ctx().map_err(to_py)?;
    let m = core::tgrs_parity_check(
        &spec.twist_params(&ctx).map_err(to_py)?,
        &spec.evaluation_set(&ctx).map_err(to_py)?,
        &spec.multipliers(&ctx).map_err(to_py)?,
    )
    .map_err(to_py)?;
    Ok(m.row_encodings())
}

/// Runs the certifier cascade; returns the full report record as a JSON
/// string (same schema as the CLI).
#[pyfunction]
#[pyo3(signature = (field, family, alpha, k, t = None, h = None, eta = None, v = None))]
#[allow(clippy::too_many_arguments)]
fn certify(
    field: &str,
    family: &str,
    alpha: Vec<u64>,
    k: usize,
    t: Option<usize>,
    h: Option<usize>,
    eta: Option<u64>,
    v: Option<Vec<u64>>,
) -> PyResult<String> {
    let family: Family = family.parse().map_err(to_py)?;
    let v = v.unwrap_or_else(|| vec![1; alpha.len()]);
    let spec = InstanceSpec { field: field.to_string(), family, alpha, v, k, t, h, eta };
    let record = core::certify_instance(&spec, &CertifyOptions::default());
    serde_json::to_string(&record).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Re-verifies the certificate embedded in a JSON report record.
#[pyfunction]
fn verify_certificate(record_json: &str) -> PyResult<bool> {
    let record: core::ReportRecord = serde_json::from_str(record_json)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    core::verify_record(&record).map_err(to_py)
}

#[pymodule(name = "tgrs")]
fn tgrs_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyCode>()?;
    m.add_function(wrap_pyfunction!(grs, m)?)?;
    m.add_function(wrap_pyfunction!(self::tgrs, m)?)?;
    m.add_function(wrap_pyfunction!(parity_check, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    Ok(())
}
