//! Python bindings. Reports come back as plain dicts and lists; complex
//! numbers map to Python `complex`.

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

use ::minsurf as core;
use core::experiment::{self, ExperimentConfig};
use core::metricgeo;
use core::output::to_json17;
use core::projgeom;

create_exception!(minsurf, MinsurfError, PyValueError);
create_exception!(minsurf, HypothesisError, MinsurfError);

fn err(e: core::Error) -> PyErr {
    match e {
        core::Error::Io(io) => PyOSError::new_err(io.to_string()),
        e if e.exit_code() == 3 => HypothesisError::new_err(e.to_string()),
        e => MinsurfError::new_err(e.to_string()),
    }
}

/// Any serializable value as Python objects, via JSON with 17-digit floats.
fn to_py<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = to_json17(value).map_err(|e| MinsurfError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "WeierstrassData", module = "minsurf", frozen)]
#[derive(Clone)]
struct PyWeierstrassData {
    inner: core::WeierstrassData,
}

#[pymethods]
impl PyWeierstrassData {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = serde_json::from_str(text).map_err(|e| MinsurfError::new_err(e.to_string()))?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        Ok(Self { inner: core::catalog::builtin(name).map_err(err)?.data })
    }

    fn to_json(&self) -> PyResult<String> {
        to_json17(&self.inner).map_err(|e| MinsurfError::new_err(e.to_string()))
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn domain(&self) -> (Complex64, f64) {
        let d = self.inner.domain();
        (d.center, d.radius)
    }

    fn with_domain(&self, center: Complex64, radius: f64) -> PyResult<Self> {
        let domain = core::DiskDomain::new(center, radius).map_err(err)?;
        Ok(Self { inner: self.inner.with_domain(domain) })
    }

    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.validate())
    }

    fn form_values(&self, z: Complex64) -> PyResult<Vec<Complex64>> {
        self.inner.form_values(z).map_err(err)
    }

    #[pyo3(signature = (z, quad_order = core::weierstrass::DEFAULT_QUAD_ORDER))]
    fn immersion_point(&self, z: Complex64, quad_order: usize) -> PyResult<Vec<f64>> {
        self.inner.immersion_point(z, quad_order).map_err(err)
    }

    fn conformal_factor(&self, z: Complex64) -> PyResult<f64> {
        self.inner.conformal_factor(z).map_err(err)
    }

    fn curvature(&self, z: Complex64) -> PyResult<f64> {
        self.inner.curvature(z).map_err(err)
    }

    /// Homogeneous coordinates of the generalized Gauss map.
    fn gauss_map(&self, z: Complex64) -> PyResult<Vec<Complex64>> {
        Ok(self.inner.gauss_map(z).map_err(err)?.homog().to_vec())
    }

    fn scale(&self, mu: f64) -> PyResult<Self> {
        Ok(Self { inner: self.inner.scale(mu).map_err(err)? })
    }

    fn __repr__(&self) -> String {
        let d = self.inner.domain();
        format!("WeierstrassData(m={}, center={}, radius={})", self.inner.m(), d.center, d.radius)
    }
}

#[pyclass(name = "HyperplaneSet", module = "minsurf", frozen)]
#[derive(Clone)]
struct PyHyperplaneSet {
    inner: core::HyperplaneSet,
}

#[pymethods]
impl PyHyperplaneSet {
    #[new]
    fn new(covectors: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let m = covectors.first().map_or(0, Vec::len);
        let planes = covectors
            .into_iter()
            .map(core::Hyperplane::new)
            .collect::<core::Result<Vec<_>>>()
            .map_err(err)?;
        Ok(Self { inner: core::HyperplaneSet::new(m, planes).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = serde_json::from_str(text).map_err(|e| MinsurfError::new_err(e.to_string()))?;
        Ok(Self { inner })
    }

    /// Designed omitted planes of a catalog entry.
    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        Ok(Self { inner: core::catalog::builtin(name).map_err(err)?.omitted })
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn covectors(&self) -> Vec<Vec<Complex64>> {
        self.inner.planes().iter().map(|p| p.covector().to_vec()).collect()
    }

    /// `(in_general_position, witness)`; the witness is the first dependent
    /// subset in lexicographic order, or `None`.
    fn general_position(&self) -> (bool, Option<Vec<usize>>) {
        let gp = projgeom::general_position(&self.inner);
        (gp.in_general_position, gp.witness)
    }

    fn to_json(&self) -> PyResult<String> {
        to_json17(&self.inner).map_err(|e| MinsurfError::new_err(e.to_string()))
    }
}

#[pyclass(name = "GridMetric", module = "minsurf", frozen)]
struct PyGridMetric {
    inner: core::GridMetric,
}

#[pymethods]
impl PyGridMetric {
    #[staticmethod]
    fn hyperbolic(n: usize) -> Self {
        Self { inner: core::GridMetric::hyperbolic(n) }
    }

    #[staticmethod]
    #[pyo3(name = "hyperbolic_truncated")]
    fn hyperbolic_truncated(n: usize, big_r: f64) -> Self {
        Self { inner: core::GridMetric::hyperbolic_truncated(n, big_r) }
    }

    #[staticmethod]
    fn flat(n: usize, value: f64) -> PyResult<Self> {
        Ok(Self { inner: core::GridMetric::flat(core::DiskDomain::unit(), n, value).map_err(err)? })
    }

    /// Induced metric of a surface on an `n x n` grid.
    #[staticmethod]
    fn sample(data: &PyWeierstrassData, n: usize) -> PyResult<Self> {
        Ok(Self { inner: metricgeo::sample_metric(&data.inner, n).map_err(err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn h(&self) -> f64 {
        self.inner.h()
    }

    /// Row-major `λ` values, `None` outside the disk.
    fn lambda_values(&self) -> Vec<Option<f64>> {
        self.inner
            .lambda_values()
            .iter()
            .zip(self.inner.mask())
            .map(|(l, m)| m.then_some(*l))
            .collect()
    }

    fn curvature_oracle(&self, i: usize, j: usize) -> PyResult<f64> {
        core::weierstrass::curvature_oracle(&self.inner, i, j).map_err(err)
    }

    /// Row-major graph distances from cell `(i, j)`, `None` where unreached.
    fn geodesic_distances(&self, i: usize, j: usize) -> PyResult<Vec<Option<f64>>> {
        let field = metricgeo::geodesic_distances(&self.inner, (i, j)).map_err(err)?;
        Ok(field.values().iter().map(|d| d.is_finite().then_some(*d)).collect())
    }

    fn dist_to_boundary(&self, i: usize, j: usize) -> PyResult<f64> {
        metricgeo::dist_to_boundary(&self.inner, (i, j)).map_err(err)
    }

    fn center_cell(&self) -> PyResult<(usize, usize)> {
        self.inner.center_cell().map_err(err)
    }

    fn comparison_check<'py>(&self, py: Python<'py>, big_r: f64) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &metricgeo::comparison_check(&self.inner, big_r).map_err(err)?)
    }

    fn to_csv(&self) -> PyResult<String> {
        let mut buf = Vec::new();
        metricgeo::write_metric_csv(&self.inner, &mut buf).map_err(err)?;
        Ok(String::from_utf8(buf).expect("ascii output"))
    }

    #[staticmethod]
    fn from_csv(text: &str) -> PyResult<Self> {
        Ok(Self { inner: metricgeo::read_metric_csv(text.as_bytes()).map_err(err)? })
    }
}

#[pyfunction]
fn catalog_list() -> Vec<&'static str> {
    core::catalog::list()
}

#[pyfunction]
fn hyperbolic_rho(z: Complex64) -> PyResult<f64> {
    metricgeo::hyperbolic_rho(z).map_err(err)
}

#[pyfunction]
#[pyo3(name = "radius_from_R")]
fn radius_from_r(big_r: f64) -> f64 {
    metricgeo::radius_from_R(big_r)
}

/// Sampled minimum incidence margin per plane: `[(index, margin, argmin)]`.
#[pyfunction]
fn omission_margin(
    data: &PyWeierstrassData,
    planes: &PyHyperplaneSet,
    grid_n: usize,
) -> PyResult<Vec<(usize, f64, Complex64)>> {
    let margins = projgeom::omission_margin(&data.inner, &planes.inner, grid_n).map_err(err)?;
    Ok(margins.into_iter().map(|m| (m.plane_index, m.min_margin, m.argmin)).collect())
}

/// `(sup |K|^{1/2} d, argmax z)`.
#[pyfunction]
#[pyo3(signature = (data, grid_n, quad_order = core::weierstrass::DEFAULT_QUAD_ORDER))]
fn curvature_distance_product(data: &PyWeierstrassData, grid_n: usize, quad_order: usize) -> PyResult<(f64, Complex64)> {
    let p = experiment::curvature_distance_product(&data.inner, grid_n, quad_order).map_err(err)?;
    Ok((p.sup, p.argmax))
}

/// `(rescaled data, report dict)`.
#[pyfunction]
fn renormalize<'py>(
    py: Python<'py>,
    data: &PyWeierstrassData,
    grid_n: usize,
) -> PyResult<(PyWeierstrassData, Bound<'py, PyAny>)> {
    let r = experiment::renormalize(&data.inner, grid_n).map_err(err)?;
    Ok((PyWeierstrassData { inner: r.data }, to_py(py, &r.report)?))
}

/// Runs an experiment from its JSON configuration and returns the report;
/// nothing is written to disk.
#[pyfunction]
fn run_experiment<'py>(py: Python<'py>, config_json: &str) -> PyResult<Bound<'py, PyAny>> {
    let cfg = ExperimentConfig::from_json(config_json).map_err(err)?;
    let report = py.detach(|| experiment::run_experiment(&cfg)).map_err(err)?;
    to_py(py, &report)
}

#[pymodule]
#[pyo3(name = "minsurf")]
fn minsurf_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("MinsurfError", m.py().get_type::<MinsurfError>())?;
    m.add("HypothesisError", m.py().get_type::<HypothesisError>())?;
    m.add_class::<PyWeierstrassData>()?;
    m.add_class::<PyHyperplaneSet>()?;
    m.add_class::<PyGridMetric>()?;
    m.add_function(wrap_pyfunction!(catalog_list, m)?)?;
    m.add_function(wrap_pyfunction!(hyperbolic_rho, m)?)?;
    m.add_function(wrap_pyfunction!(radius_from_r, m)?)?;
    m.add_function(wrap_pyfunction!(omission_margin, m)?)?;
    m.add_function(wrap_pyfunction!(curvature_distance_product, m)?)?;
    m.add_function(wrap_pyfunction!(renormalize, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
