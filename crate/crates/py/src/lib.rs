//! Python bindings. Errors map to `ValueError` (bad input), `ArithmeticError`
//! (accuracy targets missed) and `OSError` (files).

use std::path::PathBuf;

use pyo3::exceptions::{PyArithmeticError, PyOSError, PyValueError};
use pyo3::prelude::*;

use nfmertens::distribution;
use nfmertens::mstar::{self, DEFAULT_K_MAX};
use nfmertens::oscillation;
use nfmertens::zeros;
use nfmertens::{Error, FieldKind};

fn to_py(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::Accuracy(_) | Error::Multiplicity { .. } => PyArithmeticError::new_err(msg),
        Error::Io { .. } | Error::Parse { .. } | Error::Corrupt(_) | Error::Version { .. } => {
            PyOSError::new_err(msg)
        }
        Error::Domain(_) | Error::Resource { .. } | Error::PhaseMissing => PyValueError::new_err(msg),
    }
}

fn kind_of(imaginary: bool) -> FieldKind {
    if imaginary {
        FieldKind::Imaginary
    } else {
        FieldKind::Real
    }
}

/// Q(sqrt(delta)) for a fundamental discriminant delta.
#[pyclass(name = "QuadField", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyQuadField {
    inner: nfmertens::QuadField,
}

#[pymethods]
impl PyQuadField {
    #[new]
    fn new(delta: i64) -> PyResult<Self> {
        Ok(Self { inner: nfmertens::QuadField::new(delta).map_err(to_py)? })
    }

    #[getter]
    fn delta(&self) -> i64 {
        self.inner.delta()
    }

    #[getter]
    fn abs_disc(&self) -> u64 {
        self.inner.abs_disc()
    }

    #[getter]
    fn is_imaginary(&self) -> bool {
        self.inner.is_imaginary()
    }

    /// Kronecker symbol (delta / n).
    fn character(&self, n: i64) -> i8 {
        self.inner.character().value(n)
    }

    fn __repr__(&self) -> String {
        format!("QuadField({})", self.inner.delta())
    }
}

/// Sieved ideal counts and Mobius values up to a limit.
#[pyclass(name = "CoeffTables", frozen)]
pub struct PyCoeffTables {
    inner: nfmertens::CoeffTables,
}

#[pymethods]
impl PyCoeffTables {
    #[new]
    fn new(field: &PyQuadField, limit: usize) -> PyResult<Self> {
        Ok(Self { inner: nfmertens::CoeffTables::build(field.inner, limit).map_err(to_py)? })
    }

    #[getter]
    fn limit(&self) -> usize {
        self.inner.limit()
    }

    /// M_K(x) with half weight at integers.
    fn mertens(&self, x: f64) -> PyResult<f64> {
        self.inner.mertens(x).map_err(to_py)
    }

    /// M_K(n+).
    fn mertens_right_limit(&self, n: u64) -> PyResult<i64> {
        self.inner.mertens_right_limit(n).map_err(to_py)
    }

    /// mu_K(n) for 0 <= n <= limit (index 0 is unused).
    fn mu_k(&self) -> Vec<i32> {
        self.inner.mu_k().to_vec()
    }

    fn ideal_counts(&self) -> Vec<u32> {
        self.inner.ideal_counts().to_vec()
    }

    /// First n <= n_max with M_K(n+) + M_K*(n) > sqrt(n), as (n, ratio).
    #[pyo3(signature = (n_max, k_max = DEFAULT_K_MAX))]
    fn counterexample(&self, n_max: u64, k_max: u32) -> PyResult<Option<(u64, f64)>> {
        Ok(mstar::counterexample_search(&self.inner, n_max, k_max)
            .map_err(to_py)?
            .map(|c| (c.n, c.ratio)))
    }

    /// Samples of phi_K(y) = e^{-y/2} M_K(e^y) on [y0, y_max].
    #[pyo3(signature = (y0, y_max, step = 1e-3))]
    fn sample_phi(&self, y0: f64, y_max: f64, step: f64) -> PyResult<Vec<f64>> {
        Ok(distribution::sample_phi(&self.inner, y0, y_max, step).map_err(to_py)?.samples)
    }
}

/// Nontrivial zeros of zeta_K on the critical line.
#[pyclass(name = "ZeroSet", frozen)]
pub struct PyZeroSet {
    inner: zeros::ZeroSet,
}

#[pymethods]
impl PyZeroSet {
    #[staticmethod]
    fn compute(field: &PyQuadField, t_max: f64) -> PyResult<Self> {
        Ok(Self { inner: zeros::find_zeros(&field.inner, t_max).map_err(to_py)? })
    }

    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        Ok(Self { inner: zeros::load_zeros(&path).map_err(to_py)? })
    }

    fn save(&self, path: PathBuf) -> PyResult<()> {
        zeros::save_zeros(&self.inner, &path).map_err(to_py)
    }

    #[getter]
    fn t_max(&self) -> f64 {
        self.inner.t_max
    }

    #[getter]
    fn field(&self) -> PyQuadField {
        PyQuadField { inner: self.inner.field }
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn gammas(&self) -> Vec<f64> {
        self.inner.records.iter().map(|r| r.gamma).collect()
    }

    /// (component, gamma, |zeta_K'(rho)|) triples.
    fn records(&self) -> Vec<(&'static str, f64, f64)> {
        self.inner
            .records
            .iter()
            .map(|r| (r.component.as_str(), r.gamma, r.zk_deriv_abs))
            .collect()
    }

    /// Smoothed oscillation mean h*_{K,T}(t).
    fn h_star(&self, t_cut: f64, t: f64) -> PyResult<f64> {
        oscillation::h_star(&self.inner, t_cut, t).map_err(to_py)
    }

    /// 2 * sum over 0 < gamma <= t_cut of |rho zeta_K'(rho)|^{-2}.
    fn beta(&self, t_cut: f64) -> PyResult<f64> {
        distribution::beta_series(&self.inner, t_cut).map_err(to_py)
    }

    /// Product of J0(2 xi / |rho zeta_K'(rho)|) over the zeros.
    fn nu_hat(&self, xi: f64) -> PyResult<f64> {
        distribution::nu_hat_theoretical(&self.inner, xi).map_err(to_py)
    }
}

/// M_K*(x) for the field with discriminant delta.
#[pyfunction]
#[pyo3(signature = (delta, x, k_max = DEFAULT_K_MAX))]
fn mstar_value(delta: i64, x: f64, k_max: u32) -> PyResult<f64> {
    let k = nfmertens::QuadField::new(delta).map_err(to_py)?;
    Ok(mstar::mstar(&k, x, k_max).map_err(to_py)?.value)
}

/// (|delta|, M_K*(x)) for every fundamental discriminant up to d_max.
#[pyfunction]
#[pyo3(signature = (imaginary, d_max, x = 1.0, k_max = DEFAULT_K_MAX))]
fn table_scan(imaginary: bool, d_max: u64, x: f64, k_max: u32) -> PyResult<Vec<(u64, f64)>> {
    Ok(mstar::table_scan(kind_of(imaginary), d_max, x, k_max)
        .map_err(to_py)?
        .into_iter()
        .map(|r| (r.d, r.mstar))
        .collect())
}

#[pymodule]
fn pynfmertens(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQuadField>()?;
    m.add_class::<PyCoeffTables>()?;
    m.add_class::<PyZeroSet>()?;
    m.add_function(wrap_pyfunction!(mstar_value, m)?)?;
    m.add_function(wrap_pyfunction!(table_scan, m)?)?;
    Ok(())
}
