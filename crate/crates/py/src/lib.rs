//! Python module `theta_zeros`.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use ::theta_zeros::numeric::{ComplexPoint, GammaMethod, Precision};
use ::theta_zeros::verify::VerifyConfig;
use ::theta_zeros::{Complex64, Error};

create_exception!(theta_zeros, ThetaZerosError, PyException);
create_exception!(theta_zeros, BudgetExceededError, ThetaZerosError);
create_exception!(theta_zeros, NumericalError, ThetaZerosError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::InvalidArgument(_) | Error::BelowImaginaryFloor { .. } | Error::UnitMismatch { .. } => {
            PyValueError::new_err(e.to_string())
        }
        Error::BudgetExceeded { .. } => BudgetExceededError::new_err(e.to_string()),
        _ => NumericalError::new_err(e.to_string()),
    }
}

fn parse_method(name: &str) -> PyResult<GammaMethod> {
    match name {
        "theta-pow" => Ok(GammaMethod::ThetaPow),
        "lambda-poly" => Ok(GammaMethod::LambdaPoly),
        "q-series" => Ok(GammaMethod::QSeries),
        _ => Err(PyValueError::new_err(format!("unknown method {name:?}; use theta-pow, lambda-poly or q-series"))),
    }
}

fn parse_precision(name: &str) -> PyResult<Precision> {
    match name {
        "double" => Ok(Precision::Double),
        "extended" => Ok(Precision::Extended),
        _ => Err(PyValueError::new_err(format!("unknown precision {name:?}; use double or extended"))),
    }
}

/// One zero of Θ_Γ8k at τ = 1/2 + iy.
#[pyclass(frozen, get_all, module = "theta_zeros")]
pub struct ZeroRecord {
    pub k: u32,
    pub m: u32,
    pub y: f64,
    pub phi: f64,
    pub residual_poly: f64,
    pub residual_qseries: f64,
}

#[pymethods]
impl ZeroRecord {
    #[getter]
    fn tau(&self) -> Complex64 {
        Complex64::new(0.5, self.y)
    }

    fn __repr__(&self) -> String {
        format!("ZeroRecord(k={}, m={}, y={:.12})", self.k, self.m, self.y)
    }
}

impl From<::theta_zeros::zeros::ZeroRecord> for ZeroRecord {
    fn from(r: ::theta_zeros::zeros::ZeroRecord) -> Self {
        ZeroRecord {
            k: r.k,
            m: r.m,
            y: r.y,
            phi: r.phi,
            residual_poly: r.residual_poly,
            residual_qseries: r.residual_qseries,
        }
    }
}

/// The 2k roots of 1 + z^{2k} + (1 − z)^{2k}, grouped by where they lie.
#[pyclass(frozen, get_all, module = "theta_zeros")]
pub struct RootInventory {
    pub k: u32,
    pub line_upper: Vec<Complex64>,
    pub line_lower: Vec<Complex64>,
    pub unit_arc: Vec<Complex64>,
    pub shifted_arc: Vec<Complex64>,
    pub rho: Vec<Complex64>,
    pub rho_multiplicity: u32,
    pub k_prime: u32,
}

#[pymethods]
impl RootInventory {
    fn total_count(&self) -> usize {
        self.line_upper.len() + self.line_lower.len() + self.unit_arc.len() + self.shifted_arc.len() + self.rho.len()
    }

    fn __len__(&self) -> usize {
        self.total_count()
    }

    fn __repr__(&self) -> String {
        format!("RootInventory(k={}, roots={})", self.k, self.total_count())
    }
}

#[pyclass(frozen, get_all, module = "theta_zeros")]
pub struct HeightRow {
    pub m: u32,
    pub y_measured: f64,
    pub y_simple: f64,
    pub y_refined: f64,
    pub dev_refined: f64,
    pub dev_simple: f64,
    pub refined_bound: f64,
    pub simple_offset: f64,
}

/// Coefficients r(0..=order) of Θ_Γ8k in q.
#[pyfunction]
fn theta_gamma_series(k: u32, order: usize) -> PyResult<Vec<BigInt>> {
    Ok(::theta_zeros::series::theta_gamma_series(k, order).map_err(to_py)?.into_coeffs())
}

/// Coefficients a(0..=order) of λ in q^{1/2}.
#[pyfunction]
fn lambda_series(order: usize) -> PyResult<Vec<BigInt>> {
    Ok(::theta_zeros::series::lambda_series(order).map_err(to_py)?.into_coeffs())
}

/// Normalised Eisenstein series, coefficients as exact fraction strings.
#[pyfunction]
fn eisenstein_series(weight: u32, order: usize) -> PyResult<Vec<String>> {
    Ok(::theta_zeros::eisenstein::eisenstein_series(weight, order).map_err(to_py)?.to_strings())
}

/// Representation numbers of Γ_8k by direct enumeration.
#[pyfunction]
#[pyo3(signature = (k, n_max, budget = ::theta_zeros::lattice::DEFAULT_BUDGET))]
fn lattice_count(k: u32, n_max: usize, budget: u64) -> PyResult<Vec<u64>> {
    ::theta_zeros::lattice::lattice_count(k, n_max, budget).map_err(to_py)
}

/// Θ_Γ8k(τ) and a bound on the truncation error.
#[pyfunction]
#[pyo3(signature = (k, tau, eps = 1e-14, method = "lambda-poly", precision = "double"))]
fn theta_gamma_eval(k: u32, tau: Complex64, eps: f64, method: &str, precision: &str) -> PyResult<(Complex64, f64)> {
    let r = ::theta_zeros::numeric::theta_gamma_eval_with(
        k,
        ComplexPoint { re: tau.re, im: tau.im },
        eps,
        parse_method(method)?,
        parse_precision(precision)?,
    )
    .map_err(to_py)?;
    Ok((r.value, r.tail_bound))
}

/// λ(τ).
#[pyfunction]
#[pyo3(signature = (tau, eps = 1e-15))]
fn lambda_eval(tau: Complex64, eps: f64) -> PyResult<Complex64> {
    let r = ::theta_zeros::numeric::lambda_eval(ComplexPoint { re: tau.re, im: tau.im }, eps).map_err(to_py)?;
    Ok(r.value)
}

/// The ⌊k/3⌋ zeros on Re τ = 1/2, highest first.
#[pyfunction]
#[pyo3(name = "theta_zeros", signature = (k, tol = 1e-12))]
fn zeros(py: Python<'_>, k: u32, tol: f64) -> PyResult<Vec<ZeroRecord>> {
    let z = py.detach(|| ::theta_zeros::zeros::theta_zeros(k, tol)).map_err(to_py)?;
    Ok(z.into_iter().map(ZeroRecord::from).collect())
}

#[pyfunction]
#[pyo3(signature = (k, tol = 1e-14))]
fn classify_roots(py: Python<'_>, k: u32, tol: f64) -> PyResult<RootInventory> {
    let r = py.detach(|| ::theta_zeros::zeros::classify_roots(k, tol)).map_err(to_py)?;
    Ok(RootInventory {
        k: r.k,
        line_upper: r.line_upper,
        line_lower: r.line_lower,
        unit_arc: r.unit_arc,
        shifted_arc: r.shifted_arc,
        rho: r.rho,
        rho_multiplicity: r.rho_multiplicity,
        k_prime: r.k_prime,
    })
}

/// Limiting density of zero heights at y ≥ √3/2.
#[pyfunction]
fn density(y: f64) -> PyResult<f64> {
    ::theta_zeros::analysis::density(y).map_err(to_py)
}

#[pyfunction]
fn total_mass() -> PyResult<f64> {
    ::theta_zeros::analysis::total_mass().map_err(to_py)
}

/// `(arc sup-distance, 3/ℓ)` for the arc angles at this k.
#[pyfunction]
#[pyo3(signature = (k, bins = 10))]
fn equidistribution(py: Python<'_>, k: u32, bins: usize) -> PyResult<(f64, f64)> {
    let r = py.detach(|| ::theta_zeros::analysis::equidistribution(k, bins)).map_err(to_py)?;
    Ok((r.arc_sup_distance, r.bound))
}

#[pyfunction]
fn height_law(py: Python<'_>, k: u32, m_max: u32) -> PyResult<Vec<HeightRow>> {
    let r = py.detach(|| ::theta_zeros::analysis::height_law(k, m_max)).map_err(to_py)?;
    Ok(r.rows
        .into_iter()
        .map(|h| HeightRow {
            m: h.m,
            y_measured: h.y_measured,
            y_simple: h.y_simple,
            y_refined: h.y_refined,
            dev_refined: h.dev_refined,
            dev_simple: h.dev_simple,
            refined_bound: h.refined_bound,
            simple_offset: h.simple_offset,
        })
        .collect())
}

/// Runs the invariant suite; returns `(passed, failed check names)`.
#[pyfunction]
#[pyo3(signature = (quick = true))]
fn verify(py: Python<'_>, quick: bool) -> (bool, Vec<String>) {
    let s = py.detach(|| ::theta_zeros::verify::run_verify(&VerifyConfig { quick, inject_fault: None }));
    (s.passed, s.failed)
}

#[pymodule]
#[pyo3(name = "theta_zeros")]
fn theta_zeros_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("ThetaZerosError", py.get_type::<ThetaZerosError>())?;
    m.add("BudgetExceededError", py.get_type::<BudgetExceededError>())?;
    m.add("NumericalError", py.get_type::<NumericalError>())?;
    m.add_class::<ZeroRecord>()?;
    m.add_class::<RootInventory>()?;
    m.add_class::<HeightRow>()?;
    m.add_function(wrap_pyfunction!(theta_gamma_series, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_series, m)?)?;
    m.add_function(wrap_pyfunction!(eisenstein_series, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_count, m)?)?;
    m.add_function(wrap_pyfunction!(theta_gamma_eval, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_eval, m)?)?;
    m.add_function(wrap_pyfunction!(zeros, m)?)?;
    m.add_function(wrap_pyfunction!(classify_roots, m)?)?;
    m.add_function(wrap_pyfunction!(density, m)?)?;
    m.add_function(wrap_pyfunction!(total_mass, m)?)?;
    m.add_function(wrap_pyfunction!(equidistribution, m)?)?;
    m.add_function(wrap_pyfunction!(height_law, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
