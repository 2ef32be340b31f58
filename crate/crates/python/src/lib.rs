//! Python module `shefferzeta`.
//!
//! Exact values come back as `int` / `fractions.Fraction`; reports come back
//! as plain dicts with the same shape as the CLI's JSON.

use pyo3::exceptions::{PyKeyError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyList;
use serde::Serialize;

use sz::bernoulli_euler::{self, NumberKind};
use sz::identities;
use sz::quadrature::{self, Params, Precision};
use sz::rational::parse_rational;
use sz::sheffer::{self, Sequence, SequenceRoute};
use sz::{Error, IntPoly, Rational};

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::UnknownCheck(_) => PyKeyError::new_err(e.to_string()),
        Error::InvalidArgument(_) | Error::Divergent(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((r.to_string(),))
}

fn int<'py>(py: Python<'py>, v: &impl ToString) -> PyResult<Bound<'py, PyAny>> {
    py.import("builtins")?.getattr("int")?.call1((v.to_string(),))
}

fn json<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.getattr("loads")?.call1((text,))
}

/// `str(x)` parsed as an exact rational (`int`, `Fraction`, or text like "1/3").
fn rational_arg(x: &Bound<'_, PyAny>) -> PyResult<Rational> {
    parse_rational(&x.str()?.to_string()).map_err(to_py_err)
}

fn precision(digits: u32) -> PyResult<Precision> {
    Precision::new(digits).map_err(to_py_err)
}

fn float_arg(x: &Bound<'_, PyAny>, prec: Precision) -> PyResult<rug::Float> {
    let text = x.str()?.to_string();
    let parsed = match text.split_once('/') {
        Some((a, b)) => prec.parse(a).and_then(|a| Ok(a / prec.parse(b)?)),
        None => prec.parse(&text),
    };
    parsed.map_err(to_py_err)
}

/// Polynomial with integer coefficients, stored low-to-high.
#[pyclass(name = "Poly", module = "shefferzeta", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPoly {
    inner: IntPoly,
}

#[pymethods]
impl PyPoly {
    #[new]
    fn new(coeffs: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let items: Vec<String> = coeffs.iter().map(|c| c.str().map(|s| s.to_string())).collect::<PyResult<_>>()?;
        Ok(Self { inner: IntPoly::from_strings(&items).map_err(to_py_err)? })
    }

    #[getter]
    fn coeffs<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let items = self.inner.coeffs().iter().map(|c| int(py, c)).collect::<PyResult<Vec<_>>>()?;
        PyList::new(py, items)
    }

    #[getter]
    fn degree(&self) -> Option<usize> {
        self.inner.degree()
    }

    /// Exact value at a rational point.
    fn eval<'py>(&self, py: Python<'py>, x: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        let x = rational_arg(x)?;
        fraction(py, &self.inner.to_rational().eval(&x))
    }

    fn derivative(&self) -> Self {
        Self { inner: self.inner.derivative() }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({:?})", self.inner.to_strings())
    }
}

/// A numeric value with an estimated absolute error. Digits are kept as
/// strings so nothing is lost to `float`.
#[pyclass(name = "NumReal", module = "shefferzeta", frozen)]
struct PyNumReal {
    #[pyo3(get)]
    value: String,
    #[pyo3(get)]
    err: String,
    #[pyo3(get)]
    digits: u32,
    approx: f64,
}

impl From<quadrature::NumReal> for PyNumReal {
    fn from(v: quadrature::NumReal) -> Self {
        Self {
            value: v.to_string(),
            err: quadrature::format_float(&v.err, 3),
            digits: v.justified_digits(),
            approx: v.to_f64(),
        }
    }
}

#[pymethods]
impl PyNumReal {
    fn __float__(&self) -> f64 {
        self.approx
    }

    fn __str__(&self) -> String {
        self.value.clone()
    }

    fn __repr__(&self) -> String {
        format!("NumReal('{}', err={})", self.value, self.err)
    }
}

fn route_arg(seq: Sequence, route: Option<&str>) -> PyResult<SequenceRoute> {
    route.map(str::parse).transpose().map_err(to_py_err).map(|r| r.unwrap_or(SequenceRoute::default_for(seq)))
}

/// `p_n` by the given route (default: the differential recurrence).
#[pyfunction]
#[pyo3(signature = (n, route=None))]
fn gen_p(n: usize, route: Option<&str>) -> PyResult<PyPoly> {
    let route = route_arg(Sequence::P, route)?;
    Ok(PyPoly { inner: sheffer::gen(Sequence::P, n, route).map_err(to_py_err)? })
}

/// `q_n` by the given route (default: the derivative sum).
#[pyfunction]
#[pyo3(signature = (n, route=None))]
fn gen_q(n: usize, route: Option<&str>) -> PyResult<PyPoly> {
    let route = route_arg(Sequence::Q, route)?;
    Ok(PyPoly { inner: sheffer::gen(Sequence::Q, n, route).map_err(to_py_err)? })
}

#[pyfunction]
fn routes(seq: &str) -> PyResult<Vec<&'static str>> {
    let seq = match seq {
        "p" => Sequence::P,
        "q" => Sequence::Q,
        _ => return Err(PyValueError::new_err(format!("unknown sequence `{seq}`"))),
    };
    Ok(SequenceRoute::routes_for(seq).iter().map(|r| r.as_str()).collect())
}

#[pyfunction]
fn bernoulli_number(py: Python<'_>, n: usize) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &bernoulli_euler::bernoulli_number(n))
}

#[pyfunction]
fn euler_number(py: Python<'_>, n: usize) -> PyResult<Bound<'_, PyAny>> {
    int(py, &bernoulli_euler::euler_number(n))
}

/// `B_{2n}` by one of the sequence-based formulas.
#[pyfunction]
fn bernoulli_via<'py>(py: Python<'py>, n: usize, variant: &str) -> PyResult<Bound<'py, PyAny>> {
    let v = variant.parse().map_err(to_py_err)?;
    fraction(py, &bernoulli_euler::bernoulli_via_moment(n, v).map_err(to_py_err)?)
}

/// `E_{2n}` by one of the alternative routes.
#[pyfunction]
fn euler_via<'py>(py: Python<'py>, n: usize, variant: &str) -> PyResult<Bound<'py, PyAny>> {
    let v = variant.parse().map_err(to_py_err)?;
    int(py, &bernoulli_euler::euler_via(n, v).map_err(to_py_err)?)
}

/// The rational `ζ(2n)/π^{2n}`.
#[pyfunction]
#[pyo3(signature = (n, variant="euler_2_10"))]
fn zeta_even_ratio<'py>(py: Python<'py>, n: usize, variant: &str) -> PyResult<Bound<'py, PyAny>> {
    let v = variant.parse().map_err(to_py_err)?;
    fraction(py, &bernoulli_euler::zeta_even_ratio(n, v).map_err(to_py_err)?)
}

#[pyfunction]
#[pyo3(signature = (kind, n_max, variant=None, cross_check=false))]
fn number_table<'py>(
    py: Python<'py>,
    kind: &str,
    n_max: usize,
    variant: Option<&str>,
    cross_check: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let kind: NumberKind = kind.parse().map_err(to_py_err)?;
    let rows = bernoulli_euler::number_table(kind, n_max, variant, cross_check).map_err(to_py_err)?;
    json(py, &rows)
}

#[pyfunction]
fn check_ids() -> Vec<&'static str> {
    identities::check_ids().collect()
}

#[pyfunction]
fn run_check<'py>(py: Python<'py>, id: &str, n_max: usize) -> PyResult<Bound<'py, PyAny>> {
    let report = py.detach(|| identities::run_check(id, n_max)).map_err(to_py_err)?;
    json(py, &report)
}

#[pyfunction]
#[pyo3(signature = (n_max=20))]
fn run_all(py: Python<'_>, n_max: usize) -> PyResult<Bound<'_, PyAny>> {
    let reports = py.detach(|| identities::run_all(n_max)).map_err(to_py_err)?;
    json(py, &reports)
}

/// Runs the suite against a caller-supplied table `p_0..p_N` (e.g. a
/// deliberately corrupted one).
#[pyfunction]
fn run_with_p<'py>(py: Python<'py>, n_max: usize, p: Vec<PyRef<'py, PyPoly>>) -> PyResult<Bound<'py, PyAny>> {
    let table: Vec<IntPoly> = p.iter().map(|q| q.inner.clone()).collect();
    let reports = py
        .detach(|| identities::Context::with_p(n_max, table).and_then(|ctx| identities::run_with(&ctx, &[])))
        .map_err(to_py_err)?;
    json(py, &reports)
}

#[pyfunction]
fn numeric_check_ids() -> Vec<&'static str> {
    quadrature::numeric_check_ids()
}

#[pyfunction]
#[pyo3(signature = (id, prec=30, tol=None, n=None, point=None))]
fn verify_numeric<'py>(
    py: Python<'py>,
    id: &str,
    prec: u32,
    tol: Option<f64>,
    n: Option<usize>,
    point: Option<String>,
) -> PyResult<Bound<'py, PyAny>> {
    let prec = precision(prec)?;
    let params = Params { n, point };
    let results = py.detach(|| quadrature::verify_numeric(id, &params, prec, tol)).map_err(to_py_err)?;
    json(py, &results)
}

/// `K_ν(x)` for real `ν`, or `K_{iν}(x)` when `imaginary` is set.
#[pyfunction]
#[pyo3(signature = (order, x, prec=30, imaginary=false))]
fn bessel_k(order: &Bound<'_, PyAny>, x: &Bound<'_, PyAny>, prec: u32, imaginary: bool) -> PyResult<PyNumReal> {
    let prec = precision(prec)?;
    let nu = float_arg(order, prec)?;
    let x = float_arg(x, prec)?;
    let order = if imaginary { quadrature::BesselOrder::Imaginary(nu) } else { quadrature::BesselOrder::Real(nu) };
    Ok(quadrature::bessel_k(&order, &x, prec).map_err(to_py_err)?.into())
}

#[pyfunction]
#[pyo3(signature = (prec=30))]
fn catalan(prec: u32) -> PyResult<PyNumReal> {
    Ok(quadrature::const_catalan(precision(prec)?).into())
}

#[pyfunction]
#[pyo3(signature = (s, prec=30))]
fn zeta(s: &Bound<'_, PyAny>, prec: u32) -> PyResult<PyNumReal> {
    let prec = precision(prec)?;
    Ok(quadrature::const_zeta(&float_arg(s, prec)?, prec).map_err(to_py_err)?.into())
}

/// `∫_0^{π/2} t^n / sin t dt`
#[pyfunction]
#[pyo3(signature = (n, prec=30))]
fn moment_i(n: u32, prec: u32) -> PyResult<PyNumReal> {
    Ok(quadrature::moment_i(n, precision(prec)?).map_err(to_py_err)?.into())
}

/// `∫_0^{π/2} t^n / sin² t dt`
#[pyfunction]
#[pyo3(signature = (n, prec=30))]
fn moment_m(n: u32, prec: u32) -> PyResult<PyNumReal> {
    Ok(quadrature::moment_m(n, precision(prec)?).map_err(to_py_err)?.into())
}

#[pymodule]
#[pyo3(name = "shefferzeta")]
fn shefferzeta_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<PyNumReal>()?;
    m.add_function(wrap_pyfunction!(gen_p, m)?)?;
    m.add_function(wrap_pyfunction!(gen_q, m)?)?;
    m.add_function(wrap_pyfunction!(routes, m)?)?;
    m.add_function(wrap_pyfunction!(bernoulli_number, m)?)?;
    m.add_function(wrap_pyfunction!(euler_number, m)?)?;
    m.add_function(wrap_pyfunction!(bernoulli_via, m)?)?;
    m.add_function(wrap_pyfunction!(euler_via, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_even_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(number_table, m)?)?;
    m.add_function(wrap_pyfunction!(check_ids, m)?)?;
    m.add_function(wrap_pyfunction!(run_check, m)?)?;
    m.add_function(wrap_pyfunction!(run_all, m)?)?;
    m.add_function(wrap_pyfunction!(run_with_p, m)?)?;
    m.add_function(wrap_pyfunction!(numeric_check_ids, m)?)?;
    m.add_function(wrap_pyfunction!(verify_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_k, m)?)?;
    m.add_function(wrap_pyfunction!(catalan, m)?)?;
    m.add_function(wrap_pyfunction!(zeta, m)?)?;
    m.add_function(wrap_pyfunction!(moment_i, m)?)?;
    m.add_function(wrap_pyfunction!(moment_m, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use pyo3::types::PyDict;

    fn with_module<F: for<'py> FnOnce(Python<'py>, &Bound<'py, PyModule>)>(f: F) {
        Python::attach(|py| {
            let m = PyModule::new(py, "shefferzeta").unwrap();
            shefferzeta_module(&m).unwrap();
            f(py, &m);
        });
    }

    fn eval<'py>(py: Python<'py>, m: &Bound<'py, PyModule>, code: &str) -> Bound<'py, PyAny> {
        let globals = PyDict::new(py);
        globals.set_item("sz", m).unwrap();
        let code = std::ffi::CString::new(code).unwrap();
        py.eval(&code, Some(&globals), None).unwrap()
    }

    #[test]
    fn sequences_and_numbers() {
        with_module(|py, m| {
            assert_eq!(eval(py, m, "str(sz.gen_p(2))").extract::<String>().unwrap(), "3x^2 - x");
            assert!(eval(py, m, "sz.gen_q(3).coeffs == [-61, -61, -30, -15]").extract::<bool>().unwrap());
            assert!(eval(py, m, "sz.gen_p(5) == sz.gen_p(5, 'explicit_coeffs')").extract::<bool>().unwrap());
            assert!(eval(py, m, "str(sz.bernoulli_number(12)) == '-691/2730'").extract::<bool>().unwrap());
            assert!(eval(py, m, "sz.euler_number(8) == 1385").extract::<bool>().unwrap());
            assert!(eval(py, m, "str(sz.zeta_even_ratio(2, 'moment_2_42')) == '1/90'").extract::<bool>().unwrap());
            assert!(eval(py, m, "sz.gen_p(2).eval('1/3') == 0").extract::<bool>().unwrap());
        });
    }

    #[test]
    fn errors_map_to_python_exceptions() {
        with_module(|py, m| {
            let run_check = m.getattr("run_check").unwrap();
            assert!(run_check.call1(("nosuch", 5)).unwrap_err().is_instance_of::<PyKeyError>(py));
            let gen_p = m.getattr("gen_p").unwrap();
            assert!(gen_p.call1((2, "derivative_sum")).unwrap_err().is_instance_of::<PyValueError>(py));
            let catalan = m.getattr("catalan").unwrap();
            assert!(catalan.call1((10,)).unwrap_err().is_instance_of::<PyValueError>(py));
        });
    }

    #[test]
    fn reports_are_dicts() {
        with_module(|py, m| {
            assert!(eval(py, m, "sz.run_check('eq2_31', 6)['status'] == 'pass'").extract::<bool>().unwrap());
            assert!(eval(py, m, "all(r['pass'] for r in sz.verify_numeric('moments'))").extract::<bool>().unwrap());
            assert!(eval(py, m, "abs(float(sz.catalan()) - 0.915965594177219) < 1e-15").extract::<bool>().unwrap());
        });
    }
}
