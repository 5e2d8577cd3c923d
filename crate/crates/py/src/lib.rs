//! Python module `rvequiv`. Polynomials travel as `Polynomial` objects,
//! weights as `WeightSystem`; structured reports come back as dicts.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;
use serde::Serialize;

use rvequiv::equiv::{self, DecideOptions, Substitution};
use rvequiv::qpoly::{self, Order};
use rvequiv::{logder, oracle, pencil, rational, relmilnor};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(err)?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "Polynomial", module = "rvequiv", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyPolynomial {
    inner: qpoly::Polynomial,
}

impl PyPolynomial {
    fn wrap(inner: qpoly::Polynomial) -> Self {
        PyPolynomial { inner }
    }

    fn binary(
        &self,
        other: &PyPolynomial,
        op: fn(&qpoly::Polynomial, &qpoly::Polynomial) -> qpoly::Polynomial,
    ) -> PyResult<PyPolynomial> {
        self.inner.check_ring(&other.inner).map_err(err)?;
        Ok(Self::wrap(op(&self.inner, &other.inner)))
    }
}

#[pymethods]
impl PyPolynomial {
    #[new]
    fn new(text: &str, variables: Vec<String>) -> PyResult<Self> {
        qpoly::parse_poly(text, &variables).map(Self::wrap).map_err(err)
    }

    /// Parses `text` over this polynomial's variables.
    fn parse(&self, text: &str) -> PyResult<Self> {
        qpoly::Polynomial::parse(text, self.inner.ring()).map(Self::wrap).map_err(err)
    }

    #[getter]
    fn variables(&self) -> Vec<String> {
        self.inner.ring().names().to_vec()
    }

    /// `(exponents, coefficient)` pairs with coefficients as `"p/q"` text.
    fn terms(&self) -> Vec<(Vec<u32>, String)> {
        self.inner
            .terms()
            .map(|(m, c)| (m.exponents().to_vec(), rational::to_text(c)))
            .collect()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn derivative(&self, i: usize) -> PyResult<Self> {
        if i >= self.inner.nvars() {
            return Err(err(format!("no variable {i}")));
        }
        Ok(Self::wrap(self.inner.derivative(i)))
    }

    fn gradient(&self) -> Vec<Self> {
        self.inner.gradient().into_iter().map(Self::wrap).collect()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({:?}, {:?})", self.inner.to_string(), self.variables())
    }

    fn __add__(&self, other: &PyPolynomial) -> PyResult<Self> {
        self.binary(other, |a, b| a + b)
    }

    fn __sub__(&self, other: &PyPolynomial) -> PyResult<Self> {
        self.binary(other, |a, b| a - b)
    }

    fn __mul__(&self, other: &PyPolynomial) -> PyResult<Self> {
        self.binary(other, |a, b| a * b)
    }

    fn __neg__(&self) -> Self {
        Self::wrap(-&self.inner)
    }

    fn __pow__(&self, e: u32, modulo: Option<Py<PyAny>>) -> PyResult<Self> {
        if modulo.is_some() {
            return Err(err("modular powers are not supported"));
        }
        Ok(Self::wrap(self.inner.pow(e)))
    }
}

#[pyclass(name = "WeightSystem", module = "rvequiv", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyWeightSystem {
    inner: qpoly::WeightSystem,
}

#[pymethods]
impl PyWeightSystem {
    #[new]
    fn new(weights: Vec<u64>) -> PyResult<Self> {
        qpoly::WeightSystem::new(&weights)
            .map(|inner| PyWeightSystem { inner })
            .map_err(err)
    }

    /// Normalized (coprime) weights.
    #[getter]
    fn weights(&self) -> Vec<u64> {
        self.inner.weights().to_vec()
    }

    #[getter]
    fn scale(&self) -> String {
        rational::to_text(self.inner.scale())
    }

    fn __repr__(&self) -> String {
        format!("WeightSystem({:?})", self.inner.weights())
    }
}

fn polys(ps: &[PyRef<'_, PyPolynomial>]) -> Vec<qpoly::Polynomial> {
    ps.iter().map(|p| p.inner.clone()).collect()
}

fn substitution(images: &[PyRef<'_, PyPolynomial>]) -> PyResult<Substitution> {
    Substitution::new(polys(images)).map_err(err)
}

#[pyfunction]
fn quasi_degree(f: &PyPolynomial, w: &PyWeightSystem) -> PyResult<Option<i64>> {
    qpoly::quasi_degree(&f.inner, &w.inner).map_err(err)
}

#[pyfunction]
fn is_quasihomogeneous(f: &PyPolynomial, w: &PyWeightSystem, d: i64) -> PyResult<bool> {
    qpoly::is_quasihomogeneous(&f.inner, &w.inner, d).map_err(err)
}

#[pyfunction]
fn euler_apply(f: &PyPolynomial, w: &PyWeightSystem) -> PyResult<PyPolynomial> {
    qpoly::euler_apply(&f.inner, &w.inner).map(PyPolynomial::wrap).map_err(err)
}

/// `None` stands for the order of the zero polynomial.
#[pyfunction]
fn weighted_order(f: &PyPolynomial, w: &PyWeightSystem) -> PyResult<Option<i64>> {
    Ok(match qpoly::weighted_order(&f.inner, &w.inner).map_err(err)? {
        Order::Finite(d) => Some(d),
        Order::Infinite => None,
    })
}

#[pyfunction]
fn infer_weights<'py>(py: Python<'py>, f: &PyPolynomial) -> PyResult<Bound<'py, PyAny>> {
    let sol = qpoly::infer_weights(&f.inner).map_err(err)?;
    let basis: Vec<Vec<String>> = sol.basis.iter().map(|v| v.iter().map(rational::to_text).collect()).collect();
    let value = serde_json::json!({
        "dimension": sol.dimension,
        "basis": basis,
        "weights": sol.canonical.as_ref().map(|(w, _)| w.weights().to_vec()),
        "degree": sol.canonical.as_ref().map(|(_, d)| *d),
        "search_bound": sol.search_bound,
    });
    to_py(py, &value)
}

#[pyfunction]
fn groebner_basis(generators: Vec<PyRef<'_, PyPolynomial>>) -> PyResult<Vec<PyPolynomial>> {
    let Some(first) = generators.first() else {
        return Ok(Vec::new());
    };
    let order = qpoly::MonomialOrder::unit(first.inner.nvars());
    let basis = qpoly::groebner_basis(&polys(&generators), &order).map_err(err)?;
    Ok(basis.into_iter().map(PyPolynomial::wrap).collect())
}

/// `(remainder, is_member)`.
#[pyfunction]
fn reduce_mod_ideal(f: &PyPolynomial, generators: Vec<PyRef<'_, PyPolynomial>>) -> PyResult<(PyPolynomial, bool)> {
    let r = qpoly::reduce_mod_ideal(&f.inner, &polys(&generators)).map_err(err)?;
    Ok((PyPolynomial::wrap(r.remainder), r.is_member))
}

#[pyfunction]
#[pyo3(signature = (phi, w, degree, vanish_at_origin = true))]
fn theta_piece(phi: &PyPolynomial, w: &PyWeightSystem, degree: i64, vanish_at_origin: bool) -> PyResult<Vec<String>> {
    let basis = logder::theta_piece(&phi.inner, &w.inner, degree, vanish_at_origin).map_err(err)?;
    Ok(basis.fields.iter().map(|f| f.to_string()).collect())
}

#[pyfunction]
fn lie0(variables: Vec<String>, w: &PyWeightSystem) -> PyResult<Vec<String>> {
    let ring = qpoly::Ring::new(variables);
    let fields = logder::lie0_ambient(&ring, &w.inner).map_err(err)?;
    Ok(fields.iter().map(|f| f.to_string()).collect())
}

/// `[(degree, dim), ...]` over the attainable degrees up to `truncation`.
#[pyfunction]
fn hilbert_fingerprint(h: &PyPolynomial, phi: &PyPolynomial, w: &PyWeightSystem, truncation: i64) -> PyResult<Vec<(i64, usize)>> {
    let fp = relmilnor::hilbert_fingerprint(&h.inner, &phi.inner, &w.inner, truncation).map_err(err)?;
    Ok(fp.degrees.into_iter().zip(fp.dims).collect())
}

/// `(equal, witness_degree)`.
#[pyfunction]
fn ideal_equal_up_to(
    f: &PyPolynomial,
    g: &PyPolynomial,
    phi: &PyPolynomial,
    w: &PyWeightSystem,
    truncation: i64,
) -> PyResult<(bool, Option<i64>)> {
    let c = relmilnor::ideal_equal_up_to(&f.inner, &g.inner, &phi.inner, &w.inner, truncation).map_err(err)?;
    Ok((c.equal, c.witness))
}

#[pyfunction]
fn mather_verdict<'py>(
    py: Python<'py>,
    f: &PyPolynomial,
    g: &PyPolynomial,
    phi: &PyPolynomial,
    w: &PyWeightSystem,
    truncation: i64,
) -> PyResult<Bound<'py, PyAny>> {
    let rep = pencil::mather_verdict(&f.inner, &g.inner, &phi.inner, &w.inner, truncation).map_err(err)?;
    to_py(py, &rep)
}

#[pyfunction]
fn apply_subst(f: &PyPolynomial, images: Vec<PyRef<'_, PyPolynomial>>) -> PyResult<PyPolynomial> {
    let u = substitution(&images)?;
    equiv::apply_subst(&f.inner, &u).map(PyPolynomial::wrap).map_err(err)
}

#[pyfunction]
fn preserves_v(images: Vec<PyRef<'_, PyPolynomial>>, phi: &PyPolynomial) -> PyResult<bool> {
    equiv::preserves_v(&substitution(&images)?, &phi.inner).map_err(err)
}

/// `(holds, g∘u)`.
#[pyfunction]
fn verify_transport(
    images: Vec<PyRef<'_, PyPolynomial>>,
    f: &PyPolynomial,
    g: &PyPolynomial,
    phi: &PyPolynomial,
    w: &PyWeightSystem,
    truncation: i64,
) -> PyResult<(bool, PyPolynomial)> {
    let u = substitution(&images)?;
    let t = equiv::verify_transport(&u, &f.inner, &g.inner, &phi.inner, &w.inner, truncation).map_err(err)?;
    Ok((t.holds(), PyPolynomial::wrap(t.image)))
}

#[pyfunction]
#[pyo3(signature = (f, g, phi, w, truncation, substitution = None, search = false, draws = 200, height = 3, seed = 0))]
#[allow(clippy::too_many_arguments)]
fn decide_rv_equiv<'py>(
    py: Python<'py>,
    f: &PyPolynomial,
    g: &PyPolynomial,
    phi: &PyPolynomial,
    w: &PyWeightSystem,
    truncation: i64,
    substitution: Option<Vec<PyRef<'_, PyPolynomial>>>,
    search: bool,
    draws: usize,
    height: i64,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let opts = DecideOptions {
        substitution: substitution.as_deref().map(self::substitution).transpose()?,
        search,
        draws,
        height,
        seed,
    };
    let v = equiv::decide_rv_equiv(&f.inner, &g.inner, &phi.inner, &w.inner, truncation, &opts).map_err(err)?;
    to_py(py, &v)
}

#[pyfunction]
fn forward_invariance_check(
    images: Vec<PyRef<'_, PyPolynomial>>,
    f: &PyPolynomial,
    phi: &PyPolynomial,
    w: &PyWeightSystem,
    truncation: i64,
) -> PyResult<bool> {
    let psi = substitution(&images)?;
    let c = equiv::forward_invariance_check(&psi, &f.inner, &phi.inner, &w.inner, truncation).map_err(err)?;
    Ok(c.agree)
}

#[pyfunction]
fn saito_membership(h: &PyPolynomial) -> PyResult<bool> {
    Ok(equiv::saito_membership(&h.inner).map_err(err)?.is_member)
}

#[pyfunction]
#[pyo3(signature = (instances = 10, seed = 0, truncation = 10))]
fn crosscheck<'py>(py: Python<'py>, instances: usize, seed: u64, truncation: i64) -> PyResult<Bound<'py, PyAny>> {
    let report = oracle::crosscheck(instances, seed, truncation).map_err(err)?;
    to_py(py, &report)
}

#[pymodule]
#[pyo3(name = "rvequiv")]
pub fn rvequiv_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", rvequiv::VERSION)?;
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyWeightSystem>()?;
    m.add_function(wrap_pyfunction!(quasi_degree, m)?)?;
    m.add_function(wrap_pyfunction!(is_quasihomogeneous, m)?)?;
    m.add_function(wrap_pyfunction!(euler_apply, m)?)?;
    m.add_function(wrap_pyfunction!(weighted_order, m)?)?;
    m.add_function(wrap_pyfunction!(infer_weights, m)?)?;
    m.add_function(wrap_pyfunction!(groebner_basis, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_mod_ideal, m)?)?;
    m.add_function(wrap_pyfunction!(theta_piece, m)?)?;
    m.add_function(wrap_pyfunction!(lie0, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_fingerprint, m)?)?;
    m.add_function(wrap_pyfunction!(ideal_equal_up_to, m)?)?;
    m.add_function(wrap_pyfunction!(mather_verdict, m)?)?;
    m.add_function(wrap_pyfunction!(apply_subst, m)?)?;
    m.add_function(wrap_pyfunction!(preserves_v, m)?)?;
    m.add_function(wrap_pyfunction!(verify_transport, m)?)?;
    m.add_function(wrap_pyfunction!(decide_rv_equiv, m)?)?;
    m.add_function(wrap_pyfunction!(forward_invariance_check, m)?)?;
    m.add_function(wrap_pyfunction!(saito_membership, m)?)?;
    m.add_function(wrap_pyfunction!(crosscheck, m)?)?;
    Ok(())
}
