use pyo3::prelude::*;
use pyo3::types::PyDict;

fn with_module<R>(body: impl FnOnce(Python<'_>, &Bound<'_, PyDict>) -> R) -> R {
    Python::initialize();
    Python::attach(|py| {
        let module = pyo3::wrap_pymodule!(rvequiv_py::rvequiv_module)(py);
        let globals = PyDict::new(py);
        globals.set_item("rv", module).unwrap();
        body(py, &globals)
    })
}

fn eval<'py>(py: Python<'py>, globals: &Bound<'py, PyDict>, code: &str) -> Bound<'py, PyAny> {
    let code = std::ffi::CString::new(code).unwrap();
    py.eval(&code, Some(globals), None).unwrap()
}

#[test]
fn polynomial_round_trip() {
    with_module(|py, g| {
        let s: String = eval(py, g, "str(rv.Polynomial('y^2 + 2*x*y + x^2', ['x', 'y']))").extract().unwrap();
        assert_eq!(s, "x^2 + 2*x*y + y^2");
        let d: i64 = eval(py, g, "rv.quasi_degree(rv.Polynomial('x^2*y + z^2', ['x','y','z']), rv.WeightSystem([2,2,3]))")
            .extract()
            .unwrap();
        assert_eq!(d, 6);
    });
}

#[test]
fn decide_returns_a_dict() {
    with_module(|py, g| {
        let code = "rv.decide_rv_equiv(rv.Polynomial('x^3+y^3',['x','y']), rv.Polynomial('2*x^3+5*y^3',['x','y']), \
                    rv.Polynomial('x*y',['x','y']), rv.WeightSystem([1,1]), 8)['status']";
        let status: String = eval(py, g, code).extract().unwrap();
        assert_eq!(status, "EQUIVALENT");
    });
}

#[test]
fn errors_become_value_errors() {
    with_module(|py, g| {
        let code = std::ffi::CString::new("rv.Polynomial('x +', ['x'])").unwrap();
        let e = py.eval(&code, Some(g), None).unwrap_err();
        assert!(e.is_instance_of::<pyo3::exceptions::PyValueError>(py));
    });
}
