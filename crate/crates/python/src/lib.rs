use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use serde::Serialize;

use ::algtool::arith::parse_rational;
use ::algtool::gradedalg::{self, make_presentation, Presentation, PresentationSpec};
use ::algtool::heisenberg::{HeisenbergElement, SimpleRep};
use ::algtool::{koszul, shioda5, sklyanin2, Error};

create_exception!(algtool, AlgtoolError, PyException);

fn err(e: Error) -> PyErr {
    AlgtoolError::new_err(format!("[{}] {e}", e.code()))
}

/// Serializes through JSON so Python sees plain dicts, lists and strings.
fn to_py<T: Serialize>(py: Python<'_>, v: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| AlgtoolError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn presentation(kind: &str, p: Option<usize>, params: &[String]) -> PyResult<Presentation> {
    let params = params.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>().map_err(err)?;
    make_presentation(&PresentationSpec::parse(kind, p, &params).map_err(err)?).map_err(err)
}

fn class(s: &str, p: usize) -> PyResult<HeisenbergElement> {
    let r = match s {
        "1" | "id" => HeisenbergElement::identity(p),
        "z" => HeisenbergElement::z(p),
        "e1" => HeisenbergElement::e1(p),
        "e2" => HeisenbergElement::e2(p),
        other => {
            let parts: Vec<i64> = other
                .split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|_| AlgtoolError::new_err(format!("bad class '{s}'")))?;
            match parts[..] {
                [a, b, k] => HeisenbergElement::new(p, a, b, k),
                _ => return Err(AlgtoolError::new_err(format!("bad class '{s}'"))),
            }
        }
    };
    r.map_err(err)
}

/// Hilbert coefficients `dim A_0 … dim A_N`.
#[pyfunction]
#[pyo3(signature = (kind, max_degree, p=None, params=vec![]))]
fn hilbert(kind: &str, max_degree: usize, p: Option<usize>, params: Vec<String>) -> PyResult<Vec<usize>> {
    gradedalg::hilbert(&presentation(kind, p, &params)?, max_degree).map_err(err)
}

/// Character table, or one class's coefficients when `cls` is given.
#[pyfunction]
#[pyo3(signature = (kind, max_degree, p=None, params=vec![], cls=None, rep=1))]
fn character_series(
    py: Python<'_>,
    kind: &str,
    max_degree: usize,
    p: Option<usize>,
    params: Vec<String>,
    cls: Option<&str>,
    rep: i64,
) -> PyResult<Py<PyAny>> {
    let pres = presentation(kind, p, &params)?;
    let rep = SimpleRep::new(pres.prime(), rep).map_err(err)?;
    match cls {
        Some(c) => {
            let g = class(c, pres.prime())?;
            to_py(py, &gradedalg::character_coeffs(&pres, &g, &rep, max_degree).map_err(err)?)
        }
        None => to_py(py, &gradedalg::character_table(&pres, &rep, max_degree).map_err(err)?),
    }
}

/// True when every Koszul residual vanishes for the class.
#[pyfunction]
#[pyo3(signature = (kind, max_degree, p=None, params=vec![], cls="1", rep=1))]
fn koszul_check(kind: &str, max_degree: usize, p: Option<usize>, params: Vec<String>, cls: &str, rep: i64) -> PyResult<bool> {
    let pres = presentation(kind, p, &params)?;
    let g = class(cls, pres.prime())?;
    let rep = SimpleRep::new(pres.prime(), rep).map_err(err)?;
    let res = koszul::koszul_identity_check(&pres, &rep, &g, max_degree).map_err(err)?;
    Ok(res.iter().all(|c| c.is_zero()))
}

/// Points of C′ as `(a, b)` pairs.
#[pyfunction]
#[pyo3(signature = (grid=None))]
fn curve_points(grid: Option<Vec<f64>>) -> PyResult<Vec<(f64, f64)>> {
    let grid = grid.unwrap_or_else(|| sklyanin2::DEFAULT_GRID.to_vec());
    Ok(sklyanin2::sample_curve_points(&grid).map_err(err)?.into_iter().map(|c| (c.a, c.b)).collect())
}

/// Exact t as a string, or None when indeterminate.
#[pyfunction]
fn t_param(a: &str, b: &str) -> PyResult<Option<String>> {
    let (a, b) = (parse_rational(a).map_err(err)?, parse_rational(b).map_err(err)?);
    Ok(match sklyanin2::t_param(&a, &b).map_err(err)? {
        sklyanin2::TParam::Value(t) => Some(t.to_string()),
        sklyanin2::TParam::Indeterminate => None,
    })
}

#[pyfunction]
fn eliminate(py: Python<'_>) -> PyResult<Py<PyAny>> {
    to_py(py, &sklyanin2::eliminate_t().map_err(err)?)
}

#[pyfunction]
fn singular_points(py: Python<'_>) -> PyResult<Py<PyAny>> {
    to_py(py, &shioda5::singular_points_check().map_err(err)?)
}

#[pyfunction]
fn selftest(py: Python<'_>) -> PyResult<Py<PyAny>> {
    to_py(py, &::algtool::selftest::run_all())
}

#[pymodule]
fn algtool(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("AlgtoolError", m.py().get_type::<AlgtoolError>())?;
    m.add_function(wrap_pyfunction!(hilbert, m)?)?;
    m.add_function(wrap_pyfunction!(character_series, m)?)?;
    m.add_function(wrap_pyfunction!(koszul_check, m)?)?;
    m.add_function(wrap_pyfunction!(curve_points, m)?)?;
    m.add_function(wrap_pyfunction!(t_param, m)?)?;
    m.add_function(wrap_pyfunction!(eliminate, m)?)?;
    m.add_function(wrap_pyfunction!(singular_points, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
