//! Python module `trilie_py`: algebras, catalog invariants, verification and counts.

use std::collections::HashMap;

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use trilie::algebra::{algebra_from_json, algebra_to_json, build_l_full_rank, build_t, invariant_count, LieAlgebra};
use trilie::catalog::{
    jacobian_rank, l4_algebra, lemma_invariants, nilpotent_invariants, prop1_invariants, prop2_invariants,
    verify_invariant, CatalogEntry, Family, Params,
};
use trilie::certify::{certify_all, CertifyOptions};
use trilie::symbolic::rational::{fmt_q, parse_q};
use trilie::symbolic::{InvariantExpr, Q};

fn value_err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational(v: &Bound<'_, PyAny>) -> PyResult<Q> {
    parse_q(&v.str()?.to_string()).map_err(value_err)
}

fn params(d: Option<HashMap<String, Bound<'_, PyAny>>>) -> PyResult<Params> {
    let mut out = Params::new();
    for (k, v) in d.unwrap_or_default() {
        out.insert(k, rational(&v)?);
    }
    Ok(out)
}

fn parse_expr(text: &str) -> PyResult<InvariantExpr> {
    text.parse().map_err(value_err)
}

/// A Lie algebra `T(M)` or `L(M,f)` in its canonical basis.
#[pyclass(name = "Algebra", module = "trilie_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAlgebra {
    inner: LieAlgebra,
}

#[pymethods]
impl PyAlgebra {
    /// The nilpotent algebra of strictly upper triangular `M x M` matrices.
    #[staticmethod]
    fn nilpotent(m: usize) -> PyResult<Self> {
        Ok(PyAlgebra { inner: build_t(m).map_err(value_err)? })
    }

    /// `L(M, M-1)` with `M - 1` diagonal characteristic matrices.
    #[staticmethod]
    fn full_rank(m: usize) -> PyResult<Self> {
        Ok(PyAlgebra { inner: build_l_full_rank(m).map_err(value_err)? })
    }

    /// `L(4,f)` for `f` in {1, 2} from named parameters (`a12`, `b23`, `lambda2`, `sigma12`, ...).
    #[staticmethod]
    #[pyo3(signature = (f, parameters=None))]
    fn l4(f: usize, parameters: Option<HashMap<String, Bound<'_, PyAny>>>) -> PyResult<Self> {
        Ok(PyAlgebra { inner: l4_algebra(f, &params(parameters)?).map_err(value_err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyAlgebra { inner: algebra_from_json(text).map_err(value_err)? })
    }

    fn to_json(&self) -> String {
        algebra_to_json(&self.inner)
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn f(&self) -> usize {
        self.inner.f()
    }

    fn basis(&self) -> Vec<String> {
        self.inner.basis().iter().map(|v| v.basis_label()).collect()
    }

    /// `[e_i, e_j]` by basis labels, as `{label: "p/q"}`.
    fn bracket(&self, a: &str, b: &str) -> PyResult<HashMap<String, String>> {
        let u = self.inner.universe();
        let index = |s: &str| -> PyResult<usize> {
            let v = trilie::symbolic::VarId::parse_basis_label(s).map_err(value_err)?;
            u.index(v).ok_or_else(|| PyKeyError::new_err(s.to_string()))
        };
        let (i, j) = (index(a)?, index(b)?);
        Ok(self.inner.bracket(i, j).into_iter().map(|(k, c)| (self.inner.label(k), fmt_q(&c))).collect())
    }

    /// Number of invariants with the generic rank details.
    #[pyo3(signature = (trials=5, seed=0))]
    fn count<'py>(&self, py: Python<'py>, trials: usize, seed: u64) -> PyResult<Bound<'py, PyDict>> {
        if trials == 0 {
            return Err(value_err("trials must be positive"));
        }
        let r = invariant_count(&self.inner, trials, seed);
        let d = PyDict::new(py);
        d.set_item("count", r.count)?;
        d.set_item("rank", r.rank)?;
        d.set_item("dim", r.dim)?;
        d.set_item("confirmed", r.confirmed())?;
        d.set_item("summary", r.to_string())?;
        Ok(d)
    }

    /// Applies every coadjoint field to `invariant`; returns the certificate as a dict.
    fn verify<'py>(&self, py: Python<'py>, invariant: &str) -> PyResult<Bound<'py, PyDict>> {
        let cert = verify_invariant(&self.inner, &parse_expr(invariant)?);
        let d = PyDict::new(py);
        d.set_item("algebra", &cert.algebra)?;
        d.set_item("invariant", &cert.invariant)?;
        d.set_item("pass", cert.pass)?;
        let residuals: HashMap<String, String> =
            cert.per_generator.iter().filter_map(|g| g.residual.clone().map(|r| (g.generator.clone(), r))).collect();
        d.set_item("residuals", residuals)?;
        Ok(d)
    }

    /// Generic rank of the Jacobian of the given invariants.
    #[pyo3(signature = (invariants, trials=5, seed=0))]
    fn jacobian_rank(&self, invariants: Vec<String>, trials: usize, seed: u64) -> PyResult<usize> {
        let exprs = invariants.iter().map(|s| parse_expr(s)).collect::<PyResult<Vec<_>>>()?;
        jacobian_rank(&exprs, &self.inner.universe(), trials.max(1), seed).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!("Algebra({}, dim={})", self.inner.name(), self.inner.dim())
    }
}

/// A family member with its closed-form invariants.
#[pyclass(name = "CatalogEntry", module = "trilie_py", frozen)]
struct PyEntry {
    #[pyo3(get)]
    family: String,
    #[pyo3(get)]
    algebra: PyAlgebra,
    #[pyo3(get)]
    invariants: Vec<String>,
    #[pyo3(get)]
    expected_count: usize,
    #[pyo3(get)]
    parameters: HashMap<String, String>,
}

#[pymethods]
impl PyEntry {
    fn __repr__(&self) -> String {
        format!("CatalogEntry({}, {} invariant(s))", self.family, self.invariants.len())
    }
}

impl From<CatalogEntry> for PyEntry {
    fn from(e: CatalogEntry) -> Self {
        PyEntry {
            family: e.family.id().to_string(),
            invariants: e.invariants.iter().map(|i| i.to_string()).collect(),
            expected_count: e.expected_count,
            parameters: e.parameters.iter().map(|(k, v)| (k.clone(), fmt_q(v))).collect(),
            algebra: PyAlgebra { inner: e.algebra },
        }
    }
}

/// Invariants of a catalog family: `t` and `full-rank` take `m`, `diag-case1`/`diag-case2`
/// take `diag`, the `L(4,f)` families take named parameters.
#[pyfunction]
#[pyo3(signature = (family, m=None, parameters=None, diag=None))]
fn invariants(
    family: &str,
    m: Option<usize>,
    parameters: Option<HashMap<String, Bound<'_, PyAny>>>,
    diag: Option<Vec<Bound<'_, PyAny>>>,
) -> PyResult<PyEntry> {
    let fam = Family::from_id(family).ok_or_else(|| value_err(format!("unknown family `{family}`")))?;
    let need_m = || m.ok_or_else(|| value_err(format!("{family} needs m")));
    let entry = match fam {
        Family::Nilpotent => nilpotent_invariants(need_m()?),
        Family::FullRank => prop1_invariants(need_m()?),
        Family::DiagonalCase1 | Family::DiagonalCase2 => {
            let d = diag.ok_or_else(|| value_err(format!("{family} needs diag")))?;
            let d = d.iter().map(rational).collect::<PyResult<Vec<_>>>()?;
            prop2_invariants(d.len() + 1, &d)
        }
        _ => lemma_invariants(fam, &params(parameters)?),
    };
    Ok(entry.map_err(value_err)?.into())
}

/// Runs the acceptance checks; returns `(id, key, pass, detail)` tuples.
#[pyfunction]
#[pyo3(signature = (seed=0, property_cases=1000))]
fn certify(py: Python<'_>, seed: u64, property_cases: usize) -> Vec<(u8, String, bool, String)> {
    let opts = CertifyOptions { seed, property_cases, ..CertifyOptions::default() };
    py.detach(|| certify_all(&opts)).into_iter().map(|r| (r.id, r.key, r.pass, r.detail)).collect()
}

/// Canonical text of an invariant expression.
#[pyfunction]
fn normalize(text: &str) -> PyResult<String> {
    Ok(parse_expr(text)?.normalized().to_string())
}

#[pymodule]
fn trilie_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyEntry>()?;
    m.add_function(wrap_pyfunction!(invariants, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    Ok(())
}
