//! Python bindings for the capability library.
//!
//! Exposes the ambient-space context, subspaces, closure operations, and the
//! numerical bound functions:
//!
//! ```python
//! import pycap
//! ctx = pycap.Context(4, 3)
//! x = ctx.subspace(["[g2,g1] = [g4,g3]", "v(3,1)", "v(4,1)", "v(3,2)", "v(4,2)"])
//! ctx.is_closed(x)            # False: extraspecial of order p^5
//! ctx.capability(x)["epicenter_dim"]
//! ```

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use cap_core::closure as cl;
use cap_core::constructions;
use cap_core::fpalg::Subspace as CoreSubspace;
use cap_core::io::expr::parse_expression;
use cap_core::spaces::SpaceContext;

fn to_py_err(e: cap_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A subspace of V(n) in canonical reduced row-echelon form.
#[pyclass(name = "Subspace", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySubspace {
    inner: CoreSubspace,
}

#[pymethods]
impl PySubspace {
    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    /// Basis rows as lists of integers in [0, p).
    fn rows(&self) -> Vec<Vec<u64>> {
        self.inner.basis().row_vecs()
    }

    fn contains(&self, v: Vec<u64>) -> PyResult<bool> {
        self.inner.contains(&v).map_err(to_py_err)
    }

    fn subset(&self, other: &PySubspace) -> PyResult<bool> {
        self.inner.subset(&other.inner).map_err(to_py_err)
    }

    fn __eq__(&self, other: &PySubspace) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Subspace(dim={}, ambient_dim={})",
            self.inner.dim(),
            self.inner.ambient_dim()
        )
    }
}

/// The spaces U, V(n), W(n) and their maps at a fixed (n, p).
#[pyclass(name = "Context", frozen)]
struct PyContext {
    inner: Arc<SpaceContext>,
}

#[pymethods]
impl PyContext {
    #[new]
    fn new(n: usize, p: u64) -> PyResult<Self> {
        Ok(Self {
            inner: Arc::new(SpaceContext::new(n, p).map_err(to_py_err)?),
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    #[getter]
    fn dim_u(&self) -> usize {
        self.inner.dim_u()
    }

    #[getter]
    fn dim_v(&self) -> usize {
        self.inner.dim_v()
    }

    #[getter]
    fn dim_w(&self) -> usize {
        self.inner.dim_w()
    }

    /// Span of coordinate rows (length C(n,2), reduced mod p).
    fn span(&self, rows: Vec<Vec<i64>>) -> PyResult<PySubspace> {
        let m = self.inner.modulus();
        let reduced: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| m.reduce_signed(x)).collect())
            .collect();
        Ok(PySubspace {
            inner: CoreSubspace::span(&reduced, self.inner.dim_v(), m).map_err(to_py_err)?,
        })
    }

    /// Span of generator expressions like `"v(2,1) - v(4,3)"` or
    /// `"[g2,g1] = [g4,g3]"`.
    fn subspace(&self, exprs: Vec<String>) -> PyResult<PySubspace> {
        let mut rows = Vec::with_capacity(exprs.len());
        for e in &exprs {
            let parsed = parse_expression(e, self.inner.n()).map_err(to_py_err)?;
            rows.push(parsed.resolve(&self.inner).map_err(to_py_err)?);
        }
        Ok(PySubspace {
            inner: CoreSubspace::span(&rows, self.inner.dim_v(), self.inner.modulus())
                .map_err(to_py_err)?,
        })
    }

    fn zero(&self) -> PySubspace {
        PySubspace {
            inner: CoreSubspace::zero(self.inner.dim_v(), self.inner.modulus()),
        }
    }

    fn full(&self) -> PySubspace {
        PySubspace {
            inner: CoreSubspace::full(self.inner.dim_v(), self.inner.modulus()),
        }
    }

    /// The extraspecial presentation subspace (even n only).
    fn extraspecial(&self) -> PyResult<PySubspace> {
        Ok(PySubspace {
            inner: constructions::extraspecial_subspace(&self.inner).map_err(to_py_err)?,
        })
    }

    fn closure(&self, x: &PySubspace) -> PyResult<PySubspace> {
        Ok(PySubspace {
            inner: cl::closure(&self.inner, &x.inner).map_err(to_py_err)?,
        })
    }

    fn is_closed(&self, x: &PySubspace) -> PyResult<bool> {
        cl::is_closed(&self.inner, &x.inner).map_err(to_py_err)
    }

    fn star_dim(&self, x: &PySubspace) -> PyResult<usize> {
        Ok(cl::star_v(&self.inner, &x.inner).map_err(to_py_err)?.dim())
    }

    fn orthogonal_complement(&self, x: &PySubspace) -> PyResult<PySubspace> {
        Ok(PySubspace {
            inner: self
                .inner
                .orthogonal_complement(&x.inner)
                .map_err(to_py_err)?,
        })
    }

    /// Full capability report as a dict.
    fn capability<'py>(&self, py: Python<'py>, x: &PySubspace) -> PyResult<Bound<'py, PyDict>> {
        let report = cl::capability_report(&self.inner, &x.inner, false).map_err(to_py_err)?;
        let d = PyDict::new(py);
        d.set_item("capable", report.is_capable())?;
        d.set_item(
            "verdict",
            match report.verdict {
                cl::Verdict::Closed => "closed",
                cl::Verdict::NotClosed => "not_closed",
            },
        )?;
        d.set_item("dim_x", report.dim_x)?;
        d.set_item("dim_x_star", report.dim_x_star)?;
        d.set_item("dim_x_closure", report.dim_x_closure)?;
        d.set_item("epicenter_dim", report.epicenter_dim)?;
        d.set_item("certificates", report.certificate_strings())?;
        d.set_item("rank_gab", report.group_view.rank_gab)?;
        d.set_item("rank_comm", report.group_view.rank_comm)?;
        d.set_item("rank_g_mod_z", report.group_view.rank_g_mod_z)?;
        d.set_item("group_order_exp", report.group_order_exp)?;
        d.set_item("witness_order_exp", report.witness_order_exp)?;
        Ok(d)
    }
}

/// f(m): the largest possible overlap dim(X^n ∩ ker Φ) over m-dimensional X.
#[pyfunction]
fn f_of_m(m: u64) -> u64 {
    cap_core::bounds::f_of_m(m)
}

/// r(d): the per-slot overlap cap.
#[pyfunction]
fn r_of_d(d: u64) -> u64 {
    cap_core::bounds::r_of_d(d)
}

/// Names of the 28 catalog entries.
#[pyfunction]
fn catalog_names() -> Vec<String> {
    constructions::catalog_n5()
        .iter()
        .map(|e| e.name.clone())
        .collect()
}

/// Check every catalog entry at the given prime; returns the mismatching
/// names (empty means all verdicts match).
#[pyfunction]
fn catalog_mismatches(p: u64) -> PyResult<Vec<String>> {
    let mut bad = Vec::new();
    for entry in constructions::catalog_n5() {
        let (ctx, x) = constructions::instantiate_entry(entry, p).map_err(to_py_err)?;
        let closure = cl::closure(&ctx, &x).map_err(to_py_err)?;
        let closed = closure == x;
        let expected = entry.expected_verdict == cl::Verdict::Closed;
        if closed != expected || closure.dim() - x.dim() != entry.expected_epicenter_dim {
            bad.push(entry.name.clone());
        }
    }
    Ok(bad)
}

#[pymodule]
fn pycap(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyContext>()?;
    m.add_class::<PySubspace>()?;
    m.add_function(wrap_pyfunction!(f_of_m, m)?)?;
    m.add_function(wrap_pyfunction!(r_of_d, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_mismatches, m)?)?;
    Ok(())
}
