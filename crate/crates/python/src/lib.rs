//! Python bindings: root data, the twisted and Verma modules, the free-field
//! realization and the batch jobs. Rationals cross the boundary as `fractions.Fraction`.

use std::collections::HashMap;
use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use twistgt_core::jobs::{self, JobConfig, Setup};
use twistgt_core::modules::{GModule, ModuleVector, TwistedModule as CoreTwisted, VermaModule as CoreVerma};
use twistgt_core::rat::{self, Rat};
use twistgt_core::rootsys::{ChevalleyBasis as CoreBasis, Series, Weight};
use twistgt_core::weyl::FreeField as CoreFreeField;
use twistgt_core::Error;

fn py_err(e: Error) -> PyErr {
    if e.is_config() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

fn fraction<'py>(py: Python<'py>, r: &Rat) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((rat::fmt(r),))
}

fn to_rat(v: &Bound<'_, PyAny>) -> PyResult<Rat> {
    rat::parse(&v.str()?.to_string()).map_err(py_err)
}

fn fractions<'py>(py: Python<'py>, v: &[Rat]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    v.iter().map(|r| fraction(py, r)).collect()
}

fn config(
    series: &str,
    rank: usize,
    sigma: Vec<usize>,
    lambda: Vec<Bound<'_, PyAny>>,
    alpha: &str,
) -> PyResult<JobConfig> {
    Ok(JobConfig {
        series: series.parse::<Series>().map_err(py_err)?,
        rank,
        sigma,
        lambda: lambda.iter().map(to_rat).collect::<PyResult<_>>()?,
        alpha: alpha.to_string(),
        ..JobConfig::default()
    })
}

fn generator_id(cb: &CoreBasis, label: &str) -> PyResult<usize> {
    (0..cb.dim())
        .find(|&id| cb.label(id) == label)
        .ok_or_else(|| PyValueError::new_err(format!("no basis element {label}")))
}

fn vector_in(mode: twistgt_core::modules::Mode, v: &Bound<'_, PyDict>) -> PyResult<ModuleVector> {
    let mut out = ModuleVector::zero(mode);
    for (k, c) in v.iter() {
        let key: (Vec<i64>, usize) = k.extract()?;
        out.add_term(key, &to_rat(&c)?);
    }
    Ok(out)
}

fn vector_out<'py>(py: Python<'py>, v: &ModuleVector) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    for ((a, j), c) in &v.terms {
        d.set_item((pyo3::types::PyTuple::new(py, a)?, *j), fraction(py, c)?)?;
    }
    Ok(d)
}

fn weight_out<'py>(py: Python<'py>, w: &Weight) -> PyResult<Vec<Bound<'py, PyAny>>> {
    fractions(py, &w.0)
}

/// Chevalley basis of a simple Lie algebra.
#[pyclass(frozen)]
struct ChevalleyBasis {
    inner: Arc<CoreBasis>,
}

#[pymethods]
impl ChevalleyBasis {
    #[new]
    fn new(series: &str, rank: usize) -> PyResult<Self> {
        let s = series.parse::<Series>().map_err(py_err)?;
        Ok(ChevalleyBasis {
            inner: Arc::new(CoreBasis::from_type(s, rank).map_err(py_err)?),
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn labels(&self) -> Vec<String> {
        (0..self.inner.dim()).map(|id| self.inner.label(id)).collect()
    }

    fn positive_roots(&self) -> Vec<Vec<i64>> {
        self.inner.rs.positive_roots.clone()
    }

    fn highest_root(&self) -> Vec<i64> {
        self.inner.rs.root(self.inner.rs.highest_root()).clone()
    }

    fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.inner.rs.cartan_matrix.clone()
    }

    /// [x, y] as a map from labels to integer coefficients.
    fn bracket(&self, x: &str, y: &str) -> PyResult<HashMap<String, i64>> {
        let (a, b) = (generator_id(&self.inner, x)?, generator_id(&self.inner, y)?);
        Ok(self
            .inner
            .bracket(a, b)
            .iter()
            .map(|&(z, c)| (self.inner.label(z), c))
            .collect())
    }

    fn jacobi_residual(&self) -> i64 {
        self.inner.jacobi_residual()
    }
}

/// W_p(λ,α) on the basis u_{a,α} ⊗ v_j. Vectors are dicts {(exponents, j): Fraction}.
#[pyclass(frozen)]
struct TwistedModule {
    inner: CoreTwisted,
}

#[pymethods]
impl TwistedModule {
    #[new]
    #[pyo3(signature = (series, rank, sigma = vec![], lam = vec![], alpha = "highest"))]
    fn new(
        series: &str,
        rank: usize,
        sigma: Vec<usize>,
        lam: Vec<Bound<'_, PyAny>>,
        alpha: &str,
    ) -> PyResult<Self> {
        let s = Setup::new(&config(series, rank, sigma, lam, alpha)?).map_err(py_err)?;
        Ok(TwistedModule {
            inner: s.twisted().map_err(py_err)?,
        })
    }

    #[getter]
    fn nu(&self) -> usize {
        self.inner.nu()
    }

    #[getter]
    fn inducing_dim(&self) -> usize {
        self.inner.inducing().dim()
    }

    /// Roots of the nilradical in exponent order.
    fn nilradical_roots(&self) -> Vec<Vec<i64>> {
        let rs = &self.inner.cb.rs;
        self.inner.p.delta_u_plus.iter().map(|&k| rs.root(k).clone()).collect()
    }

    fn generator<'py>(&self, py: Python<'py>, j: usize) -> PyResult<Bound<'py, PyDict>> {
        vector_out(py, &self.inner.generator(j))
    }

    fn act<'py>(&self, py: Python<'py>, x: &str, v: &Bound<'py, PyDict>) -> PyResult<Bound<'py, PyDict>> {
        let id = generator_id(&self.inner.cb, x)?;
        let w = vector_in(self.inner.mode(), v)?;
        vector_out(py, &self.inner.act(id, &w))
    }

    /// Weight of a basis tensor in simple-root coordinates.
    fn weight<'py>(&self, py: Python<'py>, a: Vec<i64>, j: usize) -> PyResult<Vec<Bound<'py, PyAny>>> {
        weight_out(py, &self.inner.weight(&(a, j)))
    }

    fn weight_space(&self, mu: Vec<Bound<'_, PyAny>>, cutoff: usize) -> PyResult<Vec<(Vec<i64>, usize)>> {
        let mu = Weight(mu.iter().map(to_rat).collect::<PyResult<_>>()?);
        Ok(self.inner.weight_space_basis(&mu, cutoff))
    }
}

/// M_p(λ) on the basis f^a ⊗ v_j.
#[pyclass(frozen)]
struct VermaModule {
    inner: CoreVerma,
}

#[pymethods]
impl VermaModule {
    #[new]
    #[pyo3(signature = (series, rank, sigma = vec![], lam = vec![]))]
    fn new(series: &str, rank: usize, sigma: Vec<usize>, lam: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let s = Setup::new(&config(series, rank, sigma, lam, "highest")?).map_err(py_err)?;
        Ok(VermaModule {
            inner: s.verma().map_err(py_err)?,
        })
    }

    fn highest<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        vector_out(py, &self.inner.highest())
    }

    fn act<'py>(&self, py: Python<'py>, x: &str, v: &Bound<'py, PyDict>) -> PyResult<Bound<'py, PyDict>> {
        let id = generator_id(self.inner.basis_data(), x)?;
        let w = vector_in(self.inner.mode(), v)?;
        vector_out(py, &self.inner.act(id, &w))
    }

    fn weight<'py>(&self, py: Python<'py>, a: Vec<i64>, j: usize) -> PyResult<Vec<Bound<'py, PyAny>>> {
        weight_out(py, &self.inner.weight(&(a, j)))
    }
}

/// The homomorphism π_λ into Weyl-algebra operators with End F coefficients.
#[pyclass(frozen)]
struct FreeField {
    inner: CoreFreeField,
}

#[pymethods]
impl FreeField {
    #[new]
    #[pyo3(signature = (series, rank, sigma = vec![], lam = vec![]))]
    fn new(series: &str, rank: usize, sigma: Vec<usize>, lam: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let s = Setup::new(&config(series, rank, sigma, lam, "highest")?).map_err(py_err)?;
        Ok(FreeField {
            inner: CoreFreeField::for_lambda(s.cb.clone(), &s.p, &s.lambda).map_err(py_err)?,
        })
    }

    fn variables(&self) -> Vec<String> {
        self.inner.labels()
    }

    /// π(x) as text when its coefficients are scalar, None otherwise.
    fn pi(&self, x: &str) -> PyResult<Option<String>> {
        let id = generator_id(&self.inner.cb, x)?;
        Ok(self.inner.pi(id).scalar_part().map(|o| o.format(&self.inner.labels())))
    }

    /// The operator p_α for a nilradical root given in simple-root coordinates.
    fn p(&self, root: Vec<i64>) -> PyResult<String> {
        let k = self.var_index(&root)?;
        Ok(self.inner.p_op(k).format(&self.inner.labels()))
    }

    fn q(&self, root: Vec<i64>) -> PyResult<String> {
        let k = self.var_index(&root)?;
        Ok(self.inner.q_op(k).format(&self.inner.labels()))
    }

    fn homomorphism_defects(&self) -> usize {
        self.inner.homomorphism_defects().len()
    }
}

impl FreeField {
    fn var_index(&self, root: &[i64]) -> PyResult<usize> {
        let rs = &self.inner.cb.rs;
        rs.index_of(root)
            .and_then(|r| self.inner.var(r))
            .ok_or_else(|| PyValueError::new_err(format!("{root:?} is not a nilradical root")))
    }
}

/// Runs a job described by a JSON config; returns (exit code, report JSON).
#[pyfunction]
fn run_job(config_json: &str) -> PyResult<(i32, String)> {
    let cfg: JobConfig = serde_json::from_str(config_json).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let outcome = jobs::run(&cfg);
    let code = jobs::exit_code(&outcome);
    match outcome {
        Ok(r) => Ok((code, r.to_json().map_err(py_err)?)),
        Err(e) => Err(py_err(e)),
    }
}

#[pymodule]
pub fn twistgt(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<ChevalleyBasis>()?;
    m.add_class::<TwistedModule>()?;
    m.add_class::<VermaModule>()?;
    m.add_class::<FreeField>()?;
    m.add_function(wrap_pyfunction!(run_job, m)?)?;
    Ok(())
}
