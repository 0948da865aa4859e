//! Python bindings. Rings, ideals and multiplicative sets are wrapped
//! objects; everything else crosses the boundary as the same JSON-shaped
//! documents the command line uses.

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use lasker_core::decompose as dec;
use lasker_core::doc::{self, DecompositionDoc, IdealDoc, MinimalityDoc, MsetDoc};
use lasker_core::ideal as ops;
use lasker_core::lab::{self, CorpusSpec, LabConfig, Suite};
use lasker_core::ring::{construct_ring_with, BuildOptions, RingSpec, DEFAULT_SIZE_CAP};

fn err(e: lasker_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn from_py<T: DeserializeOwned>(obj: &Bound<'_, PyAny>) -> PyResult<T> {
    let text: String = obj.py().import("json")?.call_method1("dumps", (obj,))?.extract()?;
    serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn to_py<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "Ring", frozen)]
struct PyRing(lasker_core::Ring);

#[pyclass(name = "Ideal", frozen)]
struct PyIdeal(lasker_core::Ideal);

#[pyclass(name = "MultiplicativeSet", frozen)]
struct PyMset(lasker_core::MultiplicativeSet);

#[pymethods]
impl PyRing {
    /// `spec` is a ring specification, e.g. `{"kind": "zmod", "n": 12}`.
    #[new]
    #[pyo3(signature = (spec, size_cap = DEFAULT_SIZE_CAP))]
    fn new(spec: &Bound<'_, PyAny>, size_cap: usize) -> PyResult<Self> {
        let spec: RingSpec = from_py(spec)?;
        construct_ring_with(&spec, &BuildOptions { size_cap }).map(PyRing).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Ring({})", self.0.describe())
    }

    /// `None` for the integers.
    #[getter]
    fn size(&self) -> Option<usize> {
        self.0.size()
    }

    fn spec<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.spec())
    }

    /// A list of generators, an integer `n` for `nZ`, or an ideal document.
    fn ideal(&self, doc: &Bound<'_, PyAny>) -> PyResult<PyIdeal> {
        let v: Value = from_py(doc)?;
        let doc = match v {
            Value::Array(gens) => IdealDoc::Gens { gens },
            Value::Number(_) => IdealDoc::Principal { n: v },
            other => serde_json::from_value(other).map_err(|e| PyValueError::new_err(e.to_string()))?,
        };
        doc::ideal_from_doc(&self.0, &doc).map(PyIdeal).map_err(err)
    }

    /// A list of generators or a multiplicative set document.
    fn mset(&self, doc: &Bound<'_, PyAny>) -> PyResult<PyMset> {
        let v: Value = from_py(doc)?;
        let doc = match v {
            Value::Array(gens) => MsetDoc::Gens { gens },
            other => serde_json::from_value(other).map_err(|e| PyValueError::new_err(e.to_string()))?,
        };
        doc::mset_from_doc(&self.0, &doc).map(PyMset).map_err(err)
    }

    fn mset_trivial(&self) -> PyMset {
        PyMset(lasker_core::MultiplicativeSet::trivial(&self.0))
    }

    fn ideals(&self) -> PyResult<Vec<PyIdeal>> {
        Ok(ops::enumerate_ideals(&self.0).map_err(err)?.into_iter().map(PyIdeal).collect())
    }

    fn nilradical(&self) -> PyIdeal {
        PyIdeal(ops::nilradical(&self.0))
    }
}

#[pymethods]
impl PyIdeal {
    fn __repr__(&self) -> String {
        format!("Ideal({})", self.0.describe())
    }

    fn __str__(&self) -> String {
        self.0.describe()
    }

    fn __eq__(&self, other: &PyIdeal) -> bool {
        self.0 == other.0
    }

    fn doc<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &doc::ideal_to_doc(&self.0))
    }

    fn is_proper(&self) -> bool {
        self.0.is_proper()
    }

    fn radical(&self) -> PyIdeal {
        PyIdeal(ops::radical(&self.0))
    }

    fn saturation(&self, s: &PyMset) -> PyResult<PyIdeal> {
        ops::saturation(&self.0, &s.0).map(PyIdeal).map_err(err)
    }

    fn __and__(&self, other: &PyIdeal) -> PyResult<PyIdeal> {
        ops::ideal_intersect(&self.0, &other.0).map(PyIdeal).map_err(err)
    }

    fn __add__(&self, other: &PyIdeal) -> PyResult<PyIdeal> {
        ops::ideal_sum(&self.0, &other.0).map(PyIdeal).map_err(err)
    }

    fn __mul__(&self, other: &PyIdeal) -> PyResult<PyIdeal> {
        ops::ideal_product(&self.0, &other.0).map(PyIdeal).map_err(err)
    }
}

#[pymethods]
impl PyMset {
    fn __repr__(&self) -> String {
        format!("MultiplicativeSet({})", self.0.describe())
    }

    fn doc<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &doc::mset_to_doc(&self.0))
    }
}

/// Certificate document for one of `PREDICATES`.
#[pyfunction]
#[pyo3(signature = (predicate, ring, ideal = None, mset = None))]
fn check<'py>(
    py: Python<'py>,
    predicate: &str,
    ring: &PyRing,
    ideal: Option<&PyIdeal>,
    mset: Option<&PyMset>,
) -> PyResult<Bound<'py, PyAny>> {
    let cert = doc::run_predicate(predicate, &ring.0, ideal.map(|i| &i.0), mset.map(|s| &s.0)).map_err(err)?;
    to_py(py, &cert)
}

/// Decomposition document, or `None` when the ideal has none.
#[pyfunction]
fn decompose<'py>(py: Python<'py>, ideal: &PyIdeal, mset: &PyMset) -> PyResult<Option<Bound<'py, PyAny>>> {
    let d = if ideal.0.ring().is_finite() {
        dec::decompose_finite(&ideal.0, &mset.0).map_err(err)?
    } else {
        Some(dec::decompose_integers(&ideal.0, &mset.0).map_err(err)?)
    };
    d.map(|d| to_py(py, &doc::decomposition_to_doc(&d))).transpose()
}

fn read_decomposition(
    ring: &PyRing,
    mset: &PyMset,
    d: &Bound<'_, PyAny>,
) -> PyResult<dec::Decomposition> {
    let d: DecompositionDoc = from_py(d)?;
    let d = doc::decomposition_from_doc(&ring.0, &mset.0, &d).map_err(err)?;
    dec::validate(&d, &mset.0).map_err(err)?;
    Ok(d)
}

#[pyfunction]
fn minimalize<'py>(
    py: Python<'py>,
    ring: &PyRing,
    mset: &PyMset,
    decomposition: &Bound<'_, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    let d = read_decomposition(ring, mset, decomposition)?;
    let m = dec::minimalize(&d.target, &mset.0, &d).map_err(err)?;
    to_py(py, &doc::decomposition_to_doc(&m))
}

#[pyfunction]
fn verify_minimality<'py>(
    py: Python<'py>,
    ring: &PyRing,
    mset: &PyMset,
    decomposition: &Bound<'_, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    let d = read_decomposition(ring, mset, decomposition)?;
    let report = dec::verify_minimality(&d, &mset.0).map_err(err)?;
    to_py(py, &MinimalityDoc::from(&report))
}

/// Suite reports over a corpus; `corpus` is a corpus specification or
/// `None` for the default one.
#[pyfunction]
#[pyo3(signature = (suite = "all", corpus = None))]
fn verify<'py>(py: Python<'py>, suite: &str, corpus: Option<&Bound<'_, PyAny>>) -> PyResult<Bound<'py, PyAny>> {
    let spec: CorpusSpec = corpus.map(from_py).transpose()?.unwrap_or_default();
    let corpus = lab::generate_corpus(&spec).map_err(err)?;
    let config = LabConfig::default();
    let reports = if suite == "all" {
        py.detach(|| lab::run_all(&corpus, &config))
    } else {
        let s = Suite::parse(suite).ok_or_else(|| PyKeyError::new_err(suite.to_string()))?;
        vec![py.detach(|| lab::run_suite(s, &corpus, &config))]
    };
    to_py(py, &reports)
}

#[pymodule]
fn lasker(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRing>()?;
    m.add_class::<PyIdeal>()?;
    m.add_class::<PyMset>()?;
    m.add("PREDICATES", doc::PREDICATES.to_vec())?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(minimalize, m)?)?;
    m.add_function(wrap_pyfunction!(verify_minimality, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
