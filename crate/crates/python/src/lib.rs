//! Python bindings: alphabets, words, quandle elements, closures, bases and
//! the independence checkers.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use freequandle::basis::{compute_s, greedy_shrink, BasisReport};
use freequandle::{self as fq, Sign};
use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;

fn err(e: fq::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn sign(eps: i64) -> PyResult<Sign> {
    Sign::from_i64(eps).ok_or_else(|| PyValueError::new_err("eps must be 1 or -1"))
}

fn hash_of(v: &impl Hash) -> u64 {
    let mut h = DefaultHasher::new();
    v.hash(&mut h);
    h.finish()
}

#[pyclass(name = "Alphabet", frozen, from_py_object, module = "freequandle_py")]
#[derive(Clone)]
struct PyAlphabet(Arc<fq::Alphabet>);

#[pymethods]
impl PyAlphabet {
    /// Accepts a list of names or one whitespace-separated string.
    #[new]
    fn new(names: &Bound<'_, PyAny>) -> PyResult<Self> {
        let names: Vec<String> = match names.extract::<String>() {
            Ok(s) => s.split_whitespace().map(String::from).collect(),
            Err(_) => names.extract()?,
        };
        fq::Alphabet::new(names).map(PyAlphabet).map_err(err)
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        self.0.names().to_vec()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    /// Parses a word such as `"x y^-1"`.
    fn word(&self, text: &str) -> PyResult<PyWord> {
        fq::parse_word(&self.0, text).map(PyWord).map_err(err)
    }

    /// Parses an element such as `"x^(y)"` or a raw group word.
    fn element(&self, text: &str) -> PyResult<PyElement> {
        fq::parse_element(&self.0, text).map(PyElement).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Alphabet({:?})", self.0.names())
    }
}

#[pyclass(name = "Word", frozen, from_py_object, module = "freequandle_py")]
#[derive(Clone)]
struct PyWord(fq::Word);

#[pymethods]
impl PyWord {
    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word({:?})", self.0.to_string())
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        hash_of(&self.0)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.multiply(&other.0).map(PyWord).map_err(err)
    }

    fn inverse(&self) -> Self {
        PyWord(self.0.invert())
    }

    /// `h^-eps self h^eps`.
    #[pyo3(signature = (h, eps = 1))]
    fn conjugate(&self, h: &Self, eps: i64) -> PyResult<Self> {
        self.0.conjugate(&h.0, sign(eps)?).map(PyWord).map_err(err)
    }
}

#[pyclass(name = "Element", frozen, from_py_object, module = "freequandle_py")]
#[derive(Clone)]
struct PyElement(fq::QuandleElement);

#[pymethods]
impl PyElement {
    #[staticmethod]
    fn from_group_word(w: &PyWord) -> PyResult<Self> {
        fq::QuandleElement::from_group_word(&w.0)
            .map(PyElement)
            .map_err(err)
    }

    #[getter]
    fn axis(&self) -> String {
        self.0.alphabet().name(self.0.axis()).to_string()
    }

    #[getter]
    fn tail(&self) -> PyWord {
        PyWord(self.0.tail().clone())
    }

    fn group_word(&self) -> PyWord {
        PyWord(self.0.to_group_word())
    }

    /// `self ▷^eps q`, i.e. `self^(q^eps)`.
    #[pyo3(signature = (q, eps = 1))]
    fn act(&self, q: &Self, eps: i64) -> PyResult<Self> {
        self.0.act(&q.0, sign(eps)?).map(PyElement).map_err(err)
    }

    fn __mul__(&self, q: &Self) -> PyResult<Self> {
        self.act(q, 1)
    }

    fn __truediv__(&self, q: &Self) -> PyResult<Self> {
        self.act(q, -1)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element({:?})", self.0.to_string())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        hash_of(&self.0)
    }
}

fn unwrap_elements(v: Vec<PyElement>) -> Vec<fq::QuandleElement> {
    v.into_iter().map(|e| e.0).collect()
}

fn wrap_elements(v: &[fq::QuandleElement]) -> Vec<PyElement> {
    v.iter().cloned().map(PyElement).collect()
}

#[pyclass(name = "Closure", frozen, module = "freequandle_py")]
struct PyClosure(fq::ClosureSet);

#[pymethods]
impl PyClosure {
    #[getter]
    fn bound(&self) -> usize {
        self.0.bound()
    }

    #[getter]
    fn generators(&self) -> Vec<PyElement> {
        wrap_elements(self.0.generators())
    }

    #[getter]
    fn elements(&self) -> Vec<PyElement> {
        wrap_elements(self.0.elements())
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __getitem__(&self, i: usize) -> PyResult<PyElement> {
        self.0
            .elements()
            .get(i)
            .cloned()
            .map(PyElement)
            .ok_or_else(|| PyIndexError::new_err(i))
    }

    fn __contains__(&self, e: &PyElement) -> bool {
        self.0.contains(&e.0)
    }

    /// A term over the generators (`g0`, `g1`, ...) that evaluates to `e`.
    fn express(&self, e: &PyElement) -> PyResult<String> {
        self.0.express(&e.0).map(|t| t.to_string()).map_err(err)
    }
}

#[pyclass(name = "BasisReport", frozen, get_all, module = "freequandle_py")]
struct PyBasisReport {
    method: String,
    bound: usize,
    candidate: Vec<PyElement>,
    /// Terms over the candidate (`g0`, `g1`, ...), `None` if not reached.
    witnesses: Vec<Option<String>>,
    hall_passed: bool,
    hall_failures: Vec<String>,
    nielsen_passed: bool,
    moves: Vec<String>,
    certified: bool,
}

impl From<BasisReport> for PyBasisReport {
    fn from(r: BasisReport) -> Self {
        PyBasisReport {
            method: r.method.name().to_string(),
            bound: r.bound,
            certified: r.certified(),
            candidate: wrap_elements(&r.candidate),
            witnesses: r
                .witnesses
                .iter()
                .map(|w| w.as_ref().map(ToString::to_string))
                .collect(),
            hall_passed: r.hall.passed(),
            hall_failures: r.hall.failures.iter().map(ToString::to_string).collect(),
            nielsen_passed: r.nielsen.passed(),
            moves: r.moves.iter().map(ToString::to_string).collect(),
        }
    }
}

#[pymethods]
impl PyBasisReport {
    fn __repr__(&self) -> String {
        let c: Vec<String> = self.candidate.iter().map(|e| e.0.to_string()).collect();
        format!(
            "BasisReport(method={:?}, candidate=[{}], certified={})",
            self.method,
            c.join(", "),
            if self.certified { "True" } else { "False" }
        )
    }
}

#[pyfunction]
#[pyo3(signature = (generators, bound = fq::subquandle::DEFAULT_MAX_TAIL_LEN))]
fn closure(generators: Vec<PyElement>, bound: usize) -> PyResult<PyClosure> {
    fq::closure(&unwrap_elements(generators), bound)
        .map(PyClosure)
        .map_err(err)
}

/// Free basis of the subquandle generated by `generators`; `method` is
/// `"paper"` or `"greedy"`.
#[pyfunction]
#[pyo3(signature = (generators, bound = fq::subquandle::DEFAULT_MAX_TAIL_LEN, method = "paper"))]
fn basis(generators: Vec<PyElement>, bound: usize, method: &str) -> PyResult<PyBasisReport> {
    let gens = unwrap_elements(generators);
    let c = fq::closure(&gens, bound).map_err(err)?;
    let report = match method {
        "paper" => compute_s(&c),
        "greedy" => greedy_shrink(&gens, &c),
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    };
    report.map(PyBasisReport::from).map_err(err)
}

/// Significant-factor check; returns `(passed, failing pairs)`.
#[pyfunction]
fn check_significant_factors(elements: Vec<PyElement>) -> PyResult<(bool, Vec<String>)> {
    let r = fq::check_significant_factors(&unwrap_elements(elements)).map_err(err)?;
    Ok((r.passed(), r.failures.iter().map(ToString::to_string).collect()))
}

/// Nielsen reduction; returns `(passed, reduced words)`.
#[pyfunction]
fn nielsen_independent(words: Vec<PyWord>) -> PyResult<(bool, Vec<PyWord>)> {
    let words: Vec<fq::Word> = words.into_iter().map(|w| w.0).collect();
    let r = fq::nielsen_independent(&words).map_err(err)?;
    Ok((r.passed(), r.reduced.into_iter().map(PyWord).collect()))
}

/// Checks the quandle laws on seeded random triples; returns a dict from law
/// name to the number of failing triples.
#[pyfunction]
#[pyo3(signature = (alphabet, samples = 1000, max_tail_len = 4, seed = 1))]
fn verify_axioms(
    alphabet: &PyAlphabet,
    samples: usize,
    max_tail_len: usize,
    seed: u64,
) -> Vec<(String, usize)> {
    fq::verify_axioms(&alphabet.0, samples, max_tail_len, seed)
        .outcomes
        .iter()
        .map(|o| (o.axiom.name().to_string(), o.failed))
        .collect()
}

#[pymodule]
fn freequandle_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlphabet>()?;
    m.add_class::<PyWord>()?;
    m.add_class::<PyElement>()?;
    m.add_class::<PyClosure>()?;
    m.add_class::<PyBasisReport>()?;
    m.add_function(wrap_pyfunction!(closure, m)?)?;
    m.add_function(wrap_pyfunction!(basis, m)?)?;
    m.add_function(wrap_pyfunction!(check_significant_factors, m)?)?;
    m.add_function(wrap_pyfunction!(nielsen_independent, m)?)?;
    m.add_function(wrap_pyfunction!(verify_axioms, m)?)?;
    Ok(())
}
