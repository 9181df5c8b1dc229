//! Python bindings: ordinals, order terms, cyclic witnesses and the
//! exponential isomorphism. Elements cross the boundary as JSON-shaped
//! Python objects (or JSON text) in the same encoding the CLI uses.

use std::cmp::Ordering;

use ordcalc_core::cli::laws::{run_suite, Suite};
use ordcalc_core::cli::parse::{parse_element, parse_term};
use ordcalc_core::cli::witness::{build_witness, Via};
use ordcalc_core::condensation::condense_iterate;
use ordcalc_core::cyclic::{validate_witness, CtloWitness};
use ordcalc_core::expiso::{main_iso, main_iso_inverse, verify_exponentiable, ExpIsoContext};
use ordcalc_core::exponential::FsFunction;
use ordcalc_core::linorder::{sample, Extremum};
use ordcalc_core::report::{CheckReport, Status};
use ordcalc_core::{Element, Error, OrderTerm, Ordinal as CoreOrdinal};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyString;
use serde::Serialize;

create_exception!(
    ordcalc,
    OrdcalcError,
    PyValueError,
    "An ordcalc operation failed."
);
create_exception!(
    ordcalc,
    UnsupportedError,
    OrdcalcError,
    "Outside the supported fragment."
);

const DEFAULT_SEED: u64 = ordcalc_core::cli::DEFAULT_SEED;

fn err(e: Error) -> PyErr {
    match e.exit_code() {
        3 => UnsupportedError::new_err(e.to_string()),
        _ => OrdcalcError::new_err(e.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| OrdcalcError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A report as `{"status", "checks_run", "counterexample"}`.
fn report_to_py<'py>(py: Python<'py>, report: &CheckReport) -> PyResult<Bound<'py, PyAny>> {
    #[derive(Serialize)]
    struct Tagged<'a> {
        status: Status,
        #[serde(flatten)]
        report: &'a CheckReport,
    }
    to_py(
        py,
        &Tagged {
            status: report.status(),
            report,
        },
    )
}

fn json_text(obj: &Bound<'_, PyAny>) -> PyResult<String> {
    if let Ok(s) = obj.cast::<PyString>() {
        return Ok(s.to_str()?.to_owned());
    }
    obj.py()
        .import("json")?
        .call_method1("dumps", (obj,))?
        .extract()
}

fn element(term: &OrderTerm, obj: &Bound<'_, PyAny>) -> PyResult<Element> {
    parse_element(term, &json_text(obj)?).map_err(err)
}

fn ordering_name(o: Ordering) -> i8 {
    match o {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// An ordinal below epsilon_0 in Cantor normal form, e.g. `Ordinal("w^2 + 3")`.
#[pyclass(module = "ordcalc", frozen, eq, ord, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Ordinal(CoreOrdinal);

#[pymethods]
impl Ordinal {
    #[new]
    fn new(text: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(n) = text.extract::<u64>() {
            return Ok(Ordinal(CoreOrdinal::nat(n)));
        }
        let s: String = text.extract()?;
        s.parse().map(Ordinal).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Ordinal('{}')", self.0)
    }

    fn __add__(&self, other: &Self) -> Self {
        Ordinal(self.0.add(&other.0))
    }

    /// The unique `d` with `other + d == self`.
    fn left_sub(&self, other: &Self) -> PyResult<Self> {
        self.0.sub(&other.0).map(Ordinal).map_err(err)
    }

    /// `(beta, n)` with `self == beta + n` and `beta` zero or a limit.
    fn split_limit_finite(&self) -> (Self, u64) {
        let (b, n) = self.0.split_limit_finite();
        (Ordinal(b), n)
    }

    #[getter]
    fn is_limit(&self) -> bool {
        self.0.is_limit()
    }

    #[getter]
    fn is_successor(&self) -> bool {
        self.0.is_successor()
    }
}

/// A countable linear order given by a term such as `"w + z*eta + w*"`.
#[pyclass(module = "ordcalc", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Order(OrderTerm);

#[pymethods]
impl Order {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse_term(text).map(Order).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Order('{}')", self.0)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    /// -1, 0 or 1.
    fn compare(&self, a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<i8> {
        let (a, b) = (element(&self.0, a)?, element(&self.0, b)?);
        self.0.compare(&a, &b).map(ordering_name).map_err(err)
    }

    /// `(predecessor, successor)`, each `None` when absent.
    fn neighbors<'py>(
        &self,
        py: Python<'py>,
        x: &Bound<'py, PyAny>,
    ) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
        let (p, s) = self.0.neighbors(&element(&self.0, x)?).map_err(err)?;
        Ok((
            to_py(py, &p.map(|e| e.to_json()))?,
            to_py(py, &s.map(|e| e.to_json()))?,
        ))
    }

    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.classify().map_err(err)?)
    }

    fn least<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let e = self.0.extremum(Extremum::Least).map_err(err)?;
        to_py(py, &e.map(|e| e.to_json()))
    }

    fn greatest<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let e = self.0.extremum(Extremum::Greatest).map_err(err)?;
        to_py(py, &e.map(|e| e.to_json()))
    }

    fn reverse(&self) -> Self {
        Order(self.0.reverse())
    }

    #[pyo3(signature = (count, seed = DEFAULT_SEED))]
    fn sample<'py>(&self, py: Python<'py>, count: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
        let xs = sample(&self.0, seed, count).map_err(err)?;
        to_py(py, &xs.iter().map(Element::to_json).collect::<Vec<_>>())
    }

    /// The `gamma`-th Hausdorff condensation.
    fn condense(&self, gamma: &Ordinal) -> PyResult<Self> {
        condense_iterate(&self.0, &gamma.0).map(Order).map_err(err)
    }
}

/// A certificate that the order is cyclically transitive at `(a, b)`.
#[pyclass(module = "ordcalc", frozen)]
struct Witness(CtloWitness);

fn parse_via(via: &str) -> PyResult<Via> {
    <Via as clap::ValueEnum>::from_str(via, true)
        .map_err(|_| OrdcalcError::new_err(format!("unknown constructor `{via}`")))
}

fn witness_for(
    order: &Order,
    a: &Bound<'_, PyAny>,
    b: &Bound<'_, PyAny>,
    via: &str,
) -> PyResult<CtloWitness> {
    let (x, y) = (element(&order.0, a)?, element(&order.0, b)?);
    build_witness(&order.0, &x, &y, parse_via(via)?).map_err(err)
}

#[pymethods]
impl Witness {
    #[new]
    #[pyo3(signature = (order, a, b, via = "auto"))]
    fn new(order: &Order, a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>, via: &str) -> PyResult<Self> {
        witness_for(order, a, b, via).map(Witness)
    }

    #[getter]
    fn via(&self) -> String {
        self.0.via.clone()
    }

    fn in_l1(&self, x: &Bound<'_, PyAny>) -> PyResult<bool> {
        self.0.in_l1(&element(&self.0.term, x)?).map_err(err)
    }

    /// The glued map `F1 + F2`.
    fn forward<'py>(&self, py: Python<'py>, x: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        let y = self.0.forward(&element(&self.0.term, x)?).map_err(err)?;
        to_py(py, &y.to_json())
    }

    fn inverse<'py>(&self, py: Python<'py>, y: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        let x = self.0.inverse(&element(&self.0.term, y)?).map_err(err)?;
        to_py(py, &x.to_json())
    }

    /// Checks every witness clause on sampled elements; returns the report.
    #[pyo3(signature = (samples = 500, seed = DEFAULT_SEED))]
    fn validate<'py>(
        &self,
        py: Python<'py>,
        samples: usize,
        seed: u64,
    ) -> PyResult<Bound<'py, PyAny>> {
        report_to_py(py, &validate_witness(&self.0, seed, samples).map_err(err)?)
    }
}

/// The isomorphism `(L,a)^alpha -> (L,b)^alpha` for a discrete unbounded
/// cyclically transitive `L`.
#[pyclass(module = "ordcalc", frozen)]
struct ExpIso(ExpIsoContext);

impl ExpIso {
    fn function(
        &self,
        alpha: &Ordinal,
        f: &Bound<'_, PyAny>,
        source: bool,
    ) -> PyResult<FsFunction> {
        let space = if source {
            self.0.source(&alpha.0)
        } else {
            self.0.target(&alpha.0)
        }
        .map_err(err)?;
        let e = element(space.term(), f)?;
        space.wrap(&e).map_err(err)
    }
}

#[pymethods]
impl ExpIso {
    #[new]
    #[pyo3(signature = (order, a, b, via = "auto"))]
    fn new(order: &Order, a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>, via: &str) -> PyResult<Self> {
        ExpIsoContext::new(witness_for(order, a, b, via)?)
            .map(ExpIso)
            .map_err(err)
    }

    fn apply<'py>(
        &self,
        py: Python<'py>,
        alpha: &Ordinal,
        f: &Bound<'py, PyAny>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let g = main_iso(&self.0, &alpha.0, &self.function(alpha, f, true)?).map_err(err)?;
        to_py(py, &g.element().to_json())
    }

    fn apply_inverse<'py>(
        &self,
        py: Python<'py>,
        alpha: &Ordinal,
        z: &Bound<'py, PyAny>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let g =
            main_iso_inverse(&self.0, &alpha.0, &self.function(alpha, z, false)?).map_err(err)?;
        to_py(py, &g.element().to_json())
    }

    /// Order preservation, round trips and base points on sampled pairs.
    #[pyo3(signature = (alpha, pairs = 1000, seed = DEFAULT_SEED))]
    fn verify<'py>(
        &self,
        py: Python<'py>,
        alpha: &Ordinal,
        pairs: usize,
        seed: u64,
    ) -> PyResult<Bound<'py, PyAny>> {
        let report = py.detach(|| verify_exponentiable(&self.0, &alpha.0, seed, pairs));
        report_to_py(py, &report)
    }
}

/// Runs a named property suite and returns its cases.
#[pyfunction]
#[pyo3(signature = (suite, seed = DEFAULT_SEED, budget = None))]
fn check_laws<'py>(
    py: Python<'py>,
    suite: &str,
    seed: u64,
    budget: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let s = <Suite as clap::ValueEnum>::from_str(suite, true)
        .map_err(|_| OrdcalcError::new_err(format!("unknown suite `{suite}`")))?;
    let cases = py.detach(|| run_suite(s, seed, budget));
    to_py(py, &cases)
}

#[pymodule]
fn ordcalc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("DEFAULT_SEED", DEFAULT_SEED)?;
    m.add("OrdcalcError", m.py().get_type::<OrdcalcError>())?;
    m.add("UnsupportedError", m.py().get_type::<UnsupportedError>())?;
    m.add_class::<Ordinal>()?;
    m.add_class::<Order>()?;
    m.add_class::<Witness>()?;
    m.add_class::<ExpIso>()?;
    m.add_function(wrap_pyfunction!(check_laws, m)?)?;
    Ok(())
}
