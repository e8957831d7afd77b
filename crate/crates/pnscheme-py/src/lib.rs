//! Python module `pnscheme`: nets, ideals, reduction, invariance checks and the
//! Macaulay/Gotzmann numerics. Structured results come back as plain dicts.

use pnscheme::hilbert::{self, Grading, HilbertError};
use pnscheme::invariance::{self, InvarianceError};
use pnscheme::net::{self, ProofNet};
use pnscheme::poly::{self, parse_field_spec, parse_order, Limits, MonomialOrder, PrimeField};
use pnscheme::reduction::{self, Strategy};
use pnscheme::scheme::{net_ideal, SchemeOptions};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

pyo3::create_exception!(pnscheme, ResourceLimit, PyRuntimeError, "A fuel, degree or basis-size limit was hit.");
pyo3::create_exception!(pnscheme, NetFailure, PyValueError, "The net is not shallow or a reduction is not available.");

fn fail(e: impl Into<InvarianceError>) -> PyErr {
    let e = e.into();
    match &e {
        _ if e.is_resource_limit() => ResourceLimit::new_err(e.to_string()),
        InvarianceError::Poly(_) | InvarianceError::Scheme(pnscheme::scheme::SchemeError::Net(_)) => PyValueError::new_err(e.to_string()),
        _ => NetFailure::new_err(e.to_string()),
    }
}

fn hilbert_fail(e: HilbertError) -> PyErr {
    match e {
        HilbertError::ResourceLimit(_) | HilbertError::NotStabilized(_) => ResourceLimit::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<T: Serialize>(py: Python<'_>, v: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).map_err(value_err)?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn limits(max_degree: Option<u32>, max_basis: Option<usize>) -> Limits {
    let d = Limits::default();
    Limits { max_degree: max_degree.unwrap_or(d.max_degree), max_basis: max_basis.unwrap_or(d.max_basis) }
}

fn field(spec: &str) -> PyResult<Option<PrimeField>> {
    parse_field_spec(spec).map_err(value_err)
}

fn strategy(s: &str) -> PyResult<Strategy> {
    s.parse().map_err(PyValueError::new_err)
}

/// A MELL proof net in the JSON net format.
#[pyclass(name = "Net", module = "pnscheme", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyNet(ProofNet);

#[pymethods]
impl PyNet {
    #[new]
    fn new(json: &str) -> PyResult<Self> {
        ProofNet::from_json(json).map(PyNet).map_err(value_err)
    }

    #[staticmethod]
    fn church(n: usize) -> Self {
        PyNet(net::church(n))
    }

    #[staticmethod]
    fn church_cut_against_zero(n: usize) -> Self {
        PyNet(net::church_cut_against_zero(n))
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[getter]
    fn edges(&self) -> Vec<(String, String)> {
        self.0.edges().iter().map(|(e, f)| (e.clone(), f.to_string())).collect()
    }

    #[getter]
    fn links(&self) -> Vec<(String, String)> {
        self.0.links().iter().map(|(id, l)| (id.clone(), format!("{:?}", l.kind))).collect()
    }

    fn validate(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &net::validate_shallow(&self.0))
    }

    fn is_shallow(&self) -> bool {
        net::validate_shallow(&self.0).shallow
    }

    /// `(kind, cut)` for every redex, in cut order.
    fn redexes(&self) -> Vec<(String, String)> {
        reduction::find_redexes(&self.0).into_iter().map(|r| (format!("{:?}", r.kind), r.cut)).collect()
    }

    /// Up to `steps` reduction steps. Returns the reduct and the kinds of the steps taken.
    #[pyo3(signature = (steps = 1, strategy = "leftmost"))]
    fn reduce(&self, steps: usize, strategy: &str) -> PyResult<(PyNet, Vec<String>)> {
        let strategy = self::strategy(strategy)?;
        let mut cur = self.0.clone();
        let mut kinds = Vec::new();
        for _ in 0..steps {
            let redexes = reduction::find_redexes(&cur);
            let Some(r) = reduction::pick(&redexes, strategy).cloned() else { break };
            cur = reduction::reduce_step(&cur, &r).map_err(fail)?.0;
            kinds.push(format!("{:?}", r.kind));
        }
        Ok((PyNet(cur), kinds))
    }

    /// Cut-free form and the list of step records.
    #[pyo3(signature = (strategy = "leftmost", fuel = 1000))]
    fn normalize(&self, py: Python<'_>, strategy: &str, fuel: usize) -> PyResult<(PyNet, Py<PyAny>)> {
        let n = reduction::normalize(&self.0, self::strategy(strategy)?, fuel).map_err(fail)?;
        Ok((PyNet(n.net), to_py(py, &n.steps)?))
    }

    /// Net ideal and its variable registry (as a dict).
    #[pyo3(signature = (truncation = 1))]
    fn ideal(&self, py: Python<'_>, truncation: u32) -> PyResult<(PyIdeal, Py<PyAny>)> {
        let (ideal, registry) = net_ideal(&self.0, &SchemeOptions { truncation }).map_err(fail)?;
        Ok((PyIdeal(ideal), to_py(py, &registry)?))
    }

    /// Reduced grevlex basis of the net's ideal in its conclusion variables.
    #[pyo3(signature = (truncation = 1, max_degree = None, max_basis = None))]
    fn semantics(&self, py: Python<'_>, truncation: u32, max_degree: Option<u32>, max_basis: Option<usize>) -> PyResult<Py<PyAny>> {
        let s = invariance::normal_semantics(&self.0, &SchemeOptions { truncation }, limits(max_degree, max_basis)).map_err(fail)?;
        to_py(py, &invariance::SemanticsSummary::from(&s))
    }

    /// Reduces (to normal form when `steps` is None) and compares semantics.
    #[pyo3(signature = (steps = None, strategy = "leftmost", fuel = 1000, truncation = 1, max_degree = None, max_basis = None))]
    #[allow(clippy::too_many_arguments)]
    fn check(
        &self,
        py: Python<'_>,
        steps: Option<usize>,
        strategy: &str,
        fuel: usize,
        truncation: u32,
        max_degree: Option<u32>,
        max_basis: Option<usize>,
    ) -> PyResult<Py<PyAny>> {
        let opts = SchemeOptions { truncation };
        let r = invariance::check_invariance(&self.0, self::strategy(strategy)?, steps, fuel, &opts, limits(max_degree, max_basis))
            .map_err(fail)?;
        to_py(py, &r)
    }

    /// Whether the two routes to the affine conclusion ideal of an MLL net agree.
    fn mll_bridge(&self) -> PyResult<bool> {
        Ok(invariance::mll_bridge(&self.0, Limits::default()).map_err(fail)?.equal)
    }

    fn __repr__(&self) -> String {
        format!("Net({} edges, {} links, {} boxes)", self.0.edges().len(), self.0.links().len(), self.0.boxes().len())
    }

    fn __eq__(&self, other: &PyNet) -> bool {
        self.0 == other.0
    }
}

/// A polynomial ideal over the rationals in a named ring.
#[pyclass(name = "Ideal", module = "pnscheme", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyIdeal(poly::Ideal);

#[pymethods]
impl PyIdeal {
    /// `gens` is either a list of generators or the text format (with optional `# vars:` header).
    #[new]
    #[pyo3(signature = (gens, vars = None))]
    fn new(gens: &Bound<'_, PyAny>, vars: Option<Vec<String>>) -> PyResult<Self> {
        let mut text = match gens.extract::<String>() {
            Ok(s) => s,
            Err(_) => gens.extract::<Vec<String>>()?.join("\n"),
        };
        if let Some(v) = vars {
            text = format!("# vars: {}\n{text}", v.join(" "));
        }
        poly::parse_ideal(&text, None).map(PyIdeal).map_err(fail)
    }

    #[getter]
    fn vars(&self) -> Vec<String> {
        self.0.ring.names().to_vec()
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.0.gens.iter().map(|g| poly::format_polynomial(&self.0.ring, g, &MonomialOrder::Grevlex)).collect()
    }

    /// Reduced Gröbner basis. `order` is grevlex, lex or `elim:v1,v2`; `field` is `q` or `fp:P`.
    #[pyo3(signature = (order = "grevlex", field = "q", max_degree = None, max_basis = None))]
    fn groebner(&self, order: &str, field: &str, max_degree: Option<u32>, max_basis: Option<usize>) -> PyResult<Vec<String>> {
        let o = parse_order(order, &self.0.ring).map_err(value_err)?;
        let p = self::field(field)?;
        let gb = poly::buchberger_over(&self.0, p.as_ref(), &o, limits(max_degree, max_basis)).map_err(fail)?;
        Ok(gb.iter().map(|g| poly::format_polynomial(&self.0.ring, g, &o)).collect())
    }

    /// Elimination ideal in the ring of `keep`, as a reduced grevlex basis.
    #[pyo3(signature = (keep, field = "q", max_degree = None, max_basis = None))]
    fn eliminate(&self, keep: Vec<String>, field: &str, max_degree: Option<u32>, max_basis: Option<usize>) -> PyResult<PyIdeal> {
        if let Some(v) = keep.iter().find(|v| self.0.ring.index_of(v).is_none()) {
            return Err(PyValueError::new_err(format!("unknown variable `{v}`")));
        }
        let p = self::field(field)?;
        poly::eliminate_over(&self.0, &keep, p.as_ref(), limits(max_degree, max_basis)).map(PyIdeal).map_err(fail)
    }

    /// Sets every primed variable to 1.
    fn dehomogenize(&self) -> PyIdeal {
        PyIdeal(poly::dehomogenize(&self.0, |v| v.ends_with('\'')))
    }

    fn contains(&self, polynomial: &str) -> PyResult<bool> {
        let p = poly::parse_polynomial(&self.0.ring, polynomial).map_err(value_err)?;
        poly::contains(&self.0, &p, Limits::default()).map_err(fail)
    }

    /// Hilbert function up to `dmax` in the grading pairing each `x` with `x'`.
    #[pyo3(signature = (dmax = 12))]
    fn hilbert(&self, dmax: u32) -> PyResult<Vec<u64>> {
        hilbert::hilbert_function(&self.0, &Grading::from_primed_pairs(&self.0.ring), dmax).map_err(hilbert_fail)
    }

    fn __eq__(&self, other: &PyIdeal) -> PyResult<bool> {
        poly::ideal_equal(&self.0, &other.0, Limits::default()).map_err(fail)
    }

    fn __str__(&self) -> String {
        poly::format_ideal(&self.0, &MonomialOrder::Grevlex)
    }

    fn __repr__(&self) -> String {
        format!("Ideal({:?}, vars={:?})", self.generators(), self.vars())
    }
}

/// `[(k, i), ...]` with `c = sum C(k, i)`, top index `d`.
#[pyfunction]
fn macaulay_expansion(c: u64, d: u32) -> PyResult<Vec<(u64, u32)>> {
    hilbert::d_binomial_expansion(c, d).map_err(hilbert_fail)
}

#[pyfunction]
fn macaulay_bracket(c: u64, d: u32) -> PyResult<u64> {
    hilbert::macaulay_bracket(c, d).map_err(hilbert_fail)
}

#[pyfunction]
fn macaulay_diff_set(c: u64, d: u32) -> PyResult<Vec<u64>> {
    hilbert::macaulay_diff_set(c, d).map_err(hilbert_fail)
}

/// Stabilization degree, Gotzmann number and difference set of a Hilbert table.
#[pyfunction]
fn gotzmann(py: Python<'_>, table: Vec<u64>) -> PyResult<Py<PyAny>> {
    to_py(py, &hilbert::gotzmann_number(&table).map_err(hilbert_fail)?)
}

/// The relation `x - phi^n z` of the standalone numeral.
#[pyfunction]
fn church_power(py: Python<'_>, n: usize) -> PyResult<Py<PyAny>> {
    to_py(py, &invariance::church_power(n, Limits::default()).map_err(fail)?)
}

#[pymodule(name = "pnscheme")]
pub fn init(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNet>()?;
    m.add_class::<PyIdeal>()?;
    m.add_function(wrap_pyfunction!(macaulay_expansion, m)?)?;
    m.add_function(wrap_pyfunction!(macaulay_bracket, m)?)?;
    m.add_function(wrap_pyfunction!(macaulay_diff_set, m)?)?;
    m.add_function(wrap_pyfunction!(gotzmann, m)?)?;
    m.add_function(wrap_pyfunction!(church_power, m)?)?;
    m.add("ResourceLimit", m.py().get_type::<ResourceLimit>())?;
    m.add("NetFailure", m.py().get_type::<NetFailure>())?;
    Ok(())
}
