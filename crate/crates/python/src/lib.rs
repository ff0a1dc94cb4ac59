//! Python bindings: rings and elements, groups, rank certificates, and the
//! main searches and checks. Elements cross the boundary as text in the
//! same syntax the parsers accept; reports come back as dicts.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;
use ugnkit::algebras::leavitt::LeavittAlgebra;
use ugnkit::amenability::{
    bs_example_check, find_two_to_one_injection, folner_search, FolnerOutcome, FolnerStrategy, InjectionOutcome,
    SubsetPredicate,
};
use ugnkit::graded::endo_graded_construction;
use ugnkit::groups::{FiniteSet, GroupDescriptor};
use ugnkit::monoids::{LeqVerdict, MonoidQuery, DEFAULT_CLOSURE_DEPTH};
use ugnkit::rings::{self, RingHom};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any(),
            None => n.as_f64().unwrap_or_default().into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(xs) => PyList::new(py, xs.iter().map(|x| to_py(py, x)).collect::<PyResult<Vec<_>>>()?)?.into_any(),
        Value::Object(m) => {
            let d = PyDict::new(py);
            for (k, x) in m {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

/// A coefficient ring such as `Z`, `Z/5`, `M2(Q)`, `L(1,2)` or `Z[C(3)]`.
#[pyclass(frozen, from_py_object, module = "pyugnkit")]
#[derive(Clone)]
struct Ring {
    inner: rings::Ring,
}

#[pymethods]
impl Ring {
    #[new]
    fn new(spec: &str) -> PyResult<Ring> {
        Ok(Ring { inner: spec.parse().map_err(err)? })
    }

    fn __call__(&self, text: &str) -> PyResult<Element> {
        let e = self.inner.parse_elem(text).map_err(err)?;
        Ok(Element { ring: self.inner.clone(), inner: e })
    }

    fn zero(&self) -> Element {
        Element { ring: self.inner.clone(), inner: self.inner.zero() }
    }

    fn one(&self) -> Element {
        Element { ring: self.inner.clone(), inner: self.inner.one() }
    }

    /// Canonical form of an element given as text.
    fn normalize(&self, text: &str) -> PyResult<String> {
        Ok(self.inner.format_elem(&self.inner.parse_elem(text).map_err(err)?))
    }

    fn is_commutative(&self) -> bool {
        self.inner.is_commutative()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Ring('{}')", self.inner)
    }
}

#[pyclass(frozen, from_py_object, module = "pyugnkit")]
#[derive(Clone)]
struct Element {
    ring: rings::Ring,
    inner: rings::Elem,
}

impl Element {
    fn same_ring(&self, other: &Element) -> PyResult<()> {
        if self.ring != other.ring {
            return Err(err(format!("elements of {} and {}", self.ring, other.ring)));
        }
        Ok(())
    }

    fn with(&self, inner: rings::Elem) -> Element {
        Element { ring: self.ring.clone(), inner }
    }
}

#[pymethods]
impl Element {
    fn __add__(&self, other: &Element) -> PyResult<Element> {
        self.same_ring(other)?;
        Ok(self.with(self.ring.add(&self.inner, &other.inner)))
    }

    fn __sub__(&self, other: &Element) -> PyResult<Element> {
        self.same_ring(other)?;
        Ok(self.with(self.ring.sub(&self.inner, &other.inner)))
    }

    fn __mul__(&self, other: &Element) -> PyResult<Element> {
        self.same_ring(other)?;
        Ok(self.with(self.ring.mul(&self.inner, &other.inner)))
    }

    fn __neg__(&self) -> Element {
        self.with(self.ring.neg(&self.inner))
    }

    fn __pow__(&self, e: u32, _modulo: Option<u32>) -> Element {
        self.with(self.ring.pow(&self.inner, e))
    }

    fn __eq__(&self, other: &Element) -> bool {
        self.ring == other.ring && self.inner == other.inner
    }

    fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.inner)
    }

    fn is_unit(&self) -> bool {
        self.ring.is_unit(&self.inner)
    }

    fn ring(&self) -> Ring {
        Ring { inner: self.ring.clone() }
    }

    fn __str__(&self) -> String {
        self.ring.format_elem(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Element('{}' in {})", self.ring.format_elem(&self.inner), self.ring)
    }
}

/// `F2`, `Z`, `Z^2`, `BS(1,2)`, `C(4)`, `C(2)xC(3)`.
#[pyclass(frozen, from_py_object, module = "pyugnkit")]
#[derive(Clone)]
struct Group {
    inner: GroupDescriptor,
}

#[pymethods]
impl Group {
    #[new]
    fn new(spec: &str) -> PyResult<Group> {
        Ok(Group { inner: spec.parse().map_err(err)? })
    }

    /// Elements of the Cayley ball, identity first.
    fn ball(&self, radius: usize) -> PyResult<Vec<String>> {
        let b = self.inner.ball(radius).map_err(err)?;
        Ok(b.iter().map(|x| self.inner.format_element(x)).collect())
    }

    fn mul(&self, x: &str, y: &str) -> PyResult<String> {
        let g = &self.inner;
        let p = g.try_mul(&g.parse_element(x).map_err(err)?, &g.parse_element(y).map_err(err)?).map_err(err)?;
        Ok(g.format_element(&p))
    }

    fn inverse(&self, x: &str) -> PyResult<String> {
        let g = &self.inner;
        Ok(g.format_element(&g.inverse(&g.parse_element(x).map_err(err)?)))
    }

    fn order(&self) -> Option<u64> {
        self.inner.order()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Group('{}')", self.inner)
    }
}

/// `A` (m x n) and `B` (n x m) with `AB = I_m`.
#[pyclass(frozen, from_py_object, module = "pyugnkit")]
#[derive(Clone)]
struct RankCertificate {
    inner: rings::RankCertificate,
}

fn cert(r: ugnkit::Result<rings::RankCertificate>) -> PyResult<RankCertificate> {
    Ok(RankCertificate { inner: r.map_err(err)? })
}

#[pymethods]
impl RankCertificate {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<RankCertificate> {
        let v: Value = serde_json::from_str(text).map_err(err)?;
        cert(rings::RankCertificate::from_json(&v))
    }

    /// The `(1, n)` certificate `((e1*, ..., en*)ᵗ, (e1, ..., en))` over `L(1,n)`.
    #[staticmethod]
    fn leavitt(n: usize) -> PyResult<RankCertificate> {
        let alg = Arc::new(LeavittAlgebra::new(n, rings::Ring::Integers).map_err(err)?);
        Ok(RankCertificate { inner: alg.rank_certificate() })
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    /// `"Valid"`, `"ValidBGN"` or `"Invalid at (i, j)"`.
    fn verify(&self) -> String {
        self.inner.verify().to_string()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn ring(&self) -> Ring {
        Ring { inner: self.inner.ring().clone() }
    }

    fn extend(&self, target: usize) -> PyResult<RankCertificate> {
        cert(self.inner.extend(target))
    }

    fn opposite(&self) -> PyResult<RankCertificate> {
        cert(self.inner.opposite())
    }

    fn block_up(&self, s: usize) -> PyResult<RankCertificate> {
        cert(self.inner.block_up(s))
    }

    fn block_down(&self) -> PyResult<RankCertificate> {
        cert(self.inner.block_down())
    }

    #[staticmethod]
    fn product(certs: Vec<RankCertificate>) -> PyResult<RankCertificate> {
        let cs: Vec<_> = certs.into_iter().map(|c| c.inner).collect();
        cert(rings::RankCertificate::product(&cs))
    }

    /// Push forward along `reduction:m`, `augmentation`, `projection:i` or `identity`.
    fn map_hom(&self, spec: &str) -> PyResult<RankCertificate> {
        let ring = self.inner.ring();
        let (name, arg) = spec.split_once(':').unwrap_or((spec, ""));
        let num = || arg.trim().parse::<u64>().map_err(|_| err(format!("`{spec}` needs a numeric argument")));
        let phi = match name.trim() {
            "reduction" => RingHom::reduction(num()?),
            "augmentation" => RingHom::augmentation(ring),
            "projection" => RingHom::projection(ring, num()? as usize),
            "identity" => Ok(RingHom::identity(ring.clone())),
            _ => return Err(err(format!("unknown map `{spec}`"))),
        }
        .map_err(err)?;
        cert(self.inner.map_hom(&phi))
    }

    fn __repr__(&self) -> String {
        format!("RankCertificate(n={}, m={}, ring='{}')", self.inner.n(), self.inner.m(), self.inner.ring())
    }
}

fn k_or_ball(g: &GroupDescriptor, k: Option<&str>) -> PyResult<FiniteSet> {
    match k {
        Some(s) => g.parse_set(s).map_err(err),
        None => Ok(g.ball(1).map_err(err)?.into_iter().collect()),
    }
}

/// Ball search for `|KF ∩ X| < (1+eps)|F ∩ X|`. Returns a dict with
/// `found`, the per-radius `ratios` and the `witness` when found.
#[pyfunction]
#[pyo3(signature = (group, eps = "1/2", rmax = 6, k = None, subset = "G"))]
fn folner<'py>(
    py: Python<'py>,
    group: &str,
    eps: &str,
    rmax: usize,
    k: Option<&str>,
    subset: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let g: GroupDescriptor = group.parse().map_err(err)?;
    let x = SubsetPredicate::parse(&g, subset).map_err(err)?;
    let k = k_or_ball(&g, k)?;
    let eps = rings::parse_rational(eps).map_err(err)?;
    let out = folner_search(&x, &k, &eps, &FolnerStrategy::Balls { r_max: rmax }).map_err(err)?;
    let ratios: Vec<Value> = out.tried().iter().map(|t| t.ratio.as_ref().map(|r| r.to_string()).into()).collect();
    let v = match &out {
        FolnerOutcome::Found { witness, index, .. } => serde_json::json!({
            "found": true, "radius": index, "ratios": ratios, "witness": witness.to_json(&g)
        }),
        FolnerOutcome::NotFound { .. } => serde_json::json!({"found": false, "ratios": ratios}),
    };
    to_py(py, &v)
}

/// Two-to-one translating injection `B_r → B_{r+1}` with `K = B_1`.
/// Returns the witness dict, or `None` with a verified Hall violation.
#[pyfunction]
fn paradox<'py>(py: Python<'py>, group: &str, radius: usize) -> PyResult<Option<Bound<'py, PyAny>>> {
    let g: GroupDescriptor = group.parse().map_err(err)?;
    let k = k_or_ball(&g, None)?;
    let (v, w) = (g.ball(radius).map_err(err)?, g.ball(radius + 1).map_err(err)?);
    match find_two_to_one_injection(&g, &v, &w, &k).map_err(err)? {
        InjectionOutcome::Found(wit) => Ok(Some(to_py(py, &wit.to_json(&g))?)),
        InjectionOutcome::Infeasible { .. } => Ok(None),
    }
}

/// Decides an order query such as `"3*x1 <= 2*x1 in M(2,1,1)"`. Returns
/// `(verdict, detail)` with verdict `"yes"`, `"no"` or `"unknown"`.
#[pyfunction]
#[pyo3(signature = (query, depth = DEFAULT_CLOSURE_DEPTH))]
fn monoid_leq(query: &str, depth: usize) -> PyResult<(String, String)> {
    match query.parse::<MonoidQuery>().map_err(err)? {
        MonoidQuery::Cnk { monoid, lhs, rhs } => {
            let yes = monoid.leq(lhs, rhs);
            let detail = format!("{} vs {}", monoid.element(lhs), monoid.element(rhs));
            Ok((if yes { "yes" } else { "no" }.into(), detail))
        }
        MonoidQuery::Mnkl { monoid, lhs, rhs } => Ok(match monoid.leq(&lhs, &rhs, depth).map_err(err)? {
            LeqVerdict::Yes { z, .. } => ("yes".into(), format!("{lhs} + {z} = {rhs}")),
            LeqVerdict::No(sep) => ("no".into(), sep.to_string()),
            LeqVerdict::Unknown { depth, visited } => ("unknown".into(), format!("depth {depth}, {visited} states")),
        }),
    }
}

/// Builds the graded matrix ring over `(S, G, n, l)` and runs every check.
#[pyfunction]
fn endo_graded<'py>(py: Python<'py>, ring: &str, group: &str, n: usize, l: usize) -> PyResult<Bound<'py, PyAny>> {
    let s: rings::Ring = ring.parse().map_err(err)?;
    let g: GroupDescriptor = group.parse().map_err(err)?;
    let (t, rep) = endo_graded_construction(s, g, n, l).map_err(err)?;
    let v = serde_json::json!({
        "passed": rep.passed(),
        "p": rep.p,
        "size": rep.size,
        "ranks": t.ranks(),
        "component_dims": rep.component_dims,
        "strong": rep.strong.passed(),
        "base_decomposition": t.base_decomposition_ring().to_string(),
    });
    to_py(py, &v)
}

/// Checks the `X`, `X0` subset relations in `BS(1,k)` on a ball.
#[pyfunction]
fn bs_check(k: u32, radius: usize) -> PyResult<bool> {
    Ok(bs_example_check(k, radius).map_err(err)?.passed())
}

#[pymodule]
fn pyugnkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Ring>()?;
    m.add_class::<Element>()?;
    m.add_class::<Group>()?;
    m.add_class::<RankCertificate>()?;
    m.add_function(wrap_pyfunction!(folner, m)?)?;
    m.add_function(wrap_pyfunction!(paradox, m)?)?;
    m.add_function(wrap_pyfunction!(monoid_leq, m)?)?;
    m.add_function(wrap_pyfunction!(endo_graded, m)?)?;
    m.add_function(wrap_pyfunction!(bs_check, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use pyo3::ffi::c_str;

    use super::*;

    #[test]
    fn module_runs_in_an_embedded_interpreter() {
        Python::attach(|py| {
            let m = PyModule::new(py, "pyugnkit").unwrap();
            pyugnkit(&m).unwrap();
            let globals = PyDict::new(py);
            globals.set_item("u", m).unwrap();
            py.run(
                c_str!(
                    r#"
c = u.RankCertificate.leavitt(3)
assert c.verify() == "ValidBGN"
L = u.Ring("L(1,3)")
assert str(L("e2'") * L("e2")) == "1"
assert u.folner("F2", rmax=2)["ratios"] == ["5", "17/5", "53/17"]
assert u.monoid_leq("4a <= 3a in C(3,2)")[0] == "yes"
"#
                ),
                Some(&globals),
                None,
            )
            .unwrap();
        });
    }

    #[test]
    fn json_values_convert() {
        Python::attach(|py| {
            let v = serde_json::json!({"a": [1, "x", null, true]});
            let o = to_py(py, &v).unwrap();
            assert_eq!(o.repr().unwrap().to_string(), "{'a': [1, 'x', None, True]}");
        });
    }
}
