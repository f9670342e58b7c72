//! Python bindings: data, Laurent polynomials, Hecke and spherical elements,
//! the central lift, KL polynomials and the GL(2) report.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

use hecke_core::kl::{bott_samelson as bs_product, KlTable};
use hecke_core::spherical::{self, SphericalElement};
use hecke_core::{
    bernstein, AffineWeylGroup, BernsteinCenter, Coweight, DatumLabel, HeckeElement, LaurentPoly,
};

create_exception!(hecke, HeckeError, PyValueError);

fn err(e: hecke_core::HeckeError) -> PyErr {
    HeckeError::new_err(e.to_string())
}

fn group_of(label: &str) -> PyResult<AffineWeylGroup> {
    AffineWeylGroup::build(label).map_err(err)
}

fn coweight(g: &AffineWeylGroup, coords: Vec<i32>) -> PyResult<Coweight> {
    g.datum().coweight(&coords).map_err(err)
}

fn parse_word(g: &AffineWeylGroup, word: &str) -> PyResult<Vec<u8>> {
    hecke_core::workbench::parse_word(g, word).map_err(err)
}

/// A root datum with its extended affine Weyl group.
#[pyclass(frozen, skip_from_py_object, module = "hecke")]
#[derive(Clone)]
struct Datum {
    group: AffineWeylGroup,
}

#[pymethods]
impl Datum {
    #[new]
    fn new(label: &str) -> PyResult<Self> {
        Ok(Self {
            group: group_of(label)?,
        })
    }

    #[staticmethod]
    fn labels() -> Vec<&'static str> {
        DatumLabel::ALL.iter().map(|l| l.as_str()).collect()
    }

    #[getter]
    fn label(&self) -> &'static str {
        self.group.label().as_str()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.group.rank()
    }

    #[getter]
    fn num_positive_roots(&self) -> usize {
        self.group.datum().num_positive_roots()
    }

    #[getter]
    fn weyl_order(&self) -> usize {
        self.group.datum().weyl.order()
    }

    fn describe(&self) -> String {
        self.group.datum().describe()
    }

    fn fingerprint(&self) -> String {
        self.group.datum().fingerprint()
    }

    fn translation_length(&self, coords: Vec<i32>) -> PyResult<usize> {
        Ok(self
            .group
            .datum()
            .translation_length(&coweight(&self.group, coords)?))
    }

    fn dominant_coweights(&self, max_len: usize) -> Vec<Vec<i32>> {
        self.group
            .datum()
            .dominant_coweights(max_len)
            .iter()
            .map(|c| c.coords().to_vec())
            .collect()
    }

    fn length(&self, element: &str) -> PyResult<usize> {
        let x = self.group.parse_element(element).map_err(err)?;
        Ok(self.group.length(&x))
    }

    fn __repr__(&self) -> String {
        format!("Datum('{}')", self.label())
    }
}

/// An element of `Z[v, v^-1]`.
#[pyclass(frozen, skip_from_py_object, module = "hecke", name = "Laurent")]
#[derive(Clone)]
struct PyLaurent {
    inner: LaurentPoly,
}

impl PyLaurent {
    fn coerce(other: &Bound<'_, PyAny>) -> PyResult<LaurentPoly> {
        if let Ok(p) = other.cast::<PyLaurent>() {
            return Ok(p.get().inner.clone());
        }
        if let Ok(n) = other.extract::<i64>() {
            return Ok(LaurentPoly::constant(n));
        }
        if let Ok(s) = other.extract::<String>() {
            return s.parse().map_err(err);
        }
        Err(HeckeError::new_err("expected Laurent, int or str"))
    }
}

#[pymethods]
impl PyLaurent {
    #[new]
    fn new(value: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self {
            inner: Self::coerce(value)?,
        })
    }

    fn terms(&self) -> Vec<(i32, i64)> {
        self.inner.terms().collect()
    }

    fn bar(&self) -> Self {
        Self {
            inner: self.inner.bar(),
        }
    }

    fn at_q_one(&self) -> PyResult<i64> {
        self.inner.at_q_one().map_err(err)
    }

    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self {
            inner: &self.inner + &Self::coerce(other)?,
        })
    }

    fn __radd__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__add__(other)
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self {
            inner: &self.inner - &Self::coerce(other)?,
        })
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self {
            inner: &self.inner * &Self::coerce(other)?,
        })
    }

    fn __rmul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__mul__(other)
    }

    fn __neg__(&self) -> Self {
        Self {
            inner: -&self.inner,
        }
    }

    fn __truediv__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self {
            inner: self.inner.exact_div(&Self::coerce(other)?).map_err(err)?,
        })
    }

    fn __eq__(&self, other: &Bound<'_, PyAny>) -> bool {
        Self::coerce(other).is_ok_and(|o| o == self.inner)
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.inner.to_pairs().hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Laurent('{}')", self.inner)
    }
}

/// An element of the Iwahori-Hecke algebra in the `T`-basis.
#[pyclass(frozen, skip_from_py_object, module = "hecke", name = "HeckeElement")]
#[derive(Clone)]
struct PyHecke {
    inner: HeckeElement,
}

fn wrap(h: HeckeElement) -> PyHecke {
    PyHecke { inner: h }
}

#[pymethods]
impl PyHecke {
    /// Parses the text or JSON form, e.g. `HeckeElement("GL2", "T[s0*omega^1]")`.
    #[new]
    fn new(datum: &str, text: &str) -> PyResult<Self> {
        let g = group_of(datum)?;
        Ok(wrap(HeckeElement::parse(&g, text).map_err(err)?))
    }

    #[staticmethod]
    fn one(datum: &str) -> PyResult<Self> {
        Ok(wrap(HeckeElement::one(&group_of(datum)?)))
    }

    #[staticmethod]
    fn basis(datum: &str, element: &str) -> PyResult<Self> {
        let g = group_of(datum)?;
        let x = g.parse_element(element).map_err(err)?;
        Ok(wrap(HeckeElement::basis(&g, x)))
    }

    #[getter]
    fn datum(&self) -> &'static str {
        self.inner.group().label().as_str()
    }

    /// `{basis label: Laurent}`.
    fn terms(&self) -> Vec<(String, PyLaurent)> {
        self.inner
            .sorted_terms()
            .into_iter()
            .map(|(l, _, c)| (l, PyLaurent { inner: c.clone() }))
            .collect()
    }

    fn coeff(&self, element: &str) -> PyResult<PyLaurent> {
        let x = self.inner.group().parse_element(element).map_err(err)?;
        Ok(PyLaurent {
            inner: self.inner.coeff(&x),
        })
    }

    fn bar(&self) -> Self {
        wrap(self.inner.bar())
    }

    fn is_central(&self) -> bool {
        bernstein::is_central(&self.inner)
    }

    fn scale(&self, c: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(wrap(self.inner.scale(&PyLaurent::coerce(c)?)))
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        Ok(wrap(self.inner.mul(&other.inner).map_err(err)?))
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        same(&self.inner, &other.inner)?;
        Ok(wrap(&self.inner + &other.inner))
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        same(&self.inner, &other.inner)?;
        Ok(wrap(&self.inner - &other.inner))
    }

    fn __neg__(&self) -> Self {
        wrap(-&self.inner)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("HeckeElement('{}', '{}')", self.datum(), self.inner)
    }
}

fn same(a: &HeckeElement, b: &HeckeElement) -> PyResult<()> {
    if a.group().label() != b.group().label() {
        return Err(HeckeError::new_err(format!(
            "datum mismatch: `{}` vs `{}`",
            a.group().label(),
            b.group().label()
        )));
    }
    Ok(())
}

/// A combination of the double coset sums `m_lambda`.
#[pyclass(
    frozen,
    skip_from_py_object,
    module = "hecke",
    name = "SphericalElement"
)]
#[derive(Clone)]
struct PySpherical {
    inner: SphericalElement,
}

#[pymethods]
impl PySpherical {
    /// Parses `m[1,0] + (q-1)*m[0,0]` or the JSON form.
    #[new]
    fn new(datum: &str, text: &str) -> PyResult<Self> {
        let g = group_of(datum)?;
        Ok(Self {
            inner: SphericalElement::parse(&g, text).map_err(err)?,
        })
    }

    #[staticmethod]
    fn basis(datum: &str, coords: Vec<i32>) -> PyResult<Self> {
        let g = group_of(datum)?;
        let l = coweight(&g, coords)?;
        Ok(Self {
            inner: SphericalElement::basis(&g, &l).map_err(err)?,
        })
    }

    fn terms(&self) -> Vec<(Vec<i32>, PyLaurent)> {
        self.inner
            .terms()
            .iter()
            .map(|(l, c)| (l.coords().to_vec(), PyLaurent { inner: c.clone() }))
            .collect()
    }

    /// `T`-basis realization.
    #[pyo3(signature = (cutoff = 6))]
    fn embed(&self, cutoff: usize) -> PyResult<PyHecke> {
        Ok(wrap(spherical::embed(&self.inner, cutoff).map_err(err)?))
    }

    #[pyo3(signature = (other, cutoff = 6))]
    fn conv(&self, other: &Self, cutoff: usize) -> PyResult<Self> {
        Ok(Self {
            inner: spherical::sph_conv(&self.inner, &other.inner, cutoff).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "SphericalElement('{}', '{}')",
            self.inner.group().label(),
            self.inner
        )
    }
}

/// `z_lambda`.
#[pyfunction]
#[pyo3(signature = (datum, coords, cutoff = 6))]
fn central_element(datum: &str, coords: Vec<i32>, cutoff: usize) -> PyResult<PyHecke> {
    let g = group_of(datum)?;
    let l = coweight(&g, coords)?;
    let c = BernsteinCenter::new(&g, cutoff, false);
    Ok(wrap(c.central_element(&l).map_err(err)?.element))
}

/// `theta_lambda` for any coweight.
#[pyfunction]
fn theta(datum: &str, coords: Vec<i32>) -> PyResult<PyHecke> {
    let g = group_of(datum)?;
    let l = coweight(&g, coords)?;
    Ok(wrap(bernstein::theta(&g, &l).map_err(err)?))
}

/// The central element whose average is `c`, with its `z`-expansion.
#[pyfunction]
#[pyo3(signature = (c, cutoff = 6))]
fn central_lift(py: Python<'_>, c: &PySpherical, cutoff: usize) -> PyResult<(PyHecke, Py<PyDict>)> {
    let center = BernsteinCenter::new(c.inner.group(), cutoff, false);
    let lift = center.central_lift(&c.inner).map_err(err)?;
    let d = PyDict::new(py);
    for (l, a) in &lift.expansion {
        d.set_item(
            PyTuple::new(py, l.coords())?,
            PyLaurent { inner: a.clone() },
        )?;
    }
    Ok((wrap(lift.element), d.unbind()))
}

/// The averaging map `h -> 1_K h` in the `m`-basis.
#[pyfunction]
fn pi(h: &PyHecke) -> PyResult<PySpherical> {
    Ok(PySpherical {
        inner: spherical::pi_map(&h.inner).map_err(err)?,
    })
}

/// `P_{y,w}` as a Laurent polynomial in `v` (even powers).
#[pyfunction]
fn kl_polynomial(datum: &str, y: &str, w: &str) -> PyResult<PyLaurent> {
    let g = group_of(datum)?;
    let y = g.parse_element(y).map_err(err)?;
    let w = g.parse_element(w).map_err(err)?;
    let table = KlTable::compute(&g, g.length(&w)).map_err(err)?;
    Ok(PyLaurent {
        inner: table.polynomial(&y, &w).map_err(err)?,
    })
}

/// `C'_w`.
#[pyfunction]
fn kl_basis(datum: &str, w: &str) -> PyResult<PyHecke> {
    let g = group_of(datum)?;
    let w = g.parse_element(w).map_err(err)?;
    let table = KlTable::compute(&g, g.length(&w)).map_err(err)?;
    Ok(wrap(table.basis(&w).map_err(err)?))
}

/// `prod (T_s + 1)` over a word such as `s0.s1.s0`.
#[pyfunction]
fn bott_samelson(datum: &str, word: &str) -> PyResult<PyHecke> {
    let g = group_of(datum)?;
    let word = parse_word(&g, word)?;
    Ok(wrap(bs_product(&g, &word)))
}

/// `prod C'_s` in the KL basis, `{label: Laurent}`.
#[pyfunction]
fn bs_decompose(datum: &str, word: &str) -> PyResult<Vec<(String, PyLaurent)>> {
    let g = group_of(datum)?;
    let word = parse_word(&g, word)?;
    let table = KlTable::compute(&g, word.len()).map_err(err)?;
    let dec = table.bs_decompose(&word).map_err(err)?;
    Ok(dec
        .into_iter()
        .map(|(x, c)| (g.basis_label(&x), PyLaurent { inner: c }))
        .collect())
}

/// The GL(2) regression: `{"passed", "summary", "y1", "y2", "omega", "assertions"}`.
#[pyfunction]
fn verify_gl2(py: Python<'_>) -> PyResult<Py<PyDict>> {
    let rep = hecke_core::verify_gl2().map_err(err)?;
    let g = rep.lift.element.group().clone();
    let d = PyDict::new(py);
    d.set_item("passed", rep.passed())?;
    d.set_item("summary", rep.summary.clone())?;
    d.set_item("y1", g.basis_label(&rep.y1))?;
    d.set_item("y2", g.basis_label(&rep.y2))?;
    d.set_item("omega", g.basis_label(&rep.omega))?;
    d.set_item("lift", wrap(rep.lift.element.clone()))?;
    let assertions: Vec<(&str, bool, String)> = rep
        .assertions
        .iter()
        .map(|a| (a.name, a.passed, a.detail.clone()))
        .collect();
    d.set_item("assertions", assertions)?;
    Ok(d.unbind())
}

/// Runs the command line driver; returns `(exit_code, output)`.
#[pyfunction]
fn run(argv: Vec<String>) -> (i32, String) {
    let mut args = vec!["hecke".to_string()];
    args.extend(argv);
    hecke_core::run_command(args)
}

#[pymodule]
fn hecke(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("HeckeError", m.py().get_type::<HeckeError>())?;
    m.add_class::<Datum>()?;
    m.add_class::<PyLaurent>()?;
    m.add_class::<PyHecke>()?;
    m.add_class::<PySpherical>()?;
    m.add_function(wrap_pyfunction!(central_element, m)?)?;
    m.add_function(wrap_pyfunction!(theta, m)?)?;
    m.add_function(wrap_pyfunction!(central_lift, m)?)?;
    m.add_function(wrap_pyfunction!(pi, m)?)?;
    m.add_function(wrap_pyfunction!(kl_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(kl_basis, m)?)?;
    m.add_function(wrap_pyfunction!(bott_samelson, m)?)?;
    m.add_function(wrap_pyfunction!(bs_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(verify_gl2, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
