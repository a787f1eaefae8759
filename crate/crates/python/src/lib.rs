//! Python bindings: presentations, the decomposition report, Veronese closed
//! forms, monomial ideal regularity, and the oracle verification suite.

use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use asreg_core::decompose::analyze;
use asreg_core::homology::CoeffField;
use asreg_core::lattice::IntVec;
use asreg_core::monomial::MonomialIdeal;
use asreg_core::oracle;
use asreg_core::report::build_report;
use asreg_core::semigroup::{apery_set, class_count, LayeredMembership, SemigroupPresentation};
use asreg_core::veronese::{self, VeroneseParams};
use asreg_core::{Caps, Error};

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::BoundExceeded { .. } | Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn field_of(characteristic: Option<u64>) -> PyResult<CoeffField> {
    match characteristic {
        None => Ok(CoeffField::Rational),
        Some(p) => CoeffField::prime(p).map_err(to_py_err),
    }
}

fn rows_to_i64(rows: &[IntVec]) -> PyResult<Vec<Vec<i64>>> {
    rows.iter()
        .map(|r| r.to_i64_vec().map_err(to_py_err))
        .collect()
}

/// A validated standard-form semigroup presentation.
#[pyclass(module = "asreg")]
struct Presentation {
    inner: SemigroupPresentation,
    caps: Caps,
}

impl Presentation {
    fn layers(&self) -> LayeredMembership {
        LayeredMembership::new(&self.inner, self.caps)
    }
}

#[pymethods]
impl Presentation {
    #[new]
    #[pyo3(signature = (dim, alpha, generators, max_degree=None, max_layer=None))]
    fn new(
        dim: usize,
        alpha: u64,
        generators: Vec<Vec<i64>>,
        max_degree: Option<usize>,
        max_layer: Option<usize>,
    ) -> PyResult<Self> {
        let raw: Vec<IntVec> = generators.iter().map(|g| IntVec::from_i64(g)).collect();
        let inner = SemigroupPresentation::new(dim, alpha, raw).map_err(to_py_err)?;
        let mut caps = Caps::default();
        if let Some(d) = max_degree {
            caps.max_degree = d;
        }
        if let Some(l) = max_layer {
            caps.max_layer = l;
        }
        Ok(Presentation { inner, caps })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn alpha(&self) -> u64 {
        self.inner.alpha()
    }

    #[getter]
    fn codim(&self) -> u64 {
        self.inner.codim()
    }

    /// Generators in canonical order: corners first, then the sorted interior.
    fn generators(&self) -> PyResult<Vec<Vec<i64>>> {
        rows_to_i64(&self.inner.generators())
    }

    fn warnings(&self) -> Vec<String> {
        self.inner.warnings().to_vec()
    }

    /// Number of residue classes, equal to the degree of the ring.
    fn class_count(&self) -> PyResult<BigInt> {
        class_count(&self.inner).map_err(to_py_err)
    }

    /// The Apery set as a sorted list of coordinate vectors.
    fn apery_set(&self) -> PyResult<Vec<Vec<i64>>> {
        let mut layers = self.layers();
        let apery = apery_set(&self.inner, &mut layers).map_err(to_py_err)?;
        let mut elements: Vec<IntVec> = apery.elements().cloned().collect();
        elements.sort();
        rows_to_i64(&elements)
    }

    /// The residue classes as `(members, shift, shift_degree)` triples in
    /// deterministic class order.
    fn apery_classes(&self) -> PyResult<Vec<(Vec<Vec<i64>>, Vec<i64>, u64)>> {
        let mut layers = self.layers();
        let apery = apery_set(&self.inner, &mut layers).map_err(to_py_err)?;
        apery
            .classes
            .iter()
            .map(|c| {
                Ok((
                    rows_to_i64(&c.members)?,
                    c.shift.to_i64_vec().map_err(to_py_err)?,
                    c.shift_degree,
                ))
            })
            .collect()
    }

    fn reduction_number(&self) -> PyResult<u64> {
        let mut layers = self.layers();
        asreg_core::semigroup::reduction_number(&self.inner, &mut layers).map_err(to_py_err)
    }

    #[pyo3(signature = (characteristic=None))]
    fn regularity(&self, characteristic: Option<u64>) -> PyResult<u64> {
        let (_, report) =
            analyze(&self.inner, field_of(characteristic)?, &self.caps).map_err(to_py_err)?;
        Ok(report.regularity)
    }

    fn is_seminormal(&self) -> PyResult<bool> {
        let mut layers = self.layers();
        asreg_core::decompose::is_seminormal(&self.inner, &mut layers).map_err(to_py_err)
    }

    fn is_normal(&self) -> PyResult<bool> {
        let mut layers = self.layers();
        asreg_core::decompose::is_normal(&self.inner, &mut layers).map_err(to_py_err)
    }

    fn is_cohen_macaulay(&self) -> PyResult<bool> {
        let mut layers = self.layers();
        asreg_core::decompose::is_cohen_macaulay(&self.inner, &mut layers).map_err(to_py_err)
    }

    /// The full report serialized as JSON, as produced by the CLI.
    #[pyo3(signature = (characteristic=None))]
    fn report_json(&self, characteristic: Option<u64>) -> PyResult<String> {
        let (dec, rr) =
            analyze(&self.inner, field_of(characteristic)?, &self.caps).map_err(to_py_err)?;
        let report = build_report(&self.inner, &dec, &rr).map_err(to_py_err)?;
        serde_json::to_string_pretty(&report)
            .map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    /// Runs the brute-force oracle suite; returns True when every check
    /// agrees with the primary implementation.
    fn verify(&self) -> PyResult<bool> {
        let checks = oracle::verify_presentation(&self.inner, &self.caps).map_err(to_py_err)?;
        Ok(checks.iter().all(|c| c.passed))
    }

    fn __repr__(&self) -> String {
        format!(
            "Presentation(dim={}, alpha={}, codim={})",
            self.inner.dim(),
            self.inner.alpha(),
            self.inner.codim()
        )
    }
}

/// Regularity of the full Veronese ring, `floor(d - d/alpha)`.
#[pyfunction]
fn veronese_regularity(dim: usize, alpha: u64) -> PyResult<u64> {
    let params = VeroneseParams::new(dim, alpha).map_err(to_py_err)?;
    Ok(veronese::regularity(&params))
}

/// Exact degree and codimension of the full Veronese ring.
#[pyfunction]
fn veronese_degree_codim(dim: usize, alpha: u64) -> PyResult<(BigInt, BigInt)> {
    let params = VeroneseParams::new(dim, alpha).map_err(to_py_err)?;
    veronese::deg_codim(&params).map_err(to_py_err)
}

/// All degree-`alpha` exponent vectors in `dim` variables.
#[pyfunction]
fn veronese_generators(dim: usize, alpha: u64) -> PyResult<Vec<Vec<i64>>> {
    let params = VeroneseParams::new(dim, alpha).map_err(to_py_err)?;
    let caps = Caps::default();
    use num_traits::ToPrimitive;
    if veronese::generator_count(&params)
        .to_usize()
        .is_none_or(|c| c > caps.max_layer)
    {
        return Err(PyRuntimeError::new_err("generator count exceeds the cap"));
    }
    rows_to_i64(&veronese::generators(&params))
}

/// Castelnuovo-Mumford regularity of the monomial ideal with the given
/// exponent vectors as generators.
#[pyfunction]
fn monomial_ideal_regularity(dim: usize, generators: Vec<Vec<u64>>) -> PyResult<u64> {
    let ideal = MonomialIdeal::from_exponent_rows(dim, &generators);
    asreg_core::regularity(&ideal, Caps::default().max_lcm_lattice).map_err(to_py_err)
}

#[pymodule]
fn asreg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Presentation>()?;
    m.add_function(wrap_pyfunction!(veronese_regularity, m)?)?;
    m.add_function(wrap_pyfunction!(veronese_degree_codim, m)?)?;
    m.add_function(wrap_pyfunction!(veronese_generators, m)?)?;
    m.add_function(wrap_pyfunction!(monomial_ideal_regularity, m)?)?;
    Ok(())
}
