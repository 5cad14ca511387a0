//! Python module `pyvagroup`.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde_json::Value;

use vagroup::catalog;
use vagroup::dual::{DualChar, Lattice, DEFAULT_CENSUS_BUDGET, DEFAULT_PRIME_BOUND};
use vagroup::group::{GroupDefinition, VAGroup};
use vagroup::mackey::{Irreducibility, MonomialRep, DEFAULT_IMAGE_CAP};
use vagroup::rigidity::{self, CrystalLikeStatus, FingerprintOptions, LoadedGroup};
use vagroup::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } | Error::NoCertificate(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py(py: Python<'_>, value: &Value) -> PyResult<Py<PyAny>> {
    match value {
        Value::Null => Ok(py.None()),
        Value::Bool(b) => b.into_py_any(py),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_py_any(py),
            None => n.as_f64().unwrap_or(f64::NAN).into_py_any(py),
        },
        Value::String(s) => s.into_py_any(py),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_py_any(py)
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, v) in map {
                dict.set_item(k, to_py(py, v)?)?;
            }
            dict.into_py_any(py)
        }
    }
}

fn serialized<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let v = serde_json::to_value(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    to_py(py, &v)
}

/// A virtually abelian group `Z^r × F ⋊ D`.
#[pyclass(name = "Group", module = "pyvagroup", frozen)]
struct PyGroup {
    loaded: LoadedGroup,
}

impl PyGroup {
    fn group(&self) -> &VAGroup {
        &self.loaded.group
    }
}

#[pymethods]
impl PyGroup {
    /// Catalog entry by name, or a group-definition file path.
    #[staticmethod]
    fn load(source: &str) -> PyResult<Self> {
        Ok(PyGroup {
            loaded: rigidity::load_group(source).map_err(py_err)?,
        })
    }

    /// Group from the text of a definition document.
    #[staticmethod]
    fn from_definition(text: &str) -> PyResult<Self> {
        let def = GroupDefinition::parse(text).map_err(py_err)?;
        let group = VAGroup::from_definition(&def).map_err(py_err)?;
        Ok(PyGroup {
            loaded: LoadedGroup {
                name: group.display_name(),
                group,
                reference: None,
            },
        })
    }

    #[getter]
    fn name(&self) -> String {
        self.loaded.name.clone()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.group().rank()
    }

    #[getter]
    fn point_group_order(&self) -> usize {
        self.group().point_group().order()
    }

    fn hirsch_length(&self) -> usize {
        self.group().hirsch_length()
    }

    fn is_crystallographic(&self) -> bool {
        self.group().is_crystallographic()
    }

    fn has_torsion(&self) -> bool {
        self.group().has_torsion()
    }

    fn fc_center_is_torsion_free(&self) -> bool {
        self.group().fc_center_is_torsion_free()
    }

    /// `(free_rank, invariant_factors)` of the abelianization.
    fn abelianization(&self) -> (usize, Vec<String>) {
        let h1 = self.group().abelianization();
        (
            h1.free_rank(),
            h1.torsion().iter().map(ToString::to_string).collect(),
        )
    }

    fn abelianization_str(&self) -> String {
        self.group().abelianization().to_string()
    }

    fn element_orders(&self, bound: usize) -> Vec<usize> {
        self.group().element_order_census(bound).orders()
    }

    #[pyo3(signature = (denominator, budget = DEFAULT_CENSUS_BUDGET))]
    fn orbit_census(&self, denominator: u64, budget: u128) -> PyResult<BTreeMap<usize, usize>> {
        self.group()
            .orbit_census(denominator, budget)
            .map_err(py_err)
    }

    #[pyo3(signature = (denominator, budget = DEFAULT_CENSUS_BUDGET))]
    fn dimension_census(&self, denominator: u64, budget: u128) -> PyResult<BTreeMap<usize, usize>> {
        let census = self
            .group()
            .dimension_census(denominator, budget)
            .map_err(py_err)?;
        if census.unsupported_orbits > 0 {
            return Err(PyRuntimeError::new_err(format!(
                "{} orbits have non-split fibers",
                census.unsupported_orbits
            )));
        }
        Ok(census.dimensions)
    }

    /// Search for a character with a full orbit; returns a dict with `status`.
    #[pyo3(signature = (prime_bound = DEFAULT_PRIME_BOUND, budget = DEFAULT_CENSUS_BUDGET))]
    fn principal_character(
        &self,
        py: Python<'_>,
        prime_bound: u64,
        budget: u128,
    ) -> PyResult<Py<PyAny>> {
        let result = self
            .group()
            .find_principal_character(Lattice::Model, prime_bound, budget)
            .map_err(py_err)?;
        serialized(py, &CrystalLikeStatus::from(&result))
    }

    /// Induced representation from a lattice character `a/b,c/d;t1,t2`.
    fn induce(&self, character: &str) -> PyResult<PyInduced> {
        let g = self.group();
        let chi: DualChar = character.parse().map_err(py_err)?;
        let chi = chi.for_group(g).map_err(py_err)?;
        let rep = match g.extend_lattice_character(&chi) {
            Some(ext) if g.in_n_k(&ext) => g.induce(&ext).map_err(py_err)?,
            _ => g.induce_from_lattice(&chi),
        };
        Ok(PyInduced::new(&rep))
    }

    #[pyo3(signature = (denominator = 3, prime_bound = DEFAULT_PRIME_BOUND, budget = DEFAULT_CENSUS_BUDGET))]
    fn fingerprint(
        &self,
        py: Python<'_>,
        denominator: u64,
        prime_bound: u64,
        budget: u128,
    ) -> PyResult<Py<PyAny>> {
        let options = FingerprintOptions {
            max_denominator: denominator,
            prime_bound,
            budget,
        };
        let f = rigidity::fingerprint(&self.loaded, &options).map_err(py_err)?;
        serialized(py, &f)
    }

    fn __repr__(&self) -> String {
        format!(
            "Group({}, rank={}, |D|={})",
            self.loaded.name,
            self.rank(),
            self.point_group_order()
        )
    }
}

/// Monomial representation; images are `(perm, phases)` pairs with phases
/// as exact fractions of a full turn.
#[pyclass(name = "InducedRepresentation", module = "pyvagroup", frozen, get_all)]
struct PyInduced {
    dimension: usize,
    transversal: Vec<usize>,
    images: Vec<(Vec<usize>, Vec<String>)>,
    /// `"irreducible"`, `"reducible"` or `"inconclusive"`.
    irreducibility: String,
    /// `Σ|tr|² / |image|` as a fraction, when decided.
    average: Option<String>,
}

impl PyInduced {
    fn new(rep: &MonomialRep) -> Self {
        let images = rep
            .images()
            .iter()
            .map(|m| {
                (
                    m.perm.clone(),
                    m.phases.iter().map(ToString::to_string).collect(),
                )
            })
            .collect();
        let (irreducibility, average) = match rep.check_irreducible(DEFAULT_IMAGE_CAP) {
            Irreducibility::Irreducible { .. } => ("irreducible", Some("1".to_string())),
            Irreducibility::Reducible { average, .. } => ("reducible", Some(average.to_string())),
            Irreducibility::Inconclusive { .. } => ("inconclusive", None),
        };
        PyInduced {
            dimension: rep.dimension(),
            transversal: rep.transversal().to_vec(),
            images,
            irreducibility: irreducibility.to_string(),
            average,
        }
    }
}

#[pymethods]
impl PyInduced {
    fn __repr__(&self) -> String {
        format!(
            "InducedRepresentation(dimension={}, {})",
            self.dimension, self.irreducibility
        )
    }
}

#[pyfunction]
fn catalog_names() -> Vec<&'static str> {
    catalog::entries().iter().map(|e| e.name).collect()
}

#[pyfunction]
fn export_definition(name: &str) -> PyResult<String> {
    catalog::export(name).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (a, b, denominator = 3))]
fn compare(py: Python<'_>, a: &PyGroup, b: &PyGroup, denominator: u64) -> PyResult<Py<PyAny>> {
    let options = FingerprintOptions {
        max_denominator: denominator,
        ..FingerprintOptions::default()
    };
    let fa = rigidity::fingerprint(&a.loaded, &options).map_err(py_err)?;
    let fb = rigidity::fingerprint(&b.loaded, &options).map_err(py_err)?;
    serialized(py, &rigidity::compare(&fa, &fb))
}

#[pyfunction]
fn survey_wallpaper(py: Python<'_>) -> PyResult<Py<PyAny>> {
    let survey =
        rigidity::survey_wallpaper(DEFAULT_PRIME_BOUND, DEFAULT_CENSUS_BUDGET).map_err(py_err)?;
    serialized(py, &survey)
}

#[pymodule]
fn pyvagroup(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyInduced>()?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(export_definition, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(survey_wallpaper, m)?)?;
    Ok(())
}
