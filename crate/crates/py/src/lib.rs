use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use transop::dot;
use transop::fixpoint::{default_max_steps, Schedule, StepKind};
use transop::induction::{uniform_witness_lower, uniform_witness_upper, WitnessOutcome};
use transop::oracle::{self, OracleConfig, PosetMode};
use transop::system::read_system;
use transop::{
    induced_lower, induced_upper, iterate, lower_operator, parse_system, recoverability, upper_operator, OperatorTable,
    Relation, SystemDescription, TransitionFrame,
};

type Pairs = Vec<(String, String)>;

fn err(e: transop::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn pairs(frame: &TransitionFrame, r: &Relation) -> Vec<(String, String)> {
    let states = frame.states();
    r.pairs().map(|(s, t)| (states[s].clone(), states[t].clone())).collect()
}

fn step_kind(name: &str) -> PyResult<StepKind> {
    match name {
        "upper" => Ok(StepKind::Upper),
        "lower" => Ok(StepKind::Lower),
        _ => Err(PyValueError::new_err(format!("unknown step kind {name:?}"))),
    }
}

/// A finite lattice with named elements.
#[pyclass(name = "Lattice", module = "pytransop", frozen)]
pub struct PyLattice {
    inner: Arc<transop::Lattice>,
}

#[pymethods]
impl PyLattice {
    /// One of `chain2`, `chain3`, `chain4`, `diamond`.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        transop::Lattice::builtin(name)
            .map(|l| Self { inner: Arc::new(l) })
            .ok_or_else(|| PyValueError::new_err(format!("unknown lattice {name:?}")))
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn elements(&self) -> Vec<String> {
        self.inner.element_names().to_vec()
    }

    #[getter]
    fn bottom(&self) -> String {
        self.inner.element_name(self.inner.bottom()).to_string()
    }

    #[getter]
    fn top(&self) -> String {
        self.inner.element_name(self.inner.top()).to_string()
    }

    fn leq(&self, a: &str, b: &str) -> PyResult<bool> {
        Ok(self
            .inner
            .leq(self.inner.element(a).map_err(err)?, self.inner.element(b).map_err(err)?))
    }

    fn meet(&self, items: Vec<String>) -> PyResult<String> {
        let e = self.inner.meet_named(&items).map_err(err)?;
        Ok(self.inner.element_name(e).to_string())
    }

    fn join(&self, items: Vec<String>) -> PyResult<String> {
        let e = self.inner.join_named(&items).map_err(err)?;
        Ok(self.inner.element_name(e).to_string())
    }

    fn dual(&self) -> Self {
        Self {
            inner: Arc::new(self.inner.dual()),
        }
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Lattice({:?}, {} elements)", self.inner.name(), self.inner.len())
    }
}

/// A transition system with its proposition posets `A` and `B`.
#[pyclass(name = "System", module = "pytransop", frozen)]
pub struct PySystem {
    inner: SystemDescription,
}

impl PySystem {
    fn table_dict<'py>(&self, py: Python<'py>, table: &OperatorTable) -> PyResult<Bound<'py, PyDict>> {
        let l = self.inner.lattice();
        let out = PyDict::new(py);
        for (row, image) in table.domain().rows().iter().zip(table.entries()) {
            let values: Vec<&str> = image.iter().map(|&e| l.element_name(e)).collect();
            out.set_item(&row.name, values)?;
        }
        Ok(out)
    }

    fn upper(&self) -> PyResult<OperatorTable> {
        upper_operator(&self.inner.frame, &self.inner.b).map_err(err)
    }

    fn lower(&self) -> PyResult<OperatorTable> {
        lower_operator(&self.inner.frame, &self.inner.a).map_err(err)
    }
}

#[pymethods]
impl PySystem {
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        parse_system(text).map(|inner| Self { inner }).map_err(err)
    }

    #[staticmethod]
    fn from_file(path: std::path::PathBuf) -> PyResult<Self> {
        read_system(&path).map(|inner| Self { inner }).map_err(err)
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn states(&self) -> Vec<String> {
        self.inner.states().to_vec()
    }

    #[getter]
    fn lattice(&self) -> PyLattice {
        PyLattice {
            inner: self.inner.lattice().clone(),
        }
    }

    /// Transition pairs as `(source, target)` state names.
    #[getter]
    fn relation(&self) -> Vec<(String, String)> {
        pairs(&self.inner.frame, self.inner.relation())
    }

    /// Every declared proposition as `name -> values per state`.
    fn propositions<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let l = self.inner.lattice();
        let out = PyDict::new(py);
        for row in self.inner.pool.rows() {
            let values: Vec<&str> = row.values.iter().map(|&e| l.element_name(e)).collect();
            out.set_item(&row.name, values)?;
        }
        Ok(out)
    }

    #[getter]
    fn b(&self) -> Vec<String> {
        self.inner.b.rows().iter().map(|r| r.name.clone()).collect()
    }

    #[getter]
    fn a(&self) -> Vec<String> {
        self.inner.a.rows().iter().map(|r| r.name.clone()).collect()
    }

    /// The same system with a different transition relation.
    fn with_relation(&self, pairs: Vec<(String, String)>) -> PyResult<Self> {
        let frame = &self.inner.frame;
        let mut r = Relation::empty(frame.states().len());
        for (s, t) in pairs {
            r.insert(frame.state_index(&s).map_err(err)?, frame.state_index(&t).map_err(err)?);
        }
        self.inner.with_relation(r).map(|inner| Self { inner }).map_err(err)
    }

    fn render(&self) -> String {
        self.inner.render()
    }

    /// `T_R` on `B` as `proposition -> values per state`.
    fn upper_table<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        self.table_dict(py, &self.upper()?)
    }

    /// `P_R` on `A` as `proposition -> values per state`.
    fn lower_table<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        self.table_dict(py, &self.lower()?)
    }

    fn induced_upper(&self) -> PyResult<Vec<(String, String)>> {
        Ok(pairs(&self.inner.frame, &induced_upper(&self.upper()?)))
    }

    fn induced_lower(&self) -> PyResult<Vec<(String, String)>> {
        Ok(pairs(&self.inner.frame, &induced_lower(&self.lower()?)))
    }

    /// `{"upper": bool, "lower": bool, "upper_extra": [...], "lower_extra": [...]}`.
    fn recover<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let report = recoverability(&self.inner.frame, &self.inner.a, &self.inner.b).map_err(err)?;
        let frame = &self.inner.frame;
        let extra = |added: &[(usize, usize)]| -> Vec<(String, String)> {
            added
                .iter()
                .map(|&(s, t)| (frame.states()[s].clone(), frame.states()[t].clone()))
                .collect()
        };
        let out = PyDict::new(py);
        out.set_item("upper", report.upper_recovered)?;
        out.set_item("lower", report.lower_recovered)?;
        out.set_item("upper_extra", extra(&report.upper_delta.added))?;
        out.set_item("lower_extra", extra(&report.lower_delta.added))?;
        Ok(out)
    }

    /// Runs the closure iteration and returns `(converged, relations)`, where
    /// `relations` starts with `R` and lists the result of every step.
    #[pyo3(signature = (schedule = "alternating", first = "upper", max_steps = None))]
    fn iterate(&self, schedule: &str, first: &str, max_steps: Option<usize>) -> PyResult<(bool, Vec<Pairs>)> {
        let schedule = match schedule {
            "alternating" => Schedule::Alternating {
                first: step_kind(first)?,
            },
            "upper" => Schedule::UpperOnly,
            "lower" => Schedule::LowerOnly,
            other => return Err(PyValueError::new_err(format!("unknown schedule {other:?}"))),
        };
        let max = max_steps.unwrap_or_else(|| default_max_steps(self.inner.states().len()));
        let trace = iterate(&self.inner.frame, &self.inner.a, &self.inner.b, schedule, max).map_err(err)?;
        let chain = trace.relations.iter().map(|r| pairs(&self.inner.frame, r)).collect();
        Ok((trace.converged, chain))
    }

    /// Uniform witness per state for one side: the proposition name, `""` when
    /// vacuous, or `None` when missing.
    #[pyo3(signature = (side = "upper"))]
    fn witnesses(&self, side: &str) -> PyResult<Vec<Option<String>>> {
        let (found, poset) = match step_kind(side)? {
            StepKind::Upper => (uniform_witness_upper(&self.inner.frame, &self.inner.b), &self.inner.b),
            StepKind::Lower => (uniform_witness_lower(&self.inner.frame, &self.inner.a), &self.inner.a),
        };
        Ok(found
            .map_err(err)?
            .outcomes
            .iter()
            .map(|o| match o {
                WitnessOutcome::Row(i) => Some(poset.name(*i).to_string()),
                WitnessOutcome::Vacuous => Some(String::new()),
                WitnessOutcome::Missing => None,
            })
            .collect())
    }

    /// Graphviz source; `what` takes the same values as the CLI `dot --what`.
    #[pyo3(signature = (what = "relation"))]
    fn dot(&self, what: &str) -> PyResult<String> {
        let sys = &self.inner;
        Ok(match what {
            "relation" => dot::relation_dot(&sys.frame, sys.relation(), &sys.name),
            "induced-upper" => dot::relation_dot(&sys.frame, &induced_upper(&self.upper()?), &sys.name),
            "induced-lower" => dot::relation_dot(&sys.frame, &induced_lower(&self.lower()?), &sys.name),
            "hasse" => dot::poset_hasse_dot(&sys.b, &sys.name),
            "hasse-a" => dot::poset_hasse_dot(&sys.a, &sys.name),
            "lattice" => dot::lattice_hasse_dot(sys.lattice()),
            "operator-upper" => dot::operator_dot(&self.upper()?, &sys.name),
            "operator-lower" => dot::operator_dot(&self.lower()?, &sys.name),
            other => return Err(PyValueError::new_err(format!("unknown dot view {other:?}"))),
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "System({:?}, {} states, {} transitions)",
            self.inner.name,
            self.inner.states().len(),
            self.inner.relation().len()
        )
    }
}

/// Runs an exhaustive (or sampled, above three states) oracle suite and
/// returns `(passed, summary)`.
#[pyfunction]
#[pyo3(signature = (suite = "all", states = 2, lattice = "chain2", poset = "boolean", seed = 0x5eed, samples = 500))]
fn verify(
    suite: &str,
    states: usize,
    lattice: &str,
    poset: &str,
    seed: u64,
    samples: usize,
) -> PyResult<(bool, String)> {
    let l = transop::Lattice::builtin(lattice)
        .ok_or_else(|| PyValueError::new_err(format!("unknown lattice {lattice:?}")))?;
    let poset_mode = match poset {
        "boolean" => PosetMode::BooleanPower,
        "full" => PosetMode::FullPower,
        other => return Err(PyValueError::new_err(format!("unknown poset mode {other:?}"))),
    };
    let config = OracleConfig {
        lattice: Arc::new(l),
        poset_mode,
        seed,
        samples,
        ..OracleConfig::default()
    };
    let (upper, lower, laws) = match suite {
        "all" => (true, true, true),
        "upper-adjunction" => (true, false, false),
        "lower-adjunction" => (false, true, false),
        "induction-laws" => (false, false, true),
        other => return Err(PyValueError::new_err(format!("unknown suite {other:?}"))),
    };
    let mut passed = true;
    let mut lines = Vec::new();
    if upper {
        let r = oracle::verify_upper_adjunction(&config, states).map_err(err)?;
        passed &= r.passed();
        lines.push(r.summary_line());
    }
    if lower {
        let r = oracle::verify_lower_adjunction(&config, states).map_err(err)?;
        passed &= r.passed();
        lines.push(r.summary_line());
    }
    if laws {
        let r = oracle::verify_induction_laws(&config, states).map_err(err)?;
        passed &= r.passed();
        lines.push(r.summary_lines().trim_end().to_string());
    }
    Ok((passed, lines.join("\n")))
}

#[pymodule]
pub fn pytransop(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLattice>()?;
    m.add_class::<PySystem>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
