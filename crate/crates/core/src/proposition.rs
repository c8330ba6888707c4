//! Propositions as vectors in `M^S` and bounded posets of them.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::frame::check_states;
use crate::order::{Elem, FinitePoset, Lattice};

/// A named truth-value vector: one lattice element per state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proposition {
    pub name: String,
    pub values: Vec<Elem>,
}

impl Proposition {
    pub fn new(name: impl Into<String>, values: Vec<Elem>) -> Self {
        Proposition {
            name: name.into(),
            values,
        }
    }
}

/// A finite bounded subposet of `M^S` ordered pointwise.
///
/// Rows keep their declaration order. The constant-bottom and constant-top
/// vectors must both be present, and no two rows may share a vector.
#[derive(Clone, Debug)]
pub struct PropositionPoset {
    lattice: Arc<Lattice>,
    states: Arc<[String]>,
    rows: Vec<Proposition>,
    by_vector: HashMap<Vec<Elem>, usize>,
    zero: usize,
    one: usize,
}

impl PartialEq for PropositionPoset {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice && self.states == other.states && self.rows == other.rows
    }
}

impl Eq for PropositionPoset {}

impl PropositionPoset {
    pub fn new(lattice: Arc<Lattice>, states: Arc<[String]>, rows: Vec<Proposition>) -> Result<Self> {
        check_states(&states)?;
        let n = states.len();
        let mut by_vector: HashMap<Vec<Elem>, usize> = HashMap::with_capacity(rows.len());
        let mut names: HashMap<&str, usize> = HashMap::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            if row.values.len() != n {
                return Err(Error::VectorLength {
                    name: row.name.clone(),
                    got: row.values.len(),
                    expected: n,
                });
            }
            if let Some(bad) = row.values.iter().find(|e| e.index() >= lattice.len()) {
                return Err(Error::UnknownElement(format!("#{}", bad.0)));
            }
            if names.insert(&row.name, i).is_some() {
                return Err(Error::DuplicateName(row.name.clone()));
            }
            if let Some(&j) = by_vector.get(&row.values) {
                return Err(Error::DuplicateVector(rows[j].name.clone(), row.name.clone()));
            }
            by_vector.insert(row.values.clone(), i);
        }
        let one = *by_vector.get(&vec![lattice.top(); n]).ok_or(Error::MissingTop)?;
        let zero = *by_vector.get(&vec![lattice.bottom(); n]).ok_or(Error::MissingBottom)?;
        Ok(PropositionPoset {
            lattice,
            states,
            rows,
            by_vector,
            zero,
            one,
        })
    }

    /// Builds rows from element names, e.g. `("l", &["1", "1", "0", "0", "0"])`.
    pub fn from_named<S: AsRef<str>>(lattice: Arc<Lattice>, states: &[S], rows: &[(&str, &[&str])]) -> Result<Self> {
        let states: Arc<[String]> = states.iter().map(|s| s.as_ref().to_string()).collect();
        let rows = rows
            .iter()
            .map(|(name, vals)| {
                let values = vals.iter().map(|v| lattice.element(v)).collect::<Result<Vec<_>>>()?;
                Ok(Proposition::new(*name, values))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(lattice, states, rows)
    }

    /// All of `M^S`, in lexicographic order of element indices.
    pub fn full_power(lattice: Arc<Lattice>, states: Arc<[String]>) -> Result<Self> {
        let alphabet: Vec<Elem> = lattice.elements().collect();
        Self::power(lattice, states, &alphabet)
    }

    /// The characteristic vectors `{0,1}^S` (bottom and top of `M` only).
    pub fn boolean_power(lattice: Arc<Lattice>, states: Arc<[String]>) -> Result<Self> {
        let alphabet = [lattice.bottom(), lattice.top()];
        Self::power(lattice, states, &alphabet)
    }

    fn power(lattice: Arc<Lattice>, states: Arc<[String]>, alphabet: &[Elem]) -> Result<Self> {
        let n = states.len();
        let k = alphabet.len();
        let total = k
            .checked_pow(n as u32)
            .filter(|&t| t <= 1 << 20)
            .ok_or_else(|| Error::CapExceeded(format!("{k}^{n} vectors")))?;
        let mut rows = Vec::with_capacity(total);
        for code in 0..total {
            let mut rest = code;
            let mut values = vec![Elem(0); n];
            for slot in values.iter_mut().rev() {
                *slot = alphabet[rest % k];
                rest /= k;
            }
            let name = vector_name(&lattice, &values);
            rows.push(Proposition::new(name, values));
        }
        Self::new(lattice, states, rows)
    }

    /// The rows named in `names`, in that order.
    pub fn select<S: AsRef<str>>(&self, names: &[S]) -> Result<Self> {
        let rows = names
            .iter()
            .map(|n| self.index_of(n.as_ref()).map(|i| self.rows[i].clone()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.lattice.clone(), self.states.clone(), rows)
    }

    /// Same rows viewed in the order-dual lattice.
    pub fn dual(&self) -> Self {
        PropositionPoset {
            lattice: Arc::new(self.lattice.dual()),
            states: self.states.clone(),
            rows: self.rows.clone(),
            by_vector: self.by_vector.clone(),
            zero: self.one,
            one: self.zero,
        }
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn states(&self) -> &Arc<[String]> {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Proposition] {
        &self.rows
    }

    pub fn name(&self, i: usize) -> &str {
        &self.rows[i].name
    }

    pub fn vector(&self, i: usize) -> &[Elem] {
        &self.rows[i].values
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.rows
            .iter()
            .position(|r| r.name == name)
            .ok_or_else(|| Error::UnknownProposition(name.to_string()))
    }

    pub fn index_of_vector(&self, v: &[Elem]) -> Option<usize> {
        self.by_vector.get(v).copied()
    }

    pub fn row_leq(&self, i: usize, j: usize) -> bool {
        self.lattice.leq_pointwise(&self.rows[i].values, &self.rows[j].values)
    }

    /// Lattice and state list must agree.
    pub fn check_compatible(&self, other: &PropositionPoset) -> Result<()> {
        if self.states != other.states {
            return Err(Error::StateMismatch);
        }
        if self.lattice != other.lattice {
            return Err(Error::LatticeMismatch);
        }
        Ok(())
    }

    pub fn to_poset(&self) -> FinitePoset {
        FinitePoset::from_order(self.rows.iter().map(|r| r.name.clone()).collect(), |i, j| {
            self.row_leq(i, j)
        })
        .expect("pointwise order on distinct vectors is a partial order")
    }

    /// Space-separated element names, e.g. `1 1 0 0 0`.
    pub fn format_vector(&self, v: &[Elem]) -> String {
        format_vector(&self.lattice, v)
    }

    /// The row name when `v` is a row, otherwise the tuple form `(1,0,0,0,0)`.
    pub fn label(&self, v: &[Elem]) -> String {
        match self.index_of_vector(v) {
            Some(i) => self.rows[i].name.clone(),
            None => vector_name(&self.lattice, v),
        }
    }
}

pub fn format_vector(lattice: &Lattice, v: &[Elem]) -> String {
    v.iter().map(|&e| lattice.element_name(e)).collect::<Vec<_>>().join(" ")
}

/// Tuple notation `(1,0,0,0,0)`.
pub fn vector_name(lattice: &Lattice, v: &[Elem]) -> String {
    let parts: Vec<&str> = v.iter().map(|&e| lattice.element_name(e)).collect();
    format!("({})", parts.join(","))
}
