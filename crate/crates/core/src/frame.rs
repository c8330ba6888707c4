//! State sets, transition relations and the relation algebra used on them.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A binary relation on `{0, .., n-1}` stored as a row-major bit matrix.
///
/// Each row occupies whole 64-bit words so successor sets can be combined
/// word by word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.pairs().map(|(s, t)| (s + 1, t + 1)))
            .finish()
    }
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        let stride = n.div_ceil(64).max(1);
        Relation {
            n,
            stride,
            bits: vec![0; n * stride],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut r = Self::empty(n);
        for s in 0..n {
            for t in 0..n {
                r.insert(s, t);
            }
        }
        r
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Self {
        let mut r = Self::empty(n);
        for (s, t) in pairs {
            r.insert(s, t);
        }
        r
    }

    /// Decodes a relation from a bitmask where bit `s*n + t` stands for `(s, t)`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n * n <= 64, "mask encoding supports at most 8 states");
        let mut r = Self::empty(n);
        for i in 0..n * n {
            if mask >> i & 1 == 1 {
                r.insert(i / n, i % n);
            }
        }
        r
    }

    pub fn to_mask(&self) -> u64 {
        assert!(self.n * self.n <= 64, "mask encoding supports at most 8 states");
        self.pairs().fold(0, |m, (s, t)| m | 1 << (s * self.n + t))
    }

    /// Number of states.
    pub fn states(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, s: usize, t: usize) -> bool {
        self.bits[s * self.stride + t / 64] >> (t % 64) & 1 == 1
    }

    pub fn insert(&mut self, s: usize, t: usize) -> bool {
        assert!(s < self.n && t < self.n, "pair ({s}, {t}) outside {} states", self.n);
        let w = &mut self.bits[s * self.stride + t / 64];
        let fresh = *w >> (t % 64) & 1 == 0;
        *w |= 1 << (t % 64);
        fresh
    }

    pub fn remove(&mut self, s: usize, t: usize) -> bool {
        let w = &mut self.bits[s * self.stride + t / 64];
        let present = *w >> (t % 64) & 1 == 1;
        *w &= !(1 << (t % 64));
        present
    }

    /// The successor set of `s` as raw words (bit `t` set iff `s R t`).
    pub fn row(&self, s: usize) -> &[u64] {
        &self.bits[s * self.stride..(s + 1) * self.stride]
    }

    pub(crate) fn row_mut(&mut self, s: usize) -> &mut [u64] {
        &mut self.bits[s * self.stride..(s + 1) * self.stride]
    }

    pub fn successors(&self, s: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&t| self.contains(s, t))
    }

    pub fn predecessors(&self, t: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&s| self.contains(s, t))
    }

    /// All pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |s| self.successors(s).map(move |t| (s, t)))
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n);
        Relation {
            n: self.n,
            stride: self.stride,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n);
        Relation {
            n: self.n,
            stride: self.stride,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn difference(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n);
        Relation {
            n: self.n,
            stride: self.stride,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a & !b).collect(),
        }
    }

    pub fn inverse(&self) -> Relation {
        Relation::from_pairs(self.n, self.pairs().map(|(s, t)| (t, s)))
    }
}

/// How two relations on the same state set are ordered by inclusion.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RelationOrder {
    Equal,
    /// The first relation is a proper subset of the second.
    Subset,
    /// The first relation is a proper superset of the second.
    Superset,
    Incomparable,
}

/// Pairs gained and lost when going from one relation to another.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationDelta {
    pub added: Vec<(usize, usize)>,
    pub removed: Vec<(usize, usize)>,
}

impl RelationDelta {
    pub fn is_empty(&self) -> bool {
        self.added.is_empty() && self.removed.is_empty()
    }
}

/// Classifies `r1` against `r2` and lists the pairs added and removed on
/// the way from `r1` to `r2`.
pub fn relation_compare(r1: &Relation, r2: &Relation) -> Result<(RelationOrder, RelationDelta)> {
    if r1.states() != r2.states() {
        return Err(Error::StateMismatch);
    }
    let delta = RelationDelta {
        added: r2.difference(r1).pairs().collect(),
        removed: r1.difference(r2).pairs().collect(),
    };
    let order = match (delta.added.is_empty(), delta.removed.is_empty()) {
        (true, true) => RelationOrder::Equal,
        (false, true) => RelationOrder::Subset,
        (true, false) => RelationOrder::Superset,
        (false, false) => RelationOrder::Incomparable,
    };
    Ok((order, delta))
}

/// A state set together with a transition relation on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionFrame {
    states: Arc<[String]>,
    relation: Relation,
}

pub(crate) fn check_states(states: &[String]) -> Result<()> {
    if states.is_empty() {
        return Err(Error::NoStates);
    }
    for (i, s) in states.iter().enumerate() {
        if states[..i].contains(s) {
            return Err(Error::DuplicateName(s.clone()));
        }
    }
    Ok(())
}

impl TransitionFrame {
    /// Builds a frame from named pairs.
    pub fn new<S: AsRef<str>>(states: &[S], pairs: &[(S, S)]) -> Result<Self> {
        let states: Arc<[String]> = states.iter().map(|s| s.as_ref().to_string()).collect();
        check_states(&states)?;
        let mut relation = Relation::empty(states.len());
        for (s, t) in pairs {
            let s = state_index(&states, s.as_ref())?;
            let t = state_index(&states, t.as_ref())?;
            relation.insert(s, t);
        }
        Ok(TransitionFrame { states, relation })
    }

    pub fn with_relation(states: Arc<[String]>, relation: Relation) -> Result<Self> {
        check_states(&states)?;
        if relation.states() != states.len() {
            return Err(Error::StateMismatch);
        }
        Ok(TransitionFrame { states, relation })
    }

    pub fn states(&self) -> &Arc<[String]> {
        &self.states
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn state_index(&self, name: &str) -> Result<usize> {
        state_index(&self.states, name)
    }

    pub fn successors(&self, s: &str) -> Result<Vec<&str>> {
        let s = self.state_index(s)?;
        Ok(self.relation.successors(s).map(|t| self.states[t].as_str()).collect())
    }

    pub fn predecessors(&self, t: &str) -> Result<Vec<&str>> {
        let t = self.state_index(t)?;
        Ok(self.relation.predecessors(t).map(|s| self.states[s].as_str()).collect())
    }

    pub fn inverse(&self) -> TransitionFrame {
        TransitionFrame {
            states: self.states.clone(),
            relation: self.relation.inverse(),
        }
    }

    /// The same states with another relation.
    pub fn with(&self, relation: Relation) -> TransitionFrame {
        assert_eq!(relation.states(), self.states.len());
        TransitionFrame {
            states: self.states.clone(),
            relation,
        }
    }

    pub fn pair_name(&self, (s, t): (usize, usize)) -> String {
        format!("({},{})", self.states[s], self.states[t])
    }

    /// `{(s1,s2), (s2,s3), ...}` in row-major order.
    pub fn format_relation(&self, r: &Relation) -> String {
        let body: Vec<String> = r.pairs().map(|p| self.pair_name(p)).collect();
        format!("{{{}}}", body.join(", "))
    }
}

pub(crate) fn state_index(states: &[String], name: &str) -> Result<usize> {
    states
        .iter()
        .position(|s| s == name)
        .ok_or_else(|| Error::UnknownState(name.to_string()))
}
