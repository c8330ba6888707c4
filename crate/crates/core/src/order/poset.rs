use std::sync::Arc;

use crate::error::{Error, Result};
use crate::order::lattice::{check_antisymmetric, index_names, transitive_closure};

/// A finite partially ordered set over named elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    names: Vec<String>,
    leq: Vec<bool>,
}

impl FinitePoset {
    /// Builds a poset from cover pairs `(lower, upper)`; the order is their
    /// reflexive-transitive closure.
    pub fn from_covers<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
        let index = index_names(&names)?;
        let n = names.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (lo, hi) in covers {
            let lo = index
                .get(lo.as_ref())
                .ok_or_else(|| Error::UnknownElement(lo.as_ref().to_string()))?;
            let hi = index
                .get(hi.as_ref())
                .ok_or_else(|| Error::UnknownElement(hi.as_ref().to_string()))?;
            leq[lo.index() * n + hi.index()] = true;
        }
        transitive_closure(n, &mut leq);
        check_antisymmetric(&names, &leq)?;
        Ok(FinitePoset { names, leq })
    }

    /// Builds a poset from an order predicate. The predicate must already be
    /// a partial order; only antisymmetry after closure is checked.
    pub fn from_order<F>(elements: Vec<String>, leq: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        index_names(&elements)?;
        let n = elements.len();
        let mut table = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = i == j || leq(i, j);
            }
        }
        transitive_closure(n, &mut table);
        check_antisymmetric(&elements, &table)?;
        Ok(FinitePoset {
            names: elements,
            leq: table,
        })
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        Self::from_order((0..n).map(|i| i.to_string()).collect(), |a, b| a <= b).expect("chain is a poset")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.names.len() + b]
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&b| (0..self.len()).all(|x| self.leq(b, x)))
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&t| (0..self.len()).all(|x| self.leq(x, t)))
    }

    pub fn is_bounded(&self) -> bool {
        self.bottom().is_some() && self.top().is_some()
    }

    /// Least upper bound of `subset`, if it exists.
    pub fn join_of(&self, subset: &[usize]) -> Option<usize> {
        let n = self.len();
        let upper: Vec<usize> = (0..n).filter(|&z| subset.iter().all(|&x| self.leq(x, z))).collect();
        upper.iter().copied().find(|&z| upper.iter().all(|&w| self.leq(z, w)))
    }

    /// Greatest lower bound of `subset`, if it exists.
    pub fn meet_of(&self, subset: &[usize]) -> Option<usize> {
        let n = self.len();
        let lower: Vec<usize> = (0..n).filter(|&z| subset.iter().all(|&x| self.leq(z, x))).collect();
        lower.iter().copied().find(|&z| lower.iter().all(|&w| self.leq(w, z)))
    }

    /// Cover pairs of the Hasse diagram.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let lt = |a: usize, b: usize| a != b && self.leq(a, b);
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn dual(&self) -> Self {
        let n = self.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = self.leq(j, i);
            }
        }
        FinitePoset {
            names: self.names.clone(),
            leq,
        }
    }
}

/// A total map between two finite posets, stored as its graph.
///
/// [`MonotoneMap::new`] enforces monotonicity. [`MonotoneMap::unchecked`]
/// only checks totality, so that arbitrary maps can be handed to the
/// Galois-pair checker and rejected there with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    source: Arc<FinitePoset>,
    target: Arc<FinitePoset>,
    graph: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(source: Arc<FinitePoset>, target: Arc<FinitePoset>, graph: Vec<usize>) -> Result<Self> {
        let map = Self::unchecked(source, target, graph)?;
        if let Some((a, b)) = map.monotonicity_witness() {
            return Err(Error::NotMonotone(
                map.source.name(a).to_string(),
                map.source.name(b).to_string(),
            ));
        }
        Ok(map)
    }

    pub fn unchecked(source: Arc<FinitePoset>, target: Arc<FinitePoset>, graph: Vec<usize>) -> Result<Self> {
        if graph.len() != source.len() {
            return Err(Error::NotTotal(format!(
                "graph has {} entries for {} source elements",
                graph.len(),
                source.len()
            )));
        }
        if let Some(&bad) = graph.iter().find(|&&y| y >= target.len()) {
            return Err(Error::NotTotal(format!("image index {bad} outside target")));
        }
        Ok(MonotoneMap { source, target, graph })
    }

    pub fn identity(poset: Arc<FinitePoset>) -> Self {
        let graph = (0..poset.len()).collect();
        MonotoneMap {
            source: poset.clone(),
            target: poset,
            graph,
        }
    }

    pub fn source(&self) -> &Arc<FinitePoset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinitePoset> {
        &self.target
    }

    pub fn graph(&self) -> &[usize] {
        &self.graph
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.graph[x]
    }

    /// First pair `a <= b` whose images are not ordered, if any.
    pub fn monotonicity_witness(&self) -> Option<(usize, usize)> {
        let n = self.source.len();
        for a in 0..n {
            for b in 0..n {
                if self.source.leq(a, b) && !self.target.leq(self.graph[a], self.graph[b]) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_monotone(&self) -> bool {
        self.monotonicity_witness().is_none()
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &MonotoneMap) -> Result<MonotoneMap> {
        if *self.target != *then.source {
            return Err(Error::PosetMismatch(
                "target of the first map is not the source of the second".into(),
            ));
        }
        Ok(MonotoneMap {
            source: self.source.clone(),
            target: then.target.clone(),
            graph: self.graph.iter().map(|&x| then.graph[x]).collect(),
        })
    }
}
