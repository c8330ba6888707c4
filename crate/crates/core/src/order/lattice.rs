use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Index of an element inside a [`Lattice`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub u16);

impl Elem {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite, non-trivial lattice with precomputed order, meet and join tables.
///
/// Finite lattices are complete, so arbitrary meets and joins are folds over
/// the binary tables seeded with top (meet) or bottom (join). In particular
/// the empty meet is top and the empty join is bottom.
#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    name: String,
    names: Vec<String>,
    index: HashMap<String, Elem>,
    leq: Vec<bool>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    bottom: Elem,
    top: Elem,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("name", &self.name)
            .field("elements", &self.names)
            .finish()
    }
}

pub(crate) fn transitive_closure(n: usize, rel: &mut [bool]) {
    for k in 0..n {
        for i in 0..n {
            if rel[i * n + k] {
                for j in 0..n {
                    if rel[k * n + j] {
                        rel[i * n + j] = true;
                    }
                }
            }
        }
    }
}

pub(crate) fn check_antisymmetric(names: &[String], rel: &[bool]) -> Result<()> {
    let n = names.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if rel[i * n + j] && rel[j * n + i] {
                return Err(Error::NotAntisymmetric(names[i].clone(), names[j].clone()));
            }
        }
    }
    Ok(())
}

pub(crate) fn index_names(names: &[String]) -> Result<HashMap<String, Elem>> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.clone(), Elem(i as u16)).is_some() {
            return Err(Error::DuplicateName(name.clone()));
        }
    }
    Ok(index)
}

impl Lattice {
    /// Builds a lattice from its cover pairs `(lower, upper)`.
    ///
    /// The order is the reflexive-transitive closure of the covers. The
    /// declared bottom and top are checked, and every pair of elements must
    /// have a unique meet and join.
    pub fn from_covers<S: AsRef<str>>(
        name: &str,
        elements: &[S],
        bottom: &str,
        top: &str,
        covers: &[(S, S)],
    ) -> Result<Self> {
        let names: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
        let index = index_names(&names)?;
        let n = names.len();
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownElement(s.to_string()))
        };
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (lo, hi) in covers {
            let (lo, hi) = (lookup(lo.as_ref())?, lookup(hi.as_ref())?);
            leq[lo.index() * n + hi.index()] = true;
        }
        transitive_closure(n, &mut leq);
        let bottom = lookup(bottom)?;
        let top = lookup(top)?;
        Self::build(name.to_string(), names, index, leq, Some((bottom, top)))
    }

    /// Builds a lattice from an order predicate over named elements.
    pub fn from_order<F>(name: &str, elements: Vec<String>, leq: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        let index = index_names(&elements)?;
        let n = elements.len();
        let mut table = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = i == j || leq(i, j);
            }
        }
        transitive_closure(n, &mut table);
        Self::build(name.to_string(), elements, index, table, None)
    }

    fn build(
        name: String,
        names: Vec<String>,
        index: HashMap<String, Elem>,
        leq: Vec<bool>,
        declared: Option<(Elem, Elem)>,
    ) -> Result<Self> {
        let n = names.len();
        if n > u16::MAX as usize {
            return Err(Error::Precondition("lattice too large".into()));
        }
        check_antisymmetric(&names, &leq)?;
        let le = |a: usize, b: usize| leq[a * n + b];

        let (bottom, top) = match declared {
            Some((b, t)) => {
                if (0..n).any(|x| !le(b.index(), x)) {
                    return Err(Error::NotBottom(names[b.index()].clone()));
                }
                if (0..n).any(|x| !le(x, t.index())) {
                    return Err(Error::NotTop(names[t.index()].clone()));
                }
                (b, t)
            }
            None => {
                let b = (0..n).find(|&b| (0..n).all(|x| le(b, x)));
                let t = (0..n).find(|&t| (0..n).all(|x| le(x, t)));
                match (b, t) {
                    (Some(b), Some(t)) => (Elem(b as u16), Elem(t as u16)),
                    (None, _) => return Err(Error::NotBottom(names.first().cloned().unwrap_or_default())),
                    (_, None) => return Err(Error::NotTop(names.last().cloned().unwrap_or_default())),
                }
            }
        };
        if bottom == top {
            return Err(Error::TrivialLattice);
        }

        let mut meet = vec![Elem(0); n * n];
        let mut join = vec![Elem(0); n * n];
        for x in 0..n {
            for y in 0..n {
                let glb = (0..n)
                    .filter(|&z| le(z, x) && le(z, y))
                    .find(|&z| (0..n).all(|w| !(le(w, x) && le(w, y)) || le(w, z)));
                let lub = (0..n)
                    .filter(|&z| le(x, z) && le(y, z))
                    .find(|&z| (0..n).all(|w| !(le(x, w) && le(y, w)) || le(z, w)));
                let pair = |bound| Error::NotALattice {
                    x: names[x].clone(),
                    y: names[y].clone(),
                    bound,
                };
                meet[x * n + y] = Elem(glb.ok_or_else(|| pair("meet"))? as u16);
                join[x * n + y] = Elem(lub.ok_or_else(|| pair("join"))? as u16);
            }
        }

        Ok(Lattice {
            name,
            names,
            index,
            leq,
            meet,
            join,
            bottom,
            top,
        })
    }

    /// The two-element chain `0 < 1` of classical truth values.
    pub fn chain2() -> Self {
        Self::chain(2)
    }

    /// The chain `0 < 1 < ... < n-1`. Element names are the decimal indices.
    pub fn chain(n: usize) -> Self {
        assert!(n >= 2, "a chain needs at least two elements");
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::from_order(&format!("chain{n}"), names, |a, b| a <= b).expect("chains are lattices")
    }

    /// The four-element Boolean lattice `0 < a, b < 1`.
    pub fn diamond() -> Self {
        Self::from_covers(
            "diamond",
            &["0", "a", "b", "1"],
            "0",
            "1",
            &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
        )
        .expect("diamond is a lattice")
    }

    /// Looks up one of the predefined lattices by name.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "chain2" => Some(Self::chain2()),
            "chain3" => Some(Self::chain(3)),
            "chain4" => Some(Self::chain(4)),
            "diamond" => Some(Self::diamond()),
            _ => None,
        }
    }

    /// The same carrier with the order reversed; meets and joins swap.
    pub fn dual(&self) -> Self {
        let n = self.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = self.leq[j * n + i];
            }
        }
        Lattice {
            name: format!("{}^op", self.name),
            names: self.names.clone(),
            index: self.index.clone(),
            leq,
            meet: self.join.clone(),
            join: self.meet.clone(),
            bottom: self.top,
            top: self.bottom,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.names.len()).map(|i| Elem(i as u16))
    }

    pub fn element_names(&self) -> &[String] {
        &self.names
    }

    pub fn element_name(&self, e: Elem) -> &str {
        &self.names[e.index()]
    }

    pub fn element(&self, name: &str) -> Result<Elem> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a.index() * self.names.len() + b.index()]
    }

    #[inline]
    pub fn meet2(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a.index() * self.names.len() + b.index()]
    }

    #[inline]
    pub fn join2(&self, a: Elem, b: Elem) -> Elem {
        self.join[a.index() * self.names.len() + b.index()]
    }

    /// Greatest lower bound of a family; top for the empty family.
    pub fn meet<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.top, |acc, x| self.meet2(acc, x))
    }

    /// Least upper bound of a family; bottom for the empty family.
    pub fn join<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.bottom, |acc, x| self.join2(acc, x))
    }

    /// Meet of a set of elements given by name.
    pub fn meet_named<S: AsRef<str>>(&self, items: &[S]) -> Result<Elem> {
        let elems = items
            .iter()
            .map(|s| self.element(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.meet(elems))
    }

    /// Join of a set of elements given by name.
    pub fn join_named<S: AsRef<str>>(&self, items: &[S]) -> Result<Elem> {
        let elems = items
            .iter()
            .map(|s| self.element(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.join(elems))
    }

    /// Pointwise order on vectors in `M^S`.
    pub fn leq_pointwise(&self, a: &[Elem], b: &[Elem]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(&x, &y)| self.leq(x, y))
    }

    /// Cover pairs `(lower, upper)` of the Hasse diagram, in declaration order.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let n = self.len();
        let lt = |a: usize, b: usize| a != b && self.leq[a * n + b];
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                    out.push((Elem(a as u16), Elem(b as u16)));
                }
            }
        }
        out
    }

    /// Whether this is the predefined two-element chain.
    pub fn is_chain2(&self) -> bool {
        *self == Self::chain2()
    }
}
