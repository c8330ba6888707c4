//! Upper and lower transition operators built from a transition frame.
//!
//! For a frame `(S, R)` and propositions `b`, `a`:
//!
//! ```text
//! T_R(b)(s) = ⋀ { b(t) | s R t }        (top when s has no successor)
//! P_R(a)(t) = ⋁ { a(s) | s R t }        (bottom when t has no predecessor)
//! ```
//!
//! Tables store raw vectors of `M^S`; an entry need not be a row of the
//! domain poset. Use [`codomain_closed`] to ask whether it is.

use std::fmt::Write;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::frame::TransitionFrame;
use crate::order::Elem;
use crate::proposition::PropositionPoset;

/// Which boundary condition a table satisfies.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum TableKind {
    /// Monotone with `T(1) = 1`, ordered by `⊑` (reverse pointwise).
    Upper,
    /// Monotone with `P(0) = 0`, ordered pointwise.
    Lower,
    /// Monotone only.
    Plain,
}

/// A monotone map from a proposition poset into `M^S`, one vector per row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorTable {
    domain: Arc<PropositionPoset>,
    kind: TableKind,
    entries: Vec<Vec<Elem>>,
}

impl OperatorTable {
    pub fn new(domain: Arc<PropositionPoset>, kind: TableKind, entries: Vec<Vec<Elem>>) -> Result<Self> {
        let n = domain.state_count();
        if entries.len() != domain.len() {
            return Err(Error::NotTotal(format!(
                "{} entries for {} rows",
                entries.len(),
                domain.len()
            )));
        }
        let lattice = domain.lattice();
        for (i, e) in entries.iter().enumerate() {
            if e.len() != n {
                return Err(Error::VectorLength {
                    name: domain.name(i).to_string(),
                    got: e.len(),
                    expected: n,
                });
            }
            if e.iter().any(|x| x.index() >= lattice.len()) {
                return Err(Error::UnknownElement(format!("entry for {}", domain.name(i))));
            }
        }
        for i in 0..domain.len() {
            for j in 0..domain.len() {
                if domain.row_leq(i, j) && !lattice.leq_pointwise(&entries[i], &entries[j]) {
                    return Err(Error::NotMonotone(
                        domain.name(i).to_string(),
                        domain.name(j).to_string(),
                    ));
                }
            }
        }
        match kind {
            TableKind::Upper if entries[domain.one()].iter().any(|&x| x != lattice.top()) => {
                return Err(Error::UnitNotPreserved)
            }
            TableKind::Lower if entries[domain.zero()].iter().any(|&x| x != lattice.bottom()) => {
                return Err(Error::ZeroNotPreserved)
            }
            _ => {}
        }
        Ok(OperatorTable { domain, kind, entries })
    }

    /// Builds a table without any validation. Callers guarantee the invariants.
    pub(crate) fn from_parts(domain: Arc<PropositionPoset>, kind: TableKind, entries: Vec<Vec<Elem>>) -> Self {
        OperatorTable { domain, kind, entries }
    }

    pub fn domain(&self) -> &Arc<PropositionPoset> {
        &self.domain
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn entries(&self) -> &[Vec<Elem>] {
        &self.entries
    }

    pub fn entry(&self, row: usize) -> &[Elem] {
        &self.entries[row]
    }

    pub fn entry_named(&self, row: &str) -> Result<&[Elem]> {
        Ok(&self.entries[self.domain.index_of(row)?])
    }

    /// Whether `self <= other` pointwise on every row.
    pub fn pointwise_leq(&self, other: &OperatorTable) -> bool {
        let l = self.domain.lattice();
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| l.leq_pointwise(a, b))
    }

    /// Aligned text listing, one row per line: `T(l) = 1 0 0 0 0  (1,0,0,0,0)`.
    ///
    /// The trailing label is the matching row of `names` or the tuple form
    /// when the vector lies outside it.
    pub fn render_aligned(&self, symbol: &str, names: &PropositionPoset) -> String {
        let heads: Vec<String> = (0..self.domain.len())
            .map(|i| format!("{symbol}({})", self.domain.name(i)))
            .collect();
        let width = heads.iter().map(|h| h.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for (head, entry) in heads.iter().zip(&self.entries) {
            let pad = width - head.chars().count();
            let label = match names.index_of_vector(entry) {
                Some(i) => names.name(i).to_string(),
                None => format!("{} (outside)", names.label(entry)),
            };
            let _ = writeln!(out, "{head}{:pad$} = {}  {label}", "", self.domain.format_vector(entry),);
        }
        out
    }

    /// Machine-readable lines `op <row> = v1 v2 ... vn`.
    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        for (i, entry) in self.entries.iter().enumerate() {
            let _ = writeln!(out, "op {} = {}", self.domain.name(i), self.domain.format_vector(entry));
        }
        out
    }
}

fn check_states(frame: &TransitionFrame, poset: &PropositionPoset) -> Result<()> {
    if frame.states() != poset.states() {
        return Err(Error::StateMismatch);
    }
    Ok(())
}

/// `T_R` on `domain`: meets over successors.
pub fn upper_operator(frame: &TransitionFrame, domain: &Arc<PropositionPoset>) -> Result<OperatorTable> {
    check_states(frame, domain)?;
    let lattice = domain.lattice();
    let r = frame.relation();
    let n = domain.state_count();
    let succ: Vec<Vec<usize>> = (0..n).map(|s| r.successors(s).collect()).collect();
    let entries = domain
        .rows()
        .iter()
        .map(|b| {
            succ.iter()
                .map(|ts| lattice.meet(ts.iter().map(|&t| b.values[t])))
                .collect()
        })
        .collect();
    Ok(OperatorTable::from_parts(domain.clone(), TableKind::Upper, entries))
}

/// `P_R` on `domain`: joins over predecessors.
pub fn lower_operator(frame: &TransitionFrame, domain: &Arc<PropositionPoset>) -> Result<OperatorTable> {
    check_states(frame, domain)?;
    let lattice = domain.lattice();
    let r = frame.relation();
    let n = domain.state_count();
    let pred: Vec<Vec<usize>> = (0..n).map(|t| r.predecessors(t).collect()).collect();
    let entries = domain
        .rows()
        .iter()
        .map(|a| {
            pred.iter()
                .map(|ss| lattice.join(ss.iter().map(|&s| a.values[s])))
                .collect()
        })
        .collect();
    Ok(OperatorTable::from_parts(domain.clone(), TableKind::Lower, entries))
}

/// A pair `(a, b)` on which `P(a) <= b  <=>  a <= T(b)` fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionFailure {
    pub a: usize,
    pub b: usize,
    /// Truth value of `P(a) <= b`; the other side has the opposite value.
    pub lower_side: bool,
}

/// Checks `P(a) <= b  <=>  a <= T(b)` for all `a` in `P`'s domain and `b`
/// in `T`'s domain, comparing in `M^S`.
pub fn adjunction_holds(p: &OperatorTable, t: &OperatorTable) -> Result<Option<AdjunctionFailure>> {
    let (a_poset, b_poset) = (p.domain(), t.domain());
    a_poset.check_compatible(b_poset)?;
    let l = a_poset.lattice();
    for a in 0..a_poset.len() {
        for b in 0..b_poset.len() {
            let lower_side = l.leq_pointwise(p.entry(a), b_poset.vector(b));
            let upper_side = l.leq_pointwise(a_poset.vector(a), t.entry(b));
            if lower_side != upper_side {
                return Ok(Some(AdjunctionFailure { a, b, lower_side }));
            }
        }
    }
    Ok(None)
}

/// Rows of `table` whose image is not a row of `target`; empty when
/// `table(domain) ⊆ target`.
pub fn codomain_closed(table: &OperatorTable, target: &PropositionPoset) -> Result<Vec<usize>> {
    table.domain().check_compatible(target)?;
    Ok((0..table.domain().len())
        .filter(|&i| target.index_of_vector(table.entry(i)).is_none())
        .collect())
}

/// Position of one table relative to another.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum OperatorOrder {
    Equal,
    /// First below second: `T1 ⊑ T2` for upper tables, `P1 <= P2` otherwise.
    Below,
    Above,
    Incomparable,
}

/// Compares two tables on the same domain. Upper tables use `⊑`
/// (`T1 ⊑ T2` iff `T2 <= T1` pointwise); other tables use pointwise order.
pub fn operator_compare(t1: &OperatorTable, t2: &OperatorTable) -> Result<OperatorOrder> {
    if t1.domain() != t2.domain() {
        return Err(Error::PosetMismatch("tables have different domains".into()));
    }
    if t1.kind() != t2.kind() {
        return Err(Error::Precondition("tables of different kinds".into()));
    }
    let (le, ge) = (t1.pointwise_leq(t2), t2.pointwise_leq(t1));
    let (below, above) = match t1.kind() {
        TableKind::Upper => (ge, le),
        _ => (le, ge),
    };
    Ok(match (below, above) {
        (true, true) => OperatorOrder::Equal,
        (true, false) => OperatorOrder::Below,
        (false, true) => OperatorOrder::Above,
        (false, false) => OperatorOrder::Incomparable,
    })
}
