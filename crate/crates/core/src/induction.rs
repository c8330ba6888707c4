//! Relations induced by operators, recoverability, and the sufficient
//! witness conditions for it.
//!
//! ```text
//! R_T = {(s,t) | for all b in B: T(b)(s) <= b(t)}
//! R^P = {(s,t) | for all a in A: a(s) <= P(a)(t)}
//! ```

use std::collections::BTreeMap;
use std::fmt::Write;
use std::sync::Arc;

use crate::error::Result;
use crate::frame::{relation_compare, Relation, RelationDelta, TransitionFrame};
use crate::operator::{codomain_closed, lower_operator, upper_operator, OperatorTable};
use crate::order::{Elem, Lattice};
use crate::proposition::PropositionPoset;

/// `{(s,t) | lhs_k(s) <= rhs_k(t) for every k}`.
///
/// For each constraint and each lattice value `m`, the set of `t` with
/// `m <= rhs_k(t)` is built once as a bit row; a state's successor row is
/// then the intersection of the rows selected by its `lhs_k(s)` values.
fn induce<'a, I>(lattice: &Lattice, n: usize, constraints: I) -> Relation
where
    I: IntoIterator<Item = (&'a [Elem], &'a [Elem])>,
{
    let mut r = Relation::full(n);
    let m = lattice.len();
    let mut rows: Vec<Option<Vec<u64>>> = vec![None; m];
    for (lhs, rhs) in constraints {
        rows.iter_mut().for_each(|slot| *slot = None);
        for (s, &v) in lhs.iter().enumerate().take(n) {
            let mask = rows[v.index()].get_or_insert_with(|| {
                let mut words = vec![0u64; n.div_ceil(64).max(1)];
                for (t, &x) in rhs.iter().enumerate() {
                    if lattice.leq(v, x) {
                        words[t / 64] |= 1 << (t % 64);
                    }
                }
                words
            });
            for (w, k) in r.row_mut(s).iter_mut().zip(mask.iter()) {
                *w &= k;
            }
        }
    }
    r
}

/// The upper `T`-induced relation `R_T`.
pub fn induced_upper(t: &OperatorTable) -> Relation {
    let b = t.domain();
    induce(
        b.lattice(),
        b.state_count(),
        (0..b.len()).map(|i| (t.entry(i), b.vector(i))),
    )
}

/// The lower `P`-induced relation `R^P`.
pub fn induced_lower(p: &OperatorTable) -> Relation {
    let a = p.domain();
    induce(
        a.lattice(),
        a.state_count(),
        (0..a.len()).map(|i| (a.vector(i), p.entry(i))),
    )
}

/// Which operator a statement is about.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Upper,
    Lower,
}

/// Outcome of recovering `R` from `T_R` and from `P_R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoverabilityReport {
    pub upper_recovered: bool,
    pub lower_recovered: bool,
    /// From `R` to `R_{T_R}`. Never contains removals.
    pub upper_delta: RelationDelta,
    /// From `R` to `R^{P_R}`. Never contains removals.
    pub lower_delta: RelationDelta,
    /// For each extra pair, why no proposition separates it.
    pub witnesses: BTreeMap<(Side, (usize, usize)), String>,
    pub upper_relation: Relation,
    pub lower_relation: Relation,
}

impl RecoverabilityReport {
    pub fn recovered(&self) -> bool {
        self.upper_recovered && self.lower_recovered
    }

    /// `upper: RECOVERED` / `lower: NOT RECOVERED (+4 pairs: ...)` lines,
    /// followed by the reasons and machine-readable `extra <s> <t>` lines.
    pub fn render(&self, frame: &TransitionFrame) -> String {
        let mut out = String::new();
        for (side, label, delta) in [
            (Side::Upper, "upper", &self.upper_delta),
            (Side::Lower, "lower", &self.lower_delta),
        ] {
            if delta.added.is_empty() {
                let _ = writeln!(out, "{label}: RECOVERED");
                continue;
            }
            let pairs: Vec<String> = delta.added.iter().map(|&p| frame.pair_name(p)).collect();
            let _ = writeln!(
                out,
                "{label}: NOT RECOVERED (+{} pairs: {})",
                pairs.len(),
                pairs.join(" ")
            );
            for &p in &delta.added {
                if let Some(reason) = self.witnesses.get(&(side, p)) {
                    let _ = writeln!(out, "  {}: {reason}", frame.pair_name(p));
                }
            }
        }
        for (label, delta) in [("upper", &self.upper_delta), ("lower", &self.lower_delta)] {
            if !delta.added.is_empty() {
                let _ = writeln!(out, "# {label} extra pairs");
            }
            for &(s, t) in &delta.added {
                let states = frame.states();
                let _ = writeln!(out, "extra {} {}", states[s], states[t]);
            }
        }
        out
    }
}

/// Builds `T_R` on `b` and `P_R` on `a`, induces both relations and
/// compares them with `R`.
pub fn recoverability(
    frame: &TransitionFrame,
    a: &Arc<PropositionPoset>,
    b: &Arc<PropositionPoset>,
) -> Result<RecoverabilityReport> {
    a.check_compatible(b)?;
    let t = upper_operator(frame, b)?;
    let p = lower_operator(frame, a)?;
    let upper_relation = induced_upper(&t);
    let lower_relation = induced_lower(&p);
    let r = frame.relation();
    let (_, upper_delta) = relation_compare(r, &upper_relation)?;
    let (_, lower_delta) = relation_compare(r, &lower_relation)?;
    debug_assert!(upper_delta.removed.is_empty() && lower_delta.removed.is_empty());

    let states = frame.states();
    let mut witnesses = BTreeMap::new();
    for &(s, u) in &upper_delta.added {
        witnesses.insert(
            (Side::Upper, (s, u)),
            format!(
                "T(b)({}) <= b({}) for all {} rows b, so no proposition separates the pair",
                states[s],
                states[u],
                b.len()
            ),
        );
    }
    for &(s, u) in &lower_delta.added {
        witnesses.insert(
            (Side::Lower, (s, u)),
            format!(
                "a({}) <= P(a)({}) for all {} rows a, so no proposition separates the pair",
                states[s],
                states[u],
                a.len()
            ),
        );
    }
    Ok(RecoverabilityReport {
        upper_recovered: upper_delta.is_empty(),
        lower_recovered: lower_delta.is_empty(),
        upper_delta,
        lower_delta,
        witnesses,
        upper_relation,
        lower_relation,
    })
}

/// Result of the uniform-witness search for one state.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum WitnessOutcome {
    /// The first row (in declaration order) satisfying the condition.
    Row(usize),
    /// No pair needs separating, so the condition holds trivially.
    Vacuous,
    Missing,
}

/// Per-state witness search result. Success on every state certifies that
/// the relation is recovered; failure does not prove the opposite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformWitnesses {
    pub side: Side,
    pub outcomes: Vec<WitnessOutcome>,
}

impl UniformWitnesses {
    pub fn certified(&self) -> bool {
        !self.outcomes.contains(&WitnessOutcome::Missing)
    }

    pub fn failures(&self) -> Vec<usize> {
        (0..self.outcomes.len())
            .filter(|&i| self.outcomes[i] == WitnessOutcome::Missing)
            .collect()
    }

    pub fn render(&self, frame: &TransitionFrame, poset: &PropositionPoset) -> String {
        let mut out = String::new();
        let (label, var) = match self.side {
            Side::Upper => ("upper", "b"),
            Side::Lower => ("lower", "a"),
        };
        for (i, outcome) in self.outcomes.iter().enumerate() {
            let state = &frame.states()[i];
            let _ = match outcome {
                WitnessOutcome::Row(r) => writeln!(out, "{label} {var}^{state} = {}", poset.name(*r)),
                WitnessOutcome::Vacuous => writeln!(out, "{label} {var}^{state} = (vacuous)"),
                WitnessOutcome::Missing => writeln!(out, "{label} {var}^{state} = NONE"),
            };
        }
        let verdict = if self.certified() { "CERTIFIED" } else { "NOT CERTIFIED" };
        let _ = writeln!(out, "{label}: {verdict}");
        out
    }
}

/// For each `t`, searches `b` for a row `b^t` with
/// `⋀{u(b^t) | s R u} ≰ t(b^t)` and `t(b^t) ≠ 1` for every `s` with
/// `(s,t) ∉ R`.
pub fn uniform_witness_upper(frame: &TransitionFrame, b: &PropositionPoset) -> Result<UniformWitnesses> {
    if frame.states() != b.states() {
        return Err(crate::Error::StateMismatch);
    }
    let l = b.lattice();
    let r = frame.relation();
    let n = b.state_count();
    let outcomes = (0..n)
        .map(|t| {
            let sources: Vec<usize> = (0..n).filter(|&s| !r.contains(s, t)).collect();
            if sources.is_empty() {
                return WitnessOutcome::Vacuous;
            }
            (0..b.len())
                .find(|&row| {
                    let v = b.vector(row);
                    v[t] != l.top()
                        && sources
                            .iter()
                            .all(|&s| !l.leq(l.meet(r.successors(s).map(|u| v[u])), v[t]))
                })
                .map_or(WitnessOutcome::Missing, WitnessOutcome::Row)
        })
        .collect();
    Ok(UniformWitnesses {
        side: Side::Upper,
        outcomes,
    })
}

/// For each `s`, searches `a` for a row `a^s` with
/// `⋁{u(a^s) | u R t} ≱ s(a^s)` and `s(a^s) ≠ 0` for every `t` with
/// `(s,t) ∉ R`.
pub fn uniform_witness_lower(frame: &TransitionFrame, a: &PropositionPoset) -> Result<UniformWitnesses> {
    if frame.states() != a.states() {
        return Err(crate::Error::StateMismatch);
    }
    let l = a.lattice();
    let r = frame.relation();
    let n = a.state_count();
    let outcomes = (0..n)
        .map(|s| {
            let targets: Vec<usize> = (0..n).filter(|&t| !r.contains(s, t)).collect();
            if targets.is_empty() {
                return WitnessOutcome::Vacuous;
            }
            (0..a.len())
                .find(|&row| {
                    let v = a.vector(row);
                    v[s] != l.bottom()
                        && targets
                            .iter()
                            .all(|&t| !l.leq(v[s], l.join(r.predecessors(t).map(|u| v[u]))))
                })
                .map_or(WitnessOutcome::Missing, WitnessOutcome::Row)
        })
        .collect();
    Ok(UniformWitnesses {
        side: Side::Lower,
        outcomes,
    })
}

/// Hypotheses and conclusions of the transfer statements between upper
/// and lower recoverability:
///
/// * `R = R_{T_R}` and `T_R(B) ⊆ A` imply `R = R_{T_R} = R^{P_R}`;
/// * `R = R^{P_R}` and `P_R(A) ⊆ B` imply the same;
/// * `P_R(A) ⊆ B` implies `R_{T_R} ⊆ R^{P_R}`;
/// * `T_R(B) ⊆ A` implies `R^{P_R} ⊆ R_{T_R}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferReport {
    pub upper_recovered: bool,
    pub lower_recovered: bool,
    /// `T_R(B) ⊆ A`.
    pub upper_image_in_a: bool,
    /// `P_R(A) ⊆ B`.
    pub lower_image_in_b: bool,
    /// `R_{T_R} ⊆ R^{P_R}`.
    pub upper_within_lower: bool,
    /// `R^{P_R} ⊆ R_{T_R}`.
    pub lower_within_upper: bool,
}

impl TransferReport {
    pub fn upper_transfer_applies(&self) -> bool {
        self.upper_recovered && self.upper_image_in_a
    }

    pub fn lower_transfer_applies(&self) -> bool {
        self.lower_recovered && self.lower_image_in_b
    }

    /// Every implication whose hypotheses hold has a true conclusion.
    pub fn consistent(&self) -> bool {
        let both = self.upper_recovered && self.lower_recovered;
        (!self.upper_transfer_applies() || both)
            && (!self.lower_transfer_applies() || both)
            && (!self.lower_image_in_b || self.upper_within_lower)
            && (!self.upper_image_in_a || self.lower_within_upper)
    }

    pub fn render(&self) -> String {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let verdict = |applies: bool| {
            if !applies {
                "hypotheses fail (vacuous)"
            } else if self.upper_recovered && self.lower_recovered {
                "R = R_T = R^P confirmed"
            } else {
                "VIOLATED"
            }
        };
        let mut out = String::new();
        let _ = writeln!(out, "R = R_T: {}", yn(self.upper_recovered));
        let _ = writeln!(out, "R = R^P: {}", yn(self.lower_recovered));
        let _ = writeln!(out, "T_R(B) in A: {}", yn(self.upper_image_in_a));
        let _ = writeln!(out, "P_R(A) in B: {}", yn(self.lower_image_in_b));
        let _ = writeln!(out, "upper transfer: {}", verdict(self.upper_transfer_applies()));
        let _ = writeln!(out, "lower transfer: {}", verdict(self.lower_transfer_applies()));
        let _ = writeln!(out, "R_T in R^P: {}", yn(self.upper_within_lower));
        let _ = writeln!(out, "R^P in R_T: {}", yn(self.lower_within_upper));
        out
    }
}

pub fn transfer_check(
    frame: &TransitionFrame,
    a: &Arc<PropositionPoset>,
    b: &Arc<PropositionPoset>,
) -> Result<TransferReport> {
    a.check_compatible(b)?;
    let t = upper_operator(frame, b)?;
    let p = lower_operator(frame, a)?;
    let rt = induced_upper(&t);
    let rp = induced_lower(&p);
    let r = frame.relation();
    Ok(TransferReport {
        upper_recovered: rt == *r,
        lower_recovered: rp == *r,
        upper_image_in_a: codomain_closed(&t, a)?.is_empty(),
        lower_image_in_b: codomain_closed(&p, b)?.is_empty(),
        upper_within_lower: rt.is_subset(&rp),
        lower_within_upper: rp.is_subset(&rt),
    })
}
