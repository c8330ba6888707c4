//! Iterating `R -> R_{T_R}` and `R -> R^{P_R}`, and enumerating the
//! relations left fixed by them.

use std::fmt::{self, Write};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::frame::{Relation, TransitionFrame};
use crate::induction::{induced_lower, induced_upper};
use crate::operator::{lower_operator, upper_operator, OperatorTable};
use crate::proposition::PropositionPoset;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    Upper,
    Lower,
}

impl StepKind {
    pub fn other(self) -> StepKind {
        match self {
            StepKind::Upper => StepKind::Lower,
            StepKind::Lower => StepKind::Upper,
        }
    }
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepKind::Upper => "upper",
            StepKind::Lower => "lower",
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Schedule {
    Alternating { first: StepKind },
    UpperOnly,
    LowerOnly,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule::Alternating { first: StepKind::Upper }
    }
}

impl Schedule {
    fn kind_at(self, i: usize) -> StepKind {
        match self {
            Schedule::Alternating { first } if i.is_multiple_of(2) => first,
            Schedule::Alternating { first } => first.other(),
            Schedule::UpperOnly => StepKind::Upper,
            Schedule::LowerOnly => StepKind::Lower,
        }
    }

    /// Number of distinct step kinds in one cycle.
    fn cycle_len(self) -> usize {
        match self {
            Schedule::Alternating { .. } => 2,
            _ => 1,
        }
    }
}

/// Default step budget for `n` states: `n² + 2`.
pub fn default_max_steps(n: usize) -> usize {
    n * n + 2
}

fn step_with_operator(
    frame: &TransitionFrame,
    a: &Arc<PropositionPoset>,
    b: &Arc<PropositionPoset>,
    kind: StepKind,
) -> Result<(Relation, OperatorTable)> {
    Ok(match kind {
        StepKind::Upper => {
            let t = upper_operator(frame, b)?;
            (induced_upper(&t), t)
        }
        StepKind::Lower => {
            let p = lower_operator(frame, a)?;
            (induced_lower(&p), p)
        }
    })
}

/// One application of `ψ∘φ` (upper) or `Ψ∘Φ` (lower) to the frame's relation.
pub fn step(
    frame: &TransitionFrame,
    a: &Arc<PropositionPoset>,
    b: &Arc<PropositionPoset>,
    kind: StepKind,
) -> Result<Relation> {
    Ok(step_with_operator(frame, a, b, kind)?.0)
}

/// Snapshots of an iteration run.
#[derive(Clone, Debug)]
pub struct IterationTrace {
    pub schedule: Vec<StepKind>,
    /// Initial relation followed by the result of every step.
    pub relations: Vec<Relation>,
    /// The operator used by each step.
    pub operators: Vec<OperatorTable>,
    pub converged: bool,
    pub steps_taken: usize,
}

impl IterationTrace {
    /// Steps that strictly enlarged the relation.
    pub fn productive_steps(&self) -> usize {
        self.relations.windows(2).filter(|w| w[0] != w[1]).count()
    }

    pub fn final_relation(&self) -> &Relation {
        self.relations.last().expect("trace holds the initial relation")
    }

    /// Distinct relations visited, in order.
    pub fn chain(&self) -> Vec<&Relation> {
        let mut out: Vec<&Relation> = Vec::new();
        for r in &self.relations {
            if out.last() != Some(&r) {
                out.push(r);
            }
        }
        out
    }

    pub fn render(&self, frame: &TransitionFrame) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "step 0 initial: {}", frame.format_relation(&self.relations[0]));
        for (k, kind) in self.schedule.iter().enumerate() {
            let (before, after) = (&self.relations[k], &self.relations[k + 1]);
            let added: Vec<String> = after.difference(before).pairs().map(|p| frame.pair_name(p)).collect();
            let added = if added.is_empty() {
                "-".to_string()
            } else {
                added.join(" ")
            };
            let _ = writeln!(out, "step {} {kind} added: {added}", k + 1);
            if before != after {
                let _ = writeln!(out, "  R = {}", frame.format_relation(after));
                let _ = writeln!(out, "  |R| = {}", after.len());
            }
        }
        if self.converged {
            let _ = writeln!(
                out,
                "converged after {} steps ({} productive)",
                self.steps_taken,
                self.productive_steps()
            );
        } else {
            let _ = writeln!(out, "not converged within {} steps", self.steps_taken);
        }
        out
    }
}

/// Applies steps according to `schedule` until every kind in a full cycle
/// leaves the relation unchanged, or `max_steps` is reached.
pub fn iterate(
    frame: &TransitionFrame,
    a: &Arc<PropositionPoset>,
    b: &Arc<PropositionPoset>,
    schedule: Schedule,
    max_steps: usize,
) -> Result<IterationTrace> {
    if max_steps == 0 {
        return Err(Error::Precondition("max_steps must be at least 1".into()));
    }
    a.check_compatible(b)?;
    let n = frame.states().len();
    let mut trace = IterationTrace {
        schedule: Vec::new(),
        relations: vec![frame.relation().clone()],
        operators: Vec::new(),
        converged: false,
        steps_taken: 0,
    };
    let mut current = frame.clone();
    let mut unchanged = 0;
    for i in 0..max_steps {
        let kind = schedule.kind_at(i);
        let (next, op) = step_with_operator(&current, a, b, kind)?;
        debug_assert!(current.relation().is_subset(&next));
        if next == *current.relation() {
            unchanged += 1;
        } else {
            unchanged = 0;
            current = current.with(next.clone());
        }
        trace.schedule.push(kind);
        trace.relations.push(next);
        trace.operators.push(op);
        trace.steps_taken += 1;
        if unchanged >= schedule.cycle_len() {
            trace.converged = true;
            break;
        }
    }
    assert!(trace.productive_steps() <= n * n, "more productive steps than pairs");
    Ok(trace)
}

/// Largest state count accepted by [`enumerate_fixpoints`] by default.
pub const DEFAULT_ENUMERATION_CAP: usize = 3;

/// All relations `R` on the poset's states with `step(R) = R` for `kind`,
/// in ascending bitmask order (bit `s*n + t` for the pair `(s, t)`).
pub fn enumerate_fixpoints(
    a: &Arc<PropositionPoset>,
    b: &Arc<PropositionPoset>,
    kind: StepKind,
    cap: usize,
) -> Result<Vec<Relation>> {
    a.check_compatible(b)?;
    let n = b.state_count();
    if n > cap || n > 5 {
        return Err(Error::CapExceeded(format!(
            "{n} states exceeds the enumeration cap of {}",
            cap.min(5)
        )));
    }
    let states = b.states().clone();
    let mut out = Vec::new();
    for mask in 0..(1u64 << (n * n)) {
        let frame = TransitionFrame::with_relation(states.clone(), Relation::from_mask(n, mask))?;
        if step(&frame, a, b, kind)? == *frame.relation() {
            out.push(frame.relation().clone());
        }
    }
    Ok(out)
}
