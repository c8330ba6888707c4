//! Galois connections (residuated pairs) between finite posets.
//!
//! A pair `(f, g)` with `f: A -> B` and `g: B -> A` is a Galois connection
//! when `f(a) <= b` iff `a <= g(b)`. Three equivalent characterisations are
//! checked independently:
//!
//! 1. the residuation law itself;
//! 2. `f`, `g` monotone with `id <= g∘f` and `f∘g <= id`;
//! 3. `g(b) = ⋁{x | f(x) <= b}` and `f(a) = ⋀{y | a <= g(y)}`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::order::poset::{FinitePoset, MonotoneMap};
use crate::proposition::PropositionPoset;

/// One of the three equivalent characterisations of a Galois connection.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum GaloisCondition {
    Residuation,
    UnitCounit,
    AdjointFormula,
}

/// A concrete reason why a condition fails. Indices refer to the source
/// poset `A` of the lower map (for `a`) or its target `B` (for `b`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Exactly one side of `f(a) <= b  <=>  a <= g(b)` holds.
    Residuation {
        a: usize,
        b: usize,
        lower_side: bool,
    },
    LowerNotMonotone {
        x: usize,
        y: usize,
    },
    UpperNotMonotone {
        x: usize,
        y: usize,
    },
    /// `a <= g(f(a))` fails.
    NotInflationary {
        a: usize,
    },
    /// `f(g(b)) <= b` fails.
    NotDeflationary {
        b: usize,
    },
    /// `g(b)` is not the join of `{x | f(x) <= b}` (or the join is missing).
    UpperNotJoin {
        b: usize,
    },
    /// `f(a)` is not the meet of `{y | a <= g(y)}` (or the meet is missing).
    LowerNotMeet {
        a: usize,
    },
}

impl Violation {
    pub fn condition(&self) -> GaloisCondition {
        match self {
            Violation::Residuation { .. } => GaloisCondition::Residuation,
            Violation::LowerNotMonotone { .. }
            | Violation::UpperNotMonotone { .. }
            | Violation::NotInflationary { .. }
            | Violation::NotDeflationary { .. } => GaloisCondition::UnitCounit,
            Violation::UpperNotJoin { .. } | Violation::LowerNotMeet { .. } => GaloisCondition::AdjointFormula,
        }
    }
}

/// Outcome of [`is_galois_pair`]: each characterisation is evaluated on its
/// own, so their agreement can be observed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisReport {
    pub residuation: Option<Violation>,
    pub unit_counit: Option<Violation>,
    pub adjoint_formula: Option<Violation>,
}

impl GaloisReport {
    /// Whether the residuation law holds, i.e. the pair is a Galois connection.
    pub fn holds(&self) -> bool {
        self.residuation.is_none()
    }

    /// Whether all three characterisations give the same verdict.
    pub fn consistent(&self) -> bool {
        let r = self.residuation.is_none();
        r == self.unit_counit.is_none() && r == self.adjoint_formula.is_none()
    }

    /// The first failing condition in the order 1, 2, 3 with its witness.
    pub fn first_failure(&self) -> Option<&Violation> {
        self.residuation
            .as_ref()
            .or(self.unit_counit.as_ref())
            .or(self.adjoint_formula.as_ref())
    }
}

/// A lower adjoint `f: A -> B` paired with an upper adjoint `g: B -> A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisPair {
    pub lower: MonotoneMap,
    pub upper: MonotoneMap,
}

impl GaloisPair {
    pub fn identity(poset: Arc<FinitePoset>) -> Self {
        GaloisPair {
            lower: MonotoneMap::identity(poset.clone()),
            upper: MonotoneMap::identity(poset),
        }
    }

    pub fn report(&self) -> Result<GaloisReport> {
        is_galois_pair(&self.lower, &self.upper)
    }
}

fn check_carriers(f: &MonotoneMap, g: &MonotoneMap) -> Result<()> {
    if **f.source() != **g.target() || **f.target() != **g.source() {
        return Err(Error::PosetMismatch("expected f: A -> B and g: B -> A".into()));
    }
    Ok(())
}

/// Checks whether `(f, g)` is a Galois connection under all three
/// characterisations.
pub fn is_galois_pair(f: &MonotoneMap, g: &MonotoneMap) -> Result<GaloisReport> {
    check_carriers(f, g)?;
    let a_poset = f.source();
    let b_poset = f.target();
    let (na, nb) = (a_poset.len(), b_poset.len());

    let mut residuation = None;
    'outer: for a in 0..na {
        for b in 0..nb {
            let lower_side = b_poset.leq(f.apply(a), b);
            let upper_side = a_poset.leq(a, g.apply(b));
            if lower_side != upper_side {
                residuation = Some(Violation::Residuation { a, b, lower_side });
                break 'outer;
            }
        }
    }

    let unit_counit = if let Some((x, y)) = f.monotonicity_witness() {
        Some(Violation::LowerNotMonotone { x, y })
    } else if let Some((x, y)) = g.monotonicity_witness() {
        Some(Violation::UpperNotMonotone { x, y })
    } else if let Some(a) = (0..na).find(|&a| !a_poset.leq(a, g.apply(f.apply(a)))) {
        Some(Violation::NotInflationary { a })
    } else {
        (0..nb)
            .find(|&b| !b_poset.leq(f.apply(g.apply(b)), b))
            .map(|b| Violation::NotDeflationary { b })
    };

    let adjoint_formula = (0..nb)
        .find(|&b| {
            let below: Vec<usize> = (0..na).filter(|&x| b_poset.leq(f.apply(x), b)).collect();
            a_poset.join_of(&below) != Some(g.apply(b))
        })
        .map(|b| Violation::UpperNotJoin { b })
        .or_else(|| {
            (0..na)
                .find(|&a| {
                    let above: Vec<usize> = (0..nb).filter(|&y| a_poset.leq(a, g.apply(y))).collect();
                    b_poset.meet_of(&above) != Some(f.apply(a))
                })
                .map(|a| Violation::LowerNotMeet { a })
        });

    Ok(GaloisReport {
        residuation,
        unit_counit,
        adjoint_formula,
    })
}

/// The upper adjoint of a monotone `f`, computed as `g(b) = ⋁{x | f(x) <= b}`.
///
/// Returns `Ok(None)` when some join is missing or the candidate does not
/// form a Galois connection with `f`.
pub fn upper_adjoint(f: &MonotoneMap) -> Result<Option<MonotoneMap>> {
    if let Some((x, y)) = f.monotonicity_witness() {
        return Err(Error::NotMonotone(
            f.source().name(x).to_string(),
            f.source().name(y).to_string(),
        ));
    }
    let (a_poset, b_poset) = (f.source(), f.target());
    let mut graph = Vec::with_capacity(b_poset.len());
    for b in 0..b_poset.len() {
        let below: Vec<usize> = (0..a_poset.len()).filter(|&x| b_poset.leq(f.apply(x), b)).collect();
        match a_poset.join_of(&below) {
            Some(j) => graph.push(j),
            None => return Ok(None),
        }
    }
    let g = MonotoneMap::unchecked(b_poset.clone(), a_poset.clone(), graph)?;
    Ok(is_galois_pair(f, &g)?.holds().then_some(g))
}

/// The lower adjoint of a monotone `g`, computed as `f(a) = ⋀{y | a <= g(y)}`.
pub fn lower_adjoint(g: &MonotoneMap) -> Result<Option<MonotoneMap>> {
    if let Some((x, y)) = g.monotonicity_witness() {
        return Err(Error::NotMonotone(
            g.source().name(x).to_string(),
            g.source().name(y).to_string(),
        ));
    }
    let (b_poset, a_poset) = (g.source(), g.target());
    let mut graph = Vec::with_capacity(a_poset.len());
    for a in 0..a_poset.len() {
        let above: Vec<usize> = (0..b_poset.len()).filter(|&y| a_poset.leq(a, g.apply(y))).collect();
        match b_poset.meet_of(&above) {
            Some(m) => graph.push(m),
            None => return Ok(None),
        }
    }
    let f = MonotoneMap::unchecked(a_poset.clone(), b_poset.clone(), graph)?;
    Ok(is_galois_pair(&f, g)?.holds().then_some(f))
}

/// Composes `(f, g)` between `A` and `B` with `(u, v)` between `B` and `C`
/// into `(u∘f, g∘v)` between `A` and `C`.
pub fn compose_galois(fg: &GaloisPair, uv: &GaloisPair) -> Result<GaloisPair> {
    check_carriers(&fg.lower, &fg.upper)?;
    check_carriers(&uv.lower, &uv.upper)?;
    if **fg.lower.target() != **uv.lower.source() {
        return Err(Error::PosetMismatch("middle posets of the two pairs differ".into()));
    }
    if !fg.report()?.holds() {
        return Err(Error::Precondition("first pair is not a Galois connection".into()));
    }
    if !uv.report()?.holds() {
        return Err(Error::Precondition("second pair is not a Galois connection".into()));
    }
    Ok(GaloisPair {
        lower: fg.lower.then(&uv.lower)?,
        upper: uv.upper.then(&fg.upper)?,
    })
}

/// Result of [`is_order_reflecting_embedding`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub holds: bool,
    /// A pair of abstract elements on which the two orders disagree.
    pub witness: Option<(usize, usize)>,
}

impl fmt::Display for EmbeddingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.witness {
            None => write!(f, "order-reflecting embedding"),
            Some((a, b)) => write!(f, "orders disagree on ({a}, {b})"),
        }
    }
}

/// Checks that `abstract_order` and the pointwise order on the rows of
/// `table` coincide under `bijection` (abstract index -> row index).
pub fn is_order_reflecting_embedding(
    abstract_order: &FinitePoset,
    table: &PropositionPoset,
    bijection: &[usize],
) -> Result<EmbeddingReport> {
    let n = abstract_order.len();
    if bijection.len() != n || table.len() != n {
        return Err(Error::NotTotal(format!(
            "bijection covers {} of {} abstract elements and {} rows",
            bijection.len(),
            n,
            table.len()
        )));
    }
    let mut seen = vec![false; n];
    for &r in bijection {
        if r >= n || std::mem::replace(&mut seen[r], true) {
            return Err(Error::NotTotal(format!("row {r} is not hit exactly once")));
        }
    }
    for a in 0..n {
        for b in 0..n {
            if abstract_order.leq(a, b) != table.row_leq(bijection[a], bijection[b]) {
                return Ok(EmbeddingReport {
                    holds: false,
                    witness: Some((a, b)),
                });
            }
        }
    }
    Ok(EmbeddingReport {
        holds: true,
        witness: None,
    })
}
