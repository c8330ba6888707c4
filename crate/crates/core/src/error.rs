use thiserror::Error;

/// Errors raised while building or querying lattices, frames and systems.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("unknown state {0}")]
    UnknownState(String),
    #[error("unknown proposition {0}")]
    UnknownProposition(String),
    #[error("duplicate name {0}")]
    DuplicateName(String),
    #[error("order is not antisymmetric: {0} and {1} lie on a cycle")]
    NotAntisymmetric(String, String),
    #[error("{x} and {y} have no unique {bound}")]
    NotALattice { x: String, y: String, bound: &'static str },
    #[error("{0} is not below every element")]
    NotBottom(String),
    #[error("{0} is not above every element")]
    NotTop(String),
    #[error("lattice is trivial: bottom equals top")]
    TrivialLattice,
    #[error("state set must not be empty")]
    NoStates,
    #[error("propositions {0} and {1} have the same value vector")]
    DuplicateVector(String, String),
    #[error("proposition {name} has {got} values, expected {expected}")]
    VectorLength { name: String, got: usize, expected: usize },
    #[error("constant-top proposition required")]
    MissingTop,
    #[error("constant-bottom proposition required")]
    MissingBottom,
    #[error("state sets differ")]
    StateMismatch,
    #[error("lattices differ")]
    LatticeMismatch,
    #[error("posets differ: {0}")]
    PosetMismatch(String),
    #[error("map is not monotone: {0} <= {1} but their images are not ordered")]
    NotMonotone(String, String),
    #[error("map is not total: {0}")]
    NotTotal(String),
    #[error("upper operator must send the top row to the constant-top vector")]
    UnitNotPreserved,
    #[error("lower operator must send the bottom row to the constant-bottom vector")]
    ZeroNotPreserved,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    AtLine { line: usize, source: Box<Error> },
    #[error("hasse order disagrees with the table on {0} <= {1}")]
    HasseMismatch(String, String),
    #[error("{0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
