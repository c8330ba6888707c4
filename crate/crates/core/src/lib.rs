//! Upper and lower transition operators on lattice-valued propositions,
//! the relations they induce, and exhaustive checks of the laws linking
//! the two.

pub mod cli;
pub mod dot;
pub mod error;
pub mod fixpoint;
pub mod frame;
pub mod induction;
pub mod operator;
pub mod oracle;
pub mod order;
pub mod proposition;
pub mod system;

pub use error::{Error, Result};
pub use fixpoint::{iterate, IterationTrace, Schedule, StepKind};
pub use frame::{Relation, TransitionFrame};
pub use induction::{induced_lower, induced_upper, recoverability, RecoverabilityReport};
pub use operator::{lower_operator, upper_operator, OperatorTable, TableKind};
pub use order::{Elem, Lattice};
pub use proposition::{Proposition, PropositionPoset};
pub use system::{parse_system, SystemDescription};
