//! Finite posets, finite lattices and Galois connections between them.

pub mod galois;
pub mod lattice;
pub mod poset;

pub use galois::{
    compose_galois, is_galois_pair, is_order_reflecting_embedding, lower_adjoint, upper_adjoint, EmbeddingReport,
    GaloisCondition, GaloisPair, GaloisReport, Violation,
};
pub use lattice::{Elem, Lattice};
pub use poset::{FinitePoset, MonotoneMap};
