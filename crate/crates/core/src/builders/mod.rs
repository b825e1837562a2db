//! Constructors of cover systems from order-theoretic, convex and
//! topological data, and a catalogue of small examples.
//!
//! Builders never reject an input for failing an axiom. Each has a
//! `*_promise` companion listing the axioms that theory guarantees for
//! valid input, which [`broken_promises`] checks against the computed
//! classification.

pub mod catalog;
pub mod convexity;
pub mod lattice;
pub mod order;
pub mod proximity;
pub mod scott;
pub mod topology;

pub use convexity::{convexity_entailment, convexity_promise, Convexity};
pub use lattice::{
    lattice_cover, lattice_promise, semilattice_cover, semilattice_promise, semilattice_reduction,
    FiniteLattice, JoinSemilattice,
};
pub use order::{perp_cover, perp_promise, TransitiveRelation};
pub use proximity::{proximity_cover, proximity_promise, ProximityLattice};
pub use scott::{scott_cover_construct, ScottConditions};
pub use topology::{topology_cover, topology_promise};

use crate::relations::CoverSystem;
use crate::Axiom;

/// The promised axioms that the system fails.
pub fn broken_promises(sys: &CoverSystem, promise: &[Axiom]) -> Vec<Axiom> {
    let c = sys.classification();
    promise.iter().copied().filter(|&a| !c.get(a)).collect()
}
