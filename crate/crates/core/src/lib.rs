//! Finite cover systems: relations on finite subsets of a ground set,
//! their axiom classification, cut-composition, tight spectra, quasi-ideal
//! frames and the duality with finite spaces.
//!
//! ```
//! use coverkit::builders::catalog;
//!
//! let sys = catalog::boolean4().unwrap();
//! assert!(sys.classification().is_scott);
//! let tight = coverkit::spectrum::tight_sets(&sys).unwrap();
//! assert_eq!(tight.len(), 2);
//! ```

pub mod axioms;
mod bits;
pub mod builders;
pub mod category;
pub mod composition;
pub mod error;
pub mod frame;
pub mod kernel;
pub mod limits;
pub mod random;
pub mod relations;
pub mod spectrum;

pub use axioms::{classify, Axiom, Classification};
pub use bits::BitSet;
pub use composition::cut_compose;
pub use error::{Error, Result};
pub use kernel::{Family, FinSubset, GroundSet};
pub use relations::{CoverSystem, Relation};
pub use spectrum::{FiniteSpace, Spectrum};
