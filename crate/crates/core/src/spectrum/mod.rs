//! Tight subsets, the tight spectrum and its topology, and finite spaces.

pub mod recovery;
pub mod space;
pub mod tight;

pub use recovery::{recovery, RecoveryReport};
pub use space::{homeomorphism, space_properties, FiniteSpace, PointSet, SpaceProperties};
pub use tight::{
    birkhoff_stone, birkhoff_stone2, empty_is_tight, full_spectrum, prime_to_tight, reach, spectrum, tight_flags,
    tight_sets, verify_toprep, Spectrum, TightFlags, TopRepReport,
};
