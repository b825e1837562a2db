//! Cover morphisms, partial continuous maps, the functors `Ab` and `Sp`
//! and the checks of their duality.

mod duality;
mod functors;
mod maps;
mod morphism;

pub use duality::{
    is_homeomorphism, test_morphisms, verify_duality, verify_space_duality, verify_system_duality,
    DualityReport, DualitySubject, Section, Tally,
};
pub use functors::{
    ab_functor, ab_object, lambda, merged_ground, sp_functor, sp_object, triangle, SpObject, SpReport,
    Triangle, TriangleFlags,
};
pub use maps::{test_maps, MapDump, SpaceMap, TEST_MAP_SEARCH_LIMIT};
pub use morphism::{
    check_cover_morphism, compose_morphisms, derive_proper, is_cover_morphism, is_karoubi, karoubi_witness,
    CoverMorphism, MorphismCheck, MorphismDump, ProperReport,
};
