//! The cover of a finite space's subbasis by inclusion.

use crate::error::Result;
use crate::kernel::GroundSet;
use crate::relations::CoverSystem;
use crate::spectrum::space::{FiniteSpace, PointSet};
use crate::Axiom;

/// Ground set = the subbasis members (by name); `F ⊢ G ⟺ ⋂F ⊆ ⋃G` with
/// `⋂∅ = X`. On a finite space `⋐` is `⊆` between opens.
pub fn topology_cover(space: &FiniteSpace) -> Result<CoverSystem> {
    let ground = GroundSet::new(space.subbasis_names().iter().cloned())?;
    let sub = space.subbasis();
    let n = sub.len();
    let meets: Vec<PointSet> = (0..1u32 << n)
        .map(|f| crate::FinSubset(f).iter().fold(space.full(), |m, i| m & sub[i]))
        .collect();
    let joins: Vec<PointSet> = (0..1u32 << n)
        .map(|g| crate::FinSubset(g).iter().fold(0, |m, i| m | sub[i]))
        .collect();
    CoverSystem::from_fn(ground, |f, g| meets[f.code()] & !joins[g.code()] == 0)
}

pub fn topology_promise(_space: &FiniteSpace) -> Vec<Axiom> {
    vec![Axiom::Scott, Axiom::Cover]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::FinSubset;

    #[test]
    fn sierpinski_matrix() {
        let s = FiniteSpace::new(
            vec!["x".into(), "y".into()],
            vec![0b10, 0b11],
            vec!["U".into(), "X".into()],
        )
        .unwrap();
        let sys = topology_cover(&s).unwrap();
        assert!(sys.classification().is_cover);
        // X ⊄ U, U ⊆ X
        assert!(!sys.entails(FinSubset(0b10), FinSubset(0b01)));
        assert!(sys.entails(FinSubset(0b01), FinSubset(0b10)));
        assert!(sys.entails(FinSubset(0b00), FinSubset(0b10)));
        assert!(!sys.entails(FinSubset(0b11), FinSubset(0b00)));
        // cross-check against ⋐ on the space
        for f in 0..4u32 {
            for g in 0..4u32 {
                let o = FinSubset(f).iter().fold(s.full(), |m, i| m & s.subbasis()[i]);
                let u = FinSubset(g).iter().fold(0, |m, i| m | s.subbasis()[i]);
                assert_eq!(
                    sys.entails(FinSubset(f), FinSubset(g)),
                    s.compact_contained(o, u).unwrap()
                );
            }
        }
    }
}
