//! Cover morphisms and proper morphisms.
//!
//! Coordinates: `rel ⊆ F(source) × F(target)`. As an arrow of the cover
//! category a relation `⊏ ⊆ F(S) × F(R)` runs from `R` to `S`, so the
//! categorical arrow of a [`CoverMorphism`] points from `target` to
//! `source`. Composition follows the relation: `m1.target = m2.source`.

use serde::Serialize;

use crate::bits::BitSet;
use crate::composition::{cut_compose, cut_compose_general};
use crate::error::{Error, Result};
use crate::kernel::FinSubset;
use crate::relations::{is_lower, is_monotone, one_exists, CoverSystem, Relation};

#[derive(Clone, Debug, PartialEq)]
pub struct CoverMorphism {
    source: CoverSystem,
    target: CoverSystem,
    rel: Relation,
}

impl CoverMorphism {
    /// Pairs `rel` with its systems; only the shape is checked here, see
    /// [`check_cover_morphism`] for the defining equations.
    pub fn new(source: CoverSystem, target: CoverSystem, rel: Relation) -> Result<Self> {
        if rel.left_len() != source.len() || rel.right_len() != target.len() {
            return Err(Error::GroundMismatch(format!(
                "relation of shape {}x{} between systems on {} and {} elements",
                rel.left_len(),
                rel.right_len(),
                source.len(),
                target.len()
            )));
        }
        Ok(CoverMorphism { source, target, rel })
    }

    /// The system's own relation, viewed as a morphism.
    pub fn identity(sys: &CoverSystem) -> Self {
        CoverMorphism {
            source: sys.clone(),
            target: sys.clone(),
            rel: sys.rel().clone(),
        }
    }

    pub fn source(&self) -> &CoverSystem {
        &self.source
    }

    pub fn target(&self) -> &CoverSystem {
        &self.target
    }

    pub fn rel(&self) -> &Relation {
        &self.rel
    }

    pub fn into_rel(self) -> Relation {
        self.rel
    }

    pub fn dump(&self) -> MorphismDump {
        MorphismDump {
            source: self.source.ground().names().to_vec(),
            target: self.target.ground().names().to_vec(),
            pairs: self.rel.pairs().map(|(f, g)| (f.0, g.0)).collect(),
        }
    }
}

/// Serialized morphism: ground names of both systems and the related
/// pairs as subset codes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismDump {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub pairs: Vec<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismCheck {
    pub monotone: bool,
    /// `⊏ = ⊏•⊨`
    pub right_absorbs: bool,
    /// `⊏ = ⊢•⊏₁∃`
    pub left_absorbs: bool,
    pub witness: Option<(FinSubset, FinSubset)>,
}

impl MorphismCheck {
    pub fn passed(&self) -> bool {
        self.monotone && self.right_absorbs && self.left_absorbs
    }
}

/// Both defining equations. A non-monotone relation is rejected before
/// composing, which keeps every right operand below lower; the target
/// relation must be lower too, else [`Error::NotLower`].
pub fn check_cover_morphism(m: &CoverMorphism) -> Result<MorphismCheck> {
    let sq = &m.rel;
    if !is_monotone(sq) {
        return Ok(MorphismCheck {
            monotone: false,
            right_absorbs: false,
            left_absorbs: false,
            witness: None,
        });
    }
    let right = cut_compose(sq, m.target.rel())?;
    let left = cut_compose(m.source.rel(), &one_exists(sq))?;
    let witness = difference(sq, &right).or_else(|| difference(sq, &left));
    Ok(MorphismCheck {
        monotone: true,
        right_absorbs: right == *sq,
        left_absorbs: left == *sq,
        witness,
    })
}

pub fn is_cover_morphism(m: &CoverMorphism) -> Result<bool> {
    Ok(check_cover_morphism(m)?.passed())
}

fn difference(a: &Relation, b: &Relation) -> Option<(FinSubset, FinSubset)> {
    a.first_difference(b).or_else(|| b.first_difference(a))
}

fn compose_any(a: &Relation, b: &Relation) -> Relation {
    let out = if is_lower(b) {
        cut_compose(a, b)
    } else {
        cut_compose_general(a, b)
    };
    out.expect("shapes fixed by CoverMorphism::new")
}

/// A pair where `⊏ = ⊏•⊨ = ⊢•⊏` fails, if any.
pub fn karoubi_witness(m: &CoverMorphism) -> Option<(FinSubset, FinSubset)> {
    let sq = &m.rel;
    let right = compose_any(sq, m.target.rel());
    let left = compose_any(m.source.rel(), sq);
    difference(sq, &right).or_else(|| difference(sq, &left))
}

pub fn is_karoubi(m: &CoverMorphism) -> bool {
    karoubi_witness(m).is_none()
}

pub fn compose_morphisms(m1: &CoverMorphism, m2: &CoverMorphism) -> Result<CoverMorphism> {
    if m1.target != m2.source {
        return Err(Error::GroundMismatch(
            "the first morphism's target is not the second's source".into(),
        ));
    }
    let rel = cut_compose(&m1.rel, &m2.rel)?;
    Ok(CoverMorphism {
        source: m1.source.clone(),
        target: m2.target.clone(),
        rel,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperReport {
    /// `F ⊑ G ⟺ ∀H (H ⊏ {f} for all f ∈ F ⟹ H ⊢ G)`, on `F(R) × F(S)`.
    pub sqsubseteq: Relation,
    /// `⊨ ⊆ ⊑•⊏`
    pub proper: bool,
    pub witness: Option<(FinSubset, FinSubset)>,
}

pub fn derive_proper(m: &CoverMorphism) -> Result<ProperReport> {
    let (s, r) = (m.source.len(), m.target.len());
    let sq = &m.rel;
    let cols: Vec<BitSet> = (0..r).map(|x| sq.column(FinSubset::singleton(x))).collect();
    let mut below = vec![BitSet::full(1 << s); 1 << r];
    for fc in 1usize..1 << r {
        let low = fc.trailing_zeros() as usize;
        below[fc] = below[fc & (fc - 1)].and(&cols[low]);
    }
    let vdash = m.source.rel();
    let mut rows = Vec::with_capacity(1 << r);
    for hs in &below {
        let mut acc = BitSet::full(1 << s);
        for h in hs.ones() {
            acc.and_assign(vdash.row(FinSubset(h as u32)));
        }
        rows.push(acc);
    }
    let sqsubseteq = Relation::from_rows(r, s, rows)?;
    let round = cut_compose(&sqsubseteq, sq)?;
    let target = m.target.rel();
    let witness = target
        .pairs()
        .find(|&(f, g)| !round.get(f, g));
    Ok(ProperReport {
        sqsubseteq,
        proper: witness.is_none(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::derive_vdash;
    use crate::builders::catalog;

    fn covers() -> Vec<(String, CoverSystem)> {
        catalog::canonical_small_systems()
            .unwrap()
            .into_iter()
            .filter(|e| e.system.classification().is_cover)
            .map(|e| (e.name.to_string(), e.system))
            .collect()
    }

    #[test]
    fn identities_are_cover_morphisms() {
        let cs = covers();
        assert!(!cs.is_empty());
        for (name, sys) in &cs {
            let id = CoverMorphism::identity(sys);
            assert!(is_cover_morphism(&id).unwrap(), "{name}");
            assert!(is_karoubi(&id), "{name}");
            let twice = compose_morphisms(&id, &id).unwrap();
            assert_eq!(twice, id, "{name}");
        }
    }

    #[test]
    fn empty_relation_needs_the_empty_set_tight() {
        // ∅•⊨ is the row of ∅ in every row, and ⊢•∅ is full exactly on
        // the rows with F ⊢ ∅
        let mut seen = [false; 2];
        for (name, sys) in covers() {
            let n = sys.len();
            let m = CoverMorphism::new(sys.clone(), sys.clone(), Relation::new(n, n).unwrap()).unwrap();
            let c = check_cover_morphism(&m).unwrap();
            let empty_row = sys.rel().row(FinSubset::EMPTY).is_empty();
            let empty_col = sys.rel().column(FinSubset::EMPTY).is_empty();
            assert_eq!(c.right_absorbs, empty_row, "{name}");
            assert_eq!(c.left_absorbs, empty_col, "{name}");
            seen[usize::from(c.passed())] = true;
        }
        assert_eq!(seen, [true, true]);
    }

    #[test]
    fn identity_is_proper_with_derived_relation() {
        for (name, sys) in covers() {
            let rep = derive_proper(&CoverMorphism::identity(&sys)).unwrap();
            assert_eq!(rep.sqsubseteq, derive_vdash(sys.rel()).unwrap(), "{name}");
            assert!(rep.proper, "{name}");
        }
    }

    #[test]
    fn shape_and_mismatch_errors() {
        let a = catalog::meet2().unwrap();
        let b = catalog::chain3().unwrap();
        assert!(matches!(
            CoverMorphism::new(a.clone(), b.clone(), Relation::new(2, 2).unwrap()),
            Err(Error::GroundMismatch(_))
        ));
        let ia = CoverMorphism::identity(&a);
        let ib = CoverMorphism::identity(&b);
        assert!(matches!(compose_morphisms(&ia, &ib), Err(Error::GroundMismatch(_))));
    }

    #[test]
    fn non_monotone_relation_is_rejected_without_composing() {
        let sys = catalog::meet2().unwrap();
        let rel = Relation::from_pairs(2, 2, [(FinSubset(0b01), FinSubset(0b01))]).unwrap();
        let m = CoverMorphism::new(sys.clone(), sys, rel).unwrap();
        let c = check_cover_morphism(&m).unwrap();
        assert!(!c.monotone && !c.passed());
        assert!(!is_karoubi(&m));
        assert!(karoubi_witness(&m).is_some());
    }
}
