//! Covers built from a base relation `⊨` and a transitive `<` as
//! `⊢ = ⊨ ∘ ◁`, where `F ◁ G ⟺ ∀f ∈ F ∃g ∈ G: f < g`.

use serde::Serialize;

use super::order::TransitiveRelation;
use crate::error::{Error, Result};
use crate::kernel::FinSubset;
use crate::relations::{CoverSystem, Relation};
use crate::Axiom;

/// Which hypotheses of the construction hold; nothing is enforced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScottConditions {
    pub base_entailment: bool,
    pub base_one_reflexive: bool,
    /// `F ⊨ G ⟹ F ⊨ (G ∖ s^>) ∪ {s}`
    pub one_aux: bool,
    /// `q < r ⟹ ∃F ⊆ r^>: q ⊢ F`
    pub c_interpolation: bool,
    /// `(∀f ∈ F_>: f ⊨ G) ⟹ F ⊨ G`
    pub f_succ: bool,
    /// Axioms the hypotheses guarantee for the result.
    pub promise: Vec<Axiom>,
}

/// `⊢ = ⊨ ∘ ◁`, returned together with the hypothesis report.
pub fn scott_cover_construct(
    base: &CoverSystem,
    lt: &TransitiveRelation,
) -> Result<(CoverSystem, ScottConditions)> {
    let n = base.len();
    if lt.len() != n || lt.elements() != base.ground() {
        return Err(Error::GroundMismatch(
            "order and base relation live on different sets".into(),
        ));
    }
    let below: Vec<FinSubset> = (0..1u32 << n).map(|g| lt.below_any(FinSubset(g))).collect();
    // F ⊢ G iff some H ⊆ G^> has F ⊨ H
    let mut rows = Vec::with_capacity(1 << n);
    for f in 0..1u32 << n {
        let reach = base.rel().row(FinSubset(f)).up_closure(n);
        rows.push(crate::BitSet::from_fn(1 << n, |g| reach.contains(below[g].code())));
    }
    let rel = Relation::from_rows(n, n, rows)?;
    let sys = CoverSystem::new(base.ground().clone(), rel)?;
    let cond = conditions(base, lt, &sys);
    Ok((sys, cond))
}

fn conditions(base: &CoverSystem, lt: &TransitiveRelation, built: &CoverSystem) -> ScottConditions {
    let n = base.len();
    let b = base.classification();
    let one_aux = (0..1u32 << n).all(|f| {
        base.rel().row(FinSubset(f)).ones().all(|g| {
            let g = FinSubset(g as u32);
            (0..n).all(|s| base.entails(FinSubset(f), g.difference(lt.below(s)).with(s)))
        })
    });
    let c_interpolation = (0..n).all(|q| {
        lt.above(q)
            .iter()
            .all(|r| built.entails(FinSubset::singleton(q), lt.below(r)))
    });
    let f_succ = (0..1u32 << n).all(|f| {
        let low = lt.below_all(FinSubset(f));
        (0..1u32 << n).all(|g| {
            let g = FinSubset(g);
            base.entails(FinSubset(f), g)
                || !low.iter().all(|x| base.entails(FinSubset::singleton(x), g))
        })
    });
    let mut promise = Vec::new();
    if b.is_entailment && one_aux {
        promise.push(Axiom::Entailment);
        if b.is_one_reflexive && c_interpolation {
            promise.push(Axiom::StrongIdempotent);
            if f_succ {
                promise.push(Axiom::Cover);
            }
        }
    }
    ScottConditions {
        base_entailment: b.is_entailment,
        base_one_reflexive: b.is_one_reflexive,
        one_aux,
        c_interpolation,
        f_succ,
        promise,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::lattice::{lattice_cover, FiniteLattice};
    use crate::builders::order::perp_cover;
    use crate::kernel::GroundSet;

    fn literal(base: &CoverSystem, lt: &TransitiveRelation, f: FinSubset, g: FinSubset) -> bool {
        let n = base.len();
        (0..1u32 << n).map(FinSubset).any(|h| {
            base.entails(f, h) && h.iter().all(|x| g.iter().any(|y| lt.lt(x, y)))
        })
    }

    #[test]
    fn matches_literal_definition() {
        let lat = FiniteLattice::boolean(2).unwrap();
        let base = lattice_cover(&lat).unwrap();
        let lt = TransitiveRelation::new(lat.elements().clone(), |a, b| {
            a == 0 || lat.leq(a, b) && a != b
        })
        .unwrap();
        let (sys, _) = scott_cover_construct(&base, &lt).unwrap();
        for f in 0..16 {
            for g in 0..16 {
                let (f, g) = (FinSubset(f), FinSubset(g));
                assert_eq!(sys.entails(f, g), literal(&base, &lt, f, g));
            }
        }
    }

    #[test]
    fn full_order_gives_upper_closure_of_nonempty() {
        // with < total, H ◁ G iff H = ∅ or G ≠ ∅
        let g = GroundSet::indexed("s", 2).unwrap();
        let lat = FiniteLattice::chain(g.clone()).unwrap();
        let base = lattice_cover(&lat).unwrap();
        let lt = TransitiveRelation::new(g, |_, _| true).unwrap();
        let (sys, cond) = scott_cover_construct(&base, &lt).unwrap();
        for f in 0..4 {
            for gg in 0..4 {
                let expect = if gg == 0 {
                    base.entails(FinSubset(f), FinSubset(0))
                } else {
                    true
                };
                assert_eq!(sys.entails(FinSubset(f), FinSubset(gg)), expect);
            }
        }
        // ∅ ⊨ {1} but not ∅ ⊨ {0}
        assert!(cond.c_interpolation && !cond.one_aux);
    }

    #[test]
    fn ordered_set_instance_is_cover() {
        // rounded and idempotent: 0 < everything, a < a, b < b
        let g = GroundSet::new(["0", "a", "b"]).unwrap();
        let lt = TransitiveRelation::new(g, |s, t| s == 0 || s == t).unwrap();
        assert!(lt.is_rounded() && lt.is_idempotent());
        let base = perp_cover(&lt).unwrap();
        let (sys, cond) = scott_cover_construct(&base, &lt).unwrap();
        assert!(cond.one_aux && cond.c_interpolation && cond.f_succ);
        assert_eq!(cond.promise, vec![Axiom::Entailment, Axiom::StrongIdempotent, Axiom::Cover]);
        assert!(sys.classification().is_cover);
    }

    #[test]
    fn strong_idempotent_that_is_not_a_cover() {
        // base: chain 0 ≤ 1; < = {(0,0), (0,1)}
        let g = GroundSet::indexed("s", 2).unwrap();
        let base = lattice_cover(&FiniteLattice::chain(g.clone()).unwrap()).unwrap();
        let lt = TransitiveRelation::from_pairs(g, &[(0, 0), (0, 1)]).unwrap();
        let (sys, cond) = scott_cover_construct(&base, &lt).unwrap();
        let c = sys.classification();
        assert!(c.is_strong_idempotent);
        assert!(!c.is_cover);
        assert!(!sys.entails(FinSubset(0b10), FinSubset(0b10)));
        assert!(!cond.f_succ);
        assert_eq!(cond.promise, vec![Axiom::Entailment, Axiom::StrongIdempotent]);
    }
}
