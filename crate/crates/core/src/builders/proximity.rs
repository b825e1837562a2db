//! Proximity lattices: an idempotent `<` with a `<`-minimum whose derived
//! order `p ≤ q ⟺ p^> ⊆ q^>` is a lattice respected by `<`.

use super::lattice::{FiniteLattice, JoinSemilattice};
use super::order::TransitiveRelation;
use crate::error::{Error, Result};
use crate::kernel::{FinSubset, GroundSet};
use crate::relations::CoverSystem;
use crate::Axiom;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProximityLattice {
    lattice: FiniteLattice,
    lt: TransitiveRelation,
    vee_interpolative: bool,
}

impl ProximityLattice {
    pub fn new(elements: GroundSet, lt: impl Fn(usize, usize) -> bool) -> Result<Self> {
        Self::from_relation(TransitiveRelation::new(elements, lt)?)
    }

    pub fn from_pairs(elements: GroundSet, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::from_relation(TransitiveRelation::from_pairs(elements, pairs)?)
    }

    pub fn from_relation(lt: TransitiveRelation) -> Result<Self> {
        let n = lt.len();
        let names = lt.elements();
        if !lt.is_idempotent() {
            return Err(Error::InvalidOrder("< is not idempotent".into()));
        }
        if !(0..n).any(|z| lt.above(z) == FinSubset::full(n)) {
            return Err(Error::InvalidOrder("no element 0 with 0 < s for all s".into()));
        }
        let lattice = FiniteLattice::new(names.clone(), |p, q| lt.below(p).is_subset(lt.below(q)))?;
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    let leq_lt = lattice.leq(p, q) && lt.lt(q, r);
                    let lt_leq = lt.lt(p, q) && lattice.leq(q, r);
                    if (leq_lt || lt_leq) && !lt.lt(p, r) {
                        return Err(Error::InvalidOrder(format!(
                            "≤ and < are not compatible at {}, {}, {}",
                            names.name(p),
                            names.name(q),
                            names.name(r)
                        )));
                    }
                }
            }
        }
        for p in 0..n {
            for q in lt.above(p).iter() {
                for r in 0..n {
                    for s in lt.above(r).iter() {
                        if !lt.lt(lattice.meet(p, r), lattice.meet(q, s))
                            || !lt.lt(lattice.join(p, r), lattice.join(q, s))
                        {
                            return Err(Error::InvalidOrder(format!(
                                "< does not respect the lattice operations at {} < {}, {} < {}",
                                names.name(p),
                                names.name(q),
                                names.name(r),
                                names.name(s)
                            )));
                        }
                    }
                }
            }
        }
        let vee_interpolative = (0..n).all(|p| {
            (0..n).all(|q| {
                (0..n).all(|r| {
                    !lt.lt(p, lattice.join(q, r))
                        || lt.below(q).iter().any(|s| {
                            lt.below(r).iter().any(|t| lt.lt(p, lattice.join(s, t)))
                        })
                })
            })
        });
        Ok(ProximityLattice {
            lattice,
            lt,
            vee_interpolative,
        })
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn relation(&self) -> &TransitiveRelation {
        &self.lt
    }

    pub fn elements(&self) -> &GroundSet {
        self.lattice.elements()
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `p < q ∨ r ⟹ ∃s < q ∃t < r: p < s ∨ t`.
    pub fn is_vee_interpolative(&self) -> bool {
        self.vee_interpolative
    }

    /// The underlying `∨`-semilattice and `<`, as used by the Scott
    /// construction.
    pub fn as_predomain(&self) -> (JoinSemilattice, TransitiveRelation) {
        (self.lattice.as_semilattice(), self.lt.clone())
    }

    fn is_rounded_filter(&self, t: FinSubset) -> bool {
        let l = &self.lattice;
        !t.is_empty()
            && t.iter().all(|a| l.up(a).is_subset(t))
            && t.iter().all(|a| t.iter().all(|b| t.contains(l.meet(a, b))))
            && t.iter().all(|a| self.lt.below(a).meets(t))
    }

    /// Nonempty, upward closed, meet-closed, rounded (`T ⊆ T^<`) and
    /// `T ∋ t ≤ ⋁F, F ⊆ G^> ⟹ T ∩ G ≠ ∅`.
    pub fn is_rounded_proximal_filter(&self, t: FinSubset) -> bool {
        if !self.is_rounded_filter(t) {
            return false;
        }
        let n = self.len();
        (0..1u32 << n).map(FinSubset).all(|g| {
            if g.meets(t) {
                return true;
            }
            // the largest admissible F is G^> itself
            let j = self.lattice.join_of(self.lt.below_any(g));
            !t.iter().any(|x| self.lattice.leq(x, j))
        })
    }

    /// Nonempty, upward closed, meet-closed, rounded and
    /// `⋁F ∈ T ⟹ F ∩ T ≠ ∅`.
    pub fn is_rounded_prime_filter(&self, t: FinSubset) -> bool {
        self.is_rounded_filter(t)
            && (0..1u32 << self.len())
                .map(FinSubset)
                .all(|f| !t.contains(self.lattice.join_of(f)) || f.meets(t))
    }
}

/// `F ⊢ G ⟺ ∃H ⊆ G^>: ⋀F ≤ ⋁H`. Since `⋁` is monotone the best `H` is
/// `G^>` itself.
pub fn proximity_cover(pl: &ProximityLattice) -> Result<CoverSystem> {
    let n = pl.len();
    let l = pl.lattice();
    let meets: Vec<Option<usize>> = (0..1u32 << n).map(|f| l.meet_of(FinSubset(f))).collect();
    let joins: Vec<usize> = (0..1u32 << n)
        .map(|g| l.join_of(pl.relation().below_any(FinSubset(g))))
        .collect();
    CoverSystem::from_fn(pl.elements().clone(), |f, g| {
        meets[f.code()].is_some_and(|m| l.leq(m, joins[g.code()]))
    })
}

/// Monotone and 1-reflexive; a cover when the derived lattice is
/// distributive.
pub fn proximity_promise(pl: &ProximityLattice) -> Vec<Axiom> {
    let mut p = vec![Axiom::Monotone, Axiom::OneReflexive];
    if pl.lattice().is_distributive() {
        p.extend([Axiom::StrongIdempotent, Axiom::Cover]);
    }
    p
}
