//! Finite convexities and the entailment `conv(F) ∩ conv(G) ≠ ∅`.

use crate::error::{Error, Result};
use crate::kernel::{FinSubset, GroundSet};
use crate::relations::CoverSystem;
use crate::Axiom;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convexity {
    elements: GroundSet,
    /// convex sets by ascending code
    convex: Vec<FinSubset>,
    /// `hull[T] = conv(T)` for every code `T`
    hull: Vec<FinSubset>,
}

impl Convexity {
    /// Checks that `∅` and the whole set are convex and that the family is
    /// closed under binary intersections.
    pub fn new(elements: GroundSet, sets: impl IntoIterator<Item = FinSubset>) -> Result<Self> {
        let n = elements.len();
        let mut member = vec![false; 1 << n];
        for c in sets {
            if !c.is_subset(FinSubset::full(n)) {
                return Err(Error::InvalidConvexity(format!("{c:?} is not a subset")));
            }
            member[c.code()] = true;
        }
        if !member[0] {
            return Err(Error::InvalidConvexity("∅ is not convex".into()));
        }
        if !member[FinSubset::full(n).code()] {
            return Err(Error::InvalidConvexity("the whole set is not convex".into()));
        }
        let convex: Vec<FinSubset> = (0..1u32 << n).map(FinSubset).filter(|c| member[c.code()]).collect();
        for &a in &convex {
            for &b in &convex {
                if !member[a.intersection(b).code()] {
                    return Err(Error::InvalidConvexity(format!(
                        "{} ∩ {} is not convex",
                        elements.format(a),
                        elements.format(b)
                    )));
                }
            }
        }
        Ok(Self::assemble(elements, member, convex))
    }

    /// The convexity generated by `sets`: their intersections together with
    /// `∅` and the whole set.
    pub fn generated(elements: GroundSet, sets: impl IntoIterator<Item = FinSubset>) -> Result<Self> {
        let n = elements.len();
        let full = FinSubset::full(n);
        let mut member = vec![false; 1 << n];
        member[0] = true;
        member[full.code()] = true;
        let mut list = vec![FinSubset(0), full];
        for c in sets {
            if !c.is_subset(full) {
                return Err(Error::InvalidConvexity(format!("{c:?} is not a subset")));
            }
            if !member[c.code()] {
                member[c.code()] = true;
                list.push(c);
            }
        }
        let mut i = 0;
        while i < list.len() {
            for j in 0..i {
                let m = list[i].intersection(list[j]);
                if !member[m.code()] {
                    member[m.code()] = true;
                    list.push(m);
                }
            }
            i += 1;
        }
        list.sort();
        Ok(Self::assemble(elements, member, list))
    }

    /// Every subset convex.
    pub fn discrete(elements: GroundSet) -> Self {
        let n = elements.len();
        let all = (0..1u32 << n).map(FinSubset).collect();
        Self::assemble(elements, vec![true; 1 << n], all)
    }

    fn assemble(elements: GroundSet, member: Vec<bool>, convex: Vec<FinSubset>) -> Self {
        let n = elements.len();
        let full = FinSubset::full(n);
        let mut hull: Vec<FinSubset> = (0..1u32 << n)
            .map(|c| if member[c as usize] { FinSubset(c) } else { full })
            .collect();
        // AND over supersets
        for i in 0..n {
            for c in 0..1usize << n {
                if c >> i & 1 == 0 {
                    hull[c] = hull[c].intersection(hull[c | 1 << i]);
                }
            }
        }
        Convexity {
            elements,
            convex,
            hull,
        }
    }

    pub fn elements(&self) -> &GroundSet {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn convex_sets(&self) -> &[FinSubset] {
        &self.convex
    }

    pub fn is_convex(&self, c: FinSubset) -> bool {
        self.hull[c.code()] == c
    }

    pub fn hull(&self, t: FinSubset) -> FinSubset {
        self.hull[t.code()]
    }

    /// Convex sets whose complement is convex.
    pub fn half_spaces(&self) -> Vec<FinSubset> {
        let full = FinSubset::full(self.len());
        self.convex
            .iter()
            .copied()
            .filter(|&h| self.is_convex(full.difference(h)))
            .collect()
    }

    /// Disjoint convex `C`, `D` that no half-space separates.
    pub fn kakutani_witness(&self) -> Option<(FinSubset, FinSubset)> {
        let full = FinSubset::full(self.len());
        let halves = self.half_spaces();
        for &c in &self.convex {
            for &d in &self.convex {
                if c.meets(d) {
                    continue;
                }
                if !halves
                    .iter()
                    .any(|&h| c.is_subset(h) && d.is_subset(full.difference(h)))
                {
                    return Some((c, d));
                }
            }
        }
        None
    }

    pub fn is_kakutani(&self) -> bool {
        self.kakutani_witness().is_none()
    }
}

/// `F ⊢ G ⟺ conv(F) ∩ conv(G) ≠ ∅`.
pub fn convexity_entailment(cx: &Convexity) -> Result<CoverSystem> {
    CoverSystem::from_fn(cx.elements().clone(), |f, g| cx.hull(f).meets(cx.hull(g)))
}

/// Monotone and 1-reflexive; a Scott relation exactly when Kakutani.
pub fn convexity_promise(cx: &Convexity) -> Vec<Axiom> {
    let mut p = vec![Axiom::Monotone, Axiom::OneReflexive];
    if cx.is_kakutani() {
        p.push(Axiom::Scott);
    }
    p
}
