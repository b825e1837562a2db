//! Order-theoretic inputs: partial orders given by up-set masks, transitive
//! relations and the `⊥`-cover of a transitive relation.

use crate::error::{Error, Result};
use crate::kernel::{FinSubset, GroundSet};
use crate::relations::CoverSystem;
use crate::Axiom;

/// Reflexive-transitive closure of `pairs` over `n` elements, as up-set
/// masks: bit `j` of `up[i]` is set iff `i ≤ j`.
pub(crate) fn preorder_closure(n: usize, pairs: &[(usize, usize)]) -> Result<Vec<u32>> {
    let mut up: Vec<u32> = (0..n).map(|i| 1 << i).collect();
    for &(a, b) in pairs {
        if a >= n || b >= n {
            return Err(Error::InvalidOrder(format!("pair ({a}, {b}) out of range")));
        }
        up[a] |= 1 << b;
    }
    // Warshall on masks
    for k in 0..n {
        for i in 0..n {
            if up[i] >> k & 1 == 1 {
                up[i] |= up[k];
            }
        }
    }
    Ok(up)
}

pub(crate) fn up_masks(n: usize, leq: impl Fn(usize, usize) -> bool) -> Vec<u32> {
    (0..n)
        .map(|i| (0..n).filter(|&j| leq(i, j)).fold(0, |m, j| m | 1 << j))
        .collect()
}

pub(crate) fn transpose_masks(m: &[u32]) -> Vec<u32> {
    let n = m.len();
    (0..n)
        .map(|j| (0..n).filter(|&i| m[i] >> j & 1 == 1).fold(0, |acc, i| acc | 1 << i))
        .collect()
}

pub(crate) fn check_partial_order(up: &[u32]) -> Result<()> {
    let n = up.len();
    for i in 0..n {
        if up[i] >> i & 1 == 0 {
            return Err(Error::InvalidOrder(format!("not reflexive at {i}")));
        }
        for j in 0..n {
            if up[i] >> j & 1 == 1 {
                if up[j] & !up[i] != 0 {
                    return Err(Error::InvalidOrder(format!("not transitive through {i} ≤ {j}")));
                }
                if i != j && up[j] >> i & 1 == 1 {
                    return Err(Error::InvalidOrder(format!("{i} and {j} are not antisymmetric")));
                }
            }
        }
    }
    Ok(())
}

/// A transitive relation `<` on a finite set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitiveRelation {
    elements: GroundSet,
    /// `below[s] = s^> = {t : t < s}`
    below: Vec<u32>,
    /// `above[s] = s^< = {t : s < t}`
    above: Vec<u32>,
    rounded: bool,
}

impl TransitiveRelation {
    pub fn new(elements: GroundSet, lt: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = elements.len();
        let above = up_masks(n, &lt);
        Self::from_above(elements, above)
    }

    /// `pairs` lists `(s, t)` with `s < t`; no closure is taken.
    pub fn from_pairs(elements: GroundSet, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        let mut above = vec![0u32; n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidOrder(format!("pair ({a}, {b}) out of range")));
            }
            above[a] |= 1 << b;
        }
        Self::from_above(elements, above)
    }

    fn from_above(elements: GroundSet, above: Vec<u32>) -> Result<Self> {
        let n = elements.len();
        for s in 0..n {
            for t in FinSubset(above[s]).iter() {
                if above[t] & !above[s] != 0 {
                    return Err(Error::InvalidOrder(format!(
                        "not transitive: {} < {} but {}^< ⊄ {}^<",
                        elements.name(s),
                        elements.name(t),
                        elements.name(t),
                        elements.name(s)
                    )));
                }
            }
        }
        let below = transpose_masks(&above);
        let rounded = below.iter().all(|&b| b != 0);
        Ok(TransitiveRelation {
            elements,
            below,
            above,
            rounded,
        })
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

    pub fn lt(&self, s: usize, t: usize) -> bool {
        self.above[s] >> t & 1 == 1
    }

    /// `s^> = {t : t < s}`.
    pub fn below(&self, s: usize) -> FinSubset {
        FinSubset(self.below[s])
    }

    /// `s^< = {t : s < t}`.
    pub fn above(&self, s: usize) -> FinSubset {
        FinSubset(self.above[s])
    }

    /// `Q^> = ⋃_{q ∈ Q} q^>`.
    pub fn below_any(&self, q: FinSubset) -> FinSubset {
        FinSubset(q.iter().fold(0, |m, s| m | self.below[s]))
    }

    /// `F_> = ⋂_{f ∈ F} f^>`, the whole set for `F = ∅`.
    pub fn below_all(&self, f: FinSubset) -> FinSubset {
        FinSubset(f.iter().fold(FinSubset::full(self.len()).0, |m, s| m & self.below[s]))
    }

    /// Every element has something below it.
    pub fn is_rounded(&self) -> bool {
        self.rounded
    }

    /// `< ⊆ <∘<` (the reverse inclusion is transitivity).
    pub fn is_idempotent(&self) -> bool {
        (0..self.len()).all(|s| {
            self.above(s)
                .iter()
                .all(|t| self.above(s).iter().any(|u| self.lt(u, t)))
        })
    }

    /// `Q_⊥ = {s : s^> ∩ Q^> = ∅}`.
    pub fn perp_of(&self, q: FinSubset) -> FinSubset {
        let qb = self.below_any(q).0;
        FinSubset::from_indices((0..self.len()).filter(|&s| self.below[s] & qb == 0))
    }
}

/// `F ⊢ G ⟺ F_> ∩ G_⊥ = ∅`.
pub fn perp_cover(tr: &TransitiveRelation) -> Result<CoverSystem> {
    let n = tr.len();
    let lows: Vec<FinSubset> = (0..1u32 << n).map(|f| tr.below_all(FinSubset(f))).collect();
    let perps: Vec<FinSubset> = (0..1u32 << n).map(|g| tr.perp_of(FinSubset(g))).collect();
    CoverSystem::from_fn(tr.elements().clone(), |f, g| {
        !lows[f.code()].meets(perps[g.code()])
    })
}

/// Always an entailment; a Scott relation when the input is rounded.
pub fn perp_promise(tr: &TransitiveRelation) -> Vec<Axiom> {
    if tr.is_rounded() {
        vec![Axiom::Entailment, Axiom::Scott]
    } else {
        vec![Axiom::Entailment]
    }
}
