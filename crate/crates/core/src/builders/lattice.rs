//! Finite lattices and join-semilattices, with their canonical covers
//! `⋀F ≤ ⋁G` and the quantified `∨`-cover.

use super::order::{check_partial_order, preorder_closure, transpose_masks, up_masks};
use crate::error::{Error, Result};
use crate::kernel::{FinSubset, GroundSet};
use crate::relations::{CoverSystem, Relation};
use crate::Axiom;

/// The greatest element of the mask `lower` in the order given by `down`,
/// if it exists.
fn greatest(lower: u32, down: &[u32]) -> Option<usize> {
    FinSubset(lower).iter().find(|&k| down[k] & lower == lower)
}

fn least(upper: u32, up: &[u32]) -> Option<usize> {
    FinSubset(upper).iter().find(|&k| up[k] & upper == upper)
}

fn join_table(elements: &GroundSet, up: &[u32]) -> Result<Vec<usize>> {
    let n = up.len();
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            join[a * n + b] = least(up[a] & up[b], up).ok_or_else(|| {
                Error::InvalidLattice(format!(
                    "{} and {} have no join",
                    elements.name(a),
                    elements.name(b)
                ))
            })?;
        }
    }
    Ok(join)
}

/// A finite lattice. `top` is always present for a nonempty finite lattice;
/// it is kept optional because the cover convention for `⋀∅` refers to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    elements: GroundSet,
    up: Vec<u32>,
    down: Vec<u32>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: Option<usize>,
}

impl FiniteLattice {
    pub fn new(elements: GroundSet, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let up = up_masks(elements.len(), leq);
        Self::from_up(elements, up)
    }

    /// The order generated by `pairs` (reflexive-transitive closure), e.g. a
    /// Hasse diagram.
    pub fn from_pairs(elements: GroundSet, pairs: &[(usize, usize)]) -> Result<Self> {
        let up = preorder_closure(elements.len(), pairs)?;
        Self::from_up(elements, up)
    }

    fn from_up(elements: GroundSet, up: Vec<u32>) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::InvalidLattice("no elements".into()));
        }
        check_partial_order(&up)?;
        let down = transpose_masks(&up);
        let join = join_table(&elements, &up)?;
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                meet[a * n + b] = greatest(down[a] & down[b], &down).ok_or_else(|| {
                    Error::InvalidLattice(format!(
                        "{} and {} have no meet",
                        elements.name(a),
                        elements.name(b)
                    ))
                })?;
            }
        }
        let all = FinSubset::full(n).0;
        let bottom = least(all, &up).ok_or_else(|| Error::InvalidLattice("no bottom".into()))?;
        let top = greatest(all, &down);
        Ok(FiniteLattice {
            elements,
            up,
            down,
            meet,
            join,
            bottom,
            top,
        })
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(elements: GroundSet) -> Result<Self> {
        Self::new(elements, |a, b| a <= b)
    }

    /// The powerset of a `k`-element set ordered by inclusion, labelled by
    /// the codes' letters (`0` for the empty set).
    pub fn boolean(k: usize) -> Result<Self> {
        let names = (0..1u32 << k).map(|c| {
            if c == 0 {
                "0".to_string()
            } else {
                FinSubset(c).iter().map(|i| (b'a' + i as u8) as char).collect()
            }
        });
        Self::new(GroundSet::new(names)?, |a, b| a & !b == 0)
    }

    pub fn elements(&self) -> &GroundSet {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a] >> b & 1 == 1
    }

    /// `{b : a ≤ b}`.
    pub fn up(&self, a: usize) -> FinSubset {
        FinSubset(self.up[a])
    }

    /// `{b : b ≤ a}`.
    pub fn down(&self, a: usize) -> FinSubset {
        FinSubset(self.down[a])
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    /// `⋀F`, with `⋀∅` the top when there is one.
    pub fn meet_of(&self, f: FinSubset) -> Option<usize> {
        let mut it = f.iter();
        match it.next() {
            None => self.top,
            Some(first) => Some(it.fold(first, |m, x| self.meet(m, x))),
        }
    }

    /// `⋁G`, with `⋁∅ = 0`.
    pub fn join_of(&self, g: FinSubset) -> usize {
        g.iter().fold(self.bottom, |m, x| self.join(m, x))
    }

    /// `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)` for all triples.
    pub fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    /// Prime filter: nonempty, upward closed, closed under binary meets,
    /// `0 ∉ T` and `a ∨ b ∈ T ⟹ a ∈ T or b ∈ T`.
    pub fn is_prime_filter(&self, t: FinSubset) -> bool {
        if t.is_empty() || t.contains(self.bottom) {
            return false;
        }
        t.iter().all(|a| self.up(a).is_subset(t))
            && t.iter().all(|a| t.iter().all(|b| t.contains(self.meet(a, b))))
            && (0..self.len()).all(|a| {
                (0..self.len()).all(|b| {
                    !t.contains(self.join(a, b)) || t.contains(a) || t.contains(b)
                })
            })
    }

    pub fn as_semilattice(&self) -> JoinSemilattice {
        JoinSemilattice {
            elements: self.elements.clone(),
            up: self.up.clone(),
            down: self.down.clone(),
            join: self.join.clone(),
            bottom: self.bottom,
        }
    }
}

/// `F ⊢ G ⟺ ⋀F ≤ ⋁G`; with no top, `∅ ⊬ G` for every `G`.
pub fn lattice_cover(lat: &FiniteLattice) -> Result<CoverSystem> {
    let n = lat.len();
    let meets: Vec<Option<usize>> = (0..1u32 << n).map(|f| lat.meet_of(FinSubset(f))).collect();
    let joins: Vec<usize> = (0..1u32 << n).map(|g| lat.join_of(FinSubset(g))).collect();
    CoverSystem::from_fn(lat.elements().clone(), |f, g| {
        meets[f.code()].is_some_and(|m| lat.leq(m, joins[g.code()]))
    })
}

/// Always monotone and 1-reflexive; a Scott (hence cover) relation when the
/// lattice is distributive.
pub fn lattice_promise(lat: &FiniteLattice) -> Vec<Axiom> {
    let mut p = vec![Axiom::Monotone, Axiom::OneReflexive];
    if lat.is_distributive() {
        p.extend([Axiom::Scott, Axiom::Cover]);
    }
    p
}

/// A finite join-semilattice with least element `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinSemilattice {
    elements: GroundSet,
    up: Vec<u32>,
    down: Vec<u32>,
    join: Vec<usize>,
    bottom: usize,
}

impl JoinSemilattice {
    pub fn new(elements: GroundSet, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let up = up_masks(elements.len(), leq);
        Self::from_up(elements, up)
    }

    pub fn from_pairs(elements: GroundSet, pairs: &[(usize, usize)]) -> Result<Self> {
        let up = preorder_closure(elements.len(), pairs)?;
        Self::from_up(elements, up)
    }

    fn from_up(elements: GroundSet, up: Vec<u32>) -> Result<Self> {
        let n = elements.len();
        check_partial_order(&up)?;
        let bottom = least(FinSubset::full(n).0, &up)
            .ok_or_else(|| Error::InvalidLattice("missing least element 0".into()))?;
        let down = transpose_masks(&up);
        let join = join_table(&elements, &up)?;
        Ok(JoinSemilattice {
            elements,
            up,
            down,
            join,
            bottom,
        })
    }

    pub fn elements(&self) -> &GroundSet {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a] >> b & 1 == 1
    }

    pub fn down(&self, a: usize) -> FinSubset {
        FinSubset(self.down[a])
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn join_of(&self, g: FinSubset) -> usize {
        g.iter().fold(self.bottom, |m, x| self.join(m, x))
    }

    /// `F_≥`: the common lower bounds of `F`, everything for `F = ∅`.
    pub fn lower_bounds(&self, f: FinSubset) -> FinSubset {
        FinSubset(f.iter().fold(FinSubset::full(self.len()).0, |m, x| m & self.down[x]))
    }

    /// A triple with `a ≤ b ∨ c` but no `b' ≤ b`, `c' ≤ c` with
    /// `a = b' ∨ c'`.
    pub fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !self.leq(a, self.join(b, c)) {
                        continue;
                    }
                    let split = self
                        .down(b)
                        .iter()
                        .any(|b2| self.down(c).iter().any(|c2| self.join(b2, c2) == a));
                    if !split {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }
}

/// `F ⊢ G ⟺ ∀p,q (∀f ∈ F: p ≤ f ∨ q) ⟹ p ≤ ⋁G ∨ q`.
pub fn semilattice_cover(sl: &JoinSemilattice) -> Result<CoverSystem> {
    let n = sl.len();
    // ok[F][j]: the quantified condition with ⋁G = j
    let mut ok = vec![0u32; 1 << n];
    // hyp[q] for the current F: {p : ∀f ∈ F, p ≤ f ∨ q}
    let mut hyp = vec![vec![FinSubset::full(n).0; n]; 1 << n];
    for fc in 1usize..1 << n {
        let low = fc.trailing_zeros() as usize;
        let prev = fc & (fc - 1);
        for q in 0..n {
            hyp[fc][q] = hyp[prev][q] & sl.down(sl.join(low, q)).0;
        }
    }
    for (fc, h) in hyp.iter().enumerate() {
        for j in 0..n {
            if (0..n).all(|q| h[q] & !sl.down(sl.join(j, q)).0 == 0) {
                ok[fc] |= 1 << j;
            }
        }
    }
    let joins: Vec<usize> = (0..1u32 << n).map(|g| sl.join_of(FinSubset(g))).collect();
    CoverSystem::from_fn(sl.elements().clone(), |f, g| {
        ok[f.code()] >> joins[g.code()] & 1 == 1
    })
}

/// The distributive reduction `F_≥ ≤ ⋁G`.
pub fn semilattice_reduction(sl: &JoinSemilattice) -> Result<Relation> {
    let n = sl.len();
    Relation::from_fn(n, n, |f, g| {
        sl.lower_bounds(f).is_subset(sl.down(sl.join_of(g)))
    })
}

pub fn semilattice_promise(_sl: &JoinSemilattice) -> Vec<Axiom> {
    vec![Axiom::Scott, Axiom::Cover]
}
