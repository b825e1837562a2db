//! Small named systems with known classifications, and exhaustive
//! enumerators of small lattices, topologies and convexities.

use std::collections::BTreeSet;

use super::convexity::Convexity;
use super::lattice::{lattice_cover, FiniteLattice};
use super::topology::topology_cover;
use crate::error::Result;
use crate::kernel::{diagonal, Family, FinSubset, GroundSet};
use crate::relations::CoverSystem;
use crate::spectrum::space::{FiniteSpace, PointSet};
use crate::Axiom;

pub struct CatalogEntry {
    pub name: &'static str,
    pub system: CoverSystem,
    /// Axioms with their known truth values; not exhaustive.
    pub expected: Vec<(Axiom, bool)>,
}

/// The meet relation `F ⊢ G ⟺ F ∩ G ≠ ∅` on two points.
pub fn meet2() -> Result<CoverSystem> {
    let g = GroundSet::new(["s", "t"])?;
    CoverSystem::from_fn(g, |f, g| f.meets(g))
}

/// The diagonal relation on the nonempty subsets of `{s, t}`.
pub fn diagonal_entailment() -> Result<CoverSystem> {
    let g = GroundSet::new(["{s}", "{t}", "{s,t}"])?;
    // ground element i is the base subset with code i + 1
    let fam = |x: FinSubset| Family::from_subsets(2, x.iter().map(|i| FinSubset(i as u32 + 1)));
    let mut err = None;
    let sys = CoverSystem::from_fn(g, |f, h| match diagonal(&fam(f), &fam(h)) {
        Ok(b) => b,
        Err(e) => {
            err = Some(e);
            false
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(sys),
    }
}

pub fn boolean4_lattice() -> Result<FiniteLattice> {
    let g = GroundSet::new(["0", "a", "b", "1"])?;
    FiniteLattice::new(g, |p, q| p & !q == 0)
}

pub fn chain3_lattice() -> Result<FiniteLattice> {
    FiniteLattice::chain(GroundSet::new(["0", "m", "1"])?)
}

pub fn m3_lattice() -> Result<FiniteLattice> {
    let g = GroundSet::new(["0", "a", "b", "c", "1"])?;
    FiniteLattice::from_pairs(g, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
}

pub fn boolean4() -> Result<CoverSystem> {
    lattice_cover(&boolean4_lattice()?)
}

pub fn chain3() -> Result<CoverSystem> {
    lattice_cover(&chain3_lattice()?)
}

pub fn m3() -> Result<CoverSystem> {
    lattice_cover(&m3_lattice()?)
}

/// Points `0`, `1` with opens `∅`, `{1}`, `X`; subbasis `U = {1}`, `X`.
pub fn sierpinski_space() -> Result<FiniteSpace> {
    FiniteSpace::new(
        vec!["0".into(), "1".into()],
        vec![0b10, 0b11],
        vec!["U".into(), "X".into()],
    )
}

pub fn sierpinski() -> Result<CoverSystem> {
    topology_cover(&sierpinski_space()?)
}

pub fn canonical_small_systems() -> Result<Vec<CatalogEntry>> {
    use Axiom::*;
    Ok(vec![
        CatalogEntry {
            name: "meet2",
            system: meet2()?,
            expected: vec![(Scott, true), (Cover, true)],
        },
        CatalogEntry {
            name: "diagonal",
            system: diagonal_entailment()?,
            expected: vec![(Entailment, true), (OneReflexive, false), (Scott, false)],
        },
        CatalogEntry {
            name: "boolean4",
            system: boolean4()?,
            expected: vec![(Scott, true), (Cover, true)],
        },
        CatalogEntry {
            name: "chain3",
            system: chain3()?,
            expected: vec![(Scott, true), (Cover, true)],
        },
        CatalogEntry {
            name: "sierpinski",
            system: sierpinski()?,
            expected: vec![(Scott, true), (Cover, true)],
        },
        CatalogEntry {
            name: "m3",
            system: m3()?,
            expected: vec![(Monotone, true), (Cut, false)],
        },
    ])
}

/// Up-masks of `order` relabelled by `perm`.
fn relabel(up: &[u32], perm: &[usize]) -> Vec<u32> {
    let mut out = vec![0u32; up.len()];
    for (i, &m) in up.iter().enumerate() {
        out[perm[i]] = FinSubset(m).iter().fold(0, |acc, j| acc | 1 << perm[j]);
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// All lattices with `1..=max` elements up to isomorphism, elements named
/// `e0, e1, ...` in a linear extension of the order.
pub fn lattices_up_to(max: usize) -> Result<Vec<FiniteLattice>> {
    let mut out = Vec::new();
    for n in 1..=max {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        for code in 0u64..1 << pairs.len() {
            let mut up: Vec<u32> = (0..n).map(|i| 1 << i).collect();
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if code >> k & 1 == 1 {
                    up[i] |= 1 << j;
                }
            }
            // transitive as given
            if (0..n).any(|i| FinSubset(up[i]).iter().any(|j| up[j] & !up[i] != 0)) {
                continue;
            }
            let canon = perms.iter().map(|p| relabel(&up, p)).min().unwrap_or_default();
            if seen.contains(&canon) {
                continue;
            }
            let g = GroundSet::indexed("e", n)?;
            if let Ok(l) = FiniteLattice::new(g, |a, b| up[a] >> b & 1 == 1) {
                seen.insert(canon);
                out.push(l);
            }
        }
    }
    Ok(out)
}

/// Every topology on `n` labelled points, as families of open sets.
pub fn topologies(n: usize) -> Vec<Vec<PointSet>> {
    let full: PointSet = (1 << n) - 1;
    let middle: Vec<PointSet> = (1..full).collect();
    let mut out = Vec::new();
    for code in 0u64..1 << middle.len() {
        let mut opens = vec![0, full];
        opens.extend(middle.iter().enumerate().filter(|(k, _)| code >> k & 1 == 1).map(|(_, &o)| o));
        let member = |o: PointSet| opens.contains(&o);
        let closed = opens
            .iter()
            .all(|&a| opens.iter().all(|&b| member(a & b) && member(a | b)));
        if closed {
            opens.sort_unstable();
            out.push(opens);
        }
    }
    out
}

/// Every topology on `n` labelled points, with all nonempty opens as the
/// subbasis.
pub fn spaces(n: usize) -> Result<Vec<FiniteSpace>> {
    let points: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    topologies(n)
        .iter()
        .map(|opens| FiniteSpace::from_opens(points.clone(), opens))
        .collect()
}

/// Every convexity on `n` labelled points.
pub fn convexities(n: usize) -> Result<Vec<Convexity>> {
    let full = (1u32 << n) - 1;
    let middle: Vec<u32> = (1..full).collect();
    let mut out = Vec::new();
    for code in 0u64..1 << middle.len() {
        let mut sets = vec![0, full];
        sets.extend(middle.iter().enumerate().filter(|(k, _)| code >> k & 1 == 1).map(|(_, &c)| c));
        if sets.iter().all(|&a| sets.iter().all(|&b| sets.contains(&(a & b)))) {
            out.push(Convexity::new(GroundSet::indexed("x", n)?, sets.into_iter().map(FinSubset))?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_match_expectations() {
        for e in canonical_small_systems().unwrap() {
            let c = e.system.classification();
            for &(a, v) in &e.expected {
                assert_eq!(c.get(a), v, "{} {:?}", e.name, a);
            }
        }
    }

    #[test]
    fn enumerator_counts() {
        let all = lattices_up_to(5).unwrap();
        let sizes: Vec<usize> = (1..=5).map(|n| all.iter().filter(|l| l.len() == n).count()).collect();
        assert_eq!(sizes, vec![1, 1, 1, 2, 5]);
        let tops: Vec<usize> = (1..=4).map(|n| topologies(n).len()).collect();
        assert_eq!(tops, vec![1, 4, 29, 355]);
        // intersection-closed families containing ∅ and the whole set
        assert_eq!(convexities(2).unwrap().len(), 4);
    }
}
