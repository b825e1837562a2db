//! Finite topological spaces given by a subbasis.
//!
//! Point sets are `u64` masks, so a space has at most 64 points. Every
//! finite space is Alexandroff: the topology is determined by the minimal
//! neighbourhoods `U_x`, the intersection of the subbasic sets containing
//! `x`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

pub type PointSet = u64;

pub const MAX_POINTS: usize = 64;
/// Limit on explicit enumeration of open sets.
pub const DEFAULT_OPEN_CAP: usize = 1 << 16;
/// Above this many subbasic sets the definitional `⋐` test is replaced by
/// the equivalent pointwise one.
pub const DEFINITIONAL_SUBBASIS_MAX: usize = 16;

pub(crate) fn bits(mut m: PointSet) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub(crate) fn full_mask(n: usize) -> PointSet {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteSpace {
    points: Vec<String>,
    subbasis: Vec<PointSet>,
    subbasis_names: Vec<String>,
    #[serde(skip)]
    nbhd: Vec<PointSet>,
}

impl FiniteSpace {
    /// The topology generated by `subbasis`, with `⋂∅ = X` open, so a point
    /// in no subbasic set has `X` as its only neighbourhood. Duplicate
    /// members are allowed (a subbasis is an indexed family).
    pub fn new(points: Vec<String>, subbasis: Vec<PointSet>, names: Vec<String>) -> Result<Self> {
        let n = points.len();
        if n > MAX_POINTS {
            return Err(Error::CapExceeded {
                what: "space points",
                size: n,
                cap: MAX_POINTS,
            });
        }
        if names.len() != subbasis.len() {
            return Err(Error::InvalidTopology(format!(
                "{} subbasis names for {} subbasic sets",
                names.len(),
                subbasis.len()
            )));
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::DuplicateLabel(p.clone()));
            }
        }
        let full = full_mask(n);
        if let Some(p) = subbasis.iter().find(|&&p| p & !full != 0) {
            return Err(Error::InvalidTopology(format!("subbasic set {p:#x} has stray points")));
        }
        let nbhd = (0..n)
            .map(|x| {
                subbasis
                    .iter()
                    .filter(|&&p| p >> x & 1 == 1)
                    .fold(full, |m, &p| m & p)
            })
            .collect();
        Ok(FiniteSpace {
            points,
            subbasis,
            subbasis_names: names,
            nbhd,
        })
    }

    /// Like [`FiniteSpace::new`], and checks that `opens` is exactly the
    /// generated topology.
    pub fn with_opens(
        points: Vec<String>,
        opens: &[PointSet],
        subbasis: Vec<PointSet>,
        names: Vec<String>,
    ) -> Result<Self> {
        let sp = Self::new(points, subbasis, names)?;
        let mut given: Vec<PointSet> = opens.to_vec();
        given.sort_unstable();
        given.dedup();
        let generated = sp.opens()?;
        if given != generated {
            let bad = given
                .iter()
                .find(|o| !generated.contains(o))
                .or_else(|| generated.iter().find(|o| !given.contains(o)))
                .copied()
                .unwrap_or(0);
            return Err(Error::InvalidTopology(format!(
                "listed opens differ from the generated topology at {}",
                sp.format(bad)
            )));
        }
        Ok(sp)
    }

    /// The space whose subbasis is every nonempty open set of `opens`;
    /// `opens` must already be a topology.
    pub fn from_opens(points: Vec<String>, opens: &[PointSet]) -> Result<Self> {
        let n = points.len();
        let mut sub: Vec<PointSet> = opens.iter().copied().filter(|&o| o != 0).collect();
        sub.sort_unstable();
        sub.dedup();
        if n == 0 {
            sub.clear();
        }
        let names: Vec<String> = {
            let fmt = |o: PointSet| {
                let inner: Vec<&str> = bits(o).map(|x| points[x].as_str()).collect();
                format!("{{{}}}", inner.join(","))
            };
            sub.iter().map(|&o| fmt(o)).collect()
        };
        Self::with_opens(points, opens, sub, names)
    }

    pub fn discrete(points: Vec<String>) -> Result<Self> {
        let sub: Vec<PointSet> = (0..points.len()).map(|x| 1u64 << x).collect();
        let names = points.iter().map(|p| format!("{{{p}}}")).collect();
        Self::new(points, sub, names)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn subbasis(&self) -> &[PointSet] {
        &self.subbasis
    }

    pub fn subbasis_names(&self) -> &[String] {
        &self.subbasis_names
    }

    pub fn full(&self) -> PointSet {
        full_mask(self.len())
    }

    /// `U_x`, the smallest open set containing `x`.
    pub fn nbhd(&self, x: usize) -> PointSet {
        self.nbhd[x]
    }

    pub fn format(&self, s: PointSet) -> String {
        let inner: Vec<&str> = bits(s).map(|x| self.points[x].as_str()).collect();
        format!("{{{}}}", inner.join(", "))
    }

    pub fn is_open(&self, a: PointSet) -> bool {
        a & !self.full() == 0 && bits(a).all(|x| self.nbhd[x] & !a == 0)
    }

    pub fn interior(&self, a: PointSet) -> PointSet {
        bits(a).filter(|&x| self.nbhd[x] & !a == 0).fold(0, |m, x| m | 1 << x)
    }

    /// `{x : every open set around x meets A}`.
    pub fn closure(&self, a: PointSet) -> PointSet {
        (0..self.len()).filter(|&x| self.nbhd[x] & a != 0).fold(0, |m, x| m | 1 << x)
    }

    /// All open sets in ascending order, or an error past `cap`.
    pub fn opens_capped(&self, cap: usize) -> Result<Vec<PointSet>> {
        let mut seen = std::collections::BTreeSet::from([0u64]);
        let mut frontier = vec![0u64];
        while let Some(o) = frontier.pop() {
            for x in 0..self.len() {
                let u = o | self.nbhd[x];
                if seen.insert(u) {
                    if seen.len() > cap {
                        return Err(Error::CapExceeded {
                            what: "open sets",
                            size: seen.len(),
                            cap,
                        });
                    }
                    frontier.push(u);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    pub fn opens(&self) -> Result<Vec<PointSet>> {
        self.opens_capped(DEFAULT_OPEN_CAP)
    }

    /// `x → y ⟺ every subbasic set containing y contains x`.
    pub fn specializes(&self, x: usize, y: usize) -> bool {
        self.nbhd[y] >> x & 1 == 1
    }

    /// `sat(Y) = {x : ∃y ∈ Y, x → y}`, the intersection of the opens
    /// containing `Y`.
    pub fn saturation(&self, y: PointSet) -> PointSet {
        bits(y).fold(0, |m, p| m | self.nbhd[p])
    }

    /// The smallest patch-open set containing `x`: `U_x ∩ cl{x}`. Saturated
    /// sets of a finite space are its opens, so the patch topology is
    /// generated by the opens and the closed sets.
    pub fn patch_nbhd(&self, x: usize) -> PointSet {
        self.nbhd[x] & self.closure(1 << x)
    }

    pub fn patch_closure(&self, y: PointSet) -> PointSet {
        (0..self.len())
            .filter(|&x| self.patch_nbhd(x) & y != 0)
            .fold(0, |m, x| m | 1 << x)
    }

    /// `X = sat(D) = cl_□(D)`.
    pub fn is_very_dense(&self, d: PointSet) -> bool {
        self.saturation(d) == self.full() && self.patch_closure(d) == self.full()
    }

    /// Points outside of which the subbasic sets fail to cover `n`:
    /// `O ⋐ N ⟺ O ⊆ K(N)`.
    pub(crate) fn compact_core(&self, n: PointSet) -> PointSet {
        (0..self.len())
            .filter(|&x| {
                let avoid = self
                    .subbasis
                    .iter()
                    .filter(|&&p| p >> x & 1 == 0)
                    .fold(0, |m, &p| m | p);
                n & !avoid != 0
            })
            .fold(0, |m, x| m | 1 << x)
    }

    /// `O ⋐ N`: every subbasic cover of `N` has a finite subfamily covering
    /// `O`. Both arguments must be open.
    pub fn compact_contained(&self, o: PointSet, n: PointSet) -> Result<bool> {
        for a in [o, n] {
            if !self.is_open(a) {
                return Err(Error::Precondition(format!("{} is not open", self.format(a))));
            }
        }
        if self.subbasis.len() <= DEFINITIONAL_SUBBASIS_MAX {
            Ok(self.compact_contained_by_covers(o, n))
        } else {
            Ok(o & !self.compact_core(n) == 0)
        }
    }

    /// The definition, over all subfamilies of the subbasis. Families are
    /// finite, so a cover is its own finite subcover.
    pub fn compact_contained_by_covers(&self, o: PointSet, n: PointSet) -> bool {
        let k = self.subbasis.len();
        (0..1u64 << k).all(|c| {
            let u = bits(c).fold(0, |m, i| m | self.subbasis[i]);
            n & !u != 0 || o & !u == 0
        })
    }

    pub fn compact_contained_pointwise(&self, o: PointSet, n: PointSet) -> bool {
        o & !self.compact_core(n) == 0
    }

    /// Specialization order as a digraph, an edge `x -> y` for each cover
    /// `x → y` of the reflexive-transitive reduction.
    pub fn specialization_dot(&self) -> String {
        let n = self.len();
        let mut s = String::from("digraph specialization {\n  rankdir=BT;\n");
        for (i, p) in self.points.iter().enumerate() {
            let _ = writeln!(s, "  p{i} [label=\"{}\"];", escape(p));
        }
        let strict = |x: usize, y: usize| x != y && self.specializes(x, y) && !self.specializes(y, x);
        for x in 0..n {
            for y in 0..n {
                let covered = strict(x, y) && !(0..n).any(|z| strict(x, z) && strict(z, y));
                // equivalent points of a non-T0 space get a two-way edge
                let twin = x < y && self.specializes(x, y) && self.specializes(y, x);
                if covered {
                    let _ = writeln!(s, "  p{x} -> p{y};");
                } else if twin {
                    let _ = writeln!(s, "  p{x} -> p{y} [dir=both];");
                }
            }
        }
        s.push_str("}\n");
        s
    }

    /// Hasse diagram of the open-set lattice, bottom to top.
    pub fn opens_dot(&self) -> Result<String> {
        let opens = self.opens()?;
        let mut s = String::from("digraph opens {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, &o) in opens.iter().enumerate() {
            let _ = writeln!(s, "  o{i} [label=\"{}\"];", escape(&self.format(o)));
        }
        let below = |a: PointSet, b: PointSet| a != b && a & !b == 0;
        for (i, &a) in opens.iter().enumerate() {
            for (j, &b) in opens.iter().enumerate() {
                if below(a, b) && !opens.iter().any(|&c| below(a, c) && below(c, b)) {
                    let _ = writeln!(s, "  o{i} -> o{j};");
                }
            }
        }
        s.push_str("}\n");
        Ok(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceProperties {
    pub t0: bool,
    pub sober: bool,
    pub core_compact: bool,
    pub core_coherent: bool,
    pub stably_locally_compact: bool,
}

/// Literal checks; needs the open sets to be enumerable.
pub fn space_properties(space: &FiniteSpace) -> Result<SpaceProperties> {
    let n = space.len();
    let t0 = (0..n).all(|x| (0..x).all(|y| space.nbhd(x) != space.nbhd(y)));
    let opens = space.opens()?;
    let full = space.full();
    let sober = opens.iter().all(|&o| {
        let c = full & !o;
        if c == 0 {
            return true;
        }
        let irreducible =
            bits(c).all(|x| bits(c).all(|y| space.nbhd(x) & space.nbhd(y) & c != 0));
        if !irreducible {
            return true;
        }
        let generic = bits(c).filter(|&x| space.closure(1 << x) == c).count();
        generic == 1
    });
    let core: Vec<PointSet> = opens.iter().map(|&o| space.compact_core(o)).collect();
    let core_compact = opens
        .iter()
        .zip(&core)
        .all(|(&o, &k)| o & !space.interior(k) == 0);
    let index = |o: PointSet| opens.binary_search(&o).expect("open");
    let core_coherent = (0..opens.len()).all(|i| {
        (0..opens.len()).all(|j| {
            let lhs = space.interior(core[i] & core[j]);
            lhs & !core[index(opens[i] & opens[j])] == 0
        })
    });
    Ok(SpaceProperties {
        t0,
        sober,
        core_compact,
        core_coherent,
        stably_locally_compact: t0 && sober && core_compact && core_coherent,
    })
}

/// A bijection `f` with `x → y ⟺ f(x) → f(y)`; for finite spaces this is
/// a homeomorphism, and the result is certified on minimal neighbourhoods.
pub fn homeomorphism(a: &FiniteSpace, b: &FiniteSpace) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    let deg = |s: &FiniteSpace, x: usize| (s.nbhd(x).count_ones(), s.closure(1 << x).count_ones());
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        x: usize,
        a: &FiniteSpace,
        b: &FiniteSpace,
        map: &mut [usize],
        used: &mut [bool],
        deg: &dyn Fn(&FiniteSpace, usize) -> (u32, u32),
    ) -> bool {
        if x == a.len() {
            return true;
        }
        for y in 0..b.len() {
            if used[y] || deg(a, x) != deg(b, y) {
                continue;
            }
            let ok = (0..x).all(|z| {
                a.specializes(x, z) == b.specializes(y, map[z])
                    && a.specializes(z, x) == b.specializes(map[z], y)
            });
            if ok {
                map[x] = y;
                used[y] = true;
                if go(x + 1, a, b, map, used, deg) {
                    return true;
                }
                used[y] = false;
            }
        }
        false
    }
    if !go(0, a, b, &mut map, &mut used, &deg) {
        return None;
    }
    let image = |s: PointSet| bits(s).fold(0u64, |m, x| m | 1 << map[x]);
    let certified = (0..n).all(|x| image(a.nbhd(x)) == b.nbhd(map[x]));
    certified.then_some(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(k: usize) -> Vec<String> {
        (0..k).map(|i| format!("x{i}")).collect()
    }

    pub(crate) fn sierpinski() -> FiniteSpace {
        // opens ∅, {x1}, X
        FiniteSpace::new(names(2), vec![0b10, 0b11], vec!["{x1}".into(), "X".into()]).unwrap()
    }

    #[test]
    fn dot_exports() {
        let s = sierpinski();
        let spec = s.specialization_dot();
        assert_eq!(spec.matches("->").count(), 1);
        assert!(spec.contains("p1 -> p0;"));
        let opens = s.opens_dot().unwrap();
        // a three-element chain
        assert_eq!(opens.matches("->").count(), 2);
        let indiscrete = FiniteSpace::new(names(2), vec![], vec![]).unwrap();
        assert!(indiscrete.specialization_dot().contains("[dir=both]"));
    }

    #[test]
    fn validation() {
        assert!(matches!(
            FiniteSpace::new(names(2), vec![0b100], vec!["a".into()]),
            Err(Error::InvalidTopology(_))
        ));
        // x1 lies in no subbasic set, so only X contains it
        let s = FiniteSpace::new(names(2), vec![0b01], vec!["a".into()]).unwrap();
        assert_eq!(s.nbhd(1), 0b11);
        assert_eq!(s.opens().unwrap(), vec![0, 0b01, 0b11]);
        assert!(FiniteSpace::with_opens(names(2), &[0, 0b01, 0b11], vec![0b01, 0b10], names(2)).is_err());
        let s = FiniteSpace::from_opens(names(2), &[0, 0b10, 0b11]).unwrap();
        assert_eq!(s.opens().unwrap(), vec![0, 0b10, 0b11]);
        assert!(FiniteSpace::from_opens(names(2), &[0, 0b10]).is_err());
    }

    #[test]
    fn sierpinski_utilities() {
        let s = sierpinski();
        assert_eq!(s.nbhd(0), 0b11);
        assert_eq!(s.nbhd(1), 0b10);
        // the open point converges to the closed one
        assert!(s.specializes(1, 0) && !s.specializes(0, 1));
        // the closed point x0 saturates to X
        assert_eq!(s.saturation(0b01), 0b11);
        assert!(s.is_very_dense(0b11));
        assert!(!s.is_very_dense(0b10));
        assert_eq!(s.patch_closure(0b01), 0b01);
    }

    #[test]
    fn discrete_utilities() {
        let d = FiniteSpace::discrete(names(3)).unwrap();
        for y in 0..8 {
            assert_eq!(d.saturation(y), y);
            assert_eq!(d.patch_closure(y), y);
        }
        assert_eq!(d.opens().unwrap().len(), 8);
    }

    #[test]
    fn compact_containment_is_inclusion() {
        let d = FiniteSpace::new(names(3), vec![0b011, 0b110, 0b111], names(3)).unwrap();
        let opens = d.opens().unwrap();
        for &o in &opens {
            for &n in &opens {
                let c = d.compact_contained(o, n).unwrap();
                assert_eq!(c, o & !n == 0);
                assert_eq!(c, d.compact_contained_pointwise(o, n));
            }
        }
        assert!(d.compact_contained(0b001, 0b111).is_err());
    }

    #[test]
    fn indiscrete_pair_is_not_t0_or_sober() {
        let s = FiniteSpace::new(names(2), vec![0b11], vec!["X".into()]).unwrap();
        let p = space_properties(&s).unwrap();
        assert!(!p.t0 && !p.sober && !p.stably_locally_compact);
        assert!(p.core_compact && p.core_coherent);
        assert!(space_properties(&sierpinski()).unwrap().stably_locally_compact);
    }

    #[test]
    fn homeomorphism_search() {
        let a = sierpinski();
        let b = FiniteSpace::new(names(2), vec![0b01], vec!["{x0}".into()]).unwrap();
        assert_eq!(homeomorphism(&a, &b), Some(vec![1, 0]));
        let b = FiniteSpace::new(names(2), vec![0b01, 0b11], names(2)).unwrap();
        assert_eq!(homeomorphism(&a, &b), Some(vec![1, 0]));
        assert_eq!(homeomorphism(&a, &FiniteSpace::discrete(names(2)).unwrap()), None);
    }
}
