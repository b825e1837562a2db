//! Quasi-ideals and the finite frame `QF S` they form.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::bits::BitSet;
use crate::composition::cut_compose_lower_unchecked;
use crate::error::{Error, Result};
use crate::kernel::{selections_bits, Family, FinSubset};
use crate::relations::{is_monotone, CoverSystem};

/// A family `𝒬 ⊆ F(S)` with `𝒬 = 𝒬↓`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuasiIdeal(Family);

impl QuasiIdeal {
    /// Checks `fam = fam↓`.
    pub fn new(sys: &CoverSystem, fam: Family) -> Result<Self> {
        let d = downset(sys, &fam)?;
        if d.0 != fam {
            return Err(Error::Precondition(format!(
                "{fam:?} is not a quasi-ideal; its downset is {:?}",
                d.0
            )));
        }
        Ok(d)
    }

    pub fn family(&self) -> &Family {
        &self.0
    }

    pub fn into_family(self) -> Family {
        self.0
    }

    pub fn contains(&self, f: FinSubset) -> bool {
        self.0.contains(f)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &QuasiIdeal) -> bool {
        self.0.is_subset(&other.0)
    }
}

/// Column polars `G^⊣ = {F : F ⊢ G}`, shared by repeated downsets.
#[derive(Clone)]
pub(crate) struct Columns {
    n: usize,
    cols: Vec<BitSet>,
}

impl Columns {
    pub(crate) fn new(sys: &CoverSystem) -> Self {
        Columns {
            n: sys.len(),
            cols: sys.rel().transpose().rows().to_vec(),
        }
    }

    pub(crate) fn downset_bits(&self, fam: &BitSet) -> BitSet {
        let mut acc = BitSet::full(1 << self.n);
        for g in selections_bits(fam, self.n).ones() {
            acc.and_assign(&self.cols[g]);
            if acc.is_empty() {
                break;
            }
        }
        acc
    }

    pub(crate) fn downset(&self, fam: &Family) -> Family {
        Family::from_bits(self.n, self.downset_bits(fam.bits()))
    }
}

fn check_family(sys: &CoverSystem, fam: &Family) -> Result<()> {
    if fam.ground_len() != sys.len() {
        return Err(Error::GroundMismatch(format!(
            "family over {} elements, system over {}",
            fam.ground_len(),
            sys.len()
        )));
    }
    Ok(())
}

/// `𝒬↓ = {F : F ⊢ G for all G ∈ 𝒬_≬}`.
///
/// The definition asks for some finite `𝒢 ⊆ 𝒬` with `F ⊢ 𝒢_≬`; enlarging
/// `𝒢` shrinks `𝒢_≬`, so `𝒢 = 𝒬` is the best choice.
pub fn downset(sys: &CoverSystem, fam: &Family) -> Result<QuasiIdeal> {
    check_family(sys, fam)?;
    Ok(QuasiIdeal(Columns::new(sys).downset(fam)))
}

pub fn is_quasi_ideal(sys: &CoverSystem, fam: &Family) -> Result<bool> {
    Ok(downset(sys, fam)?.0 == *fam)
}

/// `G^⊣ = {F : F ⊢ G}`.
pub fn column_polar(sys: &CoverSystem, g: FinSubset) -> Family {
    Family::from_bits(sys.len(), sys.rel().column(g))
}

/// `⊢ = ⊢•⊢`.
pub fn is_cut_idempotent(sys: &CoverSystem) -> bool {
    let r = sys.rel();
    cut_compose_lower_unchecked(r, r) == *r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameMode {
    /// Downsets of every family; `|S| ≤ 4`.
    Exhaustive,
    /// Closure of the principal `{F}↓` under binary joins and meets.
    Generated,
}

pub const EXHAUSTIVE_MAX: usize = 4;
pub const DEFAULT_FRAME_CAP: usize = 4096;

/// The quasi-ideals of a monotone cut-idempotent, with their lattice
/// tables and way-below matrix. Elements are sorted by size, then by
/// family.
#[derive(Clone, Debug)]
pub struct FrameModel {
    sys: CoverSystem,
    mode: FrameMode,
    complete: bool,
    elements: Vec<QuasiIdeal>,
    index: HashMap<Family, usize>,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    way_below: Vec<BitSet>,
    bottom: usize,
    top: usize,
}

pub(crate) fn require_mci(sys: &CoverSystem) -> Result<()> {
    if !is_monotone(sys.rel()) {
        return Err(Error::Precondition("the relation is not monotone".into()));
    }
    if !is_cut_idempotent(sys) {
        return Err(Error::Precondition("the relation is not cut-idempotent".into()));
    }
    Ok(())
}

fn cap_error(size: usize, cap: usize) -> Error {
    Error::CapExceeded {
        what: "quasi-ideals",
        size,
        cap,
    }
}

fn enumerate_exhaustive(cols: &Columns, n: usize, cap: usize) -> Result<HashSet<Family>> {
    if n > EXHAUSTIVE_MAX {
        return Err(Error::CapExceeded {
            what: "exhaustive frame ground set",
            size: n,
            cap: EXHAUSTIVE_MAX,
        });
    }
    let m = 1usize << n;
    let mut seen = HashSet::new();
    for code in 0..1u64 << m {
        let fam = BitSet::from_fn(m, |i| code >> i & 1 == 1);
        seen.insert(Family::from_bits(n, cols.downset_bits(&fam)));
        if seen.len() > cap {
            return Err(cap_error(seen.len(), cap));
        }
    }
    Ok(seen)
}

fn enumerate_generated(cols: &Columns, n: usize, cap: usize) -> Result<HashSet<Family>> {
    let mut list: Vec<Family> = Vec::new();
    let mut seen = HashSet::new();
    let mut push = |f: Family, list: &mut Vec<Family>| -> Result<()> {
        if seen.insert(f.clone()) {
            list.push(f);
            if list.len() > cap {
                return Err(cap_error(list.len(), cap));
            }
        }
        Ok(())
    };
    push(cols.downset(&Family::empty(n)), &mut list)?;
    for f in 0..1u32 << n {
        push(cols.downset(&Family::from_subsets(n, [FinSubset(f)])), &mut list)?;
    }
    let mut i = 0;
    while i < list.len() {
        for j in 0..i {
            let u = list[i].union(&list[j])?;
            let m = list[i].intersection(&list[j])?;
            push(cols.downset(&u), &mut list)?;
            if cols.downset(&m) != m {
                return Err(Error::Precondition(
                    "an intersection of quasi-ideals is not a quasi-ideal".into(),
                ));
            }
            push(m, &mut list)?;
        }
        i += 1;
    }
    Ok(seen)
}

/// Builds `QF S`. Generated mode is complete when `⊢` is divisible, since
/// then the principals generate; otherwise the result is flagged
/// incomplete.
pub fn frame_model(sys: &CoverSystem, mode: FrameMode, cap: usize) -> Result<FrameModel> {
    require_mci(sys)?;
    let n = sys.len();
    let cols = Columns::new(sys);
    let found = match mode {
        FrameMode::Exhaustive => enumerate_exhaustive(&cols, n, cap)?,
        FrameMode::Generated => enumerate_generated(&cols, n, cap)?,
    };
    let mut elements: Vec<Family> = found.into_iter().collect();
    elements.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let index: HashMap<Family, usize> =
        elements.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
    let k = elements.len();
    let lookup = |f: &Family| {
        index
            .get(f)
            .copied()
            .ok_or_else(|| Error::Precondition("the quasi-ideals are not closed under joins and meets".into()))
    };
    let mut join = vec![vec![0; k]; k];
    let mut meet = vec![vec![0; k]; k];
    for i in 0..k {
        for j in 0..=i {
            let a = lookup(&cols.downset(&elements[i].union(&elements[j])?))?;
            let b = lookup(&elements[i].intersection(&elements[j])?)?;
            join[i][j] = a;
            join[j][i] = a;
            meet[i][j] = b;
            meet[j][i] = b;
        }
    }
    let bottom = lookup(&cols.downset(&Family::empty(n)))?;
    let top = lookup(&Family::all(n))?;
    let downs: Vec<Family> = elements.iter().map(|e| cols.downset(e)).collect();
    let way_below = elements
        .iter()
        .map(|e| BitSet::from_fn(k, |j| e.is_subset(&downs[j])))
        .collect();
    let complete = mode == FrameMode::Exhaustive || sys.classification().is_divisible;
    Ok(FrameModel {
        sys: sys.clone(),
        mode,
        complete,
        elements: elements.into_iter().map(QuasiIdeal).collect(),
        index,
        join,
        meet,
        way_below,
        bottom,
        top,
    })
}

/// Exhaustive for `|S| ≤ 4`, generated beyond.
pub fn default_mode(n: usize) -> FrameMode {
    if n <= EXHAUSTIVE_MAX {
        FrameMode::Exhaustive
    } else {
        FrameMode::Generated
    }
}

/// `𝒬 ≪ 𝓡 ⟺ 𝒬 ⊆ 𝓡↓`, the best witness in `∃𝒢 ⊆ 𝓡 (𝒬 ⊢ 𝒢_≬)`.
pub fn way_below(fm: &FrameModel, q: &QuasiIdeal, r: &QuasiIdeal) -> Result<bool> {
    let i = fm.require(q)?;
    let j = fm.require(r)?;
    Ok(fm.way_below_at(i, j))
}

impl FrameModel {
    fn require(&self, q: &QuasiIdeal) -> Result<usize> {
        self.index_of(q.family())
            .ok_or_else(|| Error::Precondition(format!("{:?} is not an element of the frame", q.family())))
    }

    pub fn system(&self) -> &CoverSystem {
        &self.sys
    }

    pub fn mode(&self) -> FrameMode {
        self.mode
    }

    /// Every quasi-ideal is present.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[QuasiIdeal] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &QuasiIdeal {
        &self.elements[i]
    }

    pub fn index_of(&self, fam: &Family) -> Option<usize> {
        self.index.get(fam).copied()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.elements[i].is_subset(&self.elements[j])
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i][j]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i][j]
    }

    pub fn join_all(&self, it: impl IntoIterator<Item = usize>) -> usize {
        it.into_iter().fold(self.bottom, |a, b| self.join[a][b])
    }

    pub fn meet_all(&self, it: impl IntoIterator<Item = usize>) -> usize {
        it.into_iter().fold(self.top, |a, b| self.meet[a][b])
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn way_below_at(&self, i: usize, j: usize) -> bool {
        self.way_below[i].contains(j)
    }

    /// Covering pairs `(i, j)`: `e_i ⊂ e_j` with nothing strictly between.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let k = self.len();
        let mut out = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if i == j || !self.leq(i, j) {
                    continue;
                }
                let between = (0..k).any(|m| m != i && m != j && self.leq(i, m) && self.leq(m, j));
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn label(&self, i: usize) -> String {
        let g = self.sys.ground();
        let parts: Vec<String> = self.elements[i].family().iter().map(|f| g.format(f)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// Hasse diagram, bottom to top.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph frame {\n  rankdir=BT;\n  node [shape=box];\n");
        for i in 0..self.len() {
            let _ = writeln!(s, "  q{i} [label=\"{}\"];", self.label(i).replace('"', "\\\""));
        }
        for (i, j) in self.hasse() {
            let _ = writeln!(s, "  q{i} -> q{j};");
        }
        s.push_str("}\n");
        s
    }

    pub fn dump(&self) -> FrameDump {
        FrameDump {
            mode: self.mode,
            complete: self.complete,
            elements: self.elements.iter().map(|e| e.family().codes()).collect(),
            bottom: self.bottom,
            top: self.top,
            hasse: self.hasse(),
            way_below: (0..self.len())
                .map(|i| self.way_below[i].ones().collect())
                .collect(),
        }
    }
}

/// Serializable view: each quasi-ideal as its sorted subset codes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrameDump {
    pub mode: FrameMode,
    pub complete: bool,
    pub elements: Vec<Vec<u32>>,
    pub bottom: usize,
    pub top: usize,
    pub hasse: Vec<(usize, usize)>,
    pub way_below: Vec<Vec<usize>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::catalog;
    use crate::kernel::{selections_scan, GroundSet};
    use crate::relations::Relation;

    /// The definition read literally: some finite `𝒢 ⊆ 𝒬` with `F ⊢ 𝒢_≬`.
    fn literal_downset(sys: &CoverSystem, fam: &Family) -> Family {
        let members: Vec<FinSubset> = fam.iter().collect();
        let n = sys.len();
        let mut out = Family::empty(n);
        for f in 0..1u32 << n {
            let f = FinSubset(f);
            let ok = (0..1u32 << members.len()).any(|pick| {
                let sub = Family::from_subsets(
                    n,
                    members.iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).map(|(_, m)| *m),
                );
                selections_scan(&sub).iter().all(|g| sys.entails(f, g))
            });
            if ok {
                out.insert(f);
            }
        }
        out
    }

    #[test]
    fn downset_matches_literal_definition() {
        for e in catalog::canonical_small_systems().unwrap() {
            let n = e.system.len();
            if n > 3 {
                continue;
            }
            for code in 0..1u32 << (1 << n).min(8) {
                let fam = Family::from_bits(n, BitSet::from_fn(1 << n, |i| code >> i & 1 == 1));
                let d = downset(&e.system, &fam).unwrap();
                assert_eq!(*d.family(), literal_downset(&e.system, &fam), "{}", e.name);
            }
        }
    }

    #[test]
    fn empty_family_gives_all_true_rows() {
        let sys = catalog::boolean4().unwrap();
        let d = downset(&sys, &Family::empty(4)).unwrap();
        for f in 0..16 {
            let f = FinSubset(f);
            assert_eq!(d.contains(f), sys.rel().row(f).is_full());
        }
    }

    #[test]
    fn boolean4_frame_has_four_elements() {
        let sys = catalog::boolean4().unwrap();
        let fm = frame_model(&sys, FrameMode::Exhaustive, DEFAULT_FRAME_CAP).unwrap();
        assert_eq!(fm.len(), 4);
        assert!(fm.is_complete());
        assert_eq!(fm.hasse().len(), 4);
        let gen = frame_model(&sys, FrameMode::Generated, DEFAULT_FRAME_CAP).unwrap();
        assert_eq!(fm.dump().elements, gen.dump().elements);
    }

    #[test]
    fn empty_relation_has_one_quasi_ideal() {
        let g = GroundSet::indexed("s", 2).unwrap();
        let sys = CoverSystem::new(g, Relation::new(2, 2).unwrap()).unwrap();
        let fm = frame_model(&sys, FrameMode::Exhaustive, DEFAULT_FRAME_CAP).unwrap();
        // a downset is F(S) when ∅ is in the family (no selections), else ∅
        assert_eq!(fm.len(), 2);
        assert_eq!(fm.element(fm.bottom()).len(), 0);
        assert_eq!(fm.element(fm.top()).len(), 4);
    }

    #[test]
    fn rejects_bad_inputs() {
        let sys = catalog::boolean4().unwrap();
        assert!(matches!(
            downset(&sys, &Family::empty(3)),
            Err(Error::GroundMismatch(_))
        ));
        assert!(QuasiIdeal::new(&sys, Family::from_subsets(4, [FinSubset(1)])).is_err());
        let fm = frame_model(&sys, FrameMode::Exhaustive, 2);
        assert!(matches!(fm, Err(Error::CapExceeded { .. })));
        // upper but not lower
        let g = GroundSet::indexed("s", 1).unwrap();
        let bad = CoverSystem::from_fn(g, |f, g| f.is_empty() && !g.is_empty()).unwrap();
        assert!(matches!(
            frame_model(&bad, FrameMode::Exhaustive, 16),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn dot_lists_every_element() {
        let sys = catalog::chain3().unwrap();
        let fm = frame_model(&sys, FrameMode::Exhaustive, DEFAULT_FRAME_CAP).unwrap();
        let dot = fm.to_dot();
        assert!(dot.starts_with("digraph frame {"));
        assert_eq!(dot.matches("[label=").count(), fm.len());
        assert_eq!(dot.matches(" -> ").count(), fm.hasse().len());
    }
}
