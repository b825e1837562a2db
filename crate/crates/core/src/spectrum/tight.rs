//! Tight subsets and the tight spectrum.

use serde::Serialize;

use super::space::{FiniteSpace, PointSet, MAX_POINTS};
use crate::axioms::derive_vdash;
use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::kernel::{selections, Family, FinSubset};
use crate::relations::CoverSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TightFlags {
    pub round: bool,
    pub prime: bool,
    pub tight: bool,
}

/// `X(T)`: every `G` with `F ⊢ G` for some `F ⊆ T`.
pub fn reach(sys: &CoverSystem, t: FinSubset) -> BitSet {
    let mut acc = BitSet::new(1 << sys.len());
    for f in t.subsets() {
        acc.or_assign(sys.rel().row(f));
    }
    acc
}

fn flags_from_reach(n: usize, t: FinSubset, x: &BitSet) -> TightFlags {
    let round = t.iter().all(|s| x.contains(FinSubset::singleton(s).code()));
    // X(T) must avoid every subset of S ∖ T
    let outside = FinSubset::full(n).difference(t);
    let prime = !outside.subsets().any(|g| x.contains(g.code()));
    TightFlags {
        round,
        prime,
        tight: round && prime,
    }
}

/// Round: `∀t ∈ T ∃F ⊆ T: F ⊢ {t}`. Prime: `F ⊆ T, F ⊢ G ⟹ G ∩ T ≠ ∅`.
pub fn tight_flags(sys: &CoverSystem, t: FinSubset) -> TightFlags {
    flags_from_reach(sys.len(), t, &reach(sys, t))
}

/// Flags for every code, sharing `X(T) = row_T ∪ ⋃_{t ∈ T} X(T ∖ {t})`.
fn all_flags(sys: &CoverSystem) -> Vec<TightFlags> {
    let n = sys.len();
    let mut x: Vec<BitSet> = Vec::with_capacity(1 << n);
    let mut out = Vec::with_capacity(1 << n);
    for c in 0..1u32 << n {
        let t = FinSubset(c);
        let mut acc = sys.rel().row(t).clone();
        for s in t.iter() {
            acc.or_assign(&x[t.without(s).code()]);
        }
        out.push(flags_from_reach(n, t, &acc));
        x.push(acc);
    }
    out
}

/// Nonempty tight subsets by ascending code.
pub fn tight_sets(sys: &CoverSystem) -> Result<Vec<FinSubset>> {
    crate::limits::check_quadratic(sys.len())?;
    Ok(all_flags(sys)
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, f)| f.tight)
        .map(|(c, _)| FinSubset(c as u32))
        .collect())
}

/// Whether `∅` is tight, i.e. `∅` entails nothing. The spectrum leaves it
/// out either way.
pub fn empty_is_tight(sys: &CoverSystem) -> bool {
    sys.rel().row(FinSubset::EMPTY).is_empty()
}

/// The tight spectrum: points are the nonempty tight sets, the subbasis is
/// `T_p = {T : p ∈ T}` indexed by the ground set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    tight: Vec<FinSubset>,
    space: FiniteSpace,
    ground_len: usize,
}

impl Spectrum {
    /// The tight sets, in the order of the space's points.
    pub fn tight(&self) -> &[FinSubset] {
        &self.tight
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.tight.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tight.is_empty()
    }

    pub fn index_of(&self, t: FinSubset) -> Option<usize> {
        self.tight.binary_search(&t).ok()
    }

    /// `T_F = {T : F ⊆ T}`.
    pub fn t_lower(&self, f: FinSubset) -> PointSet {
        self.tight
            .iter()
            .enumerate()
            .filter(|(_, t)| f.is_subset(**t))
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    /// `T^G = {T : T ∩ G ≠ ∅}`.
    pub fn t_upper(&self, g: FinSubset) -> PointSet {
        self.tight
            .iter()
            .enumerate()
            .filter(|(_, t)| t.meets(g))
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    /// `T_𝒬 = ⋃_{F ∈ 𝒬} T_F`.
    pub fn t_family(&self, fam: &Family) -> PointSet {
        fam.iter().fold(0, |m, f| m | self.t_lower(f))
    }

    pub fn ground_len(&self) -> usize {
        self.ground_len
    }
}

pub fn spectrum(sys: &CoverSystem) -> Result<Spectrum> {
    build_spectrum(sys, tight_sets(sys)?)
}

/// Like [`spectrum`] but with `∅` as an extra point (index 0) whenever it
/// is tight. The point lies in no `T_p`; its only neighbourhood is the
/// whole space.
pub fn full_spectrum(sys: &CoverSystem) -> Result<Spectrum> {
    let mut tight = tight_sets(sys)?;
    if empty_is_tight(sys) {
        tight.insert(0, FinSubset::EMPTY);
    }
    build_spectrum(sys, tight)
}

fn build_spectrum(sys: &CoverSystem, tight: Vec<FinSubset>) -> Result<Spectrum> {
    if tight.len() > MAX_POINTS {
        return Err(Error::CapExceeded {
            what: "spectrum points",
            size: tight.len(),
            cap: MAX_POINTS,
        });
    }
    let ground = sys.ground();
    let points: Vec<String> = tight.iter().map(|&t| ground.format(t)).collect();
    let subbasis = (0..sys.len())
        .map(|p| {
            tight
                .iter()
                .enumerate()
                .filter(|(_, t)| t.contains(p))
                .fold(0, |m, (i, _)| m | 1 << i)
        })
        .collect();
    let space = FiniteSpace::new(points, subbasis, ground.names().to_vec())?;
    Ok(Spectrum {
        tight,
        space,
        ground_len: sys.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TopRepReport {
    /// `F ⊩ G ⟺ T_F ⊆ T^G`
    pub fdgt: bool,
    pub fdgt_witness: Option<(FinSubset, FinSubset)>,
    /// `F ⊢ G ⟹ T_F ⋐ T^G`
    pub fcgt_forward: bool,
    pub fcgt_forward_witness: Option<(FinSubset, FinSubset)>,
    /// `T_F ⋐ T^G ⟹ F ⊢ G`, expected exactly for covers
    pub fcgt_converse: bool,
    pub fcgt_converse_witness: Option<(FinSubset, FinSubset)>,
    pub is_cover: bool,
    /// `∅` is tight, so the checks ran on [`full_spectrum`]
    pub empty_point: bool,
    /// `F ⊩ G ⟺ T_F ⊆ T^G` read on the nonempty tight sets only. Differs
    /// from `fdgt` only at `F = ∅` when `∅` is tight.
    pub fdgt_nonempty: bool,
}

impl TopRepReport {
    /// All the checks the theory predicts for this system hold.
    pub fn passed(&self) -> bool {
        self.fdgt && self.fcgt_forward && (!self.is_cover || self.fcgt_converse)
    }
}

/// Checks run on [`full_spectrum`]: without the point `∅`, `T_∅` is the
/// whole space and `∅ ⊩ S` would be forced even when `∅` entails nothing.
pub fn verify_toprep(sys: &CoverSystem) -> Result<TopRepReport> {
    let sp = full_spectrum(sys)?;
    let empty_point = sp.index_of(FinSubset::EMPTY).is_some();
    let nonempty = if empty_point { !1 } else { !0 };
    let vdash = derive_vdash(sys.rel())?;
    let n = sys.len();
    let space = sp.space();
    let lower: Vec<PointSet> = (0..1u32 << n).map(|f| sp.t_lower(FinSubset(f))).collect();
    let upper: Vec<PointSet> = (0..1u32 << n).map(|g| sp.t_upper(FinSubset(g))).collect();
    let mut report = TopRepReport {
        fdgt: true,
        fdgt_witness: None,
        fcgt_forward: true,
        fcgt_forward_witness: None,
        fcgt_converse: true,
        fcgt_converse_witness: None,
        is_cover: sys.classification().is_cover,
        empty_point,
        fdgt_nonempty: true,
    };
    // O ⋐ N for O, N open, computed once per N
    let small = space.subbasis().len() <= 6;
    let cores: Vec<PointSet> = upper.iter().map(|&u| space.compact_core(u)).collect();
    for f in 0..1u32 << n {
        for g in 0..1u32 << n {
            let (fs, gs) = (FinSubset(f), FinSubset(g));
            let (tf, tg) = (lower[f as usize], upper[g as usize]);
            if vdash.get(fs, gs) != (tf & !tg == 0) && report.fdgt {
                report.fdgt = false;
                report.fdgt_witness = Some((fs, gs));
            }
            if vdash.get(fs, gs) != (tf & nonempty & !tg == 0) {
                report.fdgt_nonempty = false;
            }
            let cc = if small {
                space.compact_contained(tf, tg)?
            } else {
                tf & !cores[g as usize] == 0
            };
            let e = sys.entails(fs, gs);
            if e && !cc && report.fcgt_forward {
                report.fcgt_forward = false;
                report.fcgt_forward_witness = Some((fs, gs));
            }
            if cc && !e && report.fcgt_converse {
                report.fcgt_converse = false;
                report.fcgt_converse_witness = Some((fs, gs));
            }
        }
    }
    Ok(report)
}

/// `{p : ∃F ⊆ P, F ⊢ {p}}` for prime `P`.
pub fn prime_to_tight(sys: &CoverSystem, p: FinSubset) -> Result<FinSubset> {
    let x = reach(sys, p);
    if !flags_from_reach(sys.len(), p, &x).prime {
        return Err(Error::Precondition(format!(
            "{} is not prime",
            sys.ground().format(p)
        )));
    }
    Ok(FinSubset::from_indices(
        (0..sys.len()).filter(|&s| x.contains(FinSubset::singleton(s).code())),
    ))
}

fn require_round(sys: &CoverSystem, r: FinSubset) -> Result<()> {
    if !tight_flags(sys, r).round {
        return Err(Error::Precondition(format!(
            "{} is not round",
            sys.ground().format(r)
        )));
    }
    Ok(())
}

/// First tight `T ⊇ R` (by code) avoiding `avoid`-violations, searching
/// the sets `R ∪ A` with `A ⊆ room`.
fn search(
    sys: &CoverSystem,
    r: FinSubset,
    room: FinSubset,
    ok: impl Fn(FinSubset) -> bool,
) -> Option<FinSubset> {
    let mut cands: Vec<FinSubset> = room.subsets().map(|a| a.union(r)).filter(|&t| ok(t)).collect();
    cands.sort();
    cands.into_iter().find(|&t| tight_flags(sys, t).tight)
}

/// For round `R`: `None` if some `F ⊆ R`, `G ⊆ Q` has `F ⊢ G`; otherwise
/// the first tight `T ⊇ R` with `T ∩ Q = ∅` (possibly `∅`).
pub fn birkhoff_stone(sys: &CoverSystem, r: FinSubset, q: FinSubset) -> Result<Option<FinSubset>> {
    require_round(sys, r)?;
    let x = reach(sys, r);
    if q.subsets().any(|g| x.contains(g.code())) {
        return Ok(None);
    }
    let room = FinSubset::full(sys.len()).difference(r).difference(q);
    search(sys, r, room, |_| true).map(Some).ok_or_else(|| {
        Error::Precondition("no tight set separates R from Q; the system is not a strong idempotent".into())
    })
}

/// For round `R`: `None` unless every `F ⊆ R` and finite `𝒢 ⊆ fams` have
/// some `G ∈ 𝒢_≬` with `F ⊬ G`; otherwise the first tight `T ⊇ R`
/// containing no member of `fams`.
///
/// Selections shrink as `𝒢` grows, so the hypothesis only needs checking
/// for `𝒢 = fams`.
pub fn birkhoff_stone2(sys: &CoverSystem, r: FinSubset, fams: &Family) -> Result<Option<FinSubset>> {
    require_round(sys, r)?;
    let sel = selections(fams);
    if r.subsets().any(|f| sel.bits().is_subset(sys.rel().row(f))) {
        return Ok(None);
    }
    let members: Vec<FinSubset> = fams.iter().collect();
    let room = FinSubset::full(sys.len()).difference(r);
    search(sys, r, room, |t| members.iter().all(|h| !h.is_subset(t))).map(Some).ok_or_else(|| {
        Error::Precondition("no tight set avoids the family; the system is not a strong idempotent".into())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::catalog;
    use crate::spectrum::space::{homeomorphism, space_properties};
    use crate::{GroundSet, Relation};

    fn codes(v: &[FinSubset]) -> Vec<u32> {
        v.iter().map(|s| s.0).collect()
    }

    /// Direct reading of the definitions, no shared `X(T)`.
    fn naive_flags(sys: &CoverSystem, t: FinSubset) -> (bool, bool) {
        let round = t.iter().all(|s| t.subsets().any(|f| sys.entails(f, FinSubset::singleton(s))));
        let n = sys.len();
        let prime = t.subsets().all(|f| {
            (0..1u32 << n).map(FinSubset).all(|g| !sys.entails(f, g) || g.meets(t))
        });
        (round, prime)
    }

    #[test]
    fn flags_agree_with_naive_reading() {
        for e in catalog::canonical_small_systems().unwrap() {
            let flags = all_flags(&e.system);
            for (c, fl) in flags.iter().enumerate() {
                let t = FinSubset(c as u32);
                assert_eq!((fl.round, fl.prime), naive_flags(&e.system, t), "{} {c}", e.name);
                assert_eq!(*fl, tight_flags(&e.system, t));
            }
        }
    }

    #[test]
    fn boolean4_tight_sets() {
        let sys = catalog::boolean4().unwrap();
        // elements 0, a, b, 1 have codes 1, 2, 4, 8
        assert_eq!(codes(&tight_sets(&sys).unwrap()), vec![0b1010, 0b1100]);
        assert!(tight_flags(&sys, FinSubset(0b1010)).tight);
        assert!(!tight_flags(&sys, FinSubset(0b1000)).prime);
        let sp = spectrum(&sys).unwrap();
        let discrete = FiniteSpace::discrete(vec!["p".into(), "q".into()]).unwrap();
        assert!(homeomorphism(sp.space(), &discrete).is_some());
    }

    #[test]
    fn chain3_spectrum_is_sierpinski() {
        let sys = catalog::chain3().unwrap();
        assert_eq!(codes(&tight_sets(&sys).unwrap()), vec![0b100, 0b110]);
        let sp = spectrum(&sys).unwrap();
        let s = catalog::sierpinski_space().unwrap();
        assert!(homeomorphism(sp.space(), &s).is_some());
        assert!(space_properties(sp.space()).unwrap().stably_locally_compact);
    }

    #[test]
    fn empty_relation_has_no_tight_sets() {
        let g = GroundSet::indexed("s", 3).unwrap();
        let sys = CoverSystem::new(g, Relation::new(3, 3).unwrap()).unwrap();
        assert!(tight_sets(&sys).unwrap().is_empty());
        assert!(empty_is_tight(&sys));
        assert!(spectrum(&sys).unwrap().is_empty());
    }

    #[test]
    fn toprep_on_catalog_covers() {
        for e in catalog::canonical_small_systems().unwrap() {
            if !e.system.classification().is_strong_idempotent {
                continue;
            }
            let r = verify_toprep(&e.system).unwrap();
            assert!(r.passed(), "{}: {r:?}", e.name);
            assert_eq!(r.fcgt_converse, r.is_cover, "{}", e.name);
        }
        let sys = catalog::boolean4().unwrap();
        let sp = spectrum(&sys).unwrap();
        assert_eq!(sp.t_lower(FinSubset(0b0110)), 0);
    }

    #[test]
    fn basic_opens_turn_unions_into_intersections() {
        let sys = catalog::boolean4().unwrap();
        let sp = spectrum(&sys).unwrap();
        for f in 0..16u32 {
            for g in 0..16u32 {
                let (f, g) = (FinSubset(f), FinSubset(g));
                assert_eq!(sp.t_lower(f) & sp.t_lower(g), sp.t_lower(f.union(g)));
            }
        }
    }

    #[test]
    fn prime_to_tight_and_birkhoff_stone() {
        let sys = catalog::boolean4().unwrap();
        for &t in &tight_sets(&sys).unwrap() {
            assert_eq!(prime_to_tight(&sys, t).unwrap(), t);
        }
        assert!(prime_to_tight(&sys, FinSubset(0b1000)).is_err());
        // R = {1}, Q = {a}
        assert_eq!(
            birkhoff_stone(&sys, FinSubset(0b1000), FinSubset(0b0010)).unwrap(),
            Some(FinSubset(0b1100))
        );
        // {1} ⊢ {a, b}
        assert_eq!(birkhoff_stone(&sys, FinSubset(0b1000), FinSubset(0b0110)).unwrap(), None);
        let fams = Family::from_subsets(4, [FinSubset(0b0010)]);
        assert_eq!(
            birkhoff_stone2(&sys, FinSubset(0b1000), &fams).unwrap(),
            Some(FinSubset(0b1100))
        );
    }

    #[test]
    fn strong_idempotent_non_cover_fails_converse() {
        use crate::builders::{lattice_cover, scott_cover_construct, FiniteLattice, TransitiveRelation};
        let g = GroundSet::indexed("s", 2).unwrap();
        let base = lattice_cover(&FiniteLattice::chain(g.clone()).unwrap()).unwrap();
        let lt = TransitiveRelation::from_pairs(g, &[(0, 0), (0, 1)]).unwrap();
        let (sys, _) = scott_cover_construct(&base, &lt).unwrap();
        let r = verify_toprep(&sys).unwrap();
        assert!(r.fdgt && r.fcgt_forward && !r.fcgt_converse && !r.is_cover);
        assert!(r.passed());
        assert!(r.empty_point && !r.fdgt_nonempty);
    }

    #[test]
    fn empty_point_matters_exactly_at_the_empty_row() {
        // meet2: ∅ entails nothing, so ∅ is tight and ∅ ⊮ S
        let sys = catalog::meet2().unwrap();
        let r = verify_toprep(&sys).unwrap();
        assert!(r.passed() && r.empty_point && !r.fdgt_nonempty);
        let sp = spectrum(&sys).unwrap();
        let full = FinSubset::full(sys.len());
        assert_eq!(sp.t_lower(FinSubset::EMPTY) & !sp.t_upper(full), 0);
        let vdash = derive_vdash(sys.rel()).unwrap();
        assert!(!vdash.get(FinSubset::EMPTY, full));
        // covers where ∅ ⊢ S lose nothing
        let r = verify_toprep(&catalog::boolean4().unwrap()).unwrap();
        assert!(!r.empty_point && r.fdgt_nonempty);
    }
}
