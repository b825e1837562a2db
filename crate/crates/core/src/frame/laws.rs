//! Frame laws of `QF S` and the isomorphism with the spectrum's opens.

use serde::Serialize;

use super::quasi::{column_polar, default_mode, frame_model, Columns, FrameModel, DEFAULT_FRAME_CAP};
use crate::axioms::derive_vdash;
use crate::error::{Error, Result};
use crate::kernel::{Family, FinSubset};
use crate::relations::CoverSystem;
use crate::spectrum::{full_spectrum, PointSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrameLawsReport {
    pub size: usize,
    pub complete: bool,
    /// The join and meet tables are least upper and greatest lower bounds.
    pub lattice: bool,
    pub meets_are_intersections: bool,
    /// `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)`; finite joins suffice here.
    pub distributive: bool,
    /// Every element is the join of the elements way below it.
    pub continuous: bool,
    /// `q ≪ r₁, r₂ ⟹ q ≪ r₁ ∧ r₂`
    pub stable: bool,
    pub way_below_in_order: bool,
    /// The witness form of `≪` agrees with the order-theoretic one.
    pub way_below_matches_order: bool,
    pub divisible: bool,
    /// `G^⊣ = ⋁_{g ∈ G} g^⊣` for every `G`; holds exactly when divisible.
    pub gdashv: bool,
    pub gdashv_witness: Option<FinSubset>,
    /// `𝓕↓ ∨ 𝓖↓ = (𝓕 ∪ 𝓖)↓`, checked when divisible.
    pub funion_g: Option<bool>,
    /// `𝒬 = ⋁_{G ∈ 𝒬} ⋀_{g ∈ G} g^⊣`, checked when divisible.
    pub generated_by_principals: Option<bool>,
    /// `F ⊩ G ⟺ ⋀ f^⊣ ⊆ ⋁ g^⊣`, checked when divisible.
    pub vdash_subseteq: Option<bool>,
    pub vdash_subseteq_witness: Option<(FinSubset, FinSubset)>,
    /// `F ⊢ G ⟺ ⋀ f^⊣ ≪ ⋁ g^⊣`; for divisible relations this holds
    /// exactly on covers.
    pub vdashll: bool,
    pub vdashll_witness: Option<(FinSubset, FinSubset)>,
    pub is_cover: bool,
}

impl FrameLawsReport {
    pub fn passed(&self) -> bool {
        self.lattice
            && self.meets_are_intersections
            && self.distributive
            && self.continuous
            && self.stable
            && self.way_below_in_order
            && self.way_below_matches_order
            && self.gdashv == self.divisible
            && self.funion_g != Some(false)
            && self.generated_by_principals != Some(false)
            && self.vdash_subseteq != Some(false)
            && (!self.divisible || self.vdashll == self.is_cover)
    }
}

/// `a ≪ b` read off the order alone: every directed `D` with `b ≤ ⋁D` has
/// some `d ≥ a`. A finite directed set contains its join, and `{c}` is
/// directed, so this is `∀c ≥ b: a ≤ c`.
fn order_way_below(fm: &FrameModel, a: usize, b: usize) -> bool {
    (0..fm.len()).all(|c| !fm.leq(b, c) || fm.leq(a, c))
}

fn lattice_tables_ok(fm: &FrameModel) -> bool {
    let k = fm.len();
    for i in 0..k {
        if !fm.leq(fm.bottom(), i) || !fm.leq(i, fm.top()) {
            return false;
        }
        for j in 0..k {
            let (u, m) = (fm.join(i, j), fm.meet(i, j));
            if !(fm.leq(i, u) && fm.leq(j, u) && fm.leq(m, i) && fm.leq(m, j)) {
                return false;
            }
            for c in 0..k {
                if fm.leq(i, c) && fm.leq(j, c) && !fm.leq(u, c) {
                    return false;
                }
                if fm.leq(c, i) && fm.leq(c, j) && !fm.leq(c, m) {
                    return false;
                }
            }
        }
    }
    true
}

/// Families used for the `𝓕↓ ∨ 𝓖↓` check: all of them for `|S| ≤ 3`,
/// those with at most two members beyond.
fn small_families(n: usize) -> Vec<Family> {
    let m = 1u32 << n;
    if n <= 3 {
        return (0..1u64 << m)
            .map(|c| Family::from_subsets(n, (0..m).filter(|&i| c >> i & 1 == 1).map(FinSubset)))
            .collect();
    }
    let mut out = vec![Family::empty(n)];
    for a in 0..m {
        out.push(Family::from_subsets(n, [FinSubset(a)]));
        for b in a + 1..m {
            out.push(Family::from_subsets(n, [FinSubset(a), FinSubset(b)]));
        }
    }
    out
}

pub fn verify_frame_laws(fm: &FrameModel) -> Result<FrameLawsReport> {
    let sys = fm.system();
    let n = sys.len();
    let k = fm.len();
    let cols = Columns::new(sys);
    let class = *sys.classification();
    let lattice = lattice_tables_ok(fm);
    let meets_are_intersections = (0..k).all(|i| {
        (0..k).all(|j| {
            let cap = fm.element(i).family().intersection(fm.element(j).family());
            cap.is_ok_and(|c| c == *fm.element(fm.meet(i, j)).family())
        })
    });
    let distributive = (0..k).all(|a| {
        (0..k).all(|b| {
            (0..k).all(|c| {
                fm.meet(a, fm.join(b, c)) == fm.join(fm.meet(a, b), fm.meet(a, c))
            })
        })
    });
    let continuous =
        (0..k).all(|j| fm.join_all((0..k).filter(|&i| fm.way_below_at(i, j))) == j);
    let stable = (0..k).all(|q| {
        (0..k).all(|r| {
            (0..k).all(|s| {
                !(fm.way_below_at(q, r) && fm.way_below_at(q, s)) || fm.way_below_at(q, fm.meet(r, s))
            })
        })
    });
    let way_below_in_order = (0..k).all(|i| (0..k).all(|j| !fm.way_below_at(i, j) || fm.leq(i, j)));
    let way_below_matches_order =
        (0..k).all(|i| (0..k).all(|j| fm.way_below_at(i, j) == order_way_below(fm, i, j)));

    // principal meets and joins as families
    let principal: Vec<Family> = (0..n).map(|s| column_polar(sys, FinSubset::singleton(s))).collect();
    let meet_p = |f: FinSubset| -> Result<Family> {
        f.iter().try_fold(Family::all(n), |acc, s| acc.intersection(&principal[s]))
    };
    let join_p = |g: FinSubset| -> Result<Family> {
        let u = g.iter().try_fold(Family::empty(n), |acc, s| acc.union(&principal[s]))?;
        Ok(cols.downset(&u))
    };
    let meets: Vec<Family> = (0..1u32 << n).map(|f| meet_p(FinSubset(f))).collect::<Result<_>>()?;
    let joins: Vec<Family> = (0..1u32 << n).map(|g| join_p(FinSubset(g))).collect::<Result<_>>()?;

    let gdashv_witness = (0..1u32 << n)
        .map(FinSubset)
        .find(|&g| column_polar(sys, g) != joins[g.code()]);

    let vdash = derive_vdash(sys.rel())?;
    let mut vdashll_witness = None;
    let mut vdash_subseteq_witness = None;
    for f in 0..1u32 << n {
        for g in 0..1u32 << n {
            let (fs, gs) = (FinSubset(f), FinSubset(g));
            let (m, j) = (&meets[f as usize], &joins[g as usize]);
            let ll = m.is_subset(&cols.downset(j));
            if ll != sys.entails(fs, gs) && vdashll_witness.is_none() {
                vdashll_witness = Some((fs, gs));
            }
            if m.is_subset(j) != vdash.get(fs, gs) && vdash_subseteq_witness.is_none() {
                vdash_subseteq_witness = Some((fs, gs));
            }
        }
    }

    let divisible = class.is_divisible;
    let (funion_g, generated_by_principals, vdash_subseteq) = if divisible {
        let fams = small_families(n);
        let downs: Vec<Family> = fams.iter().map(|f| cols.downset(f)).collect();
        let mut funion = true;
        'outer: for a in 0..fams.len() {
            for b in a..fams.len() {
                let lhs = cols.downset(&downs[a].union(&downs[b])?);
                let rhs = cols.downset(&fams[a].union(&fams[b])?);
                if lhs != rhs {
                    funion = false;
                    break 'outer;
                }
            }
        }
        let mut generated = true;
        for q in fm.elements() {
            let u = q
                .family()
                .iter()
                .try_fold(Family::empty(n), |acc, g| acc.union(&meets[g.code()]))?;
            if cols.downset(&u) != *q.family() {
                generated = false;
                break;
            }
        }
        (Some(funion), Some(generated), Some(vdash_subseteq_witness.is_none()))
    } else {
        (None, None, None)
    };

    Ok(FrameLawsReport {
        size: k,
        complete: fm.is_complete(),
        lattice,
        meets_are_intersections,
        distributive,
        continuous,
        stable,
        way_below_in_order,
        way_below_matches_order,
        divisible,
        gdashv: gdashv_witness.is_none(),
        gdashv_witness,
        funion_g,
        generated_by_principals,
        vdash_subseteq,
        vdash_subseteq_witness,
        vdashll: vdashll_witness.is_none(),
        vdashll_witness,
        is_cover: class.is_cover,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OpenIsoReport {
    pub frame_size: usize,
    pub open_count: usize,
    /// `∅` is tight and was kept as a point.
    pub empty_point: bool,
    pub injective: bool,
    pub surjective: bool,
    /// `𝒬 ⊆ 𝓡 ⟺ T_𝒬 ⊆ T_𝓡`
    pub order_embedding: bool,
    pub meets_preserved: bool,
    pub joins_preserved: bool,
}

impl OpenIsoReport {
    pub fn is_iso(&self) -> bool {
        self.injective && self.surjective && self.order_embedding && self.meets_preserved && self.joins_preserved
    }
}

/// Checks that `𝒬 ↦ T_𝒬 = ⋃_{F ∈ 𝒬} T_F` maps `QF S` isomorphically onto
/// the opens of the spectrum.
///
/// The spectrum is [`full_spectrum`]: when `∅` is tight, dropping it would
/// identify `F(S)` with `F(S) ∖ {∅}` whenever the latter is a quasi-ideal.
pub fn verify_open_iso(sys: &CoverSystem) -> Result<OpenIsoReport> {
    if !sys.classification().is_strong_idempotent {
        return Err(Error::Precondition("the relation is not a strong idempotent".into()));
    }
    let fm = frame_model(sys, default_mode(sys.len()), DEFAULT_FRAME_CAP)?;
    let sp = full_spectrum(sys)?;
    let opens = sp.space().opens()?;
    let img: Vec<PointSet> = fm.elements().iter().map(|q| sp.t_family(q.family())).collect();
    let k = fm.len();
    let mut sorted = img.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let injective = sorted.len() == k;
    let surjective = sorted == opens;
    let order_embedding =
        (0..k).all(|i| (0..k).all(|j| fm.leq(i, j) == (img[i] & !img[j] == 0)));
    let meets_preserved = (0..k).all(|i| (0..k).all(|j| img[fm.meet(i, j)] == img[i] & img[j]));
    let joins_preserved = (0..k).all(|i| (0..k).all(|j| img[fm.join(i, j)] == img[i] | img[j]));
    Ok(OpenIsoReport {
        frame_size: k,
        open_count: opens.len(),
        empty_point: sp.index_of(FinSubset::EMPTY).is_some(),
        injective,
        surjective,
        order_embedding,
        meets_preserved,
        joins_preserved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{catalog, lattice_cover, scott_cover_construct, FiniteLattice, TransitiveRelation};
    use crate::frame::quasi::FrameMode;
    use crate::GroundSet;

    /// Directed subsets enumerated literally, for frames of at most 10
    /// elements.
    fn literal_way_below(fm: &FrameModel, a: usize, b: usize) -> bool {
        let k = fm.len();
        (1u32..1 << k).all(|d| {
            let members: Vec<usize> = (0..k).filter(|&i| d >> i & 1 == 1).collect();
            let directed = members.iter().all(|&x| {
                members
                    .iter()
                    .all(|&y| members.iter().any(|&z| fm.leq(x, z) && fm.leq(y, z)))
            });
            if !directed || !fm.leq(b, fm.join_all(members.iter().copied())) {
                return true;
            }
            members.iter().any(|&m| fm.leq(a, m))
        })
    }

    fn non_cover_strong_idempotent() -> CoverSystem {
        let g = GroundSet::indexed("s", 2).unwrap();
        let base = lattice_cover(&FiniteLattice::chain(g.clone()).unwrap()).unwrap();
        let lt = TransitiveRelation::from_pairs(g, &[(0, 0), (0, 1)]).unwrap();
        scott_cover_construct(&base, &lt).unwrap().0
    }

    #[test]
    fn catalog_frames_pass() {
        for e in catalog::canonical_small_systems().unwrap() {
            let sys = &e.system;
            let fm = match frame_model(sys, default_mode(sys.len()), DEFAULT_FRAME_CAP) {
                Ok(fm) => fm,
                Err(Error::Precondition(_)) => continue,
                Err(err) => panic!("{}: {err}", e.name),
            };
            let r = verify_frame_laws(&fm).unwrap();
            assert!(r.passed(), "{}: {r:?}", e.name);
            if fm.len() <= 10 {
                for i in 0..fm.len() {
                    for j in 0..fm.len() {
                        assert_eq!(fm.way_below_at(i, j), literal_way_below(&fm, i, j));
                    }
                }
            }
            if sys.classification().is_strong_idempotent {
                let iso = verify_open_iso(sys).unwrap();
                assert!(iso.is_iso(), "{}: {iso:?}", e.name);
            }
        }
    }

    #[test]
    fn boolean4_opens_match() {
        let iso = verify_open_iso(&catalog::boolean4().unwrap()).unwrap();
        assert_eq!((iso.frame_size, iso.open_count), (4, 4));
        assert!(iso.is_iso());
    }

    #[test]
    fn meet2_needs_the_empty_point() {
        let iso = verify_open_iso(&catalog::meet2().unwrap()).unwrap();
        assert!(iso.empty_point && iso.is_iso());
    }

    #[test]
    fn strong_idempotent_non_cover_fails_vdashll() {
        let sys = non_cover_strong_idempotent();
        let fm = frame_model(&sys, FrameMode::Exhaustive, DEFAULT_FRAME_CAP).unwrap();
        let r = verify_frame_laws(&fm).unwrap();
        assert!(r.divisible && r.gdashv && !r.is_cover);
        assert!(!r.vdashll && r.vdashll_witness.is_some());
        assert!(r.passed());
        assert!(verify_open_iso(&sys).unwrap().is_iso());
    }

    #[test]
    fn non_divisible_cut_idempotent_fails_gdashv() {
        // F ⊢ G ⟺ G = S
        let g = GroundSet::indexed("s", 2).unwrap();
        let sys = CoverSystem::from_fn(g, |_, h| h == FinSubset(0b11)).unwrap();
        assert!(!sys.classification().is_divisible);
        let fm = frame_model(&sys, FrameMode::Exhaustive, DEFAULT_FRAME_CAP).unwrap();
        let r = verify_frame_laws(&fm).unwrap();
        assert!(!r.gdashv && r.gdashv_witness.is_some());
        assert!(r.passed());
        assert_eq!(r.funion_g, None);
    }

    #[test]
    fn generated_equals_exhaustive_on_catalog() {
        for e in catalog::canonical_small_systems().unwrap() {
            if e.system.len() > 3 || !e.system.classification().is_divisible {
                continue;
            }
            let Ok(a) = frame_model(&e.system, FrameMode::Exhaustive, DEFAULT_FRAME_CAP) else {
                continue;
            };
            let b = frame_model(&e.system, FrameMode::Generated, DEFAULT_FRAME_CAP).unwrap();
            assert_eq!(a.dump().elements, b.dump().elements, "{}", e.name);
        }
    }
}
