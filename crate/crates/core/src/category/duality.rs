//! Zigzag identities, naturality squares and functoriality, checked on
//! representative maps and morphisms.

use std::collections::BTreeMap;

use serde::Serialize;

use super::functors::{ab_functor, ab_object, lambda, sp_functor, triangle, Triangle};
use super::maps::{test_maps, SpaceMap};
use super::morphism::{
    check_cover_morphism, compose_morphisms, derive_proper, is_karoubi, CoverMorphism,
};
use crate::error::Result;
use crate::spectrum::space::bits;
use crate::spectrum::{space_properties, FiniteSpace};
use crate::relations::CoverSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Section {
    /// `λ`, `◀` and the triangle identities
    Zigzag,
    Naturality,
    Functoriality,
    /// derived relations are cover, Karoubi or proper morphisms
    Morphisms,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub checks: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub checks: usize,
    pub sections: BTreeMap<Section, Tally>,
    pub failures: Vec<String>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn section_passed(&self, section: Section) -> bool {
        self.sections.get(&section).is_none_or(|t| t.failed == 0)
    }

    fn check(&mut self, section: Section, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        let t = self.sections.entry(section).or_default();
        t.checks += 1;
        if !ok {
            t.failed += 1;
            self.failures.push(what());
        }
    }

    pub fn merge(&mut self, other: DualityReport) {
        self.checks += other.checks;
        for (k, t) in other.sections {
            let mine = self.sections.entry(k).or_default();
            mine.checks += t.checks;
            mine.failed += t.failed;
        }
        self.failures.extend(other.failures);
    }
}

/// Bijective, continuous and open.
pub fn is_homeomorphism(m: &SpaceMap) -> bool {
    let (a, b) = (m.source(), m.target());
    if a.len() != b.len() || m.map().iter().any(|y| y.is_none()) {
        return false;
    }
    let img = |s: u64| bits(s).fold(0u64, |acc, x| acc | 1 << m.map()[x].unwrap_or(0));
    img(a.full()) == b.full() && a.subbasis().iter().all(|&p| b.is_open(img(p)))
}

/// `λ` is a homeomorphism for T0 spaces, `Ab λ • ◀Ab = ⊢⋐`, `Ab` preserves
/// identities, and for every test map `φ : X → Y` with `Y ∈ peers ∪ {X}`
/// the square `λ ∘ φ = Sp(Ab φ) ∘ λ` commutes, `Ab φ` is a proper cover
/// morphism, and `Ab(ψ ∘ φ) = Ab φ • Ab ψ` for test maps `ψ : Y → Z`.
pub fn verify_space_duality(x: &FiniteSpace, peers: &[FiniteSpace]) -> Result<DualityReport> {
    let mut rep = DualityReport::default();
    let name = |s: &FiniteSpace| format!("space on {:?}", s.points());
    let lx = lambda(x)?;
    let t0 = space_properties(x)?.t0;
    rep.check(Section::Zigzag, is_homeomorphism(&lx) == t0, || {
        format!("{}: λ is a homeomorphism iff T0 ({t0})", name(x))
    });

    let abx = ab_object(x)?;
    let id = ab_functor(&SpaceMap::identity(x))?;
    rep.check(Section::Functoriality, *id.rel() == *abx.rel(), || format!("{}: Ab(id) ≠ ⊢⋐", name(x)));

    let tri = triangle(&abx)?;
    let zig = compose_morphisms(&ab_functor(&lx)?, &tri.forward)?;
    rep.check(Section::Zigzag, *zig.rel() == *abx.rel(), || format!("{}: Ab λ • ◀Ab ≠ ⊢⋐", name(x)));

    let mut spaces: Vec<&FiniteSpace> = vec![x];
    spaces.extend(peers.iter().filter(|p| *p != x));
    let lambdas: Vec<SpaceMap> = spaces.iter().map(|s| lambda(s)).collect::<Result<_>>()?;
    for (yi, y) in spaces.iter().enumerate() {
        for phi in test_maps(x, y)? {
            let ab = ab_functor(&phi)?;
            let c = check_cover_morphism(&ab)?;
            rep.check(Section::Morphisms, c.passed(), || format!("{} → {}: Ab φ is not a cover morphism", name(x), name(y)));
            rep.check(Section::Morphisms, derive_proper(&ab)?.proper, || {
                format!("{} → {}: Ab φ is not proper", name(x), name(y))
            });
            let left = phi.then(&lambdas[yi])?;
            let right = lx.then(&sp_functor(&ab)?.map)?;
            rep.check(Section::Naturality, left.map() == right.map(), || {
                format!("{} → {}: λ ∘ φ ≠ Sp(Ab φ) ∘ λ for {:?}", name(x), name(y), phi.map())
            });
            for z in &spaces {
                for psi in test_maps(y, z)? {
                    let whole = ab_functor(&phi.then(&psi)?)?;
                    let parts = compose_morphisms(&ab, &ab_functor(&psi)?)?;
                    rep.check(Section::Functoriality, whole.rel() == parts.rel(), || {
                        format!(
                            "{} → {} → {}: Ab(ψ∘φ) ≠ Ab φ • Ab ψ for {:?}, {:?}",
                            name(x),
                            name(y),
                            name(z),
                            phi.map(),
                            psi.map()
                        )
                    });
                }
            }
        }
    }
    Ok(rep)
}

/// Cover morphisms from `S` to `R` transported from the test maps between
/// their spectra: `◀_S⁻¹ • Ab φ • ◀_R`, plus `⊢` itself when `S = R`.
pub fn test_morphisms(s: &Triangle, r: &Triangle) -> Result<Vec<CoverMorphism>> {
    let mut out = Vec::new();
    let (sys_s, sys_r) = (s.forward.target(), r.forward.target());
    if sys_s == sys_r {
        out.push(CoverMorphism::identity(sys_s));
    }
    for phi in test_maps(&s.object.space, &r.object.space)? {
        let m = compose_morphisms(&compose_morphisms(&s.inverse, &ab_functor(&phi)?)?, &r.forward)?;
        if out.iter().all(|k: &CoverMorphism| k.rel() != m.rel()) {
            out.push(m);
        }
    }
    Ok(out)
}

/// `◀` is well-defined, a cover morphism and inverse to `◀⁻¹`;
/// `Sp◀ ∘ λSp = id`; `Sp` preserves identities; and for every test
/// morphism `⊏` from `S` to `R ∈ peers ∪ {S}`: `⊏` passes the cover
/// morphism and Karoubi checks and FsqF', `◀_S • ⊏ = ⊏_{φ⊏} • ◀_R`, and
/// `φ_{⊏•⊏̄} = φ_⊏̄ ∘ φ_⊏` for test morphisms `⊏̄` from `R` onwards.
/// Proper morphisms must compose to proper ones.
pub fn verify_system_duality(sys: &CoverSystem, peers: &[CoverSystem]) -> Result<DualityReport> {
    let mut rep = DualityReport::default();
    let name = |s: &CoverSystem| format!("system on {:?}", s.ground().names());
    let tri = triangle(sys)?;
    rep.check(Section::Zigzag, tri.well_defined && tri.inverse_well_defined, || {
        format!("{}: ◀ is not well-defined", name(sys))
    });
    rep.check(Section::Morphisms, check_cover_morphism(&tri.forward)?.passed(), || {
        format!("{}: ◀ is not a cover morphism", name(sys))
    });
    let there = compose_morphisms(&tri.forward, &tri.inverse)?;
    let back = compose_morphisms(&tri.inverse, &tri.forward)?;
    rep.check(Section::Zigzag, there.rel() == tri.ab.rel() && back.rel() == sys.rel(), || {
        format!("{}: ◀ and ◀⁻¹ are not inverse", name(sys))
    });

    let id = sp_functor(&CoverMorphism::identity(sys))?;
    rep.check(Section::Functoriality, id.map == SpaceMap::identity(&tri.object.space), || {
        format!("{}: Sp(⊢) is not the identity", name(sys))
    });
    let zag = lambda(&tri.object.space)?.then(&sp_functor(&tri.forward)?.map)?;
    rep.check(Section::Zigzag, zag == SpaceMap::identity(&tri.object.space), || {
        format!("{}: Sp◀ ∘ λSp ≠ id", name(sys))
    });

    let mut systems: Vec<&CoverSystem> = vec![sys];
    systems.extend(peers.iter().filter(|p| *p != sys));
    let tris: Vec<Triangle> = systems.iter().map(|s| triangle(s)).collect::<Result<_>>()?;
    for (ri, r) in systems.iter().enumerate() {
        for m in test_morphisms(&tri, &tris[ri])? {
            let pair = || format!("{} → {}", name(sys), name(r));
            rep.check(Section::Morphisms, check_cover_morphism(&m)?.passed(), || format!("{}: not a cover morphism", pair()));
            rep.check(Section::Morphisms, is_karoubi(&m), || format!("{}: not Karoubi", pair()));
            let sp = sp_functor(&m)?;
            rep.check(Section::Morphisms, sp.fsqf, || format!("{}: FsqF' fails at {:?}", pair(), sp.fsqf_witness));
            let left = compose_morphisms(&tri.forward, &m)?;
            let right = compose_morphisms(&ab_functor(&sp.map)?, &tris[ri].forward)?;
            rep.check(Section::Naturality, left.rel() == right.rel(), || format!("{}: ◀ is not natural", pair()));
            let proper = derive_proper(&m)?.proper;
            for (qi, _) in systems.iter().enumerate() {
                for m2 in test_morphisms(&tris[ri], &tris[qi])? {
                    let mm = compose_morphisms(&m, &m2)?;
                    let whole = sp_functor(&mm)?.map;
                    let parts = sp.map.then(&sp_functor(&m2)?.map)?;
                    rep.check(Section::Functoriality, whole == parts, || format!("{}: Sp is not functorial", pair()));
                    if proper && derive_proper(&m2)?.proper {
                        rep.check(Section::Morphisms, derive_proper(&mm)?.proper, || {
                            format!("{}: proper morphisms compose to a non-proper one", pair())
                        });
                    }
                }
            }
        }
    }
    Ok(rep)
}

pub enum DualitySubject<'a> {
    System(&'a CoverSystem),
    Space(&'a FiniteSpace),
}

/// Either check with no peers besides the subject itself.
pub fn verify_duality(subject: DualitySubject<'_>) -> Result<DualityReport> {
    match subject {
        DualitySubject::System(s) => verify_system_duality(s, &[]),
        DualitySubject::Space(x) => verify_space_duality(x, &[]),
    }
}
