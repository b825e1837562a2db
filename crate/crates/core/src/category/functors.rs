//! The functors `Ab` and `Sp`, the unit `λ` and the isomorphism `◀`.
//!
//! Spectra here are the full ones: `∅` is a point whenever it is tight,
//! and `φ_⊏(T)` is defined exactly when it is a point of the target
//! spectrum.

use serde::Serialize;

use super::maps::SpaceMap;
use super::morphism::CoverMorphism;
use crate::builders::topology_cover;
use crate::error::{Error, Result};
use crate::kernel::{FinSubset, GroundSet};
use crate::relations::{singleton_image, CoverSystem, Relation};
use crate::spectrum::space::PointSet;
use crate::spectrum::{full_spectrum, FiniteSpace, Spectrum};

/// `Ab` on objects: the subbasis covered by `⋂F ⋐ ⋃G`.
pub fn ab_object(space: &FiniteSpace) -> Result<CoverSystem> {
    topology_cover(space)
}

/// `F ⊏_φ G ⟺ ⋂F ⋐ φ⁻¹[⋃G]`, from the source subbasis to the target's.
pub fn ab_functor(phi: &SpaceMap) -> Result<CoverMorphism> {
    let (x, y) = (phi.source(), phi.target());
    let meets: Vec<PointSet> = (0..1u32 << x.subbasis().len())
        .map(|f| FinSubset(f).iter().fold(x.full(), |m, i| m & x.subbasis()[i]))
        .collect();
    let mut pre = Vec::with_capacity(1 << y.subbasis().len());
    for g in 0..1u32 << y.subbasis().len() {
        let u = FinSubset(g).iter().fold(0, |m, i| m | y.subbasis()[i]);
        pre.push(phi.preimage(u));
    }
    let mut err = None;
    let rel = Relation::from_fn(x.subbasis().len(), y.subbasis().len(), |f, g| {
        match x.compact_contained(meets[f.code()], pre[g.code()]) {
            Ok(b) => b,
            Err(e) => {
                err.get_or_insert(e);
                false
            }
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    CoverMorphism::new(ab_object(x)?, ab_object(y)?, rel)
}

/// `Sp` on objects. `space` is the full spectrum's space with equal
/// subbasic sets `T_p = T_q` merged, and `class[p]` is the index of the
/// merged set holding `T_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpObject {
    pub spectrum: Spectrum,
    pub space: FiniteSpace,
    pub class: Vec<usize>,
}

impl SpObject {
    /// `F_T = {T_f : f ∈ F}` as a subset of the merged subbasis.
    pub fn lift(&self, f: FinSubset) -> FinSubset {
        FinSubset(f.iter().fold(0, |m, p| m | 1 << self.class[p]))
    }
}

pub fn sp_object(sys: &CoverSystem) -> Result<SpObject> {
    let spectrum = full_spectrum(sys)?;
    let full = spectrum.space();
    let mut sets: Vec<PointSet> = Vec::new();
    let mut names: Vec<Vec<&str>> = Vec::new();
    let mut class = Vec::with_capacity(sys.len());
    for (p, &t) in full.subbasis().iter().enumerate() {
        let name = sys.ground().names()[p].as_str();
        match sets.iter().position(|&s| s == t) {
            Some(i) => {
                names[i].push(name);
                class.push(i);
            }
            None => {
                class.push(sets.len());
                sets.push(t);
                names.push(vec![name]);
            }
        }
    }
    let names = names.into_iter().map(|n| n.join("~")).collect();
    let space = FiniteSpace::new(full.points().to_vec(), sets, names)?;
    Ok(SpObject {
        spectrum,
        space,
        class,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpReport {
    /// `φ_⊏`, between [`sp_object`] spaces of the source and the target.
    pub map: SpaceMap,
    /// `F ⊏ G ⟺ T_F ⋐ φ⁻¹[T^G]`
    pub fsqf: bool,
    pub fsqf_witness: Option<(FinSubset, FinSubset)>,
    pub proximal: bool,
}

/// `φ_⊏(T) = {r : ∃F ⊆ T, F ⊏ {r}}`. A nonempty value that is not tight
/// is an [`Error::InvalidMap`]; an empty value leaves `T` outside the
/// domain unless `∅` is a point of the target.
pub fn sp_functor(m: &CoverMorphism) -> Result<SpReport> {
    let src = sp_object(m.source())?;
    let dst = sp_object(m.target())?;
    let sq = m.rel();
    let mut map = Vec::with_capacity(src.spectrum.len());
    for &t in src.spectrum.tight() {
        let img = t
            .subsets()
            .fold(FinSubset::EMPTY, |acc, f| acc.union(singleton_image(sq, f)));
        match dst.spectrum.index_of(img) {
            Some(i) => map.push(Some(i)),
            None if img.is_empty() => map.push(None),
            None => {
                return Err(Error::InvalidMap(format!(
                    "{} is sent to {}, which is not tight",
                    m.source().ground().format(t),
                    m.target().ground().format(img)
                )))
            }
        }
    }
    let map = SpaceMap::new(src.space.clone(), dst.space.clone(), map)?;

    let x = &src.space;
    let mut fsqf_witness = None;
    'outer: for f in 0..1u32 << m.source().len() {
        let tf = src.spectrum.t_lower(FinSubset(f));
        for g in 0..1u32 << m.target().len() {
            let (f, g) = (FinSubset(f), FinSubset(g));
            let pre = map.preimage(dst.spectrum.t_upper(g));
            if sq.get(f, g) != x.compact_contained(tf, pre)? {
                fsqf_witness = Some((f, g));
                break 'outer;
            }
        }
    }
    let proximal = map.is_proximal()?;
    Ok(SpReport {
        map,
        fsqf: fsqf_witness.is_none(),
        fsqf_witness,
        proximal,
    })
}

/// `λ(x) = S_x = {p : x ∈ p}`, from `space` to the spectrum of its `Ab`.
pub fn lambda(space: &FiniteSpace) -> Result<SpaceMap> {
    let ab = ab_object(space)?;
    let so = sp_object(&ab)?;
    let mut map = Vec::with_capacity(space.len());
    for x in 0..space.len() {
        let sx = space
            .subbasis()
            .iter()
            .enumerate()
            .filter(|(_, &p)| p >> x & 1 == 1)
            .fold(0u32, |m, (i, _)| m | 1 << i);
        match so.spectrum.index_of(FinSubset(sx)) {
            Some(i) => map.push(Some(i)),
            None => {
                return Err(Error::InvalidMap(format!(
                    "S_{} is not tight",
                    space.points()[x]
                )))
            }
        }
    }
    SpaceMap::new(space.clone(), so.space, map)
}

/// `◀` for a cover system and its inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct Triangle {
    pub object: SpObject,
    /// `Ab(Sp(S, ⊢))`
    pub ab: CoverSystem,
    /// `F_T ◀ G ⟺ F ⊢ G`, from `F(S_T)` to `F(S)`.
    pub forward: CoverMorphism,
    /// `F ◀⁻¹ G_T ⟺ F ⊢ G`, from `F(S)` to `F(S_T)`.
    pub inverse: CoverMorphism,
    /// Every `F` with the same `F_T` has the same row of `⊢`.
    pub well_defined: bool,
    /// Every `G` with the same `G_T` has the same column of `⊢`.
    pub inverse_well_defined: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleFlags {
    pub well_defined: bool,
    pub inverse_well_defined: bool,
}

/// Only for cover systems: well-definedness rests on the converse half of
/// the representation of `⊢` by `⋐`.
pub fn triangle(sys: &CoverSystem) -> Result<Triangle> {
    if !sys.classification().is_cover {
        return Err(Error::Precondition("◀ is only defined for cover systems".into()));
    }
    let object = sp_object(sys)?;
    let ab = ab_object(&object.space)?;
    let (n, k) = (sys.len(), ab.len());
    let vdash = sys.rel();
    let lifts: Vec<FinSubset> = (0..1u32 << n).map(|f| object.lift(FinSubset(f))).collect();

    let mut rep: Vec<Option<FinSubset>> = vec![None; 1 << k];
    let mut well_defined = true;
    for f in 0..1u32 << n {
        let f = FinSubset(f);
        match rep[lifts[f.code()].code()] {
            None => rep[lifts[f.code()].code()] = Some(f),
            Some(r) if vdash.row(r) != vdash.row(f) => well_defined = false,
            Some(_) => {}
        }
    }
    let mut inverse_well_defined = true;
    for g in 0..1u32 << n {
        let g = FinSubset(g);
        let r = rep[lifts[g.code()].code()].expect("every lift has a representative");
        if vdash.column(r) != vdash.column(g) {
            inverse_well_defined = false;
        }
    }
    let rep: Vec<FinSubset> = rep
        .into_iter()
        .map(|r| r.expect("F ↦ F_T is onto"))
        .collect();
    let fwd = Relation::from_fn(k, n, |ff, g| vdash.get(rep[ff.code()], g))?;
    let inv = Relation::from_fn(n, k, |f, gg| vdash.get(f, rep[gg.code()]))?;
    Ok(Triangle {
        forward: CoverMorphism::new(ab.clone(), sys.clone(), fwd)?,
        inverse: CoverMorphism::new(sys.clone(), ab.clone(), inv)?,
        object,
        ab,
        well_defined,
        inverse_well_defined,
    })
}

impl Triangle {
    pub fn flags(&self) -> TriangleFlags {
        TriangleFlags {
            well_defined: self.well_defined,
            inverse_well_defined: self.inverse_well_defined,
        }
    }
}

/// Ground set of a merged subbasis, for display.
pub fn merged_ground(object: &SpObject) -> Result<GroundSet> {
    GroundSet::new(object.space.subbasis_names().iter().cloned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::catalog;
    use crate::category::morphism::{check_cover_morphism, compose_morphisms, is_cover_morphism};

    #[test]
    fn ab_of_identity_is_the_topology_cover() {
        for sp in catalog::spaces(3).unwrap() {
            let m = ab_functor(&SpaceMap::identity(&sp)).unwrap();
            assert_eq!(*m.rel(), *topology_cover(&sp).unwrap().rel());
            assert!(is_cover_morphism(&m).unwrap());
        }
    }

    #[test]
    fn constant_map_to_the_open_point() {
        // Sierpiński: subbasis U = {1}, X; the constant map onto 1 pulls
        // back both U and X to the whole source
        let s = catalog::sierpinski_space().unwrap();
        let m = SpaceMap::new(s.clone(), s.clone(), vec![Some(1), Some(1)]).unwrap();
        let ab = ab_functor(&m).unwrap();
        let expected = Relation::from_fn(2, 2, |_, g| !g.is_empty()).unwrap();
        assert_eq!(*ab.rel(), expected);
        assert!(is_cover_morphism(&ab).unwrap());
    }

    #[test]
    fn partial_maps_break_the_right_equation() {
        let s = catalog::sierpinski_space().unwrap();
        let open = (0..2).find(|&x| s.nbhd(x).count_ones() == 1).unwrap();
        let mut m = vec![None, None];
        m[open] = Some(open);
        for map in [vec![None, None], m] {
            let phi = SpaceMap::new(s.clone(), s.clone(), map).unwrap();
            let c = check_cover_morphism(&ab_functor(&phi).unwrap()).unwrap();
            assert!(c.monotone && c.left_absorbs && !c.right_absorbs);
        }
    }

    #[test]
    fn sp_of_identity_is_identity() {
        for e in catalog::canonical_small_systems().unwrap() {
            if !e.system.classification().is_cover {
                continue;
            }
            let rep = sp_functor(&CoverMorphism::identity(&e.system)).unwrap();
            assert_eq!(rep.map, SpaceMap::identity(rep.map.source()), "{}", e.name);
            assert!(rep.fsqf && rep.proximal, "{}", e.name);
        }
    }

    #[test]
    fn lambda_on_sierpinski_is_a_bijection() {
        let s = catalog::sierpinski_space().unwrap();
        let l = lambda(&s).unwrap();
        let mut img: Vec<usize> = l.map().iter().map(|y| y.unwrap()).collect();
        img.sort_unstable();
        assert_eq!(img, vec![0, 1]);
        assert_eq!(l.target().len(), 2);
    }

    #[test]
    fn triangle_round_trips_on_catalog_covers() {
        for e in catalog::canonical_small_systems().unwrap() {
            if !e.system.classification().is_cover {
                assert!(triangle(&e.system).is_err());
                continue;
            }
            let t = triangle(&e.system).unwrap();
            assert!(t.well_defined && t.inverse_well_defined, "{}", e.name);
            assert!(is_cover_morphism(&t.forward).unwrap(), "{}", e.name);
            let there = compose_morphisms(&t.forward, &t.inverse).unwrap();
            assert_eq!(there.rel(), t.ab.rel(), "{}", e.name);
            let back = compose_morphisms(&t.inverse, &t.forward).unwrap();
            assert_eq!(back.rel(), e.system.rel(), "{}", e.name);
        }
    }

    #[test]
    fn merged_subbasis_for_equivalent_elements() {
        // s and t entail each other, so T_s = T_t
        let g = GroundSet::new(["s", "t"]).unwrap();
        let sys = CoverSystem::from_fn(g, |f, h| !f.is_empty() && !h.is_empty()).unwrap();
        assert!(sys.classification().is_cover);
        let t = triangle(&sys).unwrap();
        assert_eq!(t.object.space.subbasis().len(), 1);
        assert_eq!(merged_ground(&t.object).unwrap().names(), ["s~t".to_string()]);
        assert!(t.well_defined && t.inverse_well_defined);
        assert_eq!(compose_morphisms(&t.inverse, &t.forward).unwrap().rel(), sys.rel());
    }
}
