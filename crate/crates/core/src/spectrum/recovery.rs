//! Recovering a finite space from the spectrum of its subbasis.

use serde::Serialize;

use super::space::{bits, homeomorphism, space_properties, FiniteSpace, PointSet};
use super::tight::{spectrum, tight_flags, Spectrum};
use crate::builders::topology_cover;
use crate::error::{Error, Result};
use crate::kernel::FinSubset;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecoveryReport {
    /// `S_x = {p : x ∈ p}` for every point
    pub images: Vec<FinSubset>,
    /// every `S_x` is tight
    pub tight: bool,
    pub injective: bool,
    /// `x ∈ p ⟺ S_x ∈ T_p`, and the image subspace is homeomorphic to `X`
    pub homeomorphic_onto_image: bool,
    pub very_dense: bool,
    pub surjective: bool,
    pub sober: bool,
    pub core_coherent: bool,
    /// `surjective ⟺ sober ∧ core coherent`
    pub consistent: bool,
}

/// Runs the round trip for a T0 space. For finite T0 spaces the map is
/// always onto, and a failure of that is reported as an error.
pub fn recovery(space: &FiniteSpace) -> Result<(RecoveryReport, Spectrum)> {
    let props = space_properties(space)?;
    if !props.t0 {
        return Err(Error::Precondition("space is not T0".into()));
    }
    let sys = topology_cover(space)?;
    let sp = spectrum(&sys)?;
    let sub = space.subbasis();
    let images: Vec<FinSubset> = (0..space.len())
        .map(|x| FinSubset::from_indices((0..sub.len()).filter(|&p| sub[p] >> x & 1 == 1)))
        .collect();
    let tight = images.iter().all(|&s| tight_flags(&sys, s).tight);
    let mut sorted = images.clone();
    sorted.sort();
    sorted.dedup();
    let injective = sorted.len() == images.len();
    let index: Vec<Option<usize>> = images.iter().map(|&s| sp.index_of(s)).collect();
    let image_mask: PointSet = index.iter().flatten().fold(0, |m, &i| m | 1 << i);
    let subbasic = (0..sub.len()).all(|p| {
        (0..space.len()).all(|x| {
            let in_tp = index[x].is_some_and(|i| sp.space().subbasis()[p] >> i & 1 == 1);
            (sub[p] >> x & 1 == 1) == in_tp
        })
    });
    let homeomorphic_onto_image = tight && injective && subbasic && {
        let pts: Vec<usize> = bits(image_mask).collect();
        let restrict = |m: PointSet| {
            pts.iter().enumerate().filter(|(_, &i)| m >> i & 1 == 1).fold(0u64, |a, (k, _)| a | 1 << k)
        };
        let subspace = FiniteSpace::new(
            pts.iter().map(|&i| sp.space().points()[i].clone()).collect(),
            sp.space().subbasis().iter().map(|&m| restrict(m)).collect(),
            sp.space().subbasis_names().to_vec(),
        )?;
        homeomorphism(space, &subspace).is_some()
    };
    let very_dense = sp.space().is_very_dense(image_mask);
    let surjective = image_mask == sp.space().full() && tight;
    let report = RecoveryReport {
        images,
        tight,
        injective,
        homeomorphic_onto_image,
        very_dense,
        surjective,
        sober: props.sober,
        core_coherent: props.core_coherent,
        consistent: surjective == (props.sober && props.core_coherent),
    };
    if props.sober && props.core_coherent && !surjective {
        return Err(Error::Precondition(
            "a finite T0 space was not recovered onto its spectrum".into(),
        ));
    }
    Ok((report, sp))
}
