//! The cover relation on `F(QF S)` that is Karoubi isomorphic to a
//! monotone cut-idempotent `⊢`.

use serde::Serialize;

use super::quasi::{column_polar, default_mode, frame_model, Columns, FrameModel, DEFAULT_FRAME_CAP};
use crate::composition::cut_compose;
use crate::error::{Error, Result};
use crate::kernel::{FinSubset, GroundSet};
use crate::relations::{CoverSystem, Relation};

pub const DEFAULT_KAROUBI_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KaroubiReport {
    pub frame_size: usize,
    /// `⊏ = ⊏•⊢`
    pub sq_right: bool,
    /// `⊏ = ⊨•⊏`
    pub sq_left: bool,
    /// `⊏̄ = ⊏̄•⊨`
    pub sq_bar_right: bool,
    /// `⊏̄ = ⊢•⊏̄`
    pub sq_bar_left: bool,
    /// `⊏̄•⊏ = ⊢`
    pub source_round_trip: bool,
    /// `⊏•⊏̄ = ⊨`
    pub target_round_trip: bool,
    pub target_is_cover: bool,
}

impl KaroubiReport {
    pub fn passed(&self) -> bool {
        self.sq_right
            && self.sq_left
            && self.sq_bar_right
            && self.sq_bar_left
            && self.source_round_trip
            && self.target_round_trip
            && self.target_is_cover
    }
}

#[derive(Clone, Debug)]
pub struct KaroubiEnvelope {
    pub frame: FrameModel,
    /// `𝓕 ⊨ 𝓖 ⟺ ⋀𝓕 ≪ ⋁𝓖` on `F(QF S)`; ground element `i` is
    /// `frame.element(i)`.
    pub target: CoverSystem,
    /// `𝓕 ⊏ G ⟺ ⋀𝓕 ≪ G^⊣`, from `F(QF S)` to `F(S)`.
    pub sq: Relation,
    /// `F ⊏̄ 𝓖 ⟺ F ∈ ⋁𝓖`, from `F(S)` to `F(QF S)`.
    pub sq_bar: Relation,
    pub report: KaroubiReport,
}

/// Fold of a binary table over the members of every code, by DP on the
/// lowest member.
fn fold_codes(k: usize, unit: usize, op: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut out = vec![unit; 1 << k];
    for c in 1..1usize << k {
        let low = c.trailing_zeros() as usize;
        out[c] = op(out[c & (c - 1)], low);
    }
    out
}

pub fn karoubi_envelope(sys: &CoverSystem, cap: usize) -> Result<KaroubiEnvelope> {
    let n = sys.len();
    let fm = frame_model(sys, default_mode(n), DEFAULT_FRAME_CAP)?;
    if !fm.is_complete() {
        return Err(Error::Precondition(
            "the generated frame may miss quasi-ideals; the envelope needs all of them".into(),
        ));
    }
    let k = fm.len();
    if k > cap {
        return Err(Error::CapExceeded {
            what: "quasi-ideal frame",
            size: k,
            cap,
        });
    }
    let cols = Columns::new(sys);
    let meets = fold_codes(k, fm.top(), |a, b| fm.meet(a, b));
    let joins = fold_codes(k, fm.bottom(), |a, b| fm.join(a, b));

    let ground = GroundSet::indexed("q", k)?;
    let target = CoverSystem::from_fn(ground, |f, g| {
        fm.way_below_at(meets[f.code()], joins[g.code()])
    })?;

    // G^⊣ must itself be a quasi-ideal for ≪ to apply
    let mut polar_down = Vec::with_capacity(1 << n);
    for g in 0..1u32 << n {
        let p = column_polar(sys, FinSubset(g));
        let d = cols.downset(&p);
        if d != p {
            return Err(Error::Precondition(format!(
                "the column of {} is not a quasi-ideal",
                sys.ground().format(FinSubset(g))
            )));
        }
        polar_down.push(d);
    }
    let sq = Relation::from_fn(k, n, |f, g| {
        fm.element(meets[f.code()]).family().is_subset(&polar_down[g.code()])
    })?;
    let sq_bar = Relation::from_fn(n, k, |f, g| fm.element(joins[g.code()]).contains(f))?;

    let vdash = sys.rel();
    let vdash_t = target.rel();
    let report = KaroubiReport {
        frame_size: k,
        sq_right: cut_compose(&sq, vdash)? == sq,
        sq_left: cut_compose(vdash_t, &sq)? == sq,
        sq_bar_right: cut_compose(&sq_bar, vdash_t)? == sq_bar,
        sq_bar_left: cut_compose(vdash, &sq_bar)? == sq_bar,
        source_round_trip: cut_compose(&sq_bar, &sq)? == *vdash,
        target_round_trip: cut_compose(&sq, &sq_bar)? == *vdash_t,
        target_is_cover: target.classification().is_cover,
    };
    Ok(KaroubiEnvelope {
        frame: fm,
        target,
        sq,
        sq_bar,
        report,
    })
}

pub fn karoubi_envelope_default(sys: &CoverSystem) -> Result<KaroubiEnvelope> {
    karoubi_envelope(sys, DEFAULT_KAROUBI_CAP)
}
