//! The axiom hierarchy on endorelations of `F(S)`: entailment, Scott,
//! semicut, cut-transitive, divisible, strong idempotent and cover, plus the
//! derived relation `⊩` and auxiliarity.
//!
//! Every predicate evaluates its defining quantifiers directly. The only
//! shortcut is the maximal-witness evaluation of cut-composition.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bits::BitSet;
use crate::composition::{cut_compose_general, cut_compose_lower_unchecked};
use crate::error::{Error, Result};
use crate::kernel::FinSubset;
use crate::relations::{
    cut_witness, is_lower, lower_witness, one_exists, one_reflexive_witness, upper_witness,
    CoverSystem, Relation, Witness,
};

/// One flag per axiom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Classification {
    pub is_upper: bool,
    pub is_lower: bool,
    pub is_monotone: bool,
    pub is_cut: bool,
    pub is_one_reflexive: bool,
    pub is_entailment: bool,
    pub is_scott: bool,
    pub is_cut_transitive: bool,
    pub is_semicut: bool,
    pub is_divisible: bool,
    pub is_strong_idempotent: bool,
    pub is_cover: bool,
    pub is_antisymmetric: bool,
}

impl Classification {
    pub fn get(&self, axiom: Axiom) -> bool {
        match axiom {
            Axiom::Upper => self.is_upper,
            Axiom::Lower => self.is_lower,
            Axiom::Monotone => self.is_monotone,
            Axiom::Cut => self.is_cut,
            Axiom::OneReflexive => self.is_one_reflexive,
            Axiom::Entailment => self.is_entailment,
            Axiom::Scott => self.is_scott,
            Axiom::CutTransitive => self.is_cut_transitive,
            Axiom::Semicut => self.is_semicut,
            Axiom::Divisible => self.is_divisible,
            Axiom::StrongIdempotent => self.is_strong_idempotent,
            Axiom::Cover => self.is_cover,
            Axiom::Antisymmetric => self.is_antisymmetric,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Upper,
    Lower,
    Monotone,
    Cut,
    OneReflexive,
    Entailment,
    Scott,
    CutTransitive,
    Semicut,
    Divisible,
    StrongIdempotent,
    Cover,
    Antisymmetric,
}

impl Axiom {
    pub const ALL: [Axiom; 13] = [
        Axiom::Upper,
        Axiom::Lower,
        Axiom::Monotone,
        Axiom::Cut,
        Axiom::OneReflexive,
        Axiom::Entailment,
        Axiom::Scott,
        Axiom::CutTransitive,
        Axiom::Semicut,
        Axiom::Divisible,
        Axiom::StrongIdempotent,
        Axiom::Cover,
        Axiom::Antisymmetric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Upper => "upper",
            Axiom::Lower => "lower",
            Axiom::Monotone => "monotone",
            Axiom::Cut => "cut",
            Axiom::OneReflexive => "one_reflexive",
            Axiom::Entailment => "entailment",
            Axiom::Scott => "scott",
            Axiom::CutTransitive => "cut_transitive",
            Axiom::Semicut => "semicut",
            Axiom::Divisible => "divisible",
            Axiom::StrongIdempotent => "strong_idempotent",
            Axiom::Cover => "cover",
            Axiom::Antisymmetric => "antisymmetric",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        let norm = match norm.as_str() {
            "1_reflexive" | "reflexive" => "one_reflexive".to_string(),
            _ => norm,
        };
        Axiom::ALL
            .into_iter()
            .find(|a| a.name() == norm)
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
}

fn check_endo(rel: &Relation) -> Result<()> {
    if !rel.is_endo() {
        return Err(Error::NotEndorelation);
    }
    Ok(())
}

fn pair_witness(p: Option<(FinSubset, FinSubset)>) -> Option<Witness> {
    p.map(|(f, g)| Witness {
        f,
        g,
        extra: FinSubset::EMPTY,
    })
}

/// Cut-composition that picks the lower fast path when it applies.
fn compose(a: &Relation, b: &Relation) -> Relation {
    if is_lower(b) {
        cut_compose_lower_unchecked(a, b)
    } else {
        cut_compose_general(a, b).expect("shapes checked by caller")
    }
}

/// `F ⊩ G ⟺ ∀H (H ⊢ {f} for all f ∈ F ⟹ H ⊢ G)`.
pub fn derive_vdash(rel: &Relation) -> Result<Relation> {
    check_endo(rel)?;
    let n = rel.left_len();
    let cols: Vec<BitSet> = (0..n).map(|s| rel.column(FinSubset::singleton(s))).collect();
    // below[F] = {H : H ⊢ {f} for every f ∈ F}
    let mut below = vec![BitSet::full(1 << n); 1 << n];
    for fc in 1usize..1 << n {
        let low = fc.trailing_zeros() as usize;
        below[fc] = below[fc & (fc - 1)].and(&cols[low]);
    }
    let mut out = Relation::empty_unchecked(n, n);
    for (fc, hs) in below.iter().enumerate() {
        let mut acc = BitSet::full(1 << n);
        for h in hs.ones() {
            acc.and_assign(rel.row(FinSubset(h as u32)));
            if acc.is_empty() {
                break;
            }
        }
        *out.row_mut(FinSubset(fc as u32)) = acc;
    }
    Ok(out)
}

/// `⊢` auxiliary to `⊨`: `∀h ∈ H ({h} ∪ F ⊢ G) ∧ F ⊨ H ⟹ F ⊢ G`.
///
/// `a ⊆ F(S)×F(T)` plays `⊢` and the endorelation `b` on `F(S)` plays `⊨`.
/// The witness is `(F, G, H)`, least in that order.
pub fn auxiliary_witness(a: &Relation, b: &Relation) -> Result<Option<Witness>> {
    check_endo(b)?;
    if a.left_len() != b.left_len() {
        return Err(Error::GroundMismatch(
            "auxiliarity needs both relations to have the same left ground".into(),
        ));
    }
    let n = b.left_len();
    let rwidth = 1 << a.right_len();
    let mut hyp = vec![BitSet::full(rwidth); 1 << n];
    for fc in 0..1u32 << n {
        let f = FinSubset(fc);
        let brow = b.row(f);
        if brow.is_empty() {
            continue;
        }
        let arow = a.row(f);
        // hyp[H] = {G : {h} ∪ F ⊢ G for all h ∈ H}
        for hc in 1usize..1 << n {
            let low = hc.trailing_zeros() as usize;
            hyp[hc] = hyp[hc & (hc - 1)].and(a.row(f.with(low)));
        }
        let mut best: Option<(usize, usize)> = None;
        for hc in brow.ones() {
            if let Some(g) = hyp[hc].and_not(arow).first() {
                if best.is_none_or(|b| (g, hc) < b) {
                    best = Some((g, hc));
                }
            }
        }
        if let Some((g, h)) = best {
            return Ok(Some(Witness {
                f,
                g: FinSubset(g as u32),
                extra: FinSubset(h as u32),
            }));
        }
    }
    Ok(None)
}

pub fn is_auxiliary(a: &Relation, b: &Relation) -> Result<bool> {
    Ok(auxiliary_witness(a, b)?.is_none())
}

/// `H ⊢ G ∧ ∀h ∈ H (F ⊢ G ∪ {h}) ⟹ F ⊢ G`; witness `(F, G, H)`.
pub fn semicut_witness(rel: &Relation) -> Result<Option<Witness>> {
    check_endo(rel)?;
    let n = rel.left_len();
    let mut hyp = vec![BitSet::full(1 << n); 1 << n];
    for fc in 0..1u32 << n {
        let f = FinSubset(fc);
        let row = rel.row(f);
        let shifted: Vec<BitSet> = (0..n).map(|h| row.restrict_with(h)).collect();
        for hc in 1usize..1 << n {
            let low = hc.trailing_zeros() as usize;
            hyp[hc] = hyp[hc & (hc - 1)].and(&shifted[low]);
        }
        let mut best: Option<(usize, usize)> = None;
        for (hc, hy) in hyp.iter().enumerate() {
            let mut bad = rel.row(FinSubset(hc as u32)).and(hy);
            bad.and_not_assign(row);
            if let Some(g) = bad.first() {
                if best.is_none_or(|b| (g, hc) < b) {
                    best = Some((g, hc));
                }
            }
        }
        if let Some((g, h)) = best {
            return Ok(Some(Witness {
                f,
                g: FinSubset(g as u32),
                extra: FinSubset(h as u32),
            }));
        }
    }
    Ok(None)
}

pub fn is_semicut(rel: &Relation) -> Result<bool> {
    Ok(semicut_witness(rel)?.is_none())
}

/// `⊢•⊢ ⊆ ⊢`; the witness is the least pair of `⊢•⊢` outside `⊢`.
pub fn cut_transitive_witness(rel: &Relation) -> Result<Option<Witness>> {
    check_endo(rel)?;
    Ok(pair_witness(compose(rel, rel).first_difference(rel)))
}

pub fn is_cut_transitive(rel: &Relation) -> Result<bool> {
    Ok(cut_transitive_witness(rel)?.is_none())
}

/// `⊢ ⊆ ⊢•⊢₁∃`; the witness is the least pair of `⊢` outside the right side.
pub fn divisible_witness(rel: &Relation) -> Result<Option<Witness>> {
    check_endo(rel)?;
    let e = one_exists(rel);
    Ok(pair_witness(rel.first_difference(&compose(rel, &e))))
}

pub fn is_divisible(rel: &Relation) -> Result<bool> {
    Ok(divisible_witness(rel)?.is_none())
}

pub fn is_strong_idempotent(rel: &Relation) -> Result<bool> {
    check_endo(rel)?;
    Ok(upper_witness(rel).is_none()
        && lower_witness(rel).is_none()
        && is_divisible(rel)?
        && is_cut_transitive(rel)?)
}

/// For a strong idempotent: the least pair of `⊩•⊢` outside `⊢`.
fn cover_gap(rel: &Relation, vdash: &Relation) -> Option<Witness> {
    pair_witness(cut_compose_lower_unchecked(vdash, rel).first_difference(rel))
}

/// A strong idempotent with `⊩•⊢ ⊆ ⊢`.
pub fn is_cover(rel: &Relation) -> Result<bool> {
    if !is_strong_idempotent(rel)? {
        return Ok(false);
    }
    Ok(cover_gap(rel, &derive_vdash(rel)?).is_none())
}

/// `s ⊩ t ∧ t ⊩ s ⟹ s = t` on singletons; the witness is `({s}, {t}, ∅)`.
fn antisymmetry_witness(vdash: &Relation) -> Option<Witness> {
    let n = vdash.left_len();
    for s in 0..n {
        for t in s + 1..n {
            let (a, b) = (FinSubset::singleton(s), FinSubset::singleton(t));
            if vdash.get(a, b) && vdash.get(b, a) {
                return Some(Witness {
                    f: a,
                    g: b,
                    extra: FinSubset::EMPTY,
                });
            }
        }
    }
    None
}

pub fn is_antisymmetric(rel: &Relation) -> Result<bool> {
    Ok(antisymmetry_witness(&derive_vdash(rel)?).is_none())
}

/// Fills every flag. Panics on a non-endorelation; systems always carry one.
pub fn classify_relation(rel: &Relation) -> Classification {
    assert!(rel.is_endo(), "classification needs an endorelation");
    let is_upper = upper_witness(rel).is_none();
    let is_lower = lower_witness(rel).is_none();
    let is_monotone = is_upper && is_lower;
    let is_cut = cut_witness(rel).unwrap().is_none();
    let is_one_reflexive = one_reflexive_witness(rel).unwrap().is_none();
    let is_entailment = is_monotone && is_cut;
    let is_scott = is_entailment && is_one_reflexive;
    let is_cut_transitive = is_cut_transitive(rel).unwrap();
    let is_semicut = is_semicut(rel).unwrap();
    let is_divisible = is_divisible(rel).unwrap();
    let is_strong_idempotent = is_monotone && is_divisible && is_cut_transitive;
    let vdash = derive_vdash(rel).unwrap();
    let is_cover = is_strong_idempotent && cover_gap(rel, &vdash).is_none();
    let is_antisymmetric = antisymmetry_witness(&vdash).is_none();
    Classification {
        is_upper,
        is_lower,
        is_monotone,
        is_cut,
        is_one_reflexive,
        is_entailment,
        is_scott,
        is_cut_transitive,
        is_semicut,
        is_divisible,
        is_strong_idempotent,
        is_cover,
        is_antisymmetric,
    }
}

/// The (cached) classification of a system.
pub fn classify(sys: &CoverSystem) -> Classification {
    *sys.classification()
}

/// A witness for the failure of `axiom`, or `None` if it holds.
///
/// For conjunctive axioms the witness of the first failing conjunct is
/// returned, together with that conjunct.
pub fn counterexample(rel: &Relation, axiom: Axiom) -> Result<Option<(Axiom, Witness)>> {
    check_endo(rel)?;
    let tag = |a: Axiom, w: Option<Witness>| w.map(|w| (a, w));
    let first = |list: &[Axiom]| -> Result<Option<(Axiom, Witness)>> {
        for &a in list {
            if let Some(w) = counterexample(rel, a)? {
                return Ok(Some(w));
            }
        }
        Ok(None)
    };
    match axiom {
        Axiom::Upper => Ok(tag(axiom, upper_witness(rel))),
        Axiom::Lower => Ok(tag(axiom, lower_witness(rel))),
        Axiom::Cut => Ok(tag(axiom, cut_witness(rel)?)),
        Axiom::OneReflexive => Ok(tag(axiom, one_reflexive_witness(rel)?)),
        Axiom::CutTransitive => Ok(tag(axiom, cut_transitive_witness(rel)?)),
        Axiom::Semicut => Ok(tag(axiom, semicut_witness(rel)?)),
        Axiom::Divisible => Ok(tag(axiom, divisible_witness(rel)?)),
        Axiom::Antisymmetric => Ok(tag(axiom, antisymmetry_witness(&derive_vdash(rel)?))),
        Axiom::Monotone => first(&[Axiom::Upper, Axiom::Lower]),
        Axiom::Entailment => first(&[Axiom::Upper, Axiom::Lower, Axiom::Cut]),
        Axiom::Scott => first(&[Axiom::Upper, Axiom::Lower, Axiom::Cut, Axiom::OneReflexive]),
        Axiom::StrongIdempotent => first(&[
            Axiom::Upper,
            Axiom::Lower,
            Axiom::Divisible,
            Axiom::CutTransitive,
        ]),
        Axiom::Cover => {
            if let Some(w) = counterexample(rel, Axiom::StrongIdempotent)? {
                return Ok(Some(w));
            }
            Ok(tag(axiom, cover_gap(rel, &derive_vdash(rel)?)))
        }
    }
}
