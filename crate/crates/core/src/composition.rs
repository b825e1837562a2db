//! Cut-composition `⊢•⊨` and ordinary relational composition.
//!
//! `r (⊢•⊨) t` holds when some `𝓕 ⋈ 𝓖` has `r ⊢ F` for all `F ∈ 𝓕` and
//! `G ⊨ t` for all `G ∈ 𝓖`. Enlarging `𝓕` shrinks `𝓕_≬` and enlarging `𝓖`
//! enlarges `𝓖^⊆`, so the row `𝓕* = {F : r ⊢ F}` and the column
//! `𝓖* = {G : G ⊨ t}` are optimal witnesses. When `⊨` is lower, `𝓖*` is
//! already up-closed and `r (⊢•⊨) t` reduces to `𝓕*_≬ ⊨ t`.

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::kernel::{selections_bits, FinSubset};
use crate::relations::{is_lower, Relation};

fn check_inner(a: &Relation, b: &Relation) -> Result<()> {
    if a.right_len() != b.left_len() {
        return Err(Error::GroundMismatch(format!(
            "cannot compose {}x{} with {}x{}",
            a.left_len(),
            a.right_len(),
            b.left_len(),
            b.right_len()
        )));
    }
    Ok(())
}

/// `⊢•⊨` for lower `⊨`: row `r` is the intersection of the rows of `⊨`
/// over the selections of row `r` of `⊢`.
///
/// Fails with [`Error::NotLower`] when `⊨` is not lower; see
/// [`cut_compose_general`] for that case.
pub fn cut_compose(a: &Relation, b: &Relation) -> Result<Relation> {
    check_inner(a, b)?;
    if !is_lower(b) {
        return Err(Error::NotLower);
    }
    Ok(cut_compose_lower_unchecked(a, b))
}

pub(crate) fn cut_compose_lower_unchecked(a: &Relation, b: &Relation) -> Relation {
    let m = a.right_len();
    let mut out = Relation::empty_unchecked(a.left_len(), b.right_len());
    for rc in 0..1u32 << a.left_len() {
        let r = FinSubset(rc);
        let sel = selections_bits(a.row(r), m);
        let mut acc = BitSet::full(1 << b.right_len());
        for g in sel.ones() {
            acc.and_assign(b.row(FinSubset(g as u32)));
            if acc.is_empty() {
                break;
            }
        }
        *out.row_mut(r) = acc;
    }
    out
}

/// `⊢•⊨` for arbitrary `⊨`: `r (⊢•⊨) t ⟺ (𝓕*)_≬ ⊆ (𝓖*)^⊆`.
pub fn cut_compose_general(a: &Relation, b: &Relation) -> Result<Relation> {
    check_inner(a, b)?;
    let m = a.right_len();
    let cols: Vec<BitSet> = b
        .transpose()
        .rows()
        .iter()
        .map(|c| c.up_closure(m))
        .collect();
    let mut out = Relation::empty_unchecked(a.left_len(), b.right_len());
    for rc in 0..1u32 << a.left_len() {
        let r = FinSubset(rc);
        let sel = selections_bits(a.row(r), m);
        let row = out.row_mut(r);
        for (t, col) in cols.iter().enumerate() {
            if sel.is_subset(col) {
                row.insert(t);
            }
        }
    }
    Ok(out)
}

/// Ordinary composition: `r (⊢∘⊨) t ⟺ ∃M, r ⊢ M ⊨ t`.
pub fn compose_ordinary(a: &Relation, b: &Relation) -> Result<Relation> {
    check_inner(a, b)?;
    let mut out = Relation::empty_unchecked(a.left_len(), b.right_len());
    for rc in 0..1u32 << a.left_len() {
        let r = FinSubset(rc);
        let mut acc = BitSet::new(1 << b.right_len());
        for mid in a.row(r).ones() {
            acc.or_assign(b.row(FinSubset(mid as u32)));
        }
        *out.row_mut(r) = acc;
    }
    Ok(out)
}
