//! Relations `⊢ ⊆ F(S)×F(T)` as dense boolean matrices, their polars and
//! structural predicates, and the derived relations `⊢₁∃`, `⊢_≬`, `⊢*`.
//!
//! Row `F` of a [`Relation`] is the bit vector `{G : F ⊢ G}` indexed by the
//! code of `G`. Predicates quantify over `(F, s)` explicitly and over `G`
//! one machine word at a time.
//!
//! For finite ground sets the extension `⊢_P` to arbitrary subsets agrees
//! with `⊢` whenever `⊢` is monotone, so no separate type is provided.

use std::fmt;
use std::sync::OnceLock;

use crate::axioms::{self, Classification};
use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::kernel::{selections_bits, Family, FinSubset, GroundSet};
use crate::limits;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    left: usize,
    right: usize,
    rows: Vec<BitSet>,
}

impl Relation {
    /// The empty relation between `F(L)` and `F(R)` with `|L| = left`,
    /// `|R| = right`.
    pub fn new(left: usize, right: usize) -> Result<Self> {
        limits::check_quadratic(left.max(right))?;
        Ok(Self::empty_unchecked(left, right))
    }

    pub(crate) fn empty_unchecked(left: usize, right: usize) -> Self {
        Relation {
            left,
            right,
            rows: vec![BitSet::new(1 << right); 1 << left],
        }
    }

    pub fn full(left: usize, right: usize) -> Result<Self> {
        limits::check_quadratic(left.max(right))?;
        Ok(Relation {
            left,
            right,
            rows: vec![BitSet::full(1 << right); 1 << left],
        })
    }

    pub fn from_fn(
        left: usize,
        right: usize,
        mut f: impl FnMut(FinSubset, FinSubset) -> bool,
    ) -> Result<Self> {
        let mut r = Self::new(left, right)?;
        for a in 0..1u32 << left {
            let row = &mut r.rows[a as usize];
            for b in 0..1u32 << right {
                if f(FinSubset(a), FinSubset(b)) {
                    row.insert(b as usize);
                }
            }
        }
        Ok(r)
    }

    pub fn from_rows(left: usize, right: usize, rows: Vec<BitSet>) -> Result<Self> {
        limits::check_quadratic(left.max(right))?;
        if rows.len() != 1 << left || rows.iter().any(|r| r.len() != 1 << right) {
            return Err(Error::Precondition(
                "row count or row length does not match the ground sizes".into(),
            ));
        }
        Ok(Relation { left, right, rows })
    }

    /// Pairs `(F, G)` given as subset codes.
    pub fn from_pairs<I>(left: usize, right: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (FinSubset, FinSubset)>,
    {
        let mut r = Self::new(left, right)?;
        for (a, b) in pairs {
            if a.code() >= 1 << left || b.code() >= 1 << right {
                return Err(Error::Precondition(format!(
                    "pair ({a:?}, {b:?}) outside the ground sets"
                )));
            }
            r.set(a, b, true);
        }
        Ok(r)
    }

    #[inline]
    pub fn left_len(&self) -> usize {
        self.left
    }

    #[inline]
    pub fn right_len(&self) -> usize {
        self.right
    }

    pub fn is_endo(&self) -> bool {
        self.left == self.right
    }

    #[inline]
    pub fn get(&self, f: FinSubset, g: FinSubset) -> bool {
        self.rows[f.code()].contains(g.code())
    }

    #[inline]
    pub fn set(&mut self, f: FinSubset, g: FinSubset, v: bool) {
        self.rows[f.code()].set(g.code(), v)
    }

    #[inline]
    pub fn row(&self, f: FinSubset) -> &BitSet {
        &self.rows[f.code()]
    }

    pub fn rows(&self) -> &[BitSet] {
        &self.rows
    }

    pub(crate) fn row_mut(&mut self, f: FinSubset) -> &mut BitSet {
        &mut self.rows[f.code()]
    }

    /// `{G : F ⊢ G}` as a family over the right ground set.
    pub fn row_family(&self, f: FinSubset) -> Family {
        Family::from_bits(self.right, self.rows[f.code()].clone())
    }

    /// `{F : F ⊢ G}` as a family over the left ground set.
    pub fn column(&self, g: FinSubset) -> BitSet {
        BitSet::from_fn(1 << self.left, |f| self.rows[f].contains(g.code()))
    }

    pub fn column_family(&self, g: FinSubset) -> Family {
        Family::from_bits(self.left, self.column(g))
    }

    /// The opposite relation `⊣`.
    pub fn transpose(&self) -> Relation {
        let mut t = Relation::empty_unchecked(self.right, self.left);
        for (f, row) in self.rows.iter().enumerate() {
            for g in row.ones() {
                t.rows[g].insert(f);
            }
        }
        t
    }

    pub fn pairs(&self) -> impl Iterator<Item = (FinSubset, FinSubset)> + '_ {
        self.rows.iter().enumerate().flat_map(|(f, row)| {
            row.ones()
                .map(move |g| (FinSubset(f as u32), FinSubset(g as u32)))
        })
    }

    pub fn count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(BitSet::is_empty)
    }

    pub fn is_full(&self) -> bool {
        self.rows.iter().all(BitSet::is_full)
    }

    fn same_shape(&self, other: &Relation) -> Result<()> {
        if self.left != other.left || self.right != other.right {
            return Err(Error::GroundMismatch(format!(
                "relations of shape {}x{} and {}x{}",
                self.left, self.right, other.left, other.right
            )));
        }
        Ok(())
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.left == other.left
            && self.right == other.right
            && self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    /// First pair of `self` missing from `other`, by code order.
    pub fn first_difference(&self, other: &Relation) -> Option<(FinSubset, FinSubset)> {
        for (f, (a, b)) in self.rows.iter().zip(&other.rows).enumerate() {
            if let Some(g) = a.and_not(b).first() {
                return Some((FinSubset(f as u32), FinSubset(g as u32)));
            }
        }
        None
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.same_shape(other)?;
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a.or(b)).collect();
        Ok(Relation {
            left: self.left,
            right: self.right,
            rows,
        })
    }

    pub fn intersection(&self, other: &Relation) -> Result<Relation> {
        self.same_shape(other)?;
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a.and(b)).collect();
        Ok(Relation {
            left: self.left,
            right: self.right,
            rows,
        })
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation({}x{}) ", self.left, self.right)?;
        f.debug_list().entries(self.pairs()).finish()
    }
}

fn check_left(rel: &Relation, q: &Family) -> Result<()> {
    if q.ground_len() != rel.left {
        return Err(Error::GroundMismatch(format!(
            "family over {} elements, relation rows over {}",
            q.ground_len(),
            rel.left
        )));
    }
    Ok(())
}

fn check_endo(rel: &Relation) -> Result<()> {
    if !rel.is_endo() {
        return Err(Error::NotEndorelation);
    }
    Ok(())
}

/// `Q^⊢ = {t : ∃q ∈ Q, q ⊢ t}`.
pub fn polar_exists(rel: &Relation, q: &Family) -> Result<Family> {
    check_left(rel, q)?;
    let mut acc = BitSet::new(1 << rel.right);
    for f in q.iter() {
        acc.or_assign(rel.row(f));
    }
    Ok(Family::from_bits(rel.right, acc))
}

/// `Q_⊢ = {t : ∀q ∈ Q, q ⊢ t}`.
pub fn polar_forall(rel: &Relation, q: &Family) -> Result<Family> {
    check_left(rel, q)?;
    let mut acc = BitSet::full(1 << rel.right);
    for f in q.iter() {
        acc.and_assign(rel.row(f));
    }
    Ok(Family::from_bits(rel.right, acc))
}

/// Structural predicates of an endorelation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct StructuralFlags {
    pub upper: bool,
    pub lower: bool,
    pub monotone: bool,
    pub cut: bool,
    pub one_reflexive: bool,
}

/// A counterexample to a predicate quantifying over `(F, G, s)` or
/// `(F, G, H)`; `s` is recorded as the singleton `{s}` in `extra`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Witness {
    pub f: FinSubset,
    pub g: FinSubset,
    pub extra: FinSubset,
}

pub fn structural_flags(rel: &Relation) -> Result<StructuralFlags> {
    check_endo(rel)?;
    let upper = upper_witness(rel).is_none();
    let lower = lower_witness(rel).is_none();
    Ok(StructuralFlags {
        upper,
        lower,
        monotone: upper && lower,
        cut: cut_witness(rel)?.is_none(),
        one_reflexive: one_reflexive_witness(rel)?.is_none(),
    })
}

/// Picks the witness with least `G`, then least `s`, among candidates
/// produced for a fixed `F`.
fn least_witness(
    f: FinSubset,
    cands: impl Iterator<Item = (usize, BitSet)>,
) -> Option<Witness> {
    cands
        .filter_map(|(s, bad)| bad.first().map(|g| (g, s)))
        .min()
        .map(|(g, s)| Witness {
            f,
            g: FinSubset(g as u32),
            extra: FinSubset::singleton(s),
        })
}

/// `F ⊢ G ⟹ F ⊢ G ∪ {s}`; returns the least violating `(F, G, s)`.
pub fn upper_witness(rel: &Relation) -> Option<Witness> {
    for fc in 0..1u32 << rel.left {
        let f = FinSubset(fc);
        let row = rel.row(f);
        let w = least_witness(
            f,
            (0..rel.right).map(|s| (s, row.and_not(&row.restrict_with(s)))),
        );
        if w.is_some() {
            return w;
        }
    }
    None
}

/// `F ⊢ G ⟹ F ∪ {s} ⊢ G`; returns the least violating `(F, G, s)`.
pub fn lower_witness(rel: &Relation) -> Option<Witness> {
    for fc in 0..1u32 << rel.left {
        let f = FinSubset(fc);
        let row = rel.row(f);
        let w = least_witness(
            f,
            FinSubset::full(rel.left)
                .difference(f)
                .iter()
                .map(|s| (s, row.and_not(rel.row(f.with(s))))),
        );
        if w.is_some() {
            return w;
        }
    }
    None
}

pub fn is_upper(rel: &Relation) -> bool {
    upper_witness(rel).is_none()
}

pub fn is_lower(rel: &Relation) -> bool {
    lower_witness(rel).is_none()
}

pub fn is_monotone(rel: &Relation) -> bool {
    is_upper(rel) && is_lower(rel)
}

/// Gentzen's cut rule `{s} ∪ F ⊢ G ∧ F ⊢ G ∪ {s} ⟹ F ⊢ G`.
pub fn cut_witness(rel: &Relation) -> Result<Option<Witness>> {
    check_endo(rel)?;
    let n = rel.left;
    for fc in 0..1u32 << n {
        let f = FinSubset(fc);
        let row = rel.row(f);
        let w = least_witness(
            f,
            (0..n).filter(|&s| !f.contains(s)).map(|s| {
                let mut both = rel.row(f.with(s)).and(&row.restrict_with(s));
                both.and_not_assign(row);
                (s, both)
            }),
        );
        if w.is_some() {
            return Ok(w);
        }
    }
    Ok(None)
}

/// `{s} ⊢ {s}` for every `s`; the witness is `({s}, {s}, {s})`.
pub fn one_reflexive_witness(rel: &Relation) -> Result<Option<Witness>> {
    check_endo(rel)?;
    Ok((0..rel.left).map(FinSubset::singleton).find(|&s| !rel.get(s, s)).map(
        |s| Witness {
            f: s,
            g: s,
            extra: s,
        },
    ))
}

/// `F ⊢₁∃ G ⟺ ∃g ∈ G, F ⊢ {g}`.
pub fn one_exists(rel: &Relation) -> Relation {
    let mut out = Relation::empty_unchecked(rel.left, rel.right);
    for fc in 0..1u32 << rel.left {
        let f = FinSubset(fc);
        let hits = singleton_image(rel, f);
        let row = out.row_mut(f);
        for g in 0..1u32 << rel.right {
            if g & hits.0 != 0 {
                row.insert(g as usize);
            }
        }
    }
    out
}

/// `F ⊢₁∀ G ⟺ ∀g ∈ G, F ⊢ {g}`.
pub fn one_forall(rel: &Relation) -> Relation {
    let mut out = Relation::empty_unchecked(rel.left, rel.right);
    for fc in 0..1u32 << rel.left {
        let f = FinSubset(fc);
        let hits = singleton_image(rel, f);
        let row = out.row_mut(f);
        for g in hits.subsets() {
            row.insert(g.code());
        }
    }
    out
}

/// The left universal extension through singleton rows:
/// `F ₁∀⊢ G ⟺ ∀f ∈ F, {f} ⊢ G`.
pub fn forall_one(rel: &Relation) -> Relation {
    let mut out = Relation::empty_unchecked(rel.left, rel.right);
    for fc in 0..1u32 << rel.left {
        let f = FinSubset(fc);
        let mut acc = BitSet::full(1 << rel.right);
        for i in f.iter() {
            acc.and_assign(rel.row(FinSubset::singleton(i)));
        }
        *out.row_mut(f) = acc;
    }
    out
}

/// `{g : F ⊢ {g}}` as a subset of the right ground set.
pub fn singleton_image(rel: &Relation, f: FinSubset) -> FinSubset {
    let row = rel.row(f);
    FinSubset::from_indices((0..rel.right).filter(|&g| row.contains(1 << g)))
}

/// `F ⊢_≬ 𝒬`: `F ⊢ G` for every `G ∈ 𝒬_≬`.
pub fn between(rel: &Relation, f: FinSubset, fam: &Family) -> Result<bool> {
    if fam.ground_len() != rel.right {
        return Err(Error::GroundMismatch(
            "family is not over the relation's right ground set".into(),
        ));
    }
    Ok(selections_bits(fam.bits(), rel.right).is_subset(rel.row(f)))
}

/// `𝓕 ⊢* 𝓖 ⟺ ∀F ∈ 𝓕 ∃G ∈ 𝓖, F ⊢ {g} for all g ∈ G`.
pub fn star(rel: &Relation, fam_a: &Family, fam_b: &Family) -> Result<bool> {
    if fam_a.ground_len() != rel.left || fam_b.ground_len() != rel.right {
        return Err(Error::GroundMismatch(
            "families do not match the relation's ground sets".into(),
        ));
    }
    Ok(fam_a.iter().all(|f| {
        let img = singleton_image(rel, f);
        fam_b.iter().any(|g| g.is_subset(img))
    }))
}

/// The existential extension of an element-level relation `⊢ ⊆ R × S`,
/// given as the list of images of `r ∈ R`: `r ⊢∃ G ⟺ ∃g ∈ G, r ⊢ g`.
///
/// Rows are indexed by `F(R)` and only singleton rows `{r}` are filled.
pub fn exists_extension(images: &[FinSubset], right: usize) -> Result<Relation> {
    let left = images.len();
    let mut out = Relation::new(left, right)?;
    for (r, img) in images.iter().enumerate() {
        let row = out.row_mut(FinSubset::singleton(r));
        for g in 0..1u32 << right {
            if g & img.0 != 0 {
                row.insert(g as usize);
            }
        }
    }
    Ok(out)
}

/// The universal extension `r ⊢∀ G ⟺ ∀g ∈ G, r ⊢ g`, in the same layout
/// as [`exists_extension`].
pub fn forall_extension(images: &[FinSubset], right: usize) -> Result<Relation> {
    let left = images.len();
    let mut out = Relation::new(left, right)?;
    for (r, img) in images.iter().enumerate() {
        let row = out.row_mut(FinSubset::singleton(r));
        for g in img.subsets() {
            row.insert(g.code());
        }
    }
    Ok(out)
}

/// A ground set together with an endorelation on its finite subsets.
///
/// The axiom classification is cached; for `n ≤ 8` it is computed on
/// construction.
#[derive(Clone)]
pub struct CoverSystem {
    ground: GroundSet,
    rel: Relation,
    class: OnceLock<Classification>,
}

pub const EAGER_CLASSIFY_MAX: usize = 8;

impl CoverSystem {
    pub fn new(ground: GroundSet, rel: Relation) -> Result<Self> {
        if rel.left != ground.len() || rel.right != ground.len() {
            return Err(Error::GroundMismatch(format!(
                "relation of shape {}x{} over a ground set of {} elements",
                rel.left,
                rel.right,
                ground.len()
            )));
        }
        let sys = CoverSystem {
            ground,
            rel,
            class: OnceLock::new(),
        };
        if sys.len() <= EAGER_CLASSIFY_MAX {
            sys.classification();
        }
        Ok(sys)
    }

    /// Builds the system without classifying it, even for small `n`.
    pub fn new_lazy(ground: GroundSet, rel: Relation) -> Result<Self> {
        if rel.left != ground.len() || rel.right != ground.len() {
            return Err(Error::GroundMismatch("relation does not fit ground".into()));
        }
        Ok(CoverSystem {
            ground,
            rel,
            class: OnceLock::new(),
        })
    }

    pub fn from_fn(
        ground: GroundSet,
        f: impl FnMut(FinSubset, FinSubset) -> bool,
    ) -> Result<Self> {
        let n = ground.len();
        Self::new(ground, Relation::from_fn(n, n, f)?)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn rel(&self) -> &Relation {
        &self.rel
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    #[inline]
    pub fn entails(&self, f: FinSubset, g: FinSubset) -> bool {
        self.rel.get(f, g)
    }

    pub fn classification(&self) -> &Classification {
        self.class.get_or_init(|| axioms::classify_relation(&self.rel))
    }

    /// Whether the classification has been computed yet.
    pub fn is_classified(&self) -> bool {
        self.class.get().is_some()
    }
}

impl PartialEq for CoverSystem {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.rel == other.rel
    }
}

impl Eq for CoverSystem {}

impl fmt::Debug for CoverSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoverSystem")
            .field("ground", &self.ground)
            .field("pairs", &self.rel.count())
            .finish()
    }
}
