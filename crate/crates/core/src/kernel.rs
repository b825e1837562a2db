//! Ground sets, finite subsets and families of finite subsets.
//!
//! A subset of an `n`-element ground set is its natural binary code
//! (bit `i` set iff element `i` is present). A family is a bit vector over
//! all `2^n` codes, so every family is canonically ordered by code.
//!
//! The operators here are the hitting-set style combinators everything else
//! is built on: selections `𝒬_≬`, supersets `𝒬^⊆`, the wedge `𝒬 ∧ 𝓡` and the
//! diagonal relation `𝓕 ⋈ 𝓖`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::limits;

/// An ordered list of distinct element labels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    names: Arc<[String]>,
}

impl GroundSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        limits::check_ground(names.len())?;
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::DuplicateLabel(a.clone()));
            }
        }
        Ok(GroundSet {
            names: names.into(),
        })
    }

    /// Ground set labelled `prefix0, prefix1, ...`.
    pub fn indexed(prefix: &str, n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    pub fn subset<S: AsRef<str>>(&self, names: &[S]) -> Result<FinSubset> {
        let mut s = FinSubset::EMPTY;
        for n in names {
            s = s.with(self.index(n.as_ref())?);
        }
        Ok(s)
    }

    pub fn full(&self) -> FinSubset {
        FinSubset::full(self.len())
    }

    /// Number of subsets, `2^n`.
    pub fn subsets(&self) -> usize {
        1 << self.len()
    }

    pub fn labels(&self, s: FinSubset) -> Vec<String> {
        s.iter().map(|i| self.names[i].clone()).collect()
    }

    pub fn format(&self, s: FinSubset) -> String {
        format!("{{{}}}", self.labels(s).join(","))
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

/// A finite subset, as its code over some ground set.
#[derive(
    Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, serde::Serialize, serde::Deserialize,
)]
#[serde(transparent)]
pub struct FinSubset(pub u32);

impl FinSubset {
    pub const EMPTY: FinSubset = FinSubset(0);

    pub fn full(n: usize) -> Self {
        FinSubset(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Self {
        FinSubset(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(Self::EMPTY, |s, i| s.with(i))
    }

    #[inline]
    pub fn code(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn with(self, i: usize) -> Self {
        FinSubset(self.0 | 1 << i)
    }

    #[inline]
    pub fn without(self, i: usize) -> Self {
        FinSubset(self.0 & !(1 << i))
    }

    #[inline]
    pub fn union(self, o: Self) -> Self {
        FinSubset(self.0 | o.0)
    }

    #[inline]
    pub fn intersection(self, o: Self) -> Self {
        FinSubset(self.0 & o.0)
    }

    #[inline]
    pub fn difference(self, o: Self) -> Self {
        FinSubset(self.0 & !o.0)
    }

    #[inline]
    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    #[inline]
    pub fn meets(self, o: Self) -> bool {
        self.0 & o.0 != 0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Element indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        })
    }

    /// All subsets of `self`, ascending by code.
    pub fn subsets(self) -> impl Iterator<Item = FinSubset> {
        crate::bits::submasks(self.0).map(FinSubset)
    }
}

impl fmt::Debug for FinSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// A set of subsets of an `n`-element ground set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Family {
    n: usize,
    bits: BitSet,
}

impl Family {
    pub fn empty(n: usize) -> Self {
        Family {
            n,
            bits: BitSet::new(1 << n),
        }
    }

    /// The whole of `F(S)`.
    pub fn all(n: usize) -> Self {
        Family {
            n,
            bits: BitSet::full(1 << n),
        }
    }

    pub fn from_bits(n: usize, bits: BitSet) -> Self {
        assert_eq!(bits.len(), 1 << n, "family bit vector has wrong length");
        Family { n, bits }
    }

    pub fn from_subsets<I: IntoIterator<Item = FinSubset>>(n: usize, it: I) -> Self {
        let mut f = Family::empty(n);
        for s in it {
            f.insert(s);
        }
        f
    }

    /// `𝟙F = {{f} : f ∈ F}`.
    pub fn singletons_of(n: usize, s: FinSubset) -> Self {
        Family::from_subsets(n, s.iter().map(FinSubset::singleton))
    }

    /// All subsets of `s`.
    pub fn powerset_of(n: usize, s: FinSubset) -> Self {
        Family::from_subsets(n, s.subsets())
    }

    pub fn ground_len(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub fn into_bits(self) -> BitSet {
        self.bits
    }

    pub fn contains(&self, s: FinSubset) -> bool {
        self.bits.contains(s.code())
    }

    pub fn insert(&mut self, s: FinSubset) {
        assert!(
            s.code() < 1 << self.n,
            "subset outside the family's ground set"
        );
        self.bits.insert(s.code());
    }

    pub fn remove(&mut self, s: FinSubset) {
        self.bits.remove(s.code());
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = FinSubset> + '_ {
        self.bits.ones().map(|c| FinSubset(c as u32))
    }

    pub fn codes(&self) -> Vec<u32> {
        self.bits.ones().map(|c| c as u32).collect()
    }

    fn same_ground(&self, other: &Family) -> Result<()> {
        if self.n != other.n {
            return Err(Error::GroundMismatch(format!(
                "families over {} and {} elements",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn is_subset(&self, other: &Family) -> bool {
        self.n == other.n && self.bits.is_subset(&other.bits)
    }

    pub fn union(&self, other: &Family) -> Result<Family> {
        self.same_ground(other)?;
        Ok(Family::from_bits(self.n, self.bits.or(&other.bits)))
    }

    pub fn intersection(&self, other: &Family) -> Result<Family> {
        self.same_ground(other)?;
        Ok(Family::from_bits(self.n, self.bits.and(&other.bits)))
    }

    /// Members of `self` that are not in `other`.
    pub fn difference(&self, other: &Family) -> Result<Family> {
        self.same_ground(other)?;
        Ok(Family::from_bits(self.n, self.bits.and_not(&other.bits)))
    }
}

impl Ord for Family {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for Family {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// `𝒬_≬`: the subsets meeting every member of `fam`.
///
/// `G` misses some `F ∈ 𝒬` iff `G ⊆ S∖F`, so the selections are the
/// complement of the down-closure of the complements of the members.
pub fn selections(fam: &Family) -> Family {
    Family::from_bits(fam.n, selections_bits(&fam.bits, fam.n))
}

pub(crate) fn selections_bits(bits: &BitSet, n: usize) -> BitSet {
    let mut d = bits.complement_codes();
    d.down_close_in_place(n);
    d.complement()
}

/// Reference implementation of [`selections`]: scans every candidate.
pub fn selections_scan(fam: &Family) -> Family {
    let members: Vec<FinSubset> = fam.iter().collect();
    let mut out = Family::empty(fam.n);
    for g in 0..1u32 << fam.n {
        let g = FinSubset(g);
        if members.iter().all(|f| f.meets(g)) {
            out.insert(g);
        }
    }
    out
}

/// `𝒬^⊆`: all supersets of members of `fam`.
pub fn supersets(fam: &Family) -> Family {
    Family::from_bits(fam.n, fam.bits.up_closure(fam.n))
}

/// `{F ∪ G : F ∈ famA, G ∈ famB}`.
pub fn wedge(fam_a: &Family, fam_b: &Family) -> Result<Family> {
    fam_a.same_ground(fam_b)?;
    let mut out = Family::empty(fam_a.n);
    for f in fam_a.iter() {
        for g in fam_b.iter() {
            out.insert(f.union(g));
        }
    }
    Ok(out)
}

/// The diagonal relation: `𝓕 ⋈ 𝓖` iff every selection of `𝓕` contains a
/// member of `𝓖`.
pub fn diagonal(fam_a: &Family, fam_b: &Family) -> Result<bool> {
    fam_a.same_ground(fam_b)?;
    Ok(selections(fam_a)
        .bits
        .is_subset(&fam_b.bits.up_closure(fam_b.n)))
}
