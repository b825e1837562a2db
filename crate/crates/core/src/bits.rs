//! Fixed-length bit vectors with the subset-lattice transforms used
//! throughout the crate.
//!
//! A `BitSet` of length `2^n` is read as a set of subset codes of an
//! `n`-element ground set. The transforms (`up_closure`, `down_closure`,
//! `restrict_with`) act word-parallel on that reading.

use std::fmt;

/// Masks selecting the bit positions whose index has bit `i` clear.
const LOW_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut b = BitSet {
            len,
            words: vec![!0; len.div_ceil(64)],
        };
        b.trim();
        b
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut b = BitSet::new(len);
        for i in 0..len {
            if f(i) {
                b.insert(i);
            }
        }
        b
    }

    fn trim(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] &= !(1 << (i & 63));
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        if v {
            self.insert(i)
        } else {
            self.remove(i)
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        *self == BitSet::full(self.len)
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn and_assign(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn or_assign(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn and_not_assign(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn and(&self, other: &BitSet) -> BitSet {
        let mut r = self.clone();
        r.and_assign(other);
        r
    }

    pub fn or(&self, other: &BitSet) -> BitSet {
        let mut r = self.clone();
        r.or_assign(other);
        r
    }

    pub fn and_not(&self, other: &BitSet) -> BitSet {
        let mut r = self.clone();
        r.and_not_assign(other);
        r
    }

    pub fn complement(&self) -> BitSet {
        let mut r = BitSet {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        r.trim();
        r
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Reads `self` as a set of subset codes over `n` elements and returns
    /// its closure under supersets.
    pub fn up_closure(&self, n: usize) -> BitSet {
        let mut r = self.clone();
        r.up_close_in_place(n);
        r
    }

    pub fn up_close_in_place(&mut self, n: usize) {
        debug_assert_eq!(self.len, 1 << n);
        for i in 0..n {
            if i < 6 {
                let sh = 1 << i;
                let m = LOW_MASKS[i];
                for w in &mut self.words {
                    *w |= (*w & m) << sh;
                }
            } else {
                let stride = 1 << (i - 6);
                let mut base = 0;
                while base < self.words.len() {
                    for k in base..base + stride {
                        self.words[k + stride] |= self.words[k];
                    }
                    base += 2 * stride;
                }
            }
        }
    }

    /// Closure under subsets, the dual of [`BitSet::up_closure`].
    pub fn down_closure(&self, n: usize) -> BitSet {
        let mut r = self.clone();
        r.down_close_in_place(n);
        r
    }

    pub fn down_close_in_place(&mut self, n: usize) {
        debug_assert_eq!(self.len, 1 << n);
        for i in 0..n {
            if i < 6 {
                let sh = 1 << i;
                let m = LOW_MASKS[i];
                for w in &mut self.words {
                    *w |= (*w & !m) >> sh;
                }
            } else {
                let stride = 1 << (i - 6);
                let mut base = 0;
                while base < self.words.len() {
                    for k in base..base + stride {
                        self.words[k] |= self.words[k + stride];
                    }
                    base += 2 * stride;
                }
            }
        }
    }

    /// Returns `B` with `B[G] = self[G ∪ {i}]` for every code `G`.
    pub fn restrict_with(&self, i: usize) -> BitSet {
        let mut r = self.clone();
        if i < 6 {
            let sh = 1 << i;
            let m = LOW_MASKS[i];
            for w in &mut r.words {
                let hi = *w & !m;
                *w = hi | (hi >> sh);
            }
        } else {
            let stride = 1 << (i - 6);
            let mut base = 0;
            while base < r.words.len() {
                for k in base..base + stride {
                    r.words[k] = r.words[k + stride];
                }
                base += 2 * stride;
            }
        }
        r
    }

    /// Maps every code `c` to `mask ^ c` where `mask = len - 1`, i.e. takes
    /// complements of the subsets represented.
    pub fn complement_codes(&self) -> BitSet {
        let mask = self.len - 1;
        let mut r = BitSet::new(self.len);
        for c in self.ones() {
            r.insert(mask ^ c);
        }
        r
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.ones()).finish()
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let t = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + t);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

/// Iterates over all submasks of `mask`, in increasing order.
pub fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some(((cur | !mask).wrapping_add(1)) & mask)
        };
        Some(cur)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_up(b: &BitSet, n: usize) -> BitSet {
        BitSet::from_fn(1 << n, |g| b.ones().any(|f| f & g == f))
    }

    fn naive_down(b: &BitSet, n: usize) -> BitSet {
        BitSet::from_fn(1 << n, |g| b.ones().any(|f| f & g == g))
    }

    #[test]
    fn closures_match_naive() {
        for n in 0..9 {
            for seed in 0..20u64 {
                let b = BitSet::from_fn(1 << n, |i| {
                    (i as u64 * 2654435761 + seed * 40503) % 37 < 3
                });
                assert_eq!(b.up_closure(n), naive_up(&b, n), "n={n}");
                assert_eq!(b.down_closure(n), naive_down(&b, n), "n={n}");
                for i in 0..n {
                    let r = b.restrict_with(i);
                    for g in 0..1 << n {
                        assert_eq!(r.contains(g), b.contains(g | 1 << i));
                    }
                }
            }
        }
    }

    #[test]
    fn submasks_enumerates_all() {
        let v: Vec<u32> = submasks(0b1010).collect();
        assert_eq!(v, vec![0, 2, 8, 10]);
        assert_eq!(submasks(0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(submasks(0b111).count(), 8);
    }

    #[test]
    fn complement_trims_tail() {
        let b = BitSet::new(70);
        let c = b.complement();
        assert_eq!(c.count(), 70);
        assert!(c.is_full());
    }
}
