//! Definitional evaluation on small ground sets (at most 5 elements),
//! written directly against bit masks. Nothing here calls into the
//! library except to read a `Relation` out.

use coverkit::{FinSubset, Relation};

pub const MAX_N: usize = 5;

/// A relation from `F(L)` to `F(R)`; `rows[F]` has bit `G` set when `F ⊢ G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rel {
    pub l: usize,
    pub r: usize,
    pub rows: Vec<u64>,
}

fn bit(i: usize) -> usize {
    1 << i
}

fn members(s: usize, n: usize) -> impl Iterator<Item = usize> {
    (0..n).filter(move |&i| s >> i & 1 == 1)
}

/// Submasks of `m`, largest first.
pub fn submasks(m: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(m);
    std::iter::from_fn(move || {
        let s = next?;
        next = if s == 0 { None } else { Some((s - 1) & m) };
        Some(s)
    })
}

impl Rel {
    pub fn empty(l: usize, r: usize) -> Rel {
        assert!(l <= MAX_N && r <= MAX_N);
        Rel {
            l,
            r,
            rows: vec![0; 1 << l],
        }
    }

    pub fn from_lib(rel: &Relation) -> Rel {
        let mut out = Rel::empty(rel.left_len(), rel.right_len());
        for f in 0..1usize << out.l {
            for g in 0..1usize << out.r {
                if rel.get(FinSubset(f as u32), FinSubset(g as u32)) {
                    out.rows[f] |= 1 << g;
                }
            }
        }
        out
    }

    pub fn get(&self, f: usize, g: usize) -> bool {
        self.rows[f] >> g & 1 == 1
    }

    pub fn set(&mut self, f: usize, g: usize) {
        self.rows[f] |= 1 << g;
    }

    /// `{F : F ⊢ G}` as a mask over `F(L)`.
    pub fn col(&self, g: usize) -> u64 {
        (0..1usize << self.l)
            .filter(|&f| self.get(f, g))
            .fold(0, |m, f| m | 1 << f)
    }

    pub fn subset_of(&self, o: &Rel) -> bool {
        self.rows.iter().zip(&o.rows).all(|(a, b)| a & !b == 0)
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..1usize << self.l).flat_map(move |f| (0..1usize << self.r).map(move |g| (f, g)))
    }
}

/// Sets meeting every member of `fam`.
pub fn selections(fam: u64, n: usize) -> u64 {
    (0..1usize << n)
        .filter(|&x| (0..1usize << n).all(|f| fam >> f & 1 == 0 || x & f != 0))
        .fold(0, |m, x| m | 1 << x)
}

/// Sets containing some member of `fam`.
pub fn supersets(fam: u64, n: usize) -> u64 {
    (0..1usize << n)
        .filter(|&x| (0..1usize << n).any(|f| fam >> f & 1 == 1 && f & !x == 0))
        .fold(0, |m, x| m | 1 << x)
}

/// `r (a•b) t`, i.e. `𝓕 ⋈ 𝓖` (every selection of `𝓕` contains a member
/// of `𝓖`), read with the largest families `𝓕 = {F : r a F}` and
/// `𝓖 = {G : G b t}`.
pub fn compose(a: &Rel, b: &Rel) -> Rel {
    assert_eq!(a.r, b.l);
    let n = a.r;
    let ups: Vec<u64> = (0..1usize << b.r).map(|t| supersets(b.col(t), n)).collect();
    let mut out = Rel::empty(a.l, b.r);
    for f in 0..1usize << a.l {
        let sel = selections(a.rows[f], n);
        for (t, &up) in ups.iter().enumerate() {
            if sel & !up == 0 {
                out.set(f, t);
            }
        }
    }
    out
}

/// `r (a•b) t` by searching every pair of families `𝓕, 𝓖` with
/// `r a F` for all `F ∈ 𝓕`, `G b t` for all `G ∈ 𝓖` and `𝓕 ⋈ 𝓖`.
/// Families over at most 3 elements.
pub fn compose_literal(a: &Rel, b: &Rel) -> Rel {
    assert_eq!(a.r, b.l);
    let n = a.r;
    assert!(n <= 3, "literal search is for |S| ≤ 3");
    let count = 1usize << (1 << n);
    let sel: Vec<u64> = (0..count as u64).map(|f| selections(f, n)).collect();
    let sup: Vec<u64> = (0..count as u64).map(|f| supersets(f, n)).collect();
    let cols: Vec<u64> = (0..1usize << b.r).map(|t| b.col(t)).collect();
    let mut out = Rel::empty(a.l, b.r);
    for f in 0..1usize << a.l {
        for (t, &c) in cols.iter().enumerate() {
            let found = submasks(a.rows[f]).any(|ff| {
                submasks(c).any(|gg| sel[ff as usize] & !sup[gg as usize] == 0)
            });
            if found {
                out.set(f, t);
            }
        }
    }
    out
}

/// `F ⊢₁∃ G ⟺ ∃g ∈ G, F ⊢ {g}`.
pub fn one_exists(rel: &Rel) -> Rel {
    let mut out = Rel::empty(rel.l, rel.r);
    for f in 0..1usize << rel.l {
        for g in 0..1usize << rel.r {
            if members(g, rel.r).any(|i| rel.get(f, bit(i))) {
                out.set(f, g);
            }
        }
    }
    out
}

/// `F ⊩ G ⟺ ∀H (H ⊢ {f} for every f ∈ F ⟹ H ⊢ G)`.
pub fn vdash(rel: &Rel) -> Rel {
    let n = rel.l;
    let mut out = Rel::empty(n, n);
    for f in 0..1usize << n {
        for g in 0..1usize << n {
            let holds = (0..1usize << n)
                .all(|h| !members(f, n).all(|i| rel.get(h, bit(i))) || rel.get(h, g));
            if holds {
                out.set(f, g);
            }
        }
    }
    out
}

pub fn is_upper(rel: &Rel) -> bool {
    rel.pairs()
        .all(|(f, g)| !rel.get(f, g) || (0..rel.r).all(|s| rel.get(f, g | bit(s))))
}

pub fn is_lower(rel: &Rel) -> bool {
    rel.pairs()
        .all(|(f, g)| !rel.get(f, g) || (0..rel.l).all(|s| rel.get(f | bit(s), g)))
}

/// `{s} ∪ F ⊢ G ∧ F ⊢ G ∪ {s} ⟹ F ⊢ G`.
pub fn is_cut(rel: &Rel) -> bool {
    rel.pairs().all(|(f, g)| {
        rel.get(f, g) || (0..rel.l).all(|s| !(rel.get(f | bit(s), g) && rel.get(f, g | bit(s))))
    })
}

pub fn is_one_reflexive(rel: &Rel) -> bool {
    (0..rel.l).all(|s| rel.get(bit(s), bit(s)))
}

pub fn is_cut_transitive(rel: &Rel) -> bool {
    compose(rel, rel).subset_of(rel)
}

/// `H ⊢ G ∧ ∀h ∈ H (F ⊢ G ∪ {h}) ⟹ F ⊢ G`.
pub fn is_semicut(rel: &Rel) -> bool {
    let n = rel.l;
    rel.pairs().all(|(f, g)| {
        rel.get(f, g)
            || (0..1usize << n).all(|h| !(rel.get(h, g) && members(h, n).all(|i| rel.get(f, g | bit(i)))))
    })
}

/// `⊢ ⊆ ⊢•⊢₁∃`.
pub fn is_divisible(rel: &Rel) -> bool {
    rel.subset_of(&compose(rel, &one_exists(rel)))
}

/// Every flag, named as in the library's classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flags {
    pub upper: bool,
    pub lower: bool,
    pub monotone: bool,
    pub cut: bool,
    pub one_reflexive: bool,
    pub entailment: bool,
    pub scott: bool,
    pub cut_transitive: bool,
    pub semicut: bool,
    pub divisible: bool,
    pub strong_idempotent: bool,
    pub cover: bool,
    pub antisymmetric: bool,
}

impl Flags {
    pub fn as_array(&self) -> [bool; 13] {
        [
            self.upper,
            self.lower,
            self.monotone,
            self.cut,
            self.one_reflexive,
            self.entailment,
            self.scott,
            self.cut_transitive,
            self.semicut,
            self.divisible,
            self.strong_idempotent,
            self.cover,
            self.antisymmetric,
        ]
    }
}

pub fn flags(rel: &Rel) -> Flags {
    assert_eq!(rel.l, rel.r);
    let upper = is_upper(rel);
    let lower = is_lower(rel);
    let monotone = upper && lower;
    let cut = is_cut(rel);
    let one_reflexive = is_one_reflexive(rel);
    let cut_transitive = is_cut_transitive(rel);
    let divisible = is_divisible(rel);
    let strong_idempotent = monotone && divisible && cut_transitive;
    let vd = vdash(rel);
    let cover = strong_idempotent && compose(&vd, rel).subset_of(rel);
    let n = rel.l;
    let antisymmetric = (0..n).all(|s| (0..n).all(|t| s == t || !(vd.get(bit(s), bit(t)) && vd.get(bit(t), bit(s)))));
    Flags {
        upper,
        lower,
        monotone,
        cut,
        one_reflexive,
        entailment: monotone && cut,
        scott: monotone && cut && one_reflexive,
        cut_transitive,
        semicut: is_semicut(rel),
        divisible,
        strong_idempotent,
        cover,
        antisymmetric,
    }
}

/// Round: every `t ∈ T` has `F ⊆ T` with `F ⊢ {t}`. Prime: `F ⊆ T`,
/// `F ⊢ G` force `G ∩ T ≠ ∅`.
pub fn is_tight(rel: &Rel, t: usize) -> bool {
    let n = rel.l;
    let inside = |f: usize| f & !t == 0;
    let round = members(t, n).all(|s| (0..1usize << n).any(|f| inside(f) && rel.get(f, bit(s))));
    let prime = (0..1usize << n)
        .filter(|&f| inside(f))
        .all(|f| (0..1usize << n).all(|g| !rel.get(f, g) || g & t != 0));
    round && prime
}

/// All tight sets, `∅` included when tight, by ascending code.
pub fn tight_sets(rel: &Rel) -> Vec<usize> {
    (0..1usize << rel.l).filter(|&t| is_tight(rel, t)).collect()
}

/// `O ⋐ N` in the space whose opens are generated by `subbasis`: every
/// subfamily covering `N` covers `O`.
pub fn compact_contained(subbasis: &[u64], o: u64, n: u64) -> bool {
    (0..1u64 << subbasis.len()).all(|c| {
        let u = (0..subbasis.len())
            .filter(|&i| c >> i & 1 == 1)
            .fold(0, |m, i| m | subbasis[i]);
        n & !u != 0 || o & !u == 0
    })
}

/// Filters that are proper, nonempty and prime, found by checking every
/// subset against the order alone.
pub fn prime_filters(len: usize, leq: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    let meet_in = |p: usize, a: usize, b: usize| {
        // the greatest lower bound of a and b lies in p
        (0..len)
            .filter(|&c| leq(c, a) && leq(c, b))
            .find(|&c| (0..len).all(|d| !(leq(d, a) && leq(d, b)) || leq(d, c)))
            .is_some_and(|c| p >> c & 1 == 1)
    };
    let join = |a: usize, b: usize| {
        (0..len)
            .filter(|&c| leq(a, c) && leq(b, c))
            .find(|&c| (0..len).all(|d| !(leq(a, d) && leq(b, d)) || leq(c, d)))
            .expect("a lattice")
    };
    let full = (1usize << len) - 1;
    (1..full)
        .filter(|&p| {
            let has = |a: usize| p >> a & 1 == 1;
            let up = (0..len).all(|a| !has(a) || (0..len).all(|b| !leq(a, b) || has(b)));
            let meets = (0..len).all(|a| (0..len).all(|b| !(has(a) && has(b)) || meet_in(p, a, b)));
            let prime = (0..len).all(|a| (0..len).all(|b| !has(join(a, b)) || has(a) || has(b)));
            up && meets && prime
        })
        .collect()
}
