//! Seeded generators for relations, spaces and systems. Everything takes
//! an explicit RNG so runs are reproducible from a `u64` seed.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::builders::catalog::lattices_up_to;
use crate::builders::lattice::{lattice_cover, FiniteLattice};
use crate::builders::order::TransitiveRelation;
use crate::builders::scott::scott_cover_construct;
use crate::builders::topology_cover;
use crate::error::Result;
use crate::kernel::{FinSubset, GroundSet};
use crate::relations::{CoverSystem, Relation};
use crate::spectrum::space::PointSet;
use crate::spectrum::FiniteSpace;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_subset<R: Rng + ?Sized>(rng: &mut R, n: usize) -> FinSubset {
    FinSubset(rng.random_range(0..1u32 << n))
}

/// Each pair independently with probability `density`.
pub fn random_relation<R: Rng + ?Sized>(rng: &mut R, left: usize, right: usize, density: f64) -> Relation {
    Relation::from_fn(left, right, |_, _| rng.random_bool(density)).expect("sizes within limits")
}

/// The monotone closure of a few random pairs: `F ⊢ G` when some
/// generator `(F₀, G₀)` has `F₀ ⊆ F` and `G₀ ⊆ G`.
pub fn random_monotone<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Relation {
    let k = rng.random_range(0..=2 * n + 2);
    let gens: Vec<(FinSubset, FinSubset)> = (0..k)
        .map(|_| (random_subset(rng, n), random_subset(rng, n)))
        .collect();
    Relation::from_fn(n, n, |f, g| {
        gens.iter().any(|&(f0, g0)| f0.is_subset(f) && g0.is_subset(g))
    })
    .expect("sizes within limits")
}

fn ground(n: usize) -> GroundSet {
    GroundSet::indexed("s", n).expect("indexed names are distinct")
}

pub fn random_monotone_system<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CoverSystem {
    CoverSystem::new(ground(n), random_monotone(rng, n)).expect("shape matches")
}

/// `points` points and `subbasis` independent random subsets of them.
pub fn random_space<R: Rng + ?Sized>(rng: &mut R, points: usize, subbasis: usize) -> FiniteSpace {
    let names: Vec<String> = (0..points).map(|i| format!("x{i}")).collect();
    let sub: Vec<PointSet> = (0..subbasis).map(|_| rng.random_range(0..1u64 << points)).collect();
    let sub_names = (0..subbasis).map(|i| format!("s{i}")).collect();
    FiniteSpace::new(names, sub, sub_names).expect("random subsets of the points")
}

/// `Ab` of a random space on 1 to 5 points with an `n`-set subbasis.
pub fn random_cover<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CoverSystem {
    let points = rng.random_range(1..=5);
    let space = random_space(rng, points, n);
    let sys = topology_cover(&space).expect("subbasis size within limits");
    CoverSystem::new(ground(n), sys.rel().clone()).expect("shape matches")
}

fn lattices_of(n: usize) -> &'static [FiniteLattice] {
    static CACHE: OnceLock<Vec<Vec<FiniteLattice>>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        let mut by_size = vec![Vec::new(); 6];
        for l in lattices_up_to(5).expect("small lattices") {
            let k = l.len();
            by_size[k].push(l);
        }
        by_size
    });
    all.get(n).map_or(&[], |v| v.as_slice())
}

/// A random transitive sub-relation of a lattice order, containing each
/// pair `a ≤ b` with probability one half before closing.
fn random_below_order<R: Rng + ?Sized>(rng: &mut R, lat: &FiniteLattice) -> Result<TransitiveRelation> {
    let n = lat.len();
    let mut above = vec![0u32; n];
    for (a, row) in above.iter_mut().enumerate() {
        for b in 0..n {
            if lat.leq(a, b) && rng.random_bool(0.5) {
                *row |= 1 << b;
            }
        }
    }
    // transitive closure stays inside ≤
    for k in 0..n {
        for a in 0..n {
            if above[a] >> k & 1 == 1 {
                above[a] |= above[k];
            }
        }
    }
    TransitiveRelation::new(lat.elements().clone(), |a, b| above[a] >> b & 1 == 1)
}

/// The Scott construction on a random lattice of size `n` with a random
/// relation below its order; `None` when no lattice has `n` elements.
pub fn random_scott<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Option<CoverSystem> {
    let lats = lattices_of(n);
    if lats.is_empty() {
        return None;
    }
    let lat = &lats[rng.random_range(0..lats.len())];
    let base = lattice_cover(lat).ok()?;
    let lt = random_below_order(rng, lat).ok()?;
    let (sys, _) = scott_cover_construct(&base, &lt).ok()?;
    CoverSystem::new(ground(n), sys.rel().clone()).ok()
}

/// Half the time a Scott construction that came out a strong idempotent
/// (these include non-covers), otherwise, or after 32 misses, a random
/// [`random_cover`].
pub fn random_strong_idempotent<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CoverSystem {
    if rng.random_bool(0.5) {
        for _ in 0..32 {
            if let Some(sys) = random_scott(rng, n) {
                if sys.classification().is_strong_idempotent {
                    return sys;
                }
            }
        }
    }
    random_cover(rng, n)
}

/// The largest round subset of `t`: drop every `s` with no `F ⊆ t`,
/// `F ⊢ {s}`, until nothing changes.
pub fn round_interior(sys: &CoverSystem, mut t: FinSubset) -> FinSubset {
    loop {
        let keep: Vec<usize> = t
            .iter()
            .filter(|&s| t.subsets().any(|f| sys.entails(f, FinSubset::singleton(s))))
            .collect();
        let next = FinSubset(keep.iter().fold(0, |m, &s| m | 1 << s));
        if next == t {
            return t;
        }
        t = next;
    }
}

/// A random strong idempotent on `n` elements with round `R` and `Q`
/// such that no `F ⊆ R`, `G ⊆ Q` has `F ⊢ G`; `None` if `tries` draws
/// all fail.
pub fn random_birkhoff_instance<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    tries: usize,
) -> Option<(CoverSystem, FinSubset, FinSubset)> {
    for _ in 0..tries {
        let sys = random_strong_idempotent(rng, n);
        let r = round_interior(&sys, random_subset(rng, n));
        let q = random_subset(rng, n).difference(r);
        let blocked = r
            .subsets()
            .any(|f| q.subsets().any(|g| sys.entails(f, g)));
        if !blocked {
            return Some((sys, r, q));
        }
    }
    None
}
