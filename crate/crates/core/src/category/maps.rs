//! Partial continuous maps with open domains between finite spaces.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectrum::space::{bits, PointSet};
use crate::spectrum::FiniteSpace;

/// A partial map from the points of `source` to those of `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceMap {
    source: FiniteSpace,
    target: FiniteSpace,
    map: Vec<Option<usize>>,
}

impl SpaceMap {
    /// Rejects a non-open domain and any subbasic set of `target` whose
    /// preimage is not open.
    pub fn new(source: FiniteSpace, target: FiniteSpace, map: Vec<Option<usize>>) -> Result<Self> {
        if map.len() != source.len() {
            return Err(Error::InvalidMap(format!(
                "{} images for {} points",
                map.len(),
                source.len()
            )));
        }
        if let Some(y) = map.iter().flatten().find(|&&y| y >= target.len()) {
            return Err(Error::InvalidMap(format!("image index {y} out of range")));
        }
        let m = SpaceMap { source, target, map };
        let dom = m.domain();
        if !m.source.is_open(dom) {
            return Err(Error::InvalidMap(format!(
                "domain {} is not open",
                m.source.format(dom)
            )));
        }
        for (i, &v) in m.target.subbasis().iter().enumerate() {
            let pre = m.preimage(v);
            if !m.source.is_open(pre) {
                return Err(Error::InvalidMap(format!(
                    "preimage {} of subbasic set {} is not open",
                    m.source.format(pre),
                    m.target.subbasis_names()[i]
                )));
            }
        }
        Ok(m)
    }

    pub fn identity(space: &FiniteSpace) -> Self {
        SpaceMap {
            source: space.clone(),
            target: space.clone(),
            map: (0..space.len()).map(Some).collect(),
        }
    }

    pub fn source(&self) -> &FiniteSpace {
        &self.source
    }

    pub fn target(&self) -> &FiniteSpace {
        &self.target
    }

    pub fn map(&self) -> &[Option<usize>] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.map[x]
    }

    pub fn domain(&self) -> PointSet {
        self.map
            .iter()
            .enumerate()
            .filter(|(_, y)| y.is_some())
            .fold(0, |m, (x, _)| m | 1 << x)
    }

    pub fn preimage(&self, ys: PointSet) -> PointSet {
        self.map
            .iter()
            .enumerate()
            .filter(|(_, y)| y.is_some_and(|y| ys >> y & 1 == 1))
            .fold(0, |m, (x, _)| m | 1 << x)
    }

    /// `self` then `next`.
    pub fn then(&self, next: &SpaceMap) -> Result<SpaceMap> {
        if self.target != next.source {
            return Err(Error::InvalidMap("composed maps do not meet".into()));
        }
        Ok(SpaceMap {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.iter().map(|y| y.and_then(|y| next.map[y])).collect(),
        })
    }

    /// `O ⋐ N ⟹ φ⁻¹[O] ⋐ φ⁻¹[N]` over all opens of the target.
    pub fn is_proximal(&self) -> Result<bool> {
        let opens = self.target.opens()?;
        for &o in &opens {
            for &n in &opens {
                if self.target.compact_contained(o, n)?
                    && !self.source.compact_contained(self.preimage(o), self.preimage(n))?
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn dump(&self) -> MapDump {
        MapDump {
            source: self.source.points().to_vec(),
            target: self.target.points().to_vec(),
            map: self.map.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapDump {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub map: Vec<Option<usize>>,
}

/// Every total map, by mixed-radix counting. `None` past `limit` maps.
fn total_maps(a: usize, b: usize, limit: usize) -> Option<Vec<Vec<usize>>> {
    if b == 0 {
        return Some(if a == 0 { vec![vec![]] } else { vec![] });
    }
    let count = (b as u128).checked_pow(a as u32)?;
    if count > limit as u128 {
        return None;
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut cur = vec![0usize; a];
    loop {
        out.push(cur.clone());
        let mut i = 0;
        loop {
            if i == a {
                return Some(out);
            }
            cur[i] += 1;
            if cur[i] < b {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

pub const TEST_MAP_SEARCH_LIMIT: usize = 1 << 16;

/// Representative total maps from `a` to `b`: the identity when the spaces
/// are equal, every constant map, and the first continuous injection and
/// the first continuous non-injective surjection that exist. The search
/// for the last two is skipped past [`TEST_MAP_SEARCH_LIMIT`] candidates.
///
/// Partial maps are left out: when the target subbasis covers the target,
/// `∅ ⊨ R` forces `⋂F ⊆ dom φ` for every `F`, so `Ab φ` is a cover
/// morphism only for total `φ`.
pub fn test_maps(a: &FiniteSpace, b: &FiniteSpace) -> Result<Vec<SpaceMap>> {
    let mut out: Vec<SpaceMap> = Vec::new();
    let push = |m: Vec<Option<usize>>, out: &mut Vec<SpaceMap>| -> Result<()> {
        if out.iter().all(|k| k.map != m) {
            out.push(SpaceMap::new(a.clone(), b.clone(), m)?);
        }
        Ok(())
    };
    if a == b {
        push((0..a.len()).map(Some).collect(), &mut out)?;
    }
    for y in 0..b.len() {
        push(vec![Some(y); a.len()], &mut out)?;
    }
    if let Some(all) = total_maps(a.len(), b.len(), TEST_MAP_SEARCH_LIMIT) {
        let continuous = |f: &[usize]| {
            b.subbasis().iter().all(|&v| {
                let pre = f
                    .iter()
                    .enumerate()
                    .filter(|(_, &y)| v >> y & 1 == 1)
                    .fold(0, |m, (x, _)| m | 1 << x);
                a.is_open(pre)
            })
        };
        let image = |f: &[usize]| f.iter().fold(0u64, |m, &y| m | 1 << y);
        let injective = |f: &[usize]| bits(image(f)).count() == f.len();
        if let Some(f) = all.iter().find(|f| injective(f) && continuous(f)) {
            push(f.iter().copied().map(Some).collect(), &mut out)?;
        }
        if let Some(f) = all
            .iter()
            .find(|f| image(f) == b.full() && !injective(f) && continuous(f))
        {
            push(f.iter().copied().map(Some).collect(), &mut out)?;
        }
    }
    Ok(out)
}
