//! The JSON input format. Payloads refer to elements by name.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use coverkit::builders::{
    convexity_entailment, convexity_promise, lattice_cover, lattice_promise, perp_cover, perp_promise,
    proximity_cover, proximity_promise, semilattice_cover, semilattice_promise, topology_cover,
    topology_promise, Convexity, FiniteLattice, JoinSemilattice, ProximityLattice, TransitiveRelation,
};
use coverkit::spectrum::PointSet;
use coverkit::{Axiom, CoverSystem, Error, FinSubset, FiniteSpace, GroundSet, Relation};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("{path}: unsupported format_version `{found}`, expected `{FORMAT_VERSION}`")]
    Version { path: String, found: String },
    #[error("{path}: {source}")]
    Build { path: String, source: Error },
}

impl InputError {
    pub fn core(&self) -> Option<&Error> {
        match self {
            InputError::Build { source, .. } => Some(source),
            _ => None,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub format_version: String,
    #[serde(flatten)]
    pub body: Body,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "snake_case")]
pub enum Body {
    Explicit(Explicit),
    Lattice(OrderPayload),
    Semilattice(OrderPayload),
    Poset(StrictPayload),
    Proximity(StrictPayload),
    Convexity(ConvexityPayload),
    Topology(TopologyPayload),
    Morphism(Box<MorphismPayload>),
}

#[derive(Debug, Default, Deserialize, PartialEq, Eq, Clone, Copy)]
#[serde(rename_all = "snake_case")]
pub enum Closure {
    #[default]
    None,
    /// Close the listed pairs upwards on both sides.
    Monotone,
}

/// `entails` lists pairs `[F, G]` of name lists.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Explicit {
    pub ground: Vec<String>,
    pub entails: Vec<(Vec<String>, Vec<String>)>,
    #[serde(default)]
    pub closure: Closure,
}

/// A partial order by `[a, b]` pairs meaning `a ≤ b`; the
/// reflexive-transitive closure is taken.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderPayload {
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
}

/// A transitive relation by `[a, b]` pairs meaning `a < b`, taken as is.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrictPayload {
    pub elements: Vec<String>,
    pub lt: Vec<(String, String)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvexityPayload {
    pub elements: Vec<String>,
    pub convex: Vec<Vec<String>>,
    /// Close `convex` under intersections instead of requiring it closed.
    #[serde(default)]
    pub generated: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubbasicSet {
    pub name: String,
    pub points: Vec<String>,
}

/// With `subbasis` the space is generated by it, and `opens`, if present,
/// must be the generated topology. With only `opens` every nonempty open
/// is subbasic.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyPayload {
    pub points: Vec<String>,
    #[serde(default)]
    pub opens: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub subbasis: Option<Vec<SubbasicSet>>,
}

/// A relation between `F(source)` and `F(target)`, both given as nested
/// system files.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismPayload {
    pub source: SystemFile,
    pub target: SystemFile,
    pub pairs: Vec<(Vec<String>, Vec<String>)>,
    #[serde(default)]
    pub closure: Closure,
}

/// What a file describes once built.
#[derive(Clone, Debug)]
pub enum Subject {
    System {
        kind: &'static str,
        system: CoverSystem,
        promise: Vec<Axiom>,
    },
    /// A topology, with its subbasis cover.
    Space {
        space: FiniteSpace,
        system: CoverSystem,
        promise: Vec<Axiom>,
    },
    Morphism {
        source: CoverSystem,
        target: CoverSystem,
        rel: Relation,
    },
}

impl Subject {
    pub fn kind(&self) -> &'static str {
        match self {
            Subject::System { kind, .. } => kind,
            Subject::Space { .. } => "topology",
            Subject::Morphism { .. } => "morphism",
        }
    }

    /// The cover system a file stands for; a morphism has none.
    pub fn system(&self) -> Option<&CoverSystem> {
        match self {
            Subject::System { system, .. } | Subject::Space { system, .. } => Some(system),
            Subject::Morphism { .. } => None,
        }
    }

    pub fn promise(&self) -> &[Axiom] {
        match self {
            Subject::System { promise, .. } | Subject::Space { promise, .. } => promise,
            Subject::Morphism { .. } => &[],
        }
    }
}

pub fn load(path: &Path) -> Result<Subject, InputError> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| InputError::Io {
        path: shown.clone(),
        source,
    })?;
    parse(&text, &shown)
}

pub fn parse(text: &str, path: &str) -> Result<Subject, InputError> {
    let file: SystemFile = serde_json::from_str(text).map_err(|source| InputError::Json {
        path: path.to_string(),
        source,
    })?;
    build(file, path)
}

fn build(file: SystemFile, path: &str) -> Result<Subject, InputError> {
    if file.format_version != FORMAT_VERSION {
        return Err(InputError::Version {
            path: path.to_string(),
            found: file.format_version,
        });
    }
    let wrap = |source: Error| InputError::Build {
        path: path.to_string(),
        source,
    };
    match file.body {
        Body::Morphism(m) => {
            let m = *m;
            let sys_of = |f: SystemFile| -> Result<CoverSystem, InputError> {
                match build(f, path)? {
                    Subject::Morphism { .. } => Err(wrap(Error::Precondition(
                        "a morphism's source and target must be systems".into(),
                    ))),
                    s => Ok(s.system().expect("not a morphism").clone()),
                }
            };
            let source = sys_of(m.source)?;
            let target = sys_of(m.target)?;
            let pairs = name_pairs(source.ground(), target.ground(), &m.pairs).map_err(wrap)?;
            let rel = relation(source.len(), target.len(), &pairs, m.closure).map_err(wrap)?;
            Ok(Subject::Morphism { source, target, rel })
        }
        body => build_system(body).map_err(wrap),
    }
}

fn ground(names: &[String]) -> Result<GroundSet, Error> {
    GroundSet::new(names.iter().cloned())
}

fn name_pairs(
    left: &GroundSet,
    right: &GroundSet,
    pairs: &[(Vec<String>, Vec<String>)],
) -> Result<Vec<(FinSubset, FinSubset)>, Error> {
    pairs
        .iter()
        .map(|(f, g)| Ok((left.subset(f)?, right.subset(g)?)))
        .collect()
}

fn relation(
    left: usize,
    right: usize,
    pairs: &[(FinSubset, FinSubset)],
    closure: Closure,
) -> Result<Relation, Error> {
    match closure {
        Closure::None => Relation::from_pairs(left, right, pairs.iter().copied()),
        Closure::Monotone => Relation::from_fn(left, right, |f, g| {
            pairs.iter().any(|&(f0, g0)| f0.is_subset(f) && g0.is_subset(g))
        }),
    }
}

fn index_pairs(g: &GroundSet, pairs: &[(String, String)]) -> Result<Vec<(usize, usize)>, Error> {
    pairs.iter().map(|(a, b)| Ok((g.index(a)?, g.index(b)?))).collect()
}

fn point_set(points: &[String], names: &[String]) -> Result<PointSet, Error> {
    names.iter().try_fold(0u64, |m, name| {
        let i = points
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| Error::UnknownLabel(name.clone()))?;
        Ok(m | 1 << i)
    })
}

fn build_system(body: Body) -> Result<Subject, Error> {
    let system = |kind, system: CoverSystem, promise| Subject::System { kind, system, promise };
    Ok(match body {
        Body::Explicit(e) => {
            let g = ground(&e.ground)?;
            let pairs = name_pairs(&g, &g, &e.entails)?;
            let rel = relation(g.len(), g.len(), &pairs, e.closure)?;
            system("explicit", CoverSystem::new(g, rel)?, Vec::new())
        }
        Body::Lattice(o) => {
            let g = ground(&o.elements)?;
            let pairs = index_pairs(&g, &o.leq)?;
            let lat = FiniteLattice::from_pairs(g, &pairs)?;
            system("lattice", lattice_cover(&lat)?, lattice_promise(&lat))
        }
        Body::Semilattice(o) => {
            let g = ground(&o.elements)?;
            let pairs = index_pairs(&g, &o.leq)?;
            let sl = JoinSemilattice::from_pairs(g, &pairs)?;
            system("semilattice", semilattice_cover(&sl)?, semilattice_promise(&sl))
        }
        Body::Poset(p) => {
            let g = ground(&p.elements)?;
            let pairs = index_pairs(&g, &p.lt)?;
            let tr = TransitiveRelation::from_pairs(g, &pairs)?;
            system("poset", perp_cover(&tr)?, perp_promise(&tr))
        }
        Body::Proximity(p) => {
            let g = ground(&p.elements)?;
            let pairs = index_pairs(&g, &p.lt)?;
            let pl = ProximityLattice::from_pairs(g, &pairs)?;
            system("proximity", proximity_cover(&pl)?, proximity_promise(&pl))
        }
        Body::Convexity(c) => {
            let g = ground(&c.elements)?;
            let sets = c.convex.iter().map(|s| g.subset(s)).collect::<Result<Vec<_>, _>>()?;
            let cx = if c.generated {
                Convexity::generated(g, sets)?
            } else {
                Convexity::new(g, sets)?
            };
            system("convexity", convexity_entailment(&cx)?, convexity_promise(&cx))
        }
        Body::Topology(t) => {
            let opens = t
                .opens
                .as_ref()
                .map(|os| os.iter().map(|o| point_set(&t.points, o)).collect::<Result<Vec<_>, _>>())
                .transpose()?;
            let space = match (&t.subbasis, &opens) {
                (Some(sub), opens) => {
                    let masks = sub.iter().map(|s| point_set(&t.points, &s.points)).collect::<Result<_, _>>()?;
                    let names = sub.iter().map(|s| s.name.clone()).collect();
                    match opens {
                        Some(os) => FiniteSpace::with_opens(t.points.clone(), os, masks, names)?,
                        None => FiniteSpace::new(t.points.clone(), masks, names)?,
                    }
                }
                (None, Some(os)) => FiniteSpace::from_opens(t.points.clone(), os)?,
                (None, None) => {
                    return Err(Error::InvalidTopology("neither opens nor subbasis given".into()))
                }
            };
            let sys = topology_cover(&space)?;
            Subject::Space {
                promise: topology_promise(&space),
                space,
                system: sys,
            }
        }
        Body::Morphism(_) => unreachable!("handled by build"),
    })
}
