//! One function per subcommand. Each returns a JSON report, an optional
//! DOT rendering and the verdicts that decide the exit code.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use coverkit::axioms::counterexample;
use coverkit::builders::broken_promises;
use coverkit::category::{
    check_cover_morphism, compose_morphisms, derive_proper, is_karoubi, sp_functor, sp_object,
    verify_space_duality, verify_system_duality, CoverMorphism, DualityReport, Section,
};
use coverkit::frame::{
    default_mode, frame_model, karoubi_envelope_default, verify_frame_laws, verify_open_iso, DEFAULT_FRAME_CAP,
};
use coverkit::random::{random_subset, rng_from_seed, round_interior};
use coverkit::spectrum::{
    birkhoff_stone, empty_is_tight, recovery, space_properties, spectrum, tight_flags, verify_toprep,
};
use coverkit::{Axiom, CoverSystem, Error, FinSubset, GroundSet, Relation};

use crate::input::{load, InputError, Subject};

/// Birkhoff–Stone instances drawn per strong idempotent by `spectrum`.
pub const BIRKHOFF_SAMPLES: usize = 64;

#[derive(Debug, thiserror::Error)]
pub enum CmdError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("{path}: {source}")]
    Core { path: String, source: Error },
    #[error("{0}")]
    Usage(String),
}

impl CmdError {
    fn core(path: &Path, source: Error) -> Self {
        CmdError::Core {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn is_cap(&self) -> bool {
        let e = match self {
            CmdError::Input(i) => i.core(),
            CmdError::Core { source, .. } => Some(source),
            CmdError::Usage(_) => None,
        };
        matches!(e, Some(Error::CapExceeded { .. }))
    }
}

#[derive(Debug, Default)]
pub struct Outcome {
    pub results: Vec<Value>,
    pub dot: String,
    /// Some `--require`d axiom fails.
    pub requirement_failed: bool,
    /// A property the theory guarantees for the input does not hold.
    pub theorem_failed: bool,
}

pub struct Options {
    pub require: Option<Axiom>,
    pub seed: u64,
}

type Loaded = Vec<(PathBuf, Subject)>;

pub fn load_all(files: &[PathBuf]) -> Result<Loaded, CmdError> {
    files.iter().map(|p| Ok((p.clone(), load(p)?))).collect()
}

fn names(g: &GroundSet, s: FinSubset) -> Value {
    json!(g.labels(s))
}

fn header(path: &Path, subject: &Subject) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("path".into(), json!(path.display().to_string()));
    m.insert("kind".into(), json!(subject.kind()));
    if let Some(sys) = subject.system() {
        m.insert("ground".into(), json!(sys.ground().names()));
    }
    m
}

fn system_of<'a>(path: &Path, subject: &'a Subject) -> Result<&'a CoverSystem, CmdError> {
    subject
        .system()
        .ok_or_else(|| CmdError::Usage(format!("{}: expected a system, found a morphism", path.display())))
}

fn err(path: &Path) -> impl Fn(Error) -> CmdError + '_ {
    move |e| CmdError::core(path, e)
}

/// Adds the `require` block; returns whether the axiom holds.
fn require_block(
    out: &mut serde_json::Map<String, Value>,
    path: &Path,
    sys: &CoverSystem,
    axiom: Axiom,
) -> Result<bool, CmdError> {
    let holds = sys.classification().get(axiom);
    let mut block = json!({ "axiom": axiom.name(), "holds": holds });
    if !holds {
        if let Some((conjunct, w)) = counterexample(sys.rel(), axiom).map_err(err(path))? {
            let g = sys.ground();
            block["counterexample"] = json!({
                "conjunct": conjunct.name(),
                "f": names(g, w.f),
                "g": names(g, w.g),
                "extra": names(g, w.extra),
            });
        }
    }
    out.insert("require".into(), block);
    Ok(holds)
}

fn singleton_dot(sys: &CoverSystem) -> String {
    let g = sys.ground();
    let mut s = String::from("digraph singletons {\n");
    for i in 0..sys.len() {
        let _ = writeln!(s, "  s{i} [label=\"{}\"];", g.name(i).replace('"', "\\\""));
    }
    for a in 0..sys.len() {
        for b in 0..sys.len() {
            if sys.entails(FinSubset::singleton(a), FinSubset::singleton(b)) {
                let _ = writeln!(s, "  s{a} -> s{b};");
            }
        }
    }
    s.push_str("}\n");
    s
}

pub fn classify(loaded: &Loaded, opts: &Options) -> Result<Outcome, CmdError> {
    let mut out = Outcome::default();
    for (path, subject) in loaded {
        let sys = system_of(path, subject)?;
        let mut r = header(path, subject);
        r.insert("classification".into(), json!(sys.classification()));
        let broken: Vec<&str> = broken_promises(sys, subject.promise()).iter().map(|a| a.name()).collect();
        r.insert("broken_promises".into(), json!(broken));
        if let Some(axiom) = opts.require {
            out.requirement_failed |= !require_block(&mut r, path, sys, axiom)?;
        }
        out.dot.push_str(&singleton_dot(sys));
        out.results.push(Value::Object(r));
    }
    Ok(out)
}

/// Random round `R` and `Q` satisfying the hypothesis of the separation
/// theorem, each checked for a tight separating set.
fn birkhoff_samples(sys: &CoverSystem, seed: u64, path: &Path) -> Result<(Value, bool), CmdError> {
    let mut rng = rng_from_seed(seed);
    let n = sys.len();
    let (mut instances, mut failures) = (0usize, Vec::new());
    let g = sys.ground();
    for _ in 0..BIRKHOFF_SAMPLES {
        let r = round_interior(sys, random_subset(&mut rng, n));
        let q = random_subset(&mut rng, n).difference(r);
        let blocked = r.subsets().any(|f| q.subsets().any(|gq| sys.entails(f, gq)));
        if blocked {
            continue;
        }
        instances += 1;
        let found = match birkhoff_stone(sys, r, q) {
            Ok(found) => found,
            Err(Error::Precondition(_)) => None,
            Err(e) => return Err(CmdError::core(path, e)),
        };
        let ok = found.is_some_and(|t| tight_flags(sys, t).tight && r.is_subset(t) && !t.meets(q));
        if !ok {
            failures.push(json!({ "r": names(g, r), "q": names(g, q) }));
        }
    }
    let passed = failures.is_empty();
    Ok((
        json!({
            "seed": seed,
            "draws": BIRKHOFF_SAMPLES,
            "instances": instances,
            "failures": failures,
        }),
        passed,
    ))
}

pub fn spectrum_cmd(loaded: &Loaded, opts: &Options) -> Result<Outcome, CmdError> {
    let mut out = Outcome::default();
    for (path, subject) in loaded {
        let sys = system_of(path, subject)?;
        let e = err(path);
        let mut r = header(path, subject);
        let sp = spectrum(sys).map_err(&e)?;
        let g = sys.ground();
        let tight: Vec<Value> = sp.tight().iter().map(|&t| names(g, t)).collect();
        r.insert("tight".into(), json!(tight));
        r.insert("tight_codes".into(), json!(sp.tight()));
        r.insert("empty_is_tight".into(), json!(empty_is_tight(sys)));
        r.insert("properties".into(), json!(space_properties(sp.space()).map_err(&e)?));
        if sys.classification().is_strong_idempotent {
            let rep = verify_toprep(sys).map_err(&e)?;
            let props = space_properties(sp.space()).map_err(&e)?;
            out.theorem_failed |= !rep.passed() || !props.stably_locally_compact;
            r.insert("toprep".into(), json!(rep));
            let (bs, ok) = birkhoff_samples(sys, opts.seed, path)?;
            out.theorem_failed |= !ok;
            r.insert("birkhoff_stone".into(), bs);
        }
        if let Subject::Space { space, .. } = subject {
            match recovery(space) {
                Ok((rep, _)) => {
                    out.theorem_failed |= !(rep.surjective && rep.homeomorphic_onto_image && rep.very_dense);
                    r.insert("recovery".into(), json!(rep));
                }
                // the round trip needs a T0 space
                Err(Error::Precondition(_)) if !space_properties(space).map_err(&e)?.t0 => {
                    r.insert("recovery".into(), Value::Null);
                }
                Err(other) => return Err(CmdError::core(path, other)),
            }
        }
        if let Some(axiom) = opts.require {
            out.requirement_failed |= !require_block(&mut r, path, sys, axiom)?;
        }
        out.dot.push_str(&sp.space().specialization_dot());
        out.dot.push_str(&sp.space().opens_dot().map_err(&e)?);
        out.results.push(Value::Object(r));
    }
    Ok(out)
}

pub fn frame(loaded: &Loaded, opts: &Options) -> Result<Outcome, CmdError> {
    let mut out = Outcome::default();
    for (path, subject) in loaded {
        let sys = system_of(path, subject)?;
        let e = err(path);
        let mut r = header(path, subject);
        let fm = frame_model(sys, default_mode(sys.len()), DEFAULT_FRAME_CAP).map_err(&e)?;
        let laws = verify_frame_laws(&fm).map_err(&e)?;
        out.theorem_failed |= !laws.passed();
        r.insert("frame".into(), json!(fm.dump()));
        r.insert("laws".into(), json!(laws));
        r.insert("laws_passed".into(), json!(laws.passed()));
        if sys.classification().is_strong_idempotent {
            let iso = verify_open_iso(sys).map_err(&e)?;
            out.theorem_failed |= !iso.is_iso();
            r.insert("open_iso".into(), json!(iso));
            match karoubi_envelope_default(sys) {
                Ok(env) => {
                    out.theorem_failed |= !env.report.passed();
                    r.insert("karoubi".into(), json!(env.report));
                }
                Err(Error::CapExceeded { .. } | Error::Precondition(_)) => {
                    r.insert("karoubi".into(), Value::Null);
                }
                Err(other) => return Err(CmdError::core(path, other)),
            }
        }
        if let Some(axiom) = opts.require {
            out.requirement_failed |= !require_block(&mut r, path, sys, axiom)?;
        }
        out.dot.push_str(&fm.to_dot());
        out.results.push(Value::Object(r));
    }
    Ok(out)
}

fn duality_json(rep: &DualityReport) -> Value {
    let verdict = |s: Section| if rep.section_passed(s) { "pass" } else { "fail" };
    json!({
        "zigzag": verdict(Section::Zigzag),
        "naturality": verdict(Section::Naturality),
        "functoriality": verdict(Section::Functoriality),
        "morphisms": verdict(Section::Morphisms),
        "checks": rep.checks,
        "sections": rep.sections,
        "failures": rep.failures,
    })
}

/// Spaces are checked against the other spaces given, systems against
/// the other systems.
pub fn dualize(loaded: &Loaded, opts: &Options) -> Result<Outcome, CmdError> {
    let mut out = Outcome::default();
    let spaces: Vec<_> = loaded
        .iter()
        .filter_map(|(_, s)| match s {
            Subject::Space { space, .. } => Some(space.clone()),
            _ => None,
        })
        .collect();
    let systems: Vec<CoverSystem> = loaded
        .iter()
        .filter_map(|(_, s)| match s {
            Subject::System { system, .. } => Some(system.clone()),
            _ => None,
        })
        .collect();
    for (path, subject) in loaded {
        let e = err(path);
        let mut r = header(path, subject);
        let (rep, sp) = match subject {
            Subject::Space { space, system, .. } => {
                (verify_space_duality(space, &spaces).map_err(&e)?, sp_object(system).map_err(&e)?)
            }
            Subject::System { system, .. } => {
                if !system.classification().is_cover {
                    return Err(CmdError::core(
                        path,
                        Error::Precondition("duality needs a cover relation".into()),
                    ));
                }
                (verify_system_duality(system, &systems).map_err(&e)?, sp_object(system).map_err(&e)?)
            }
            Subject::Morphism { .. } => {
                return Err(CmdError::Usage(format!("{}: dualize takes systems or spaces", path.display())))
            }
        };
        out.theorem_failed |= !rep.passed();
        r.insert("duality".into(), duality_json(&rep));
        if let (Some(axiom), Some(sys)) = (opts.require, subject.system()) {
            out.requirement_failed |= !require_block(&mut r, path, sys, axiom)?;
        }
        out.dot.push_str(&sp.space.specialization_dot());
        out.results.push(Value::Object(r));
    }
    Ok(out)
}

fn morphism_of(path: &Path, subject: &Subject) -> Result<CoverMorphism, CmdError> {
    match subject {
        Subject::Morphism { source, target, rel } => {
            CoverMorphism::new(source.clone(), target.clone(), rel.clone()).map_err(err(path))
        }
        s => Ok(CoverMorphism::identity(s.system().expect("not a morphism"))),
    }
}

/// Pairs `(F, G)` with no related `(F', G') ≠ (F, G)`, `F' ⊆ F`, `G' ⊆ G`.
fn minimal_pairs(rel: &Relation) -> Vec<(FinSubset, FinSubset)> {
    rel.pairs()
        .filter(|&(f, g)| {
            !rel.pairs()
                .any(|(f2, g2)| (f2, g2) != (f, g) && f2.is_subset(f) && g2.is_subset(g))
        })
        .collect()
}

fn pairs_json(m: &CoverMorphism) -> Value {
    let (gs, gt) = (m.source().ground(), m.target().ground());
    let list: Vec<Value> = minimal_pairs(m.rel())
        .into_iter()
        .map(|(f, g)| json!([gs.labels(f), gt.labels(g)]))
        .collect();
    json!(list)
}

fn morphism_json(m: &CoverMorphism, path: &Path) -> Result<(Value, bool), CmdError> {
    let e = err(path);
    let check = check_cover_morphism(m).map_err(&e)?;
    let proper = if check.passed() {
        Some(derive_proper(m).map_err(&e)?.proper)
    } else {
        None
    };
    Ok((
        json!({
            "source": m.source().ground().names(),
            "target": m.target().ground().names(),
            "minimal_pairs": pairs_json(m),
            "pair_count": m.rel().count(),
            "cover_morphism": check.passed(),
            "check": check,
            "karoubi": is_karoubi(m),
            "proper": proper,
        }),
        check.passed(),
    ))
}

fn bipartite_dot(m: &CoverMorphism) -> String {
    let (gs, gt) = (m.source().ground(), m.target().ground());
    let mut s = String::from("digraph composite {\n  rankdir=LR;\n");
    for (i, (f, g)) in minimal_pairs(m.rel()).into_iter().enumerate() {
        let _ = writeln!(
            s,
            "  l{i} [label=\"{}\"];\n  r{i} [label=\"{}\"];\n  l{i} -> r{i};",
            gs.format(f).replace('"', "\\\""),
            gt.format(g).replace('"', "\\\"")
        );
    }
    s.push_str("}\n");
    s
}

/// The composite `m₁ • m₂ • …` of the files in order; a system file stands
/// for its identity.
pub fn compose(loaded: &Loaded, _opts: &Options) -> Result<Outcome, CmdError> {
    if loaded.is_empty() {
        return Err(CmdError::Usage("compose needs at least one input".into()));
    }
    let mut out = Outcome::default();
    let ms: Vec<CoverMorphism> = loaded
        .iter()
        .map(|(p, s)| morphism_of(p, s))
        .collect::<Result<_, _>>()?;
    let mut inputs = Vec::new();
    let mut all_cover_morphisms = true;
    for ((path, _), m) in loaded.iter().zip(&ms) {
        let (j, ok) = morphism_json(m, path)?;
        all_cover_morphisms &= ok;
        inputs.push(j);
    }
    let last = &loaded[loaded.len() - 1].0;
    let mut acc = ms[0].clone();
    for ((path, _), m) in loaded.iter().zip(&ms).skip(1) {
        acc = compose_morphisms(&acc, m).map_err(err(path))?;
    }
    let (composite, composite_ok) = morphism_json(&acc, last)?;
    let covers = ms.iter().all(|m| m.source().classification().is_cover && m.target().classification().is_cover);
    let mut report = json!({ "inputs": inputs, "composite": composite });
    if covers && all_cover_morphisms {
        out.theorem_failed |= !composite_ok;
        // Sp turns the chain into composable maps of spectra
        let e = err(last);
        let whole = sp_functor(&acc).map_err(&e)?.map;
        let mut parts = sp_functor(&ms[0]).map_err(&e)?.map;
        for m in &ms[1..] {
            parts = parts.then(&sp_functor(m).map_err(&e)?.map).map_err(&e)?;
        }
        let functorial = whole == parts;
        out.theorem_failed |= !functorial;
        report["spectrum_map"] = json!(whole.dump());
        report["sp_functorial"] = json!(functorial);
    }
    out.dot.push_str(&bipartite_dot(&acc));
    out.results.push(report);
    Ok(out)
}
