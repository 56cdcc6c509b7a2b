//! Mutation sequences from bigon reductions, triangle moves and the Hopf link.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::cluster::{initial_seed, ClusterError, Seed};
use crate::kauffman::{self, KauffmanError, LatticeConfig};
use crate::linkdiag::{Dart, DiagramError, Label, LinkDiagram, TriangleSite, Violation};
use crate::poly::{LaurentPoly, Vars};
use crate::quiver::{Perm, Quiver, QuiverError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PlanError {
    #[error("diagram has fewer than two crossings")]
    TooSmall,
    #[error("diagram is not prime: segments {:?} split it", .0.segments)]
    NotPrime(Violation),
    #[error("no bigon-creating triangle moves within depth {depth} and {nodes} nodes")]
    Exhausted { depth: usize, nodes: usize },
    #[error("no triangle ({a}; {b}, {c}) in the current diagram")]
    MissingTriangle { a: Label, b: Label, c: Label },
    #[error("no bigon ({0}, {1}) in the current diagram")]
    MissingBigon(Label, Label),
    #[error("events do not end at a Hopf diagram")]
    NotHopf,
    #[error("malformed plan: {0}")]
    Malformed(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    Kauffman(#[from] KauffmanError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Event {
    /// Move segment `a` across the crossing of `b` and `c`, `b` clockwise from `c`.
    Rd3 {
        a: Label,
        b: Label,
        c: Label,
    },
    Bigon {
        j: Label,
        k: Label,
    },
    Hopf {
        segments: [Label; 4],
    },
}

impl Event {
    pub fn word(&self) -> Vec<Label> {
        match *self {
            Event::Rd3 { a, b, c } => vec![a, b, c, a, b, c, b, c, b],
            Event::Bigon { j, k } => vec![j, k],
            Event::Hopf { segments } => segments.to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationPlan {
    pub ambient: usize,
    pub events: Vec<Event>,
    pub sigma: Perm,
    pub word: Vec<Label>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlanConfig {
    /// Longest triangle-move sequence tried before a bigon must appear.
    pub depth: usize,
    /// Diagrams visited per search before giving up.
    pub budget: usize,
}

impl Default for PlanConfig {
    fn default() -> Self {
        PlanConfig { depth: 8, budget: 200_000 }
    }
}

pub fn sigma_of(ambient: usize, events: &[Event]) -> Result<Perm, PlanError> {
    let mut cycles = Vec::new();
    for e in events {
        match *e {
            Event::Bigon { j, k } => cycles.push(vec![j, k]),
            Event::Hopf { segments: [a, b, c, d] } => {
                cycles.push(vec![a, b]);
                cycles.push(vec![c, d]);
            }
            Event::Rd3 { .. } => {}
        }
    }
    Perm::from_cycles(ambient, &cycles).map_err(|_| PlanError::Malformed("pairs overlap".into()))
}

/// `red · hopf · reverse(σ(red))`.
pub fn flatten(events: &[Event], sigma: &Perm) -> Vec<Label> {
    let mut red = Vec::new();
    let mut hopf = Vec::new();
    for e in events {
        match e {
            Event::Hopf { .. } => hopf.extend(e.word()),
            _ => red.extend(e.word()),
        }
    }
    let tail: Vec<Label> = red.iter().rev().map(|&v| sigma.apply(v)).collect();
    red.into_iter().chain(hopf).chain(tail).collect()
}

/// Recover σ from a word of the shape `red · (a,b,c,d) · reverse(σ(red))`.
pub fn sigma_from_word(ambient: usize, word: &[Label]) -> Result<Perm, PlanError> {
    let bad = |m: &str| PlanError::Malformed(m.to_string());
    if word.len() < 4 || !word.len().is_multiple_of(2) {
        return Err(bad("word length must be even and at least 4"));
    }
    let r = (word.len() - 4) / 2;
    let (red, rest) = word.split_at(r);
    let (hopf, tail) = rest.split_at(4);
    let mut img: BTreeMap<Label, Label> = BTreeMap::new();
    let mut bind = |u: Label, v: Label| -> Result<(), PlanError> {
        for (p, q) in [(u, v), (v, u)] {
            if *img.entry(p).or_insert(q) != q {
                return Err(bad("word is not of the form red, hopf, reversed image"));
            }
        }
        Ok(())
    };
    for (u, v) in red.iter().zip(tail.iter().rev()) {
        bind(*u, *v)?;
    }
    bind(hopf[0], hopf[1])?;
    bind(hopf[2], hopf[3])?;
    let images: Vec<Label> = (1..=ambient as Label).map(|i| img.get(&i).copied().unwrap_or(i)).collect();
    Perm::from_images(images).map_err(|_| bad("labels outside the diagram"))
}

impl MutationPlan {
    pub fn from_events(ambient: usize, events: Vec<Event>) -> Result<MutationPlan, PlanError> {
        let sigma = sigma_of(ambient, &events)?;
        let word = flatten(&events, &sigma);
        Ok(MutationPlan { ambient, events, sigma, word })
    }

    pub fn reductions(&self) -> usize {
        self.events.iter().filter(|e| matches!(e, Event::Bigon { .. })).count()
    }

    pub fn rd3_count(&self) -> usize {
        self.events.iter().filter(|e| matches!(e, Event::Rd3 { .. })).count()
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "events": self.events,
            "sigma": self.sigma.cycles(),
            "word": self.word,
        })
    }

    /// Parse a plan; a stated σ or word must agree with the events.
    pub fn from_json(ambient: usize, text: &str) -> Result<MutationPlan, PlanError> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Doc {
            events: Vec<Event>,
            #[serde(default)]
            sigma: Option<Vec<Vec<Label>>>,
            #[serde(default)]
            word: Option<Vec<Label>>,
        }
        let doc: Doc = serde_json::from_str(text).map_err(|e| PlanError::Malformed(e.to_string()))?;
        for e in &doc.events {
            let labels = match e {
                Event::Rd3 { a, b, c } => vec![*a, *b, *c],
                Event::Bigon { j, k } => vec![*j, *k],
                Event::Hopf { segments } => segments.to_vec(),
            };
            if labels.iter().any(|&l| l == 0 || l as usize > ambient) {
                return Err(PlanError::Malformed(format!("labels {labels:?} outside 1..={ambient}")));
            }
        }
        let plan = MutationPlan::from_events(ambient, doc.events)?;
        if let Some(s) = doc.sigma {
            let given = Perm::from_cycles(ambient, &s).map_err(|e| PlanError::Malformed(e.to_string()))?;
            if given != plan.sigma {
                return Err(PlanError::Malformed(format!("sigma {given} disagrees with events ({})", plan.sigma)));
            }
        }
        if let Some(w) = doc.word {
            if w != plan.word {
                return Err(PlanError::Malformed("word disagrees with events".into()));
            }
        }
        Ok(plan)
    }
}

fn find_site(d: &LinkDiagram, a: Label, b: Label, c: Label) -> Option<TriangleSite> {
    d.find_triangles().into_iter().find(|t| (t.a, t.b, t.c) == (a, b, c))
}

/// Apply one event, returning the next diagram.
pub fn apply_event(d: &LinkDiagram, e: &Event) -> Result<LinkDiagram, PlanError> {
    match *e {
        Event::Rd3 { a, b, c } => {
            let site = find_site(d, a, b, c).ok_or(PlanError::MissingTriangle { a, b, c })?;
            Ok(d.apply_rd3(&site)?)
        }
        Event::Bigon { j, k } => {
            let site =
                d.find_bigons().into_iter().find(|s| (s.j, s.k) == (j, k)).ok_or(PlanError::MissingBigon(j, k))?;
            Ok(d.reduce_bigon(&site)?)
        }
        Event::Hopf { segments } => match d.detect_hopf() {
            Some(h) if h == segments => Ok(d.clone()),
            _ => Err(PlanError::NotHopf),
        },
    }
}

/// Every diagram along the events, starting with `d`.
pub fn trace(d: &LinkDiagram, events: &[Event]) -> Result<Vec<LinkDiagram>, PlanError> {
    let mut out = vec![d.clone()];
    for e in events {
        let next = apply_event(out.last().unwrap(), e)?;
        out.push(next);
    }
    if !matches!(events.last(), Some(Event::Hopf { .. })) {
        return Err(PlanError::NotHopf);
    }
    Ok(out)
}

/// Two strands leaving a crossing through adjacent slots and meeting again first at
/// another crossing, bounding a disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedBigon {
    pub from: usize,
    pub to: usize,
    /// Segments along both strands.
    pub boundary: BTreeSet<Label>,
    /// Regions inside.
    pub regions: BTreeSet<usize>,
}

fn strand(d: &LinkDiagram, start: Dart) -> Vec<(usize, Label)> {
    let mut out = Vec::new();
    let mut at = start;
    for _ in 0..2 * d.n() {
        let l = d.seg_at(at);
        let far = d.twin(at);
        out.push((far.crossing, l));
        at = far.rot(2);
        if at == start {
            break;
        }
    }
    out
}

pub fn generalized_bigons(d: &LinkDiagram) -> Vec<GeneralizedBigon> {
    let mut out = Vec::new();
    for x in 0..d.n() {
        for p in 0..4 {
            let s1 = strand(d, Dart::new(x, p));
            let s2 = strand(d, Dart::new(x, p + 1));
            let pos2: BTreeMap<usize, usize> = s2.iter().enumerate().rev().map(|(k, &(y, _))| (y, k)).collect();
            let Some((k1, k2)) = s1
                .iter()
                .enumerate()
                .find_map(|(k, (y, _))| (*y != x).then(|| pos2.get(y).map(|&k2| (k, k2))).flatten())
            else {
                continue;
            };
            let inner1: BTreeSet<usize> = s1[..k1].iter().map(|e| e.0).collect();
            let inner2: BTreeSet<usize> = s2[..k2].iter().map(|e| e.0).collect();
            if inner1.contains(&x) || inner2.contains(&x) || !inner1.is_disjoint(&inner2) {
                continue;
            }
            let boundary: BTreeSet<Label> = s1[..=k1].iter().chain(&s2[..=k2]).map(|e| e.1).collect();
            let regions = flood(d, d.region_at(Dart::new(x, p)), &boundary);
            if regions.len() < d.regions().len() {
                out.push(GeneralizedBigon { from: x, to: s1[k1].0, boundary, regions });
            }
        }
    }
    out.sort_by_key(|g| (g.regions.len(), g.from.min(g.to), g.from.max(g.to)));
    out
}

fn flood(d: &LinkDiagram, start: usize, walls: &BTreeSet<Label>) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(r) = stack.pop() {
        for &l in &d.regions()[r].sides {
            if walls.contains(&l) {
                continue;
            }
            let (a, b) = d.sides_of(l);
            for o in [a, b] {
                if seen.insert(o) {
                    stack.push(o);
                }
            }
        }
    }
    seen
}

/// Triangle moves to try, those inside the smallest generalized bigon and touching its
/// boundary first; the moving segment is the smallest label of each triangle.
fn candidates(d: &LinkDiagram, avoid: &BTreeSet<usize>) -> Vec<TriangleSite> {
    let inside = generalized_bigons(d).into_iter().next();
    let mut sites: Vec<(bool, [Label; 3], TriangleSite)> = Vec::new();
    for id in d.triangle_regions() {
        let r = &d.regions()[id];
        let m = (0..3).min_by_key(|&m| r.sides[m]).unwrap();
        let Some(site) = d.triangle_site(id, m) else { continue };
        if site.crossings().iter().any(|x| avoid.contains(x)) {
            continue;
        }
        let preferred =
            inside.as_ref().is_some_and(|g| g.regions.contains(&id) && r.sides.iter().any(|s| g.boundary.contains(s)));
        let mut key = site.labels();
        key.sort();
        sites.push((!preferred, key, site));
    }
    sites.sort_by_key(|s| (s.0, s.1));
    sites.into_iter().map(|s| s.2).collect()
}

fn reducible(d: &LinkDiagram) -> Option<(Event, LinkDiagram)> {
    for b in d.find_bigons() {
        if let Ok(e) = d.reduce_bigon(&b) {
            if e.primality_scan().is_empty() {
                return Some((Event::Bigon { j: b.j, k: b.k }, e));
            }
        }
    }
    None
}

struct Search {
    nodes: usize,
    budget: usize,
}

impl Search {
    fn dfs(
        &mut self,
        d: &LinkDiagram,
        avoid: &BTreeSet<usize>,
        left: usize,
        path: &mut Vec<Event>,
    ) -> Option<LinkDiagram> {
        if reducible(d).is_some() {
            return Some(d.clone());
        }
        if left == 0 {
            return None;
        }
        for site in candidates(d, avoid) {
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            let Ok(next) = d.apply_rd3(&site) else { continue };
            if !next.primality_scan().is_empty() {
                continue;
            }
            path.push(Event::Rd3 { a: site.a, b: site.b, c: site.c });
            let avoid: BTreeSet<usize> = site.crossings().into_iter().collect();
            if let Some(found) = self.dfs(&next, &avoid, left - 1, path) {
                return Some(found);
            }
            path.pop();
        }
        None
    }
}

pub fn plan(d: &LinkDiagram) -> Result<MutationPlan, PlanError> {
    plan_with(d, &PlanConfig::default())
}

pub fn plan_with(d: &LinkDiagram, cfg: &PlanConfig) -> Result<MutationPlan, PlanError> {
    if d.n() < 2 {
        return Err(PlanError::TooSmall);
    }
    if let Some(v) = d.primality_scan().into_iter().next() {
        return Err(PlanError::NotPrime(v));
    }
    let mut events = Vec::new();
    let mut cur = d.clone();
    loop {
        if let Some(h) = cur.detect_hopf() {
            events.push(Event::Hopf { segments: h });
            break;
        }
        if let Some((e, next)) = reducible(&cur) {
            events.push(e);
            cur = next;
            continue;
        }
        let mut found = None;
        let mut search = Search { nodes: 0, budget: cfg.budget };
        for depth in 1..=cfg.depth {
            let mut path = Vec::new();
            if let Some(next) = search.dfs(&cur, &BTreeSet::new(), depth, &mut path) {
                found = Some((path, next));
                break;
            }
            if search.nodes > search.budget {
                break;
            }
        }
        let Some((path, next)) = found else {
            return Err(PlanError::Exhausted { depth: cfg.depth, nodes: search.nodes });
        };
        log::debug!("triangle moves {path:?} create a bigon");
        events.extend(path);
        cur = next;
    }
    MutationPlan::from_events(d.ambient() as usize, events)
}

/// The knot seed with its quiver and lattice checks.
#[derive(Clone, Debug)]
pub struct Execution {
    pub seed: Seed,
    pub sigma: Perm,
    /// `σ(Q) = Q_t^op`.
    pub quiver_iso: bool,
    /// Positions `i` with `F_{i;t} ≠ F_{T(σ(i))}`.
    pub f_mismatches: Vec<Label>,
}

fn check(d: &LinkDiagram, seed: Seed, sigma: Perm, cfg: &LatticeConfig) -> Result<Execution, PlanError> {
    let q = Quiver::of_diagram(d);
    let quiver_iso = q.permute(&sigma)? == seed.quiver().opposite();
    let mut f_mismatches = Vec::new();
    for i in d.labels() {
        let t = kauffman::poset(d, sigma.apply(i), cfg)?.f_poly();
        if seed.f_polynomial(i) != t {
            f_mismatches.push(i);
        }
    }
    Ok(Execution { seed, sigma, quiver_iso, f_mismatches })
}

pub fn execute(d: &LinkDiagram, plan: &MutationPlan) -> Result<Execution, PlanError> {
    execute_with(d, plan, &LatticeConfig::default())
}

pub fn execute_with(d: &LinkDiagram, plan: &MutationPlan, cfg: &LatticeConfig) -> Result<Execution, PlanError> {
    trace(d, &plan.events)?;
    let seed = initial_seed(&Quiver::of_diagram(d)).mutate_word(&plan.word)?;
    check(d, seed, plan.sigma.clone(), cfg)
}

/// Every seed along a word, starting with the initial one.
pub fn seed_trace(d: &LinkDiagram, word: &[Label]) -> Result<Vec<Seed>, PlanError> {
    let mut out = vec![initial_seed(&Quiver::of_diagram(d))];
    for &k in word {
        let next = out.last().unwrap().mutate(k)?;
        out.push(next);
    }
    Ok(out)
}

/// A replay file: a diagram reference, a mutation word and optional expectations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReplayFile {
    /// Path of the diagram, relative to the replay file.
    pub diagram: String,
    pub sequence: Vec<Label>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    /// Position to canonical polynomial text.
    #[serde(default)]
    pub f_polys: BTreeMap<Label, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<Vec<Label>>>,
}

impl ReplayFile {
    pub fn from_json(text: &str) -> Result<ReplayFile, PlanError> {
        serde_json::from_str(text).map_err(|e| PlanError::Malformed(e.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct ReplayReport {
    pub execution: Execution,
    pub all_green: bool,
    /// Human-readable differences from the expectations.
    pub mismatches: Vec<String>,
}

impl ReplayReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn replay(d: &LinkDiagram, word: &[Label], expected: Option<&Expected>) -> Result<ReplayReport, PlanError> {
    let n = d.ambient() as usize;
    for &k in word {
        if !d.has_label(k) {
            return Err(QuiverError::UnknownVertex(k).into());
        }
    }
    let sigma = sigma_from_word(n, word)?;
    let mut seed = initial_seed(&Quiver::of_diagram(d));
    let mut all_green = true;
    for &k in word {
        all_green &= seed.is_green(k);
        seed = seed.mutate(k)?;
    }
    let execution = check(d, seed, sigma, &LatticeConfig::default())?;
    let mut mismatches = Vec::new();
    if let Some(exp) = expected {
        for (&i, text) in &exp.f_polys {
            let want = LaurentPoly::parse(Vars::Y(n), text).map_err(|e| PlanError::Malformed(e.to_string()))?;
            if i == 0 || i as usize > n {
                return Err(PlanError::Malformed(format!("position {i} out of range")));
            }
            let got = execution.seed.f_polynomial(i);
            if got != want {
                mismatches.push(format!("F_{i}: expected {want}, got {got}"));
            }
        }
        if let Some(s) = &exp.sigma {
            let want = Perm::from_cycles(n, s).map_err(|e| PlanError::Malformed(e.to_string()))?;
            if want != execution.sigma {
                mismatches.push(format!("sigma: expected {want}, got {}", execution.sigma));
            }
        }
    }
    Ok(ReplayReport { execution, all_green, mismatches })
}
