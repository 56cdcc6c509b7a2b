//! Kauffman states relative to a segment, their transposition lattice, and the
//! representations `T(i)` read off from it.

mod hull;

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write;

use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use crate::linkdiag::{Dart, Label, LinkDiagram};
use crate::poly::{LaurentPoly, Vars};

pub use hull::newton_vertex_check;

/// Rotation sense of the two markers in a transposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Clock {
    Cw,
    Ccw,
}

impl Clock {
    pub fn opposite(self) -> Clock {
        match self {
            Clock::Cw => Clock::Ccw,
            Clock::Ccw => Clock::Cw,
        }
    }
}

impl std::str::FromStr for Clock {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "cw" => Ok(Clock::Cw),
            "ccw" => Ok(Clock::Ccw),
            _ => Err(format!("expected cw or ccw, got {s:?}")),
        }
    }
}

/// The marker rotation that moves a state up in the lattice.
///
/// Calibrated against the figure-eight knot cluster, see `tests/calibration.rs`.
pub const CLOCK_UP: Clock = Clock::Ccw;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeConfig {
    pub clock: Clock,
    /// Retry with the opposite sense when the configured one yields no lattice.
    pub fallback: bool,
}

impl Default for LatticeConfig {
    fn default() -> Self {
        LatticeConfig { clock: CLOCK_UP, fallback: true }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KauffmanError {
    #[error("unknown segment {0}")]
    UnknownSegment(Label),
    #[error("no Kauffman states relative to segment {0}")]
    NoStates(Label),
    #[error("transposition graph relative to segment {0} is disconnected")]
    Disconnected(Label),
    #[error("orientation relative to segment {segment} has {sources} sources and {sinks} sinks")]
    NotBounded { segment: Label, sources: usize, sinks: usize },
    #[error("exponent vectors relative to segment {0} depend on the path")]
    PathDependent(Label),
}

/// One marker per crossing, stored as the corner index it occupies.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KauffmanState {
    pub markers: Vec<usize>,
}

impl KauffmanState {
    /// Region holding the marker of crossing `x`.
    pub fn region(&self, d: &LinkDiagram, x: usize) -> usize {
        d.region_at(Dart::new(x, self.markers[x]))
    }

    pub fn to_json(&self, d: &LinkDiagram) -> Value {
        let m: BTreeMap<String, usize> = (0..self.markers.len()).map(|x| (x.to_string(), self.region(d, x))).collect();
        json!(m)
    }
}

/// All states relative to segment `i`, in lexicographic marker order.
pub fn enumerate_states(d: &LinkDiagram, i: Label) -> Result<Vec<KauffmanState>, KauffmanError> {
    if !d.has_label(i) {
        return Err(KauffmanError::UnknownSegment(i));
    }
    let (l, r) = d.sides_of(i);
    let mut used = vec![false; d.regions().len()];
    used[l] = true;
    used[r] = true;
    let mut markers = vec![usize::MAX; d.n()];
    let mut out = Vec::new();
    search(d, &mut used, &mut markers, &mut out);
    if out.is_empty() {
        return Err(KauffmanError::NoStates(i));
    }
    out.sort();
    Ok(out)
}

fn search(d: &LinkDiagram, used: &mut [bool], markers: &mut [usize], out: &mut Vec<KauffmanState>) {
    // fail first: the open crossing with fewest free corners
    let mut best: Option<(usize, Vec<usize>)> = None;
    for x in 0..markers.len() {
        if markers[x] != usize::MAX {
            continue;
        }
        let free: Vec<usize> = (0..4).filter(|&p| !used[d.region_at(Dart::new(x, p))]).collect();
        if best.as_ref().is_none_or(|(_, f)| free.len() < f.len()) {
            let empty = free.is_empty();
            best = Some((x, free));
            if empty {
                break;
            }
        }
    }
    let Some((x, free)) = best else {
        out.push(KauffmanState { markers: markers.to_vec() });
        return;
    };
    for p in free {
        let r = d.region_at(Dart::new(x, p));
        used[r] = true;
        markers[x] = p;
        search(d, used, markers, out);
        markers[x] = usize::MAX;
        used[r] = false;
    }
}

/// States joined by transpositions, oriented upward, with exponent vectors.
#[derive(Clone, Debug)]
pub struct StatePoset {
    pub segment: Label,
    pub clock: Clock,
    pub states: Vec<KauffmanState>,
    /// `(lower, upper, label)`.
    pub edges: Vec<(usize, usize, Label)>,
    /// Exponent vectors indexed by `label - 1`.
    pub exps: Vec<Vec<u32>>,
    pub min: usize,
    pub max: usize,
}

/// Up-moves out of `s`: the new marker pair and the segment crossed.
fn up_moves(d: &LinkDiagram, s: &KauffmanState, clock: Clock) -> Vec<(KauffmanState, Label)> {
    let mut out = Vec::new();
    for seg in d.segments() {
        let (t, h) = (seg.tail, seg.head);
        let (x, y) = (t.crossing, h.crossing);
        // corners (x,p) and (y,q-1) lie left of the segment, (x,p-1) and (y,q) right
        let (from, to) = match clock {
            Clock::Cw => ((t.slot, h.slot), ((t.slot + 3) % 4, (h.slot + 3) % 4)),
            Clock::Ccw => (((t.slot + 3) % 4, (h.slot + 3) % 4), (t.slot, h.slot)),
        };
        if s.markers[x] == from.0 && s.markers[y] == from.1 {
            let mut m = s.markers.clone();
            m[x] = to.0;
            m[y] = to.1;
            out.push((KauffmanState { markers: m }, seg.label));
        }
    }
    out
}

impl StatePoset {
    pub fn build(
        d: &LinkDiagram,
        i: Label,
        states: Vec<KauffmanState>,
        cfg: &LatticeConfig,
    ) -> Result<StatePoset, KauffmanError> {
        match Self::orient(d, i, states.clone(), cfg.clock) {
            Err(e) if cfg.fallback => {
                log::warn!(
                    "clock {:?} failed at segment {i} ({e}); retrying with {:?}",
                    cfg.clock,
                    cfg.clock.opposite()
                );
                Self::orient(d, i, states, cfg.clock.opposite())
            }
            r => r,
        }
    }

    fn orient(
        d: &LinkDiagram,
        i: Label,
        states: Vec<KauffmanState>,
        clock: Clock,
    ) -> Result<StatePoset, KauffmanError> {
        if states.is_empty() {
            return Err(KauffmanError::NoStates(i));
        }
        let index: HashMap<&KauffmanState, usize> = states.iter().enumerate().map(|(k, s)| (s, k)).collect();
        let mut edges = Vec::new();
        for (k, s) in states.iter().enumerate() {
            for (t, label) in up_moves(d, s, clock) {
                if let Some(&u) = index.get(&t) {
                    edges.push((k, u, label));
                }
            }
        }
        let m = states.len();
        let mut indeg = vec![0; m];
        let mut outdeg = vec![0; m];
        let mut adj = vec![vec![]; m];
        for &(a, b, l) in &edges {
            outdeg[a] += 1;
            indeg[b] += 1;
            adj[a].push((b, l, true));
            adj[b].push((a, l, false));
        }
        let sources: Vec<usize> = (0..m).filter(|&k| indeg[k] == 0).collect();
        let sinks: Vec<usize> = (0..m).filter(|&k| outdeg[k] == 0).collect();
        if sources.len() != 1 || sinks.len() != 1 {
            return Err(KauffmanError::NotBounded { segment: i, sources: sources.len(), sinks: sinks.len() });
        }
        let width = d.ambient() as usize;
        let mut exps: Vec<Option<Vec<i64>>> = vec![None; m];
        exps[sources[0]] = Some(vec![0; width]);
        let mut queue = VecDeque::from([sources[0]]);
        while let Some(a) = queue.pop_front() {
            for &(b, l, up) in &adj[a] {
                let mut e = exps[a].clone().unwrap();
                e[l as usize - 1] += if up { 1 } else { -1 };
                match &exps[b] {
                    None => {
                        exps[b] = Some(e);
                        queue.push_back(b);
                    }
                    Some(old) if *old != e => return Err(KauffmanError::PathDependent(i)),
                    Some(_) => {}
                }
            }
        }
        if exps.iter().any(|e| e.is_none()) {
            return Err(KauffmanError::Disconnected(i));
        }
        let exps: Vec<Vec<i64>> = exps.into_iter().map(Option::unwrap).collect();
        if exps.iter().flatten().any(|&v| v < 0) {
            return Err(KauffmanError::PathDependent(i));
        }
        let exps = exps.into_iter().map(|e| e.into_iter().map(|v| v as u32).collect()).collect();
        Ok(StatePoset { segment: i, clock, states, edges, exps, min: sources[0], max: sinks[0] })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// `Σ y^{e(state)}`.
    pub fn f_poly(&self) -> LaurentPoly {
        let vars = Vars::Y(self.exps[0].len());
        LaurentPoly::from_terms(
            vars,
            self.exps.iter().map(|e| (e.iter().map(|&v| v as i32).collect(), BigInt::from(1))),
        )
    }

    /// Dimension vector of `T(i)`, indexed by `label - 1`.
    pub fn dims(&self) -> Vec<u32> {
        self.exps[self.max].clone()
    }

    /// Hasse diagram, nodes named by their exponent monomials.
    pub fn to_dot(&self) -> String {
        let mut out = format!("digraph lattice_{} {{\n", self.segment);
        for (k, e) in self.exps.iter().enumerate() {
            let vars = Vars::Y(e.len());
            let m = LaurentPoly::monomial(vars, e.iter().map(|&v| v as i32).collect(), 1);
            writeln!(out, "  s{k} [label=\"{m}\"];").unwrap();
        }
        for &(a, b, l) in &self.edges {
            writeln!(out, "  s{a} -> s{b} [label=\"{l}\"];").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

pub fn poset(d: &LinkDiagram, i: Label, cfg: &LatticeConfig) -> Result<StatePoset, KauffmanError> {
    StatePoset::build(d, i, enumerate_states(d, i)?, cfg)
}

/// `F_{T(i)}` as the state sum over the lattice.
pub fn f_of_t(d: &LinkDiagram, i: Label) -> Result<LaurentPoly, KauffmanError> {
    Ok(poset(d, i, &LatticeConfig::default())?.f_poly())
}

pub fn dims_of_t(d: &LinkDiagram, i: Label) -> Result<Vec<u32>, KauffmanError> {
    Ok(poset(d, i, &LatticeConfig::default())?.dims())
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymmetryReport {
    /// `(i, j, dim T(i)_j, dim T(j)_i)` for every asymmetric pair.
    pub asymmetric: Vec<(Label, Label, u32, u32)>,
    /// `(j, Σ_i dim T(i)_j, dim T(j))` wherever the column sum differs.
    pub column_sums: Vec<(Label, u32, u32)>,
}

impl SymmetryReport {
    pub fn ok(&self) -> bool {
        self.asymmetric.is_empty() && self.column_sums.is_empty()
    }
}

pub fn dim_symmetry_check(d: &LinkDiagram, cfg: &LatticeConfig) -> Result<SymmetryReport, KauffmanError> {
    let labels = d.labels();
    let mut dims = BTreeMap::new();
    for &i in &labels {
        dims.insert(i, poset(d, i, cfg)?.dims());
    }
    let at = |i: Label, j: Label| dims[&i][j as usize - 1];
    let mut report = SymmetryReport::default();
    for &i in &labels {
        for &j in &labels {
            if i < j && at(i, j) != at(j, i) {
                report.asymmetric.push((i, j, at(i, j), at(j, i)));
            }
        }
    }
    for &j in &labels {
        let column: u32 = labels.iter().map(|&i| at(i, j)).sum();
        let total: u32 = dims[&j].iter().sum();
        if column != total {
            report.column_sums.push((j, column, total));
        }
    }
    Ok(report)
}
