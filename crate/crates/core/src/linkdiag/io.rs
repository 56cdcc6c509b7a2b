use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Deserialize;

use super::{Crossing, Dart, DiagramError, Label, LinkDiagram};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramDoc {
    #[serde(default)]
    ambient: Option<u32>,
    crossings: Vec<CrossingDoc>,
    orientations: BTreeMap<Label, usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CrossingDoc {
    segments_cw: [Label; 4],
    under_pair: usize,
}

struct PdScanner<'a> {
    s: &'a [u8],
    pos: usize,
}

impl PdScanner<'_> {
    fn err<T>(&self, msg: &str) -> Result<T, DiagramError> {
        Err(DiagramError::Parse(format!("{msg} at byte {}", self.pos)))
    }

    fn skip(&mut self) {
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_whitespace() || self.s[self.pos] == b',') {
            self.pos += 1;
        }
    }

    fn eat(&mut self, lit: &[u8]) -> bool {
        self.skip();
        if self.s[self.pos..].starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn label(&mut self) -> Result<Label, DiagramError> {
        self.skip();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        match txt.parse::<Label>() {
            Ok(v) => Ok(v),
            Err(_) => self.err("expected a segment label"),
        }
    }

    fn tuples(&mut self) -> Result<Vec<[Label; 4]>, DiagramError> {
        let wrapped = self.eat(b"PD[");
        let mut out = Vec::new();
        while self.eat(b"X[") {
            let mut t = [0; 4];
            for (k, v) in t.iter_mut().enumerate() {
                if k > 0 {
                    self.skip();
                }
                *v = self.label()?;
            }
            if !self.eat(b"]") {
                return self.err("expected ']'");
            }
            out.push(t);
        }
        if wrapped && !self.eat(b"]") {
            return self.err("expected ']' closing PD[");
        }
        self.skip();
        if self.pos != self.s.len() {
            return self.err("unexpected input");
        }
        Ok(out)
    }
}

impl LinkDiagram {
    /// Parse `X[a,b,c,d] ...`, each tuple counterclockwise from the incoming under-edge.
    pub fn parse_pd(text: &str) -> Result<Self, DiagramError> {
        let tuples = PdScanner { s: text.as_bytes(), pos: 0 }.tuples()?;
        if tuples.is_empty() {
            return Err(DiagramError::Empty);
        }
        let n = tuples.len();
        let crossings: Vec<Crossing> = tuples.iter().map(|&segs| Crossing { segs, under: 0 }).collect();
        let ends = super::ends_of(&crossings);
        for (&l, e) in &ends {
            if l == 0 || l as usize > 2 * n {
                return Err(DiagramError::LabelRange(l, 2 * n as u32));
            }
            if e.len() != 2 {
                return Err(DiagramError::LabelCount { label: l, count: e.len() });
            }
        }
        let other = |l: Label, d: Dart| {
            let e = &ends[&l];
            if e[0] == d {
                e[1]
            } else {
                e[0]
            }
        };
        let mut tails: BTreeMap<Label, Dart> = BTreeMap::new();
        for (x, t) in tuples.iter().enumerate() {
            tails.entry(t[2]).or_insert(Dart::new(x, 2));
            tails.entry(t[0]).or_insert(other(t[0], Dart::new(x, 0)));
        }
        loop {
            propagate(&crossings, &mut tails, &other);
            if tails.len() == ends.len() {
                break;
            }
            // a component passing over everywhere: orient by label succession
            let (x, t) = tuples
                .iter()
                .enumerate()
                .find(|(_, t)| !tails.contains_key(&t[1]))
                .expect("unoriented segment lies on an over-strand");
            let (b, d) = (t[1], t[3]);
            let d_in = d + 1 == b || d > b + 1;
            if d_in {
                tails.insert(d, other(d, Dart::new(x, 3)));
            } else {
                tails.insert(b, other(b, Dart::new(x, 1)));
            }
        }
        Self::from_parts(2 * n as u32, crossings, &tails)
    }

    /// JSON when the text starts with `{`, PD otherwise.
    pub fn parse_any(text: &str) -> Result<Self, DiagramError> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::parse_pd(text)
        }
    }

    /// PD text, each tuple starting at the incoming under-edge.
    pub fn to_pd(&self) -> String {
        let mut parts = Vec::new();
        for (x, c) in self.crossings.iter().enumerate() {
            let u = c.under;
            let start = if self.segments[&c.segs[u]].head == Dart::new(x, u) { u } else { u + 2 };
            let t: Vec<String> = (0..4).map(|k| c.segs[(start + k) % 4].to_string()).collect();
            parts.push(format!("X[{}]", t.join(",")));
        }
        parts.join(" ")
    }

    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        let doc: DiagramDoc = serde_json::from_str(text).map_err(|e| DiagramError::Parse(e.to_string()))?;
        let n = doc.crossings.len();
        let mut crossings = Vec::with_capacity(n);
        for c in &doc.crossings {
            if c.under_pair > 1 {
                return Err(DiagramError::Parse(format!("under_pair {} not in {{0,1}}", c.under_pair)));
            }
            let s = c.segments_cw;
            crossings.push(Crossing { segs: [s[0], s[3], s[2], s[1]], under: c.under_pair });
        }
        for (&l, &x) in &doc.orientations {
            if x >= n {
                return Err(DiagramError::Parse(format!("tail crossing {x} of segment {l} out of range")));
            }
        }
        let ambient = doc.ambient.unwrap_or(2 * n as u32);
        Self::from_tail_crossings(ambient, crossings, &doc.orientations)
    }

    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        if self.ambient as usize != 2 * self.n() {
            writeln!(out, "  \"ambient\": {},", self.ambient).unwrap();
        }
        out.push_str("  \"crossings\": [\n");
        for (x, c) in self.crossings.iter().enumerate() {
            let s = c.segs;
            write!(
                out,
                "    {{\"segments_cw\": [{}, {}, {}, {}], \"under_pair\": {}}}",
                s[0], s[3], s[2], s[1], c.under
            )
            .unwrap();
            out.push_str(if x + 1 < self.n() { ",\n" } else { "\n" });
        }
        out.push_str("  ],\n  \"orientations\": {");
        let tails: Vec<String> =
            self.segments.values().map(|s| format!("\"{}\": {}", s.label, s.tail.crossing)).collect();
        out.push_str(&tails.join(", "));
        out.push_str("}\n}\n");
        out
    }

    /// Crossings as nodes, segments as directed labeled edges.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph diagram {\n");
        for x in 0..self.n() {
            writeln!(out, "  c{x} [label=\"{x}\"];").unwrap();
        }
        for s in self.segments.values() {
            writeln!(out, "  c{} -> c{} [label=\"{}\"];", s.tail.crossing, s.head.crossing, s.label).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

fn propagate(crossings: &[Crossing], tails: &mut BTreeMap<Label, Dart>, other: &dyn Fn(Label, Dart) -> Dart) {
    let mut changed = true;
    while changed {
        changed = false;
        for (x, c) in crossings.iter().enumerate() {
            for p in 0..4 {
                let here = Dart::new(x, p);
                let l = c.segs[p];
                let Some(&t) = tails.get(&l) else { continue };
                // a segment arriving here continues out through the opposite slot
                let opp = here.rot(2);
                let m = c.segs[opp.slot];
                if tails.contains_key(&m) {
                    continue;
                }
                let tail = if t != here { opp } else { other(m, opp) };
                tails.insert(m, tail);
                changed = true;
            }
        }
    }
}
