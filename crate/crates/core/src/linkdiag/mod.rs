//! Oriented link diagrams as 4-valent planar combinatorial maps.
//!
//! Every crossing lists its four segment ends counterclockwise. A *dart* is one
//! such end, addressed by crossing index and slot. The *corner* `(x, p)` is the
//! angle between slots `p` and `p + 1` of crossing `x`; regions are the orbits
//! of corners under face tracing.

mod io;
mod prime;
mod rewrite;
mod two_bridge;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

pub use prime::Violation;
pub use two_bridge::two_bridge;

pub type Label = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub crossing: usize,
    pub slot: usize,
}

impl Dart {
    pub fn new(crossing: usize, slot: usize) -> Self {
        Dart { crossing, slot: slot % 4 }
    }

    /// The dart `k` steps counterclockwise around the same crossing.
    pub fn rot(self, k: isize) -> Self {
        Dart::new(self.crossing, (self.slot as isize + k).rem_euclid(4) as usize)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    /// Segment labels, counterclockwise.
    pub segs: [Label; 4],
    /// Parity of the slot pair carrying the understrand.
    pub under: usize,
}

impl Crossing {
    pub fn is_under(&self, slot: usize) -> bool {
        slot % 2 == self.under
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub label: Label,
    pub tail: Dart,
    pub head: Dart,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    /// Corners in face-tracing order.
    pub corners: Vec<Dart>,
    /// `sides[i]` is the segment leaving corner `i`.
    pub sides: Vec<Label>,
}

impl Region {
    pub fn len(&self) -> usize {
        self.corners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }

    /// `(crossing, segment)` incidences in cyclic order.
    pub fn incidences(&self) -> Vec<(usize, Label)> {
        self.corners.iter().zip(&self.sides).map(|(c, &s)| (c.crossing, s)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SegmentClass {
    UnderToOver,
    OverToUnder,
    Same,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("diagram has no crossings")]
    Empty,
    #[error("segment {label} appears {count} times (expected 2)")]
    LabelCount { label: Label, count: usize },
    #[error("segment label {0} outside 1..={1}")]
    LabelRange(Label, u32),
    #[error("{segments} segments for {crossings} crossings")]
    SegmentCount { segments: usize, crossings: usize },
    #[error("curl at segment {0}")]
    Curl(Label),
    #[error("face tracing found {faces} regions, expected {expected}")]
    Euler { faces: usize, expected: usize },
    #[error("inconsistent orientation at segment {0}")]
    Orientation(Label),
    #[error("stale site: {0}")]
    Stale(String),
    #[error("the Hopf diagram has no reducible bigon")]
    Hopf,
    #[error("reduction would create a curl at segment {0}")]
    WouldCurl(Label),
    #[error("invalid continued fraction: {0}")]
    ContinuedFraction(String),
}

#[derive(Clone, Debug)]
pub struct LinkDiagram {
    ambient: u32,
    crossings: Vec<Crossing>,
    segments: BTreeMap<Label, Segment>,
    regions: Vec<Region>,
    corner_region: Vec<[usize; 4]>,
    components: Vec<Vec<Label>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub ambient: u32,
    pub crossings: Vec<([Label; 4], usize)>,
    pub tails: Vec<(Label, usize)>,
}

/// The two ends of each label, in order of appearance.
fn ends_of(crossings: &[Crossing]) -> BTreeMap<Label, Vec<Dart>> {
    let mut ends: BTreeMap<Label, Vec<Dart>> = BTreeMap::new();
    for (x, c) in crossings.iter().enumerate() {
        for (p, &s) in c.segs.iter().enumerate() {
            ends.entry(s).or_default().push(Dart::new(x, p));
        }
    }
    ends
}

impl LinkDiagram {
    /// Validate and assemble a diagram from crossings and per-segment tail darts.
    pub fn from_parts(
        ambient: u32,
        crossings: Vec<Crossing>,
        tails: &BTreeMap<Label, Dart>,
    ) -> Result<Self, DiagramError> {
        let n = crossings.len();
        if n == 0 {
            return Err(DiagramError::Empty);
        }
        let ends = ends_of(&crossings);
        for (&l, e) in &ends {
            if l == 0 || l > ambient {
                return Err(DiagramError::LabelRange(l, ambient));
            }
            if e.len() != 2 {
                return Err(DiagramError::LabelCount { label: l, count: e.len() });
            }
            if e[0].crossing == e[1].crossing {
                return Err(DiagramError::Curl(l));
            }
        }
        if ends.len() != 2 * n {
            return Err(DiagramError::SegmentCount { segments: ends.len(), crossings: n });
        }
        let mut segments = BTreeMap::new();
        for (&l, e) in &ends {
            let tail = *tails.get(&l).ok_or(DiagramError::Orientation(l))?;
            let head = if tail == e[0] {
                e[1]
            } else if tail == e[1] {
                e[0]
            } else {
                return Err(DiagramError::Orientation(l));
            };
            segments.insert(l, Segment { label: l, tail, head });
        }
        // each strand through a crossing enters once and leaves once
        for (x, c) in crossings.iter().enumerate() {
            for p in 0..2 {
                let a = &segments[&c.segs[p]];
                let b = &segments[&c.segs[p + 2]];
                let a_in = a.head == Dart::new(x, p);
                let b_in = b.head == Dart::new(x, p + 2);
                if a_in == b_in {
                    return Err(DiagramError::Orientation(c.segs[p]));
                }
            }
        }
        let mut d = LinkDiagram {
            ambient,
            crossings,
            segments,
            regions: Vec::new(),
            corner_region: vec![[usize::MAX; 4]; n],
            components: Vec::new(),
        };
        d.trace_faces()?;
        d.trace_components();
        Ok(d)
    }

    /// Like [`from_parts`](Self::from_parts) with tails given by crossing index.
    pub fn from_tail_crossings(
        ambient: u32,
        crossings: Vec<Crossing>,
        tails: &BTreeMap<Label, usize>,
    ) -> Result<Self, DiagramError> {
        let ends = ends_of(&crossings);
        let mut darts = BTreeMap::new();
        for (&l, &x) in tails {
            let e = ends.get(&l).ok_or(DiagramError::Orientation(l))?;
            let d = e.iter().find(|d| d.crossing == x).ok_or(DiagramError::Orientation(l))?;
            darts.insert(l, *d);
        }
        Self::from_parts(ambient, crossings, &darts)
    }

    /// Orient every component, keeping the direction of its lowest label when
    /// `preferred` names a tail for it.
    pub(crate) fn orient_components(
        crossings: &[Crossing],
        preferred: &BTreeMap<Label, Dart>,
    ) -> BTreeMap<Label, Dart> {
        let ends = ends_of(crossings);
        let mut tails: BTreeMap<Label, Dart> = BTreeMap::new();
        for (&l, e) in &ends {
            if tails.contains_key(&l) {
                continue;
            }
            let mut tail = match preferred.get(&l) {
                Some(d) if e.contains(d) => *d,
                _ => e[0],
            };
            let mut cur = l;
            while !tails.contains_key(&cur) {
                tails.insert(cur, tail);
                let ce = &ends[&cur];
                let head = if ce[0] == tail { ce[1] } else { ce[0] };
                tail = head.rot(2);
                cur = crossings[tail.crossing].segs[tail.slot];
            }
        }
        tails
    }

    fn trace_faces(&mut self) -> Result<(), DiagramError> {
        let n = self.crossings.len();
        let mut regions = Vec::new();
        for x in 0..n {
            for p in 0..4 {
                if self.corner_region[x][p] != usize::MAX {
                    continue;
                }
                let id = regions.len();
                let mut corners = Vec::new();
                let mut sides = Vec::new();
                let mut c = Dart::new(x, p);
                while self.corner_region[c.crossing][c.slot] == usize::MAX {
                    self.corner_region[c.crossing][c.slot] = id;
                    corners.push(c);
                    let out = c.rot(1);
                    sides.push(self.seg_at(out));
                    c = self.twin(out);
                }
                if c != Dart::new(x, p) {
                    return Err(DiagramError::Euler { faces: 0, expected: n + 2 });
                }
                if corners.len() == 1 {
                    return Err(DiagramError::Curl(sides[0]));
                }
                regions.push(Region { corners, sides });
            }
        }
        if regions.len() != n + 2 {
            return Err(DiagramError::Euler { faces: regions.len(), expected: n + 2 });
        }
        self.regions = regions;
        Ok(())
    }

    fn trace_components(&mut self) {
        let mut seen = BTreeSet::new();
        let mut comps = Vec::new();
        for &l in self.segments.keys() {
            if seen.contains(&l) {
                continue;
            }
            let mut comp = Vec::new();
            let mut cur = l;
            while seen.insert(cur) {
                comp.push(cur);
                cur = self.next_along(cur);
            }
            comps.push(comp);
        }
        self.components = comps;
    }

    pub fn ambient(&self) -> u32 {
        self.ambient
    }

    /// Number of crossings.
    pub fn n(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn segments(&self) -> impl Iterator<Item = &Segment> {
        self.segments.values()
    }

    pub fn segment(&self, l: Label) -> Option<&Segment> {
        self.segments.get(&l)
    }

    pub fn labels(&self) -> Vec<Label> {
        self.segments.keys().copied().collect()
    }

    pub fn has_label(&self, l: Label) -> bool {
        self.segments.contains_key(&l)
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn components(&self) -> &[Vec<Label>] {
        &self.components
    }

    pub fn component_of(&self, l: Label) -> Option<usize> {
        self.components.iter().position(|c| c.contains(&l))
    }

    pub fn seg_at(&self, d: Dart) -> Label {
        self.crossings[d.crossing].segs[d.slot]
    }

    /// The other end of the segment at `d`.
    pub fn twin(&self, d: Dart) -> Dart {
        let s = &self.segments[&self.seg_at(d)];
        if s.tail == d {
            s.head
        } else {
            s.tail
        }
    }

    pub fn region_at(&self, corner: Dart) -> usize {
        self.corner_region[corner.crossing][corner.slot]
    }

    /// Regions to the left and right of a segment, looking from tail to head.
    pub fn sides_of(&self, l: Label) -> (usize, usize) {
        let t = self.segments[&l].tail;
        (self.region_at(t), self.region_at(t.rot(-1)))
    }

    /// Segments bounding some region together with `l` (including `l`).
    pub fn coregion(&self, l: Label) -> BTreeSet<Label> {
        let (a, b) = self.sides_of(l);
        self.regions[a].sides.iter().chain(&self.regions[b].sides).copied().collect()
    }

    /// The segment following `l` along its component.
    pub fn next_along(&self, l: Label) -> Label {
        self.seg_at(self.segments[&l].head.rot(2))
    }

    /// Numbers `a_i` of `i`-sided regions, indexed by `i`.
    pub fn face_census(&self) -> Vec<usize> {
        let mut a = vec![0; 2 * self.n() + 1];
        for r in &self.regions {
            a[r.len()] += 1;
        }
        a
    }

    pub fn classify_segments(&self) -> BTreeMap<Label, SegmentClass> {
        self.segments
            .values()
            .map(|s| {
                let tu = self.crossings[s.tail.crossing].is_under(s.tail.slot);
                let hu = self.crossings[s.head.crossing].is_under(s.head.slot);
                let class = match (tu, hu) {
                    (true, false) => SegmentClass::UnderToOver,
                    (false, true) => SegmentClass::OverToUnder,
                    _ => SegmentClass::Same,
                };
                (s.label, class)
            })
            .collect()
    }

    /// The same map with every component reversed.
    pub fn reversed(&self) -> Self {
        let tails = self.segments.values().map(|s| (s.label, s.head)).collect();
        Self::from_parts(self.ambient, self.crossings.clone(), &tails).expect("reversal is valid")
    }

    /// The same map with the over/under information of crossing `x` switched.
    pub fn flip_crossing(&self, x: usize) -> Self {
        let mut cs = self.crossings.clone();
        cs[x].under ^= 1;
        let tails = self.tail_darts();
        Self::from_parts(self.ambient, cs, &tails).expect("flipping is valid")
    }

    pub(crate) fn tail_darts(&self) -> BTreeMap<Label, Dart> {
        self.segments.values().map(|s| (s.label, s.tail)).collect()
    }

    /// Label-preserving normal form; two diagrams are equal iff these agree.
    pub fn canonical(&self) -> CanonicalForm {
        let rotated: Vec<([Label; 4], usize, usize)> = self
            .crossings
            .iter()
            .map(|c| {
                let r = (0..4).min_by_key(|&k| c.segs[k]).unwrap();
                let segs = [0, 1, 2, 3].map(|k| c.segs[(k + r) % 4]);
                (segs, (c.under + r) % 2, r)
            })
            .collect();
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by_key(|&x| (rotated[x].0, rotated[x].1));
        let mut new_index = vec![0; self.n()];
        for (i, &x) in order.iter().enumerate() {
            new_index[x] = i;
        }
        CanonicalForm {
            ambient: self.ambient,
            crossings: order.iter().map(|&x| (rotated[x].0, rotated[x].1)).collect(),
            tails: self.segments.values().map(|s| (s.label, new_index[s.tail.crossing])).collect(),
        }
    }

    pub fn find_bigons(&self) -> Vec<BigonSite> {
        let mut out = Vec::new();
        for (id, r) in self.regions.iter().enumerate() {
            if r.len() != 2 {
                continue;
            }
            let (c0, c1) = (r.corners[0], r.corners[1]);
            let (s, t) = if c0.crossing < c1.crossing { (c0, c1) } else { (c1, c0) };
            let outer = [self.seg_at(s.rot(2)), self.seg_at(s.rot(3)), self.seg_at(t.rot(2)), self.seg_at(t.rot(3))];
            let (j, k) = (r.sides[0].min(r.sides[1]), r.sides[0].max(r.sides[1]));
            out.push(BigonSite { j, k, s: s.crossing, t: t.crossing, outer, region: id });
        }
        out.sort_by_key(|b| (b.j, b.k));
        out
    }

    /// Indices of 3-sided regions.
    pub fn triangle_regions(&self) -> Vec<usize> {
        (0..self.regions.len()).filter(|&r| self.regions[r].len() == 3).collect()
    }

    /// Every triangle with each of its three role assignments.
    pub fn find_triangles(&self) -> Vec<TriangleSite> {
        let mut out = Vec::new();
        for id in self.triangle_regions() {
            for m in 0..3 {
                if let Some(t) = self.triangle_site(id, m) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// Role assignment `m` of triangle region `id`: the moving segment is `sides[m]`.
    pub fn triangle_site(&self, id: usize, m: usize) -> Option<TriangleSite> {
        let r = &self.regions[id];
        if r.len() != 3 {
            return None;
        }
        let xs: BTreeSet<usize> = r.corners.iter().map(|c| c.crossing).collect();
        if xs.len() != 3 {
            return None;
        }
        Some(TriangleSite {
            a: r.sides[m],
            b: r.sides[(m + 1) % 3],
            c: r.sides[(m + 2) % 3],
            x_ac: r.corners[m].crossing,
            x_ab: r.corners[(m + 1) % 3].crossing,
            x_bc: r.corners[(m + 2) % 3].crossing,
        })
    }

    /// Hopf segment pairs `(a, b, c, d)` when this is a 2-crossing 2-component diagram.
    pub fn detect_hopf(&self) -> Option<[Label; 4]> {
        if self.n() != 2 || self.components.len() != 2 {
            return None;
        }
        let mut pairs: Vec<Vec<Label>> = self
            .components
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort();
                c
            })
            .collect();
        if pairs.iter().any(|p| p.len() != 2) {
            return None;
        }
        pairs.sort();
        Some([pairs[0][0], pairs[0][1], pairs[1][0], pairs[1][1]])
    }

    pub fn primality_scan(&self) -> Vec<Violation> {
        prime::scan(self)
    }
}

impl PartialEq for LinkDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl Eq for LinkDiagram {}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd())
    }
}

/// A 2-sided region between crossings `s` and `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BigonSite {
    pub j: Label,
    pub k: Label,
    pub s: usize,
    pub t: usize,
    /// The four outer segments in counterclockwise order around the merged crossing.
    pub outer: [Label; 4],
    pub region: usize,
}

/// A triangle with the moving segment `a` and the crossing of `b` and `c` it moves across.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TriangleSite {
    pub a: Label,
    pub b: Label,
    pub c: Label,
    pub x_ab: usize,
    pub x_bc: usize,
    pub x_ac: usize,
}

impl TriangleSite {
    pub fn crossings(&self) -> [usize; 3] {
        [self.x_ab, self.x_bc, self.x_ac]
    }

    pub fn labels(&self) -> [Label; 3] {
        [self.a, self.b, self.c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
    const HOPF: &str = "X[1,3,2,4] X[4,2,3,1]";

    #[test]
    fn trefoil_counts() {
        let d = LinkDiagram::parse_pd(TREFOIL).unwrap();
        assert_eq!((d.n(), d.labels().len(), d.regions().len()), (3, 6, 5));
        assert_eq!(d.components().len(), 1);
        assert_eq!(d.find_bigons().len(), 3);
        assert!(d.classify_segments().values().all(|c| *c != SegmentClass::Same));
        assert!(d.detect_hopf().is_none());
    }

    #[test]
    fn hopf_counts() {
        let d = LinkDiagram::parse_pd(HOPF).unwrap();
        assert_eq!((d.n(), d.labels().len(), d.regions().len()), (2, 4, 4));
        assert_eq!(d.components().len(), 2);
        assert_eq!(d.find_bigons().len(), 4);
        assert!(d.find_triangles().is_empty());
        let h = d.detect_hopf().unwrap();
        assert_eq!(d.component_of(h[0]), d.component_of(h[1]));
        assert_ne!(d.component_of(h[0]), d.component_of(h[2]));
    }

    #[test]
    fn flipped_crossing_has_same_segment() {
        let d = LinkDiagram::parse_pd(TREFOIL).unwrap().flip_crossing(0);
        assert!(d.classify_segments().values().any(|c| *c == SegmentClass::Same));
    }

    #[test]
    fn reversal_swaps_classes() {
        let d = LinkDiagram::parse_pd(TREFOIL).unwrap();
        let (a, b) = (d.classify_segments(), d.reversed().classify_segments());
        for (l, c) in a {
            let expect = match c {
                SegmentClass::UnderToOver => SegmentClass::OverToUnder,
                SegmentClass::OverToUnder => SegmentClass::UnderToOver,
                SegmentClass::Same => SegmentClass::Same,
            };
            assert_eq!(b[&l], expect);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(LinkDiagram::parse_pd("X[1,1,2,2]"), Err(DiagramError::Curl(_))));
        assert!(matches!(
            LinkDiagram::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,7]"),
            Err(DiagramError::LabelCount { .. }) | Err(DiagramError::LabelRange(..))
        ));
        // same pairing with the rotation at one crossing mirrored is not planar
        assert!(matches!(LinkDiagram::parse_pd("X[1,4,2,5] X[3,1,4,6] X[5,2,6,3]"), Err(DiagramError::Euler { .. })));
    }
}
