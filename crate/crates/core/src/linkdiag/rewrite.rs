use std::collections::BTreeMap;

use super::{BigonSite, Crossing, Dart, DiagramError, Label, LinkDiagram, TriangleSite};

impl LinkDiagram {
    /// Merge the two crossings of a bigon into one, deleting segments `j` and `k`.
    pub fn reduce_bigon(&self, site: &BigonSite) -> Result<LinkDiagram, DiagramError> {
        if self.detect_hopf().is_some() {
            return Err(DiagramError::Hopf);
        }
        let current = self
            .find_bigons()
            .into_iter()
            .find(|b| b.j == site.j && b.k == site.k && b.s == site.s && b.t == site.t)
            .ok_or_else(|| DiagramError::Stale(format!("no bigon ({}, {})", site.j, site.k)))?;
        let r = &self.regions[current.region];
        let (cs, ct) = if r.corners[0].crossing == current.s {
            (r.corners[0], r.corners[1])
        } else {
            (r.corners[1], r.corners[0])
        };
        let (s, t) = (cs.crossing, ct.crossing);
        let outer = [cs.rot(2), cs.rot(3), ct.rot(2), ct.rot(3)];

        // the merged crossing takes index min(s, t); the other index is removed
        let keep = s.min(t);
        let gone = s.max(t);
        let reindex = |x: usize| if x > gone { x - 1 } else { x };
        let mut map: BTreeMap<Dart, Dart> = BTreeMap::new();
        for (x, _) in self.crossings.iter().enumerate() {
            if x == s || x == t {
                continue;
            }
            for p in 0..4 {
                map.insert(Dart::new(x, p), Dart::new(reindex(x), p));
            }
        }
        for (k, d) in outer.iter().enumerate() {
            map.insert(*d, Dart::new(keep, k));
        }
        let mut crossings: Vec<Crossing> = Vec::with_capacity(self.n() - 1);
        for (x, c) in self.crossings.iter().enumerate() {
            if x == gone {
                continue;
            }
            if x == keep {
                let segs = outer.map(|d| self.seg_at(d));
                let first_over = !self.crossings[s].is_under(outer[0].slot);
                crossings.push(Crossing { segs, under: usize::from(first_over) });
            } else {
                crossings.push(c.clone());
            }
        }
        for (k, d) in outer.iter().enumerate() {
            let l = self.seg_at(*d);
            if outer.iter().enumerate().any(|(m, e)| m != k && self.seg_at(*e) == l) {
                return Err(DiagramError::WouldCurl(l));
            }
        }
        let preferred: BTreeMap<Label, Dart> = self
            .segments
            .values()
            .filter(|seg| seg.label != current.j && seg.label != current.k)
            .map(|seg| (seg.label, map[&seg.tail]))
            .collect();
        let tails = Self::orient_components(&crossings, &preferred);
        Self::from_parts(self.ambient, crossings, &tails).map_err(|e| match e {
            DiagramError::Curl(l) => DiagramError::WouldCurl(l),
            other => other,
        })
    }

    /// Move segment `a` across the crossing of `b` and `c`.
    pub fn apply_rd3(&self, site: &TriangleSite) -> Result<LinkDiagram, DiagramError> {
        let stale = || DiagramError::Stale(format!("no triangle ({}; {}, {})", site.a, site.b, site.c));
        let ok = self
            .triangle_regions()
            .into_iter()
            .any(|id| (0..3).any(|m| self.triangle_site(id, m).as_ref() == Some(site)));
        if !ok {
            return Err(stale());
        }
        let (xab, xbc, xac) = (site.x_ab, site.x_bc, site.x_ac);
        let slot = |x: usize, l: Label| self.crossings[x].segs.iter().position(|&s| s == l).ok_or_else(stale);
        let alpha = Dart::new(xac, slot(xac, site.a)?);
        let p1 = Dart::new(xab, slot(xab, site.a)?);
        let p2 = Dart::new(xbc, slot(xbc, site.b)?);

        let moves: [(Dart, Dart); 12] = [
            (alpha, Dart::new(xab, 2)),
            (p1, Dart::new(xac, 0)),
            (p1.rot(1), Dart::new(xbc, 0)),
            (p2, Dart::new(xab, 3)),
            (alpha.rot(-1), Dart::new(xbc, 1)),
            (p2.rot(1), Dart::new(xac, 3)),
            (p1.rot(3), Dart::new(xbc, 2)),
            (alpha.rot(1), Dart::new(xbc, 3)),
            (alpha.rot(2), Dart::new(xab, 0)),
            (p2.rot(2), Dart::new(xab, 1)),
            (p2.rot(3), Dart::new(xac, 1)),
            (p1.rot(2), Dart::new(xac, 2)),
        ];
        let mut map: BTreeMap<Dart, Dart> = BTreeMap::new();
        for (from, to) in moves {
            map.insert(from, to);
        }
        let mut crossings = self.crossings.clone();
        for &(from, to) in &moves {
            crossings[to.crossing].segs[to.slot] = self.seg_at(from);
        }
        // each pair of strands keeps its over/under relation
        let over = |d: Dart| !self.crossings[d.crossing].is_under(d.slot);
        crossings[xab].under = if over(p1) { 1 } else { 0 };
        crossings[xbc].under = if over(p2) { 1 } else { 0 };
        crossings[xac].under = if over(alpha) { 1 } else { 0 };
        let tails: BTreeMap<Label, Dart> =
            self.segments.values().map(|s| (s.label, map.get(&s.tail).copied().unwrap_or(s.tail))).collect();
        Self::from_parts(self.ambient, crossings, &tails)
    }
}
