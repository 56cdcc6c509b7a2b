use std::collections::BTreeMap;

use super::{Crossing, Dart, DiagramError, Label, LinkDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum End {
    Port(Dart),
    Virt(usize),
}

const NW: usize = 0;
const SW: usize = 1;
const SE: usize = 2;
const NE: usize = 3;

struct Tangle {
    n: usize,
    joins: Vec<(End, End)>,
    ends: [End; 4],
}

impl Tangle {
    fn zero() -> Self {
        Tangle {
            n: 0,
            joins: vec![(End::Virt(NW), End::Virt(NE)), (End::Virt(SW), End::Virt(SE))],
            ends: [End::Virt(NW), End::Virt(SW), End::Virt(SE), End::Virt(NE)],
        }
    }

    fn infinity() -> Self {
        Tangle {
            n: 0,
            joins: vec![(End::Virt(NW), End::Virt(SW)), (End::Virt(NE), End::Virt(SE))],
            ends: [End::Virt(NW), End::Virt(SW), End::Virt(SE), End::Virt(NE)],
        }
    }

    /// Twist the two east ends around each other.
    fn horizontal(&mut self) {
        let x = self.n;
        self.n += 1;
        self.joins.push((self.ends[NE], End::Port(Dart::new(x, 1))));
        self.joins.push((self.ends[SE], End::Port(Dart::new(x, 2))));
        self.ends[NE] = End::Port(Dart::new(x, 0));
        self.ends[SE] = End::Port(Dart::new(x, 3));
    }

    /// Twist the two south ends around each other.
    fn vertical(&mut self) {
        let x = self.n;
        self.n += 1;
        self.joins.push((self.ends[SE], End::Port(Dart::new(x, 0))));
        self.joins.push((self.ends[SW], End::Port(Dart::new(x, 1))));
        self.ends[SW] = End::Port(Dart::new(x, 2));
        self.ends[SE] = End::Port(Dart::new(x, 3));
    }

    /// Numerator closure: join north ends and south ends, then resolve segments.
    fn close(mut self) -> Vec<(Dart, Dart)> {
        self.joins.push((self.ends[NW], self.ends[NE]));
        self.joins.push((self.ends[SW], self.ends[SE]));
        let mut adj: BTreeMap<End, Vec<End>> = BTreeMap::new();
        for &(a, b) in &self.joins {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        let mut segs = Vec::new();
        let mut used = std::collections::BTreeSet::new();
        for x in 0..self.n {
            for p in 0..4 {
                let start = End::Port(Dart::new(x, p));
                if used.contains(&start) {
                    continue;
                }
                let (mut prev, mut cur) = (start, adj[&start][0]);
                while let End::Virt(_) = cur {
                    let next = adj[&cur].iter().copied().find(|&e| e != prev).unwrap_or(prev);
                    prev = cur;
                    cur = next;
                }
                let (End::Port(a), End::Port(b)) = (start, cur) else { unreachable!() };
                used.insert(start);
                used.insert(cur);
                segs.push((a, b));
            }
        }
        segs
    }
}

/// The standard alternating 2-bridge diagram with twist blocks `cf`.
pub fn two_bridge(cf: &[u32]) -> Result<LinkDiagram, DiagramError> {
    if cf.is_empty() {
        return Err(DiagramError::ContinuedFraction("empty".into()));
    }
    if cf.contains(&0) {
        return Err(DiagramError::ContinuedFraction("entries must be positive".into()));
    }
    if cf.iter().map(|&a| a as u64).sum::<u64>() < 2 {
        return Err(DiagramError::ContinuedFraction("needs at least two crossings".into()));
    }
    let mut cf = cf.to_vec();
    // a unit block at either end folds into its neighbour
    if cf.len() > 1 && cf[0] == 1 {
        cf.reverse();
    }
    while cf.len() > 1 && *cf.last().unwrap() == 1 {
        cf.pop();
        *cf.last_mut().unwrap() += 1;
    }
    let m = cf.len();
    // the last block is horizontal; types alternate backwards from it
    let vertical = |i: usize| (m - 1 - i) % 2 == 1;
    let mut t = if vertical(0) { Tangle::infinity() } else { Tangle::zero() };
    for (i, &a) in cf.iter().enumerate() {
        for _ in 0..a {
            if vertical(i) {
                t.vertical();
            } else {
                t.horizontal();
            }
        }
    }
    let n = t.n;
    let pairs = t.close();
    let mut partner: BTreeMap<Dart, Dart> = BTreeMap::new();
    for &(a, b) in &pairs {
        partner.insert(a, b);
        partner.insert(b, a);
    }
    // label along components, starting from the lowest unlabeled dart
    let mut label_of: BTreeMap<Dart, Label> = BTreeMap::new();
    let mut tails: BTreeMap<Label, Dart> = BTreeMap::new();
    let mut next: Label = 1;
    for x in 0..n {
        for p in 0..4 {
            let mut d = Dart::new(x, p);
            while !label_of.contains_key(&d) {
                let h = partner[&d];
                label_of.insert(d, next);
                label_of.insert(h, next);
                tails.insert(next, d);
                next += 1;
                d = h.rot(2);
            }
        }
    }
    let mut crossings: Vec<Crossing> =
        (0..n).map(|x| Crossing { segs: [0, 1, 2, 3].map(|p| label_of[&Dart::new(x, p)]), under: 2 }).collect();
    // alternate over/under by propagating along segments
    crossings[0].under = 0;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for p in 0..4 {
            let here = Dart::new(x, p);
            let there = partner[&here];
            let over_here = !crossings[x].is_under(p);
            let want = if over_here { there.slot % 2 } else { 1 - there.slot % 2 };
            let y = there.crossing;
            if crossings[y].under == 2 {
                crossings[y].under = want;
                stack.push(y);
            } else if crossings[y].under != want {
                return Err(DiagramError::ContinuedFraction("diagram cannot alternate".into()));
            }
        }
    }
    LinkDiagram::from_parts(2 * n as u32, crossings, &tails)
}
