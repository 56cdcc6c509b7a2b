use std::collections::BTreeSet;

use super::{Label, LinkDiagram};

/// Two regions sharing two segments whose removal splits the diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub regions: (usize, usize),
    pub segments: (Label, Label),
    /// Crossings on each side of the cut.
    pub sides: (Vec<usize>, Vec<usize>),
}

pub(super) fn scan(d: &LinkDiagram) -> Vec<Violation> {
    let mut out = Vec::new();
    let sides: Vec<BTreeSet<Label>> = d.regions().iter().map(|r| r.sides.iter().copied().collect()).collect();
    let mut seen = BTreeSet::new();
    for r1 in 0..sides.len() {
        for r2 in r1 + 1..sides.len() {
            let shared: Vec<Label> = sides[r1].intersection(&sides[r2]).copied().collect();
            for (i, &e1) in shared.iter().enumerate() {
                for &e2 in &shared[i + 1..] {
                    if !seen.insert((e1, e2)) {
                        continue;
                    }
                    let parts = split(d, e1, e2);
                    if parts.len() >= 2 {
                        let rest: Vec<usize> = parts[1..].iter().flatten().copied().collect();
                        out.push(Violation { regions: (r1, r2), segments: (e1, e2), sides: (parts[0].clone(), rest) });
                    }
                }
            }
        }
    }
    out
}

/// Connected components of the crossing graph with two segments removed.
fn split(d: &LinkDiagram, e1: Label, e2: Label) -> Vec<Vec<usize>> {
    let n = d.n();
    let mut comp = vec![usize::MAX; n];
    let mut parts = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = parts.len();
        let mut members = vec![];
        let mut stack = vec![start];
        comp[start] = id;
        while let Some(x) = stack.pop() {
            members.push(x);
            for s in d.crossings()[x].segs {
                if s == e1 || s == e2 {
                    continue;
                }
                let seg = d.segment(s).unwrap();
                for y in [seg.tail.crossing, seg.head.crossing] {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        stack.push(y);
                    }
                }
            }
        }
        members.sort();
        parts.push(members);
    }
    parts
}
