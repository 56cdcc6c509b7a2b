//! Segment quivers as skew-symmetric matrices over the labels `1..=N`.

use std::fmt::{self, Write};

use serde_json::{json, Value};
use thiserror::Error;

use crate::linkdiag::{Dart, Label, LinkDiagram};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("unknown vertex {0}")]
    UnknownVertex(Label),
    #[error("vertex {0} has been deleted")]
    DeadVertex(Label),
    #[error("not a permutation of 1..={0}")]
    NotPermutation(usize),
}

/// A permutation of `1..=N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perm(Vec<Label>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((1..=n as Label).collect())
    }

    pub fn from_images(images: Vec<Label>) -> Result<Self, QuiverError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v as usize > n || seen[v as usize] {
                return Err(QuiverError::NotPermutation(n));
            }
            seen[v as usize] = true;
        }
        Ok(Perm(images))
    }

    pub fn from_cycles(n: usize, cycles: &[Vec<Label>]) -> Result<Self, QuiverError> {
        let mut img: Vec<Label> = (1..=n as Label).collect();
        let mut touched = vec![false; n + 1];
        for c in cycles {
            for (i, &v) in c.iter().enumerate() {
                if v == 0 || v as usize > n || touched[v as usize] {
                    return Err(QuiverError::NotPermutation(n));
                }
                touched[v as usize] = true;
                img[v as usize - 1] = c[(i + 1) % c.len()];
            }
        }
        Self::from_images(img)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: Label) -> Label {
        self.0[i as usize - 1]
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.apply(i)).collect())
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self) == Perm::identity(self.len())
    }

    /// Nontrivial cycles, each starting at its smallest element, ordered by it.
    pub fn cycles(&self) -> Vec<Vec<Label>> {
        let mut seen = vec![false; self.len() + 1];
        let mut out = Vec::new();
        for i in 1..=self.len() as Label {
            if seen[i as usize] {
                continue;
            }
            let mut c = vec![];
            let mut j = i;
            while !seen[j as usize] {
                seen[j as usize] = true;
                c.push(j);
                j = self.apply(j);
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.cycles();
        if cs.is_empty() {
            return f.write_str("()");
        }
        for c in cs {
            let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    b: Vec<Vec<i32>>,
    live: Vec<bool>,
}

impl Quiver {
    pub fn empty(n: usize) -> Self {
        Quiver { b: vec![vec![0; n]; n], live: vec![true; n] }
    }

    /// Arrows `(u, v)` with multiplicity; opposite arrows cancel.
    pub fn from_arrows(n: usize, arrows: &[(Label, Label)]) -> Self {
        let mut q = Self::empty(n);
        for &(u, v) in arrows {
            let (i, j) = (u as usize - 1, v as usize - 1);
            q.b[i][j] += 1;
            q.b[j][i] -= 1;
        }
        q
    }

    /// Clockwise 4-cycles at every crossing, 2-cycles cancelled.
    pub fn of_diagram(d: &LinkDiagram) -> Self {
        let n = d.ambient() as usize;
        let mut q = Self::from_arrows(n, &Self::full_arrows(d));
        for i in 0..n {
            q.live[i] = d.has_label(i as Label + 1);
        }
        q
    }

    /// All crossing arrows before cancellation.
    pub fn full_arrows(d: &LinkDiagram) -> Vec<(Label, Label)> {
        let mut arrows = Vec::new();
        for (x, _) in d.crossings().iter().enumerate() {
            for p in 0..4 {
                let from = d.seg_at(Dart::new(x, p + 1));
                let to = d.seg_at(Dart::new(x, p));
                arrows.push((from, to));
            }
        }
        arrows
    }

    pub fn size(&self) -> usize {
        self.b.len()
    }

    pub fn is_live(&self, v: Label) -> bool {
        v >= 1 && (v as usize) <= self.size() && self.live[v as usize - 1]
    }

    pub fn live_vertices(&self) -> Vec<Label> {
        (1..=self.size() as Label).filter(|&v| self.is_live(v)).collect()
    }

    /// Signed arrow count `#(i→j) − #(j→i)`.
    pub fn b(&self, i: Label, j: Label) -> i32 {
        self.b[i as usize - 1][j as usize - 1]
    }

    pub fn matrix(&self) -> &[Vec<i32>] {
        &self.b
    }

    /// `(from, to, multiplicity)` for every positive entry.
    pub fn arrows(&self) -> Vec<(Label, Label, i32)> {
        let mut out = Vec::new();
        for i in 0..self.size() {
            for j in 0..self.size() {
                if self.b[i][j] > 0 {
                    out.push((i as Label + 1, j as Label + 1, self.b[i][j]));
                }
            }
        }
        out
    }

    pub fn arrow_count(&self) -> i32 {
        self.arrows().iter().map(|a| a.2).sum()
    }

    fn check(&self, k: Label) -> Result<usize, QuiverError> {
        if k == 0 || k as usize > self.size() {
            return Err(QuiverError::UnknownVertex(k));
        }
        if !self.live[k as usize - 1] {
            return Err(QuiverError::DeadVertex(k));
        }
        Ok(k as usize - 1)
    }

    #[allow(clippy::needless_range_loop)]
    pub fn mutate(&self, k: Label) -> Result<Quiver, QuiverError> {
        let k = self.check(k)?;
        let n = self.size();
        let mut b = self.b.clone();
        for i in 0..n {
            for j in 0..n {
                if i == k || j == k {
                    b[i][j] = -self.b[i][j];
                } else {
                    let (bik, bkj) = (self.b[i][k], self.b[k][j]);
                    if bik > 0 && bkj > 0 {
                        b[i][j] += bik * bkj;
                    } else if bik < 0 && bkj < 0 {
                        b[i][j] -= bik * bkj;
                    }
                }
            }
        }
        Ok(Quiver { b, live: self.live.clone() })
    }

    pub fn mutate_word(&self, word: &[Label]) -> Result<Quiver, QuiverError> {
        word.iter().try_fold(self.clone(), |q, &k| q.mutate(k))
    }

    pub fn delete(&self, vs: &[Label]) -> Result<Quiver, QuiverError> {
        let mut q = self.clone();
        for &v in vs {
            let i = q.check(v)?;
            q.live[i] = false;
            for j in 0..q.size() {
                q.b[i][j] = 0;
                q.b[j][i] = 0;
            }
        }
        Ok(q)
    }

    /// Arrow `σ(i) → σ(j)` for every arrow `i → j`.
    pub fn permute(&self, sigma: &Perm) -> Result<Quiver, QuiverError> {
        if sigma.len() != self.size() {
            return Err(QuiverError::NotPermutation(self.size()));
        }
        let n = self.size();
        let mut q = Quiver { b: vec![vec![0; n]; n], live: vec![false; n] };
        for i in 0..n {
            let si = sigma.apply(i as Label + 1) as usize - 1;
            q.live[si] = self.live[i];
            for j in 0..n {
                let sj = sigma.apply(j as Label + 1) as usize - 1;
                q.b[si][sj] = self.b[i][j];
            }
        }
        Ok(q)
    }

    pub fn opposite(&self) -> Quiver {
        let b = self.b.iter().map(|r| r.iter().map(|v| -v).collect()).collect();
        Quiver { b, live: self.live.clone() }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph quiver {\n");
        for v in self.live_vertices() {
            writeln!(out, "  {v};").unwrap();
        }
        for (u, v, m) in self.arrows() {
            if m == 1 {
                writeln!(out, "  {u} -> {v};").unwrap();
            } else {
                writeln!(out, "  {u} -> {v} [label=\"{m}\"];").unwrap();
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        json!({ "vertices": self.live_vertices(), "matrix": self.b })
    }
}
