//! Seeds with principal coefficients, mutated by exact Laurent arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::linkdiag::Label;
use crate::poly::{LaurentPoly, PolyError, TropicalMonomial, Vars};
use crate::quiver::{Quiver, QuiverError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClusterError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("exchange relation at {vertex} after {history:?}: {source}")]
    Exchange { vertex: Label, history: Vec<Label>, source: PolyError },
    #[error("F-polynomial has no constant term 1")]
    NotNormalized,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A seed `(x_t, y_t, Q_t)` expanded in the initial cluster.
#[derive(Clone, Debug)]
pub struct Seed {
    initial: Quiver,
    quiver: Quiver,
    /// Laurent polynomials over `XY(N)`.
    cluster: Vec<LaurentPoly>,
    /// The coefficients `y_{i;t}` as tropical monomials, i.e. the c-vectors.
    coeffs: Vec<TropicalMonomial>,
    history: Vec<Label>,
}

impl PartialEq for Seed {
    fn eq(&self, o: &Self) -> bool {
        self.quiver == o.quiver && self.cluster == o.cluster && self.coeffs == o.coeffs
    }
}

pub fn initial_seed(q: &Quiver) -> Seed {
    let n = q.size();
    let vars = Vars::XY(n);
    Seed {
        initial: q.clone(),
        quiver: q.clone(),
        cluster: (0..n).map(|i| LaurentPoly::var(vars, i)).collect(),
        coeffs: (0..n).map(|i| TropicalMonomial::unit(n, i)).collect(),
        history: Vec::new(),
    }
}

fn y_monomial(n: usize, y: &[i32]) -> LaurentPoly {
    let mut e = vec![0; n];
    e.extend_from_slice(y);
    LaurentPoly::monomial(Vars::XY(n), e, 1)
}

fn x_monomial(n: usize, x: &[i32]) -> LaurentPoly {
    let mut e = x.to_vec();
    e.extend(std::iter::repeat_n(0, n));
    LaurentPoly::monomial(Vars::XY(n), e, 1)
}

impl Seed {
    pub fn size(&self) -> usize {
        self.quiver.size()
    }

    pub fn vars(&self) -> Vars {
        Vars::XY(self.size())
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn initial_quiver(&self) -> &Quiver {
        &self.initial
    }

    pub fn history(&self) -> &[Label] {
        &self.history
    }

    /// The cluster variable at position `i`.
    pub fn variable(&self, i: Label) -> &LaurentPoly {
        &self.cluster[i as usize - 1]
    }

    /// Exchange matrix entry `#(j→i) − #(i→j)`: the coefficient `y_k` travels
    /// with the arrows leaving `k`, as in the framed quiver with arrows `i → i'`.
    fn ex(&self, q: &Quiver, i: Label, j: Label) -> i32 {
        q.b(j, i)
    }

    pub fn mutate(&self, k: Label) -> Result<Seed, ClusterError> {
        let q = self.quiver.mutate(k)?;
        let n = self.size();
        let ki = k as usize - 1;
        let c = &self.coeffs[ki];
        // y_k ⊕ 1 in the tropical semifield
        let yk = LaurentPoly::monomial(Vars::Y(n), c.0.clone(), 1);
        let sum = &yk + &LaurentPoly::one(Vars::Y(n));
        let trop = sum.tropical_eval()?;
        let plus: Vec<i32> = c.0.iter().zip(&trop.0).map(|(a, m)| a - m).collect();
        let minus: Vec<i32> = trop.0.iter().map(|m| -m).collect();
        let mut p = y_monomial(n, &plus);
        let mut m = y_monomial(n, &minus);
        for i in 1..=n as Label {
            let b = self.ex(&self.quiver, i, k);
            if b > 0 {
                p = &p * &self.variable(i).pow(b as u32);
            } else if b < 0 {
                m = &m * &self.variable(i).pow((-b) as u32);
            }
        }
        let xk = (&p + &m).exact_div(&self.cluster[ki]).map_err(|source| ClusterError::Exchange {
            vertex: k,
            history: self.history.clone(),
            source,
        })?;
        let mut cluster = self.cluster.clone();
        cluster[ki] = xk;
        let mut coeffs = self.coeffs.clone();
        coeffs[ki] = c.inv();
        for j in 1..=n as Label {
            let b = self.ex(&self.quiver, k, j);
            if j == k || b == 0 {
                continue;
            }
            let ji = j as usize - 1;
            let lift = c.pow(b.max(0)).mul(&trop.pow(-b));
            coeffs[ji] = self.coeffs[ji].mul(&lift);
        }
        let mut history = self.history.clone();
        history.push(k);
        Ok(Seed { initial: self.initial.clone(), quiver: q, cluster, coeffs, history })
    }

    pub fn mutate_word(&self, word: &[Label]) -> Result<Seed, ClusterError> {
        word.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// `x_{i;t}` with every initial `x_j = 1`.
    pub fn f_polynomial(&self, i: Label) -> LaurentPoly {
        self.variable(i).drop_x()
    }

    /// x-exponents of the unique y-free monomial.
    pub fn g_vector(&self, i: Label) -> Vec<i32> {
        let n = self.size();
        let free: Vec<&[i32]> =
            self.variable(i).terms().map(|(e, _)| e).filter(|e| e[n..].iter().all(|&v| v == 0)).collect();
        assert_eq!(free.len(), 1, "a unique y-free monomial");
        free[0][..n].to_vec()
    }

    pub fn c_vector(&self, i: Label) -> Vec<i32> {
        self.coeffs[i as usize - 1].0.clone()
    }

    /// `−min_j` x-exponent over the terms, for each `j`.
    pub fn den_exponents(&self, i: Label) -> Vec<i32> {
        let n = self.size();
        let lo = self.variable(i).min_exps().expect("nonzero variable");
        lo[..n].iter().map(|v| -v).collect()
    }

    /// Denominator vector; all zero for an initial variable.
    pub fn den_vector(&self, i: Label) -> Vec<i32> {
        let p = self.variable(i);
        if p.len() == 1 && p.terms().all(|(e, c)| c.is_one() && e.iter().filter(|&&v| v != 0).count() == 1) {
            let (e, _) = p.terms().next().unwrap();
            if e.iter().all(|&v| v == 0 || v == 1) && e[self.size()..].iter().all(|&v| v == 0) {
                return vec![0; self.size()];
            }
        }
        self.den_exponents(i).into_iter().map(|v| v.max(0)).collect()
    }

    pub fn is_green(&self, k: Label) -> bool {
        self.coeffs[k as usize - 1].is_nonneg()
    }

    /// `x^g F(ŷ) / F|_P(y)` with `ŷ_i = y_i ∏ x_j^{b_ji}` over the initial exchange matrix.
    pub fn separation_reconstruct(&self, f: &LaurentPoly, g: &[i32]) -> Result<LaurentPoly, ClusterError> {
        let n = self.size();
        if f.constant_term() != BigInt::one() {
            return Err(ClusterError::NotNormalized);
        }
        let hats: Vec<LaurentPoly> = (0..n)
            .map(|i| {
                let mut e: Vec<i32> = (1..=n as Label).map(|j| self.ex(&self.initial, j, i as Label + 1)).collect();
                e.extend((0..n).map(|j| (i == j) as i32));
                LaurentPoly::monomial(Vars::XY(n), e, 1)
            })
            .collect();
        let fy = f.substitute(Vars::XY(n), &hats)?;
        let trop = f.tropical_eval()?;
        let denom = y_monomial(n, &trop.0);
        Ok((&x_monomial(n, g) * &fy).exact_div(&denom)?)
    }

    /// Columns are g-vectors.
    pub fn g_matrix(&self) -> Vec<Vec<i32>> {
        (1..=self.size() as Label).map(|i| self.g_vector(i)).collect()
    }

    /// Columns are c-vectors.
    pub fn c_matrix(&self) -> Vec<Vec<i32>> {
        (1..=self.size() as Label).map(|i| self.c_vector(i)).collect()
    }

    /// Every structural property a seed must have; returns human-readable failures.
    pub fn invariant_failures(&self) -> Vec<String> {
        let n = self.size();
        let mut out = Vec::new();
        for i in 1..=n as Label {
            let x = self.variable(i);
            if x.terms().any(|(_, c)| !c.is_positive()) {
                out.push(format!("variable {i} has a nonpositive coefficient"));
            }
            let c = &self.coeffs[i as usize - 1];
            if !(c.is_nonneg() || c.is_nonpos()) {
                out.push(format!("c-vector {i} is not sign-coherent: {:?}", c.0));
            }
            let f = self.f_polynomial(i);
            if f.constant_term() != BigInt::one() {
                out.push(format!("F_{i} has constant term {}", f.constant_term()));
            }
            match f.max_exps() {
                Some(top) if f.coeff(&top).is_positive() => {}
                _ => out.push(format!("F_{i} has no monomial divisible by all others")),
            }
            let g = self.g_vector(i);
            match self.separation_reconstruct(&f, &g) {
                Ok(r) if &r == x => {}
                Ok(_) => out.push(format!("separation of additions fails for variable {i}")),
                Err(e) => out.push(format!("separation of additions fails for variable {i}: {e}")),
            }
        }
        let (g, c) = (self.g_matrix(), self.c_matrix());
        for (a, ga) in g.iter().enumerate() {
            for (b, cb) in c.iter().enumerate() {
                let dot: i32 = ga.iter().zip(cb).map(|(x, y)| x * y).sum();
                if dot != (a == b) as i32 {
                    out.push(format!("G^T C differs from the identity at ({}, {})", a + 1, b + 1));
                }
            }
        }
        out
    }
}
