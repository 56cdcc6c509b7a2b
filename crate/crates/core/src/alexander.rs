//! Alexander polynomials: the specialization of `F`-polynomials and the
//! classical crossing-by-region determinant.
//!
//! Corner weights of the determinant around a crossing, with the incoming
//! understrand `u` entering from below:
//!
//! ```text
//!             -1 |  t
//!        --------+--------
//!              1 | -t
//!                ^
//!                u
//! ```
//!
//! The corners right of the understrand carry `−t` behind and `t` ahead;
//! those on its left carry `1` behind and `−1` ahead.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::linkdiag::{Dart, Label, LinkDiagram, SegmentClass};
use crate::poly::{LaurentPoly, Vars};

/// A polynomial in `t` up to multiplication by `±t^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexPoly(LaurentPoly);

impl AlexPoly {
    /// Normalize so the lowest term has degree 0 and a positive coefficient.
    pub fn new(p: &LaurentPoly) -> AlexPoly {
        if p.is_zero() {
            return AlexPoly(LaurentPoly::zero(Vars::T));
        }
        AlexPoly(p.normalize_unit().expect("a polynomial in t"))
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn degree(&self) -> i32 {
        self.0.max_exps().map_or(0, |e| e[0])
    }

    pub fn coeffs(&self) -> Vec<BigInt> {
        (0..=self.degree()).map(|k| self.0.coeff(&[k])).collect()
    }

    /// The representative centered at degree 0 when the span is even.
    pub fn centered(&self) -> LaurentPoly {
        let d = self.degree();
        if d % 2 == 0 {
            self.0.shift(&[-d / 2])
        } else {
            self.0.clone()
        }
    }

    /// `Δ(t) ≐ Δ(t⁻¹)`.
    pub fn is_palindromic(&self) -> bool {
        let c = self.coeffs();
        let mut r = c.clone();
        r.reverse();
        let neg: Vec<BigInt> = r.iter().map(|v| -v).collect();
        c == r || c == neg
    }

    pub fn to_json(&self) -> Value {
        let c = self.centered();
        let offset = c.min_exps().map_or(0, |e| e[0]);
        let coeffs: Vec<Value> = self.coeffs().iter().map(json_int).collect();
        json!({ "coeffs": coeffs, "offset": offset, "text": c.to_string() })
    }
}

fn json_int(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

impl fmt::Display for AlexPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.centered())
    }
}

pub fn compare(a: &AlexPoly, b: &AlexPoly) -> bool {
    a == b
}

/// `y_j ↦ −t`, `−t⁻¹` or `−1` by the class of segment `j`.
pub fn specialize(f: &LaurentPoly, classes: &BTreeMap<Label, SegmentClass>) -> AlexPoly {
    let f = f.drop_x();
    let t = |k: i32, c: i64| LaurentPoly::monomial(Vars::T, vec![k], c);
    let assign: Vec<LaurentPoly> = (1..=f.vars().arity() as Label)
        .map(|j| match classes.get(&j) {
            Some(SegmentClass::UnderToOver) => t(1, -1),
            Some(SegmentClass::OverToUnder) => t(-1, -1),
            _ => t(0, -1),
        })
        .collect();
    AlexPoly::new(&f.substitute(Vars::T, &assign).expect("monomial substitution"))
}

/// Every `y_j = −1` (and every `x_j = 1`).
pub fn eval_y_minus1(f: &LaurentPoly) -> BigInt {
    let f = f.drop_x();
    f.evaluate(&vec![-1; f.vars().arity()]).expect("±1 evaluation")
}

/// Weights `(coefficient, power of t)` of the corners `u, u+1, u+2, u+3`
/// counterclockwise from the incoming understrand slot `u`.
pub type CornerWeights = [(i64, i32); 4];

pub const CLASSICAL: CornerWeights = [(-1, 1), (1, 1), (-1, 0), (1, 0)];

/// Crossing-by-region matrix with the two regions along `i` deleted.
pub fn alexander_matrix(d: &LinkDiagram, i: Label) -> AlexPoly {
    alexander_matrix_with(d, i, &CLASSICAL)
}

pub fn alexander_matrix_with(d: &LinkDiagram, i: Label, w: &CornerWeights) -> AlexPoly {
    let (l, r) = d.sides_of(i);
    let keep: Vec<usize> = (0..d.regions().len()).filter(|&k| k != l && k != r).collect();
    let col: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(c, &k)| (k, c)).collect();
    let n = d.n();
    let mut m = vec![vec![LaurentPoly::zero(Vars::T); keep.len()]; n];
    for (x, c) in d.crossings().iter().enumerate() {
        let u = (0..4)
            .find(|&p| c.is_under(p) && d.segment(c.segs[p]).unwrap().head == Dart::new(x, p))
            .expect("an incoming understrand");
        for (k, &(coef, pow)) in w.iter().enumerate() {
            let reg = d.region_at(Dart::new(x, u + k));
            if let Some(&cc) = col.get(&reg) {
                m[x][cc] = &m[x][cc] + &LaurentPoly::monomial(Vars::T, vec![pow], coef);
            }
        }
    }
    AlexPoly::new(&determinant(m))
}

/// Fraction-free (Bareiss) elimination over `ℤ[t^±1]`.
pub fn determinant(mut m: Vec<Vec<LaurentPoly>>) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one(Vars::T);
    }
    let mut sign = BigInt::one();
    let mut prev = LaurentPoly::one(Vars::T);
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return LaurentPoly::zero(Vars::T);
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for r in k + 1..n {
            for c in k + 1..n {
                let num = &(&m[r][c] * &m[k][k]) - &(&m[r][k] * &m[k][c]);
                m[r][c] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[r][k] = LaurentPoly::zero(Vars::T);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign.is_zero() {
        det
    } else {
        det.scale(&sign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> AlexPoly {
        AlexPoly::new(&LaurentPoly::parse(Vars::T, s).unwrap())
    }

    #[test]
    fn compare_up_to_units() {
        assert!(compare(&t("-t^2 + 3*t - 1"), &t("1 - 3*t + t^2")));
        assert!(!compare(&t("1 - t"), &t("1 + t")));
        assert!(compare(&t("t^-2 - 3*t^-1 + 5 - 3*t + t^2"), &t("1 - 3*t + 5*t^2 - 3*t^3 + t^4")));
        assert_eq!(t("1 - 3*t + 5*t^2 - 3*t^3 + t^4").to_string(), "t^-2 - 3*t^-1 + 5 - 3*t + t^2");
    }

    #[test]
    fn determinant_small() {
        let p = |s: &str| LaurentPoly::parse(Vars::T, s).unwrap();
        let m = vec![vec![p("0"), p("1")], vec![p("t"), p("2")]];
        assert_eq!(determinant(m), p("-t"));
    }
}
