//! Exact sparse Laurent polynomials with big-integer coefficients.

use std::cmp::Ordering;
use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;
use thiserror::Error;

/// The ambient variable set a polynomial lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Vars {
    /// The single variable `t`.
    T,
    /// `y1..yN`.
    Y(usize),
    /// `x1..xN` followed by `y1..yN`.
    XY(usize),
}

impl Vars {
    pub fn arity(self) -> usize {
        match self {
            Vars::T => 1,
            Vars::Y(n) => n,
            Vars::XY(n) => 2 * n,
        }
    }

    pub fn name(self, i: usize) -> String {
        match self {
            Vars::T => "t".to_string(),
            Vars::Y(_) => format!("y{}", i + 1),
            Vars::XY(n) if i < n => format!("x{}", i + 1),
            Vars::XY(n) => format!("y{}", i - n + 1),
        }
    }

    fn tex_name(self, i: usize) -> String {
        let (letter, idx) = match self {
            Vars::T => return "t".to_string(),
            Vars::Y(_) => ('y', i + 1),
            Vars::XY(n) if i < n => ('x', i + 1),
            Vars::XY(n) => ('y', i - n + 1),
        };
        if idx < 10 {
            format!("{letter}_{idx}")
        } else {
            format!("{letter}_{{{idx}}}")
        }
    }

    fn lookup(self, letter: char, idx: Option<usize>) -> Option<usize> {
        match (self, letter, idx) {
            (Vars::T, 't', None) => Some(0),
            (Vars::Y(n), 'y', Some(i)) if (1..=n).contains(&i) => Some(i - 1),
            (Vars::XY(n), 'x', Some(i)) if (1..=n).contains(&i) => Some(i - 1),
            (Vars::XY(n), 'y', Some(i)) if (1..=n).contains(&i) => Some(n + i - 1),
            _ => None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable sets differ: {0:?} vs {1:?}")]
    ArityMismatch(Vars, Vars),
    #[error("division is not exact")]
    NotExact,
    #[error("zero polynomial")]
    Zero,
    #[error("cannot invert non-monomial value for {0}")]
    NonMonomialInverse(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Exps = Box<[i32]>;

/// Total degree first, then reverse lexicographic on exponent vectors.
pub fn graded_cmp(a: &[i32], b: &[i32]) -> Ordering {
    let da: i64 = a.iter().map(|&e| e as i64).sum();
    let db: i64 = b.iter().map(|&e| e as i64).sum();
    da.cmp(&db).then_with(|| b.cmp(a))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    vars: Vars,
    terms: BTreeMap<Exps, BigInt>,
}

impl LaurentPoly {
    pub fn zero(vars: Vars) -> Self {
        LaurentPoly { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, BigInt::one())
    }

    pub fn constant(vars: Vars, c: impl Into<BigInt>) -> Self {
        Self::monomial(vars, vec![0; vars.arity()], c)
    }

    pub fn var(vars: Vars, i: usize) -> Self {
        let mut e = vec![0; vars.arity()];
        e[i] = 1;
        Self::monomial(vars, e, 1)
    }

    pub fn monomial(vars: Vars, exps: Vec<i32>, c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), vars.arity(), "exponent arity");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps.into_boxed_slice(), c);
        }
        LaurentPoly { vars, terms }
    }

    pub fn from_terms<I>(vars: Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i32>, BigInt)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.arity(), "exponent arity");
            p.add_term(e.into_boxed_slice(), c);
        }
        p
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    /// Number of terms; see `is_zero` for emptiness.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (&e[..], c))
    }

    /// Terms in canonical printing order.
    pub fn sorted_terms(&self) -> Vec<(&[i32], &BigInt)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|a, b| graded_cmp(a.0, b.0));
        v
    }

    pub fn coeff(&self, exps: &[i32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&vec![0; self.vars.arity()])
    }

    /// The single term, if this is a monomial.
    pub fn as_monomial(&self) -> Option<(&[i32], &BigInt)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    fn add_term(&mut self, e: Exps, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<(), PolyError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::ArityMismatch(self.vars, other.vars))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), -c);
        }
        Ok(r)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut r = Self::zero(self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exps = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        Ok(r)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut r = Self::zero(self.vars);
        for (e, x) in &self.terms {
            r.add_term(e.clone(), x * c);
        }
        r
    }

    /// Multiply by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let e: Exps = e.iter().zip(shift).map(|(a, b)| a + b).collect();
                (e, c.clone())
            })
            .collect();
        LaurentPoly { vars: self.vars, terms }
    }

    /// Componentwise minimum of the exponent vectors.
    pub fn min_exps(&self) -> Option<Vec<i32>> {
        let mut it = self.terms.keys();
        let mut m: Vec<i32> = it.next()?.to_vec();
        for e in it {
            for (a, b) in m.iter_mut().zip(e.iter()) {
                *a = (*a).min(*b);
            }
        }
        Some(m)
    }

    /// Componentwise maximum of the exponent vectors.
    pub fn max_exps(&self) -> Option<Vec<i32>> {
        let mut it = self.terms.keys();
        let mut m: Vec<i32> = it.next()?.to_vec();
        for e in it {
            for (a, b) in m.iter_mut().zip(e.iter()) {
                *a = (*a).max(*b);
            }
        }
        Some(m)
    }

    /// Exact division in the Laurent ring.
    pub fn exact_div(&self, q: &Self) -> Result<Self, PolyError> {
        self.check(q)?;
        if q.is_zero() {
            return Err(PolyError::Zero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.vars));
        }
        let (pmin, pmax) = (self.min_exps().unwrap(), self.max_exps().unwrap());
        let (qmin, qmax) = (q.min_exps().unwrap(), q.max_exps().unwrap());
        let lo: Vec<i32> = pmin.iter().zip(&qmin).map(|(a, b)| a - b).collect();
        let hi: Vec<i32> = pmax.iter().zip(&qmax).map(|(a, b)| a - b).collect();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(PolyError::NotExact);
        }
        let (qlead_e, qlead_c) = q.terms.iter().next_back().unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.vars);
        while let Some((le, lc)) = rem.terms.iter().next_back() {
            let (c, r) = lc.div_rem(qlead_c);
            if !r.is_zero() {
                return Err(PolyError::NotExact);
            }
            let e: Vec<i32> = le.iter().zip(qlead_e.iter()).map(|(a, b)| a - b).collect();
            if e.iter().zip(lo.iter().zip(&hi)).any(|(x, (l, h))| x < l || x > h) {
                return Err(PolyError::NotExact);
            }
            for (qe, qc) in &q.terms {
                let te: Exps = qe.iter().zip(&e).map(|(a, b)| a + b).collect();
                rem.add_term(te, -(&c * qc));
            }
            quot.add_term(e.into_boxed_slice(), c);
        }
        Ok(quot)
    }

    /// Componentwise minimum of exponents, i.e. evaluation in the tropical semifield.
    pub fn tropical_eval(&self) -> Result<TropicalMonomial, PolyError> {
        self.min_exps().map(TropicalMonomial).ok_or(PolyError::Zero)
    }

    /// Replace variable `i` by `assign[i]`; all values must share one variable set.
    pub fn substitute(&self, target: Vars, assign: &[LaurentPoly]) -> Result<Self, PolyError> {
        assert_eq!(assign.len(), self.vars.arity(), "assignment arity");
        for a in assign {
            if a.vars != target {
                return Err(PolyError::ArityMismatch(a.vars, target));
            }
        }
        let mut cache: HashMap<(usize, i32), LaurentPoly> = HashMap::new();
        let mut inverses: HashMap<usize, LaurentPoly> = HashMap::new();
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if let Entry::Vacant(slot) = cache.entry((i, k)) {
                    let base = if k > 0 {
                        assign[i].clone()
                    } else {
                        match inverses.entry(i) {
                            Entry::Occupied(o) => o.get().clone(),
                            Entry::Vacant(v) => v
                                .insert(
                                    assign[i]
                                        .monomial_inverse()
                                        .ok_or_else(|| PolyError::NonMonomialInverse(self.vars.name(i)))?,
                                )
                                .clone(),
                        }
                    };
                    slot.insert(base.pow(k.unsigned_abs()));
                }
                term = &term * &cache[&(i, k)];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    fn monomial_inverse(&self) -> Option<Self> {
        let (e, c) = self.as_monomial()?;
        if !(c.is_one() || (-c).is_one()) {
            return None;
        }
        let e: Vec<i32> = e.iter().map(|x| -x).collect();
        Some(Self::monomial(self.vars, e, c.clone()))
    }

    /// Evaluate at an integer point; negative exponents need values of ±1.
    pub fn evaluate(&self, point: &[i64]) -> Result<BigInt, PolyError> {
        let assign: Vec<LaurentPoly> = point.iter().map(|&v| Self::constant(Vars::T, v)).collect();
        let p = self.substitute(Vars::T, &assign)?;
        Ok(p.constant_term())
    }

    /// Divide a polynomial in `t` by `±t^k` so it starts at degree 0 with a positive coefficient.
    pub fn normalize_unit(&self) -> Result<Self, PolyError> {
        if self.vars != Vars::T {
            return Err(PolyError::ArityMismatch(self.vars, Vars::T));
        }
        let (lo, c) = self.terms.iter().next().ok_or(PolyError::Zero)?;
        let sign = if c.is_negative() { -BigInt::one() } else { BigInt::one() };
        Ok(self.shift(&[-lo[0]]).scale(&sign))
    }

    /// For a polynomial over `XY(n)`, set every `x_j = 1`.
    pub fn drop_x(&self) -> Self {
        let n = match self.vars {
            Vars::XY(n) => n,
            _ => return self.clone(),
        };
        let mut r = Self::zero(Vars::Y(n));
        for (e, c) in &self.terms {
            r.add_term(e[n..].to_vec().into_boxed_slice(), c.clone());
        }
        r
    }

    /// Embed a `Y(n)` polynomial into `XY(n)`.
    pub fn lift_y(&self) -> Self {
        let n = match self.vars {
            Vars::Y(n) => n,
            _ => return self.clone(),
        };
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut v = vec![0; n];
                v.extend_from_slice(e);
                (v.into_boxed_slice(), c.clone())
            })
            .collect();
        LaurentPoly { vars: Vars::XY(n), terms }
    }

    /// Compact form: `1+y_1+y_1y_{12}^2`.
    pub fn to_tex(&self) -> String {
        self.render(true)
    }

    fn render(&self, tex: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let (plus, minus, times) = if tex { ("+", "-", "") } else { (" + ", " - ", "*") };
        let mut out = String::new();
        for (k, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { minus } else { plus });
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| {
                    let name = if tex { self.vars.tex_name(i) } else { self.vars.name(i) };
                    match (x, tex) {
                        (1, _) => name,
                        (x, true) if !(0..10).contains(&x) => format!("{name}^{{{x}}}"),
                        (x, _) => format!("{name}^{x}"),
                    }
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push_str(if tex { "" } else { "*" });
                }
                out.push_str(&factors.join(times));
            }
        }
        out
    }

    pub fn parse(vars: Vars, text: &str) -> Result<Self, PolyError> {
        Parser { vars, s: text.as_bytes(), pos: 0 }.poly()
    }

    /// `[[exponents, coeff], ...]` in canonical order; coefficients beyond `i64` become strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.sorted_terms()
                .into_iter()
                .map(|(e, c)| {
                    let c = match c.to_i64() {
                        Some(v) => Value::from(v),
                        None => Value::from(c.to_string()),
                    };
                    Value::Array(vec![Value::from(e.to_vec()), c])
                })
                .collect(),
        )
    }

    pub fn from_json(vars: Vars, v: &Value) -> Result<Self, PolyError> {
        let bad = |msg: &str| PolyError::Parse { pos: 0, msg: msg.to_string() };
        let arr = v.as_array().ok_or_else(|| bad("expected a list of terms"))?;
        let mut p = Self::zero(vars);
        for t in arr {
            let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("term must be [exponents, coeff]"))?;
            let exps = pair[0].as_array().ok_or_else(|| bad("exponents must be a list"))?;
            if exps.len() != vars.arity() {
                return Err(bad("exponent arity"));
            }
            let e = exps
                .iter()
                .map(|x| x.as_i64().and_then(|x| i32::try_from(x).ok()).ok_or_else(|| bad("exponent")))
                .collect::<Result<Vec<i32>, _>>()?;
            let c = match &pair[1] {
                Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| bad("coefficient"))?,
                Value::String(s) => s.parse::<BigInt>().map_err(|_| bad("coefficient"))?,
                _ => return Err(bad("coefficient")),
            };
            p.add_term(e.into_boxed_slice(), c);
        }
        Ok(p)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl std::ops::$tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).expect("variable sets must agree")
            }
        }
    };
}
binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-BigInt::one())
    }
}

/// An element of the tropical semifield on the `y` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropicalMonomial(pub Vec<i32>);

impl TropicalMonomial {
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        TropicalMonomial(v)
    }

    pub fn one(n: usize) -> Self {
        TropicalMonomial(vec![0; n])
    }

    pub fn mul(&self, o: &Self) -> Self {
        TropicalMonomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn inv(&self) -> Self {
        TropicalMonomial(self.0.iter().map(|a| -a).collect())
    }

    pub fn pow(&self, k: i32) -> Self {
        TropicalMonomial(self.0.iter().map(|a| a * k).collect())
    }

    pub fn oplus(&self, o: &Self) -> Self {
        TropicalMonomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    pub fn is_nonpos(&self) -> bool {
        self.0.iter().all(|&a| a <= 0)
    }

    pub fn to_poly(&self, vars: Vars) -> LaurentPoly {
        LaurentPoly::monomial(vars, self.0.clone(), 1)
    }
}

struct Parser<'a> {
    vars: Vars,
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T, PolyError> {
        Err(PolyError::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<&str, PolyError> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).unwrap())
    }

    fn small_int(&mut self) -> Result<i64, PolyError> {
        let d = self.digits()?;
        match d.parse::<i64>() {
            Ok(v) if v <= i32::MAX as i64 => Ok(v),
            _ => self.err("integer too large"),
        }
    }

    fn poly(mut self) -> Result<LaurentPoly, PolyError> {
        let mut p = LaurentPoly::zero(self.vars);
        let mut first = true;
        loop {
            let neg = match self.peek() {
                None if !first => break,
                None => return self.err("empty polynomial"),
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(_) if first => false,
                Some(_) => return self.err("expected '+' or '-'"),
            };
            first = false;
            let (e, c) = self.term()?;
            p.add_term(e.into_boxed_slice(), if neg { -c } else { c });
        }
        Ok(p)
    }

    fn term(&mut self) -> Result<(Vec<i32>, BigInt), PolyError> {
        let mut e = vec![0i32; self.vars.arity()];
        let mut c = BigInt::one();
        let mut any = false;
        loop {
            match self.peek() {
                Some(b'*') if any => {
                    self.pos += 1;
                    self.skip_ws();
                }
                Some(b) if b.is_ascii_digit() => {
                    let d = self.digits()?;
                    c *= d.parse::<BigInt>().unwrap();
                }
                Some(b) if b.is_ascii_alphabetic() => {
                    let i = self.variable()?;
                    let k = self.exponent()?;
                    e[i] = e[i]
                        .checked_add(k)
                        .ok_or(PolyError::Parse { pos: self.pos, msg: "exponent overflow".into() })?;
                }
                _ if any => return Ok((e, c)),
                _ => return self.err("expected a term"),
            }
            any = true;
        }
    }

    fn variable(&mut self) -> Result<usize, PolyError> {
        let letter = self.s[self.pos] as char;
        self.pos += 1;
        let idx = match self.s.get(self.pos) {
            Some(b'_') => {
                self.pos += 1;
                if self.s.get(self.pos) == Some(&b'{') {
                    self.pos += 1;
                    let v = self.small_int()?;
                    if self.s.get(self.pos) != Some(&b'}') {
                        return self.err("expected '}'");
                    }
                    self.pos += 1;
                    Some(v as usize)
                } else {
                    // single digit subscript, as in y_1y_4
                    match self.s.get(self.pos) {
                        Some(b) if b.is_ascii_digit() => {
                            self.pos += 1;
                            Some((b - b'0') as usize)
                        }
                        _ => return self.err("expected subscript"),
                    }
                }
            }
            Some(b) if b.is_ascii_digit() => Some(self.small_int()? as usize),
            _ => None,
        };
        match self.vars.lookup(letter, idx) {
            Some(i) => Ok(i),
            None => self.err("unknown variable"),
        }
    }

    fn exponent(&mut self) -> Result<i32, PolyError> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let braced = self.s.get(self.pos) == Some(&b'{');
        if braced {
            self.pos += 1;
        }
        let neg = self.s.get(self.pos) == Some(&b'-');
        if neg {
            self.pos += 1;
        }
        let v = self.small_int()?;
        if braced {
            if self.s.get(self.pos) != Some(&b'}') {
                return self.err("expected '}'");
            }
            self.pos += 1;
        }
        Ok(if neg { -(v as i32) } else { v as i32 })
    }
}
