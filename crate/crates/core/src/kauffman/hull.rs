use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::LaurentPoly;

/// True iff every exponent vector of `f` is a vertex of their convex hull.
pub fn newton_vertex_check(f: &LaurentPoly) -> bool {
    let pts: Vec<Vec<BigRational>> =
        f.terms().map(|(e, _)| e.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect()).collect();
    (0..pts.len()).all(|k| {
        let others: Vec<&Vec<BigRational>> = pts.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, p)| p).collect();
        !in_hull(&pts[k], &others)
    })
}

/// Is `p` a convex combination of `others`?
fn in_hull(p: &[BigRational], others: &[&Vec<BigRational>]) -> bool {
    if others.is_empty() {
        return false;
    }
    // λ ≥ 0, Σ λ_j q_j = p, Σ λ_j = 1
    let mut a: Vec<Vec<BigRational>> = (0..p.len()).map(|r| others.iter().map(|q| q[r].clone()).collect()).collect();
    let mut b: Vec<BigRational> = p.to_vec();
    a.push(vec![BigRational::one(); others.len()]);
    b.push(BigRational::one());
    feasible(a, b)
}

/// Phase one of the simplex method with Bland's rule: does `Ax = b, x ≥ 0` have a solution?
fn feasible(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> bool {
    let (m, n) = (a.len(), a[0].len());
    for r in 0..m {
        if b[r].is_negative() {
            b[r] = -b[r].clone();
            for v in a[r].iter_mut() {
                *v = -v.clone();
            }
        }
    }
    // columns 0..n original, n..n+m artificial; tableau rows carry the rhs last
    let mut t: Vec<Vec<BigRational>> = (0..m)
        .map(|r| {
            let mut row = a[r].clone();
            row.extend((0..m).map(|c| if c == r { BigRational::one() } else { BigRational::zero() }));
            row.push(b[r].clone());
            row
        })
        .collect();
    let width = n + m;
    let mut basis: Vec<usize> = (n..n + m).collect();
    // objective: minimize the sum of artificials, reduced costs = −Σ rows on originals
    let mut cost: Vec<BigRational> = vec![BigRational::zero(); width + 1];
    for row in &t {
        for c in 0..n {
            cost[c] -= &row[c];
        }
        cost[width] -= &row[width];
    }
    while let Some(enter) = (0..width).find(|&c| cost[c].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..m {
            if t[r][enter].is_positive() {
                let ratio = &t[r][width] / &t[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((r, _)) = leave else { break };
        let piv = t[r][enter].clone();
        for v in t[r].iter_mut() {
            *v /= &piv;
        }
        let prow = t[r].clone();
        for (k, row) in t.iter_mut().enumerate() {
            if k != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v -= &f * pv;
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for (v, pv) in cost.iter_mut().zip(&prow) {
                *v -= &f * pv;
            }
        }
        basis[r] = enter;
    }
    cost[width].is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Vars;

    #[test]
    fn vertex_property() {
        let f = LaurentPoly::parse(Vars::Y(6), "1 + y1 + y1*y4 + y1*y6 + y1*y4*y6").unwrap();
        assert!(newton_vertex_check(&f));
        let g = LaurentPoly::parse(Vars::Y(1), "1 + y1 + y1^2").unwrap();
        assert!(!newton_vertex_check(&g));
        let h = LaurentPoly::parse(Vars::Y(2), "1 + y1 + y2 + y1*y2").unwrap();
        assert!(newton_vertex_check(&h));
        let centre = LaurentPoly::parse(Vars::Y(2), "1 + y1^2 + y2^2 + y1^2*y2^2 + y1*y2").unwrap();
        assert!(!newton_vertex_check(&centre));
    }
}
