//! Exact linear algebra over the rationals (row reduction only).

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::ncalgebra::{Monomial, NCPoly};
use crate::rational::Q;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce(rows: &mut [Vec<Q>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m).len()
}

/// Solves `Σ_j x_j columns[j] = target`; `None` when inconsistent.
/// Free variables are set to zero.
pub fn solve(columns: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    let n = columns.len();
    let m = target.len();
    let mut rows: Vec<Vec<Q>> = (0..m)
        .map(|i| {
            let mut row: Vec<Q> = columns.iter().map(|col| col[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = row_reduce(&mut rows);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = rows[r][n].clone();
    }
    Some(x)
}

/// Inverse of a square matrix; `None` when singular.
pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut rows: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::from_integer(1.into()) } else { Q::zero() }));
            r
        })
        .collect();
    let pivots = row_reduce(&mut rows);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Coefficient vectors over a shared monomial basis (rows = polynomials).
pub fn poly_vectors(polys: &[&NCPoly]) -> (Vec<Monomial>, Vec<Vec<Q>>) {
    let mut basis: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in polys {
        for m in p.terms().keys() {
            let next = basis.len();
            basis.entry(m.clone()).or_insert(next);
        }
    }
    let rows = polys
        .iter()
        .map(|p| {
            let mut v = vec![Q::zero(); basis.len()];
            for (m, c) in p.terms() {
                v[basis[m]] = c.clone();
            }
            v
        })
        .collect();
    let mut monomials = vec![Monomial::unit(); basis.len()];
    for (m, i) in basis {
        monomials[i] = m;
    }
    (monomials, rows)
}

/// Dimension of the span of the given polynomials.
pub fn span_rank(polys: &[&NCPoly]) -> usize {
    rank(&poly_vectors(polys).1)
}
