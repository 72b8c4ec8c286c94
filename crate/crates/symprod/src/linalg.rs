//! Exact dense linear algebra over Q: reduced row echelon form with a
//! caller-chosen pivot column order, rank, nullspace and coset reduction.
//!
//! Matrices are plain `Vec<Vec<Scalar>>` row lists; sizes here stay small
//! enough (hundreds of columns) that dense exact elimination is the simplest
//! correct tool.

use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// Reduced row echelon form, scanning pivot columns in `col_order`.
///
/// Rows are permuted so pivot rows appear first, each pivot is normalized to
/// one and cleared from every other row. Returns `(pivot_row, pivot_col)`
/// pairs in scan order.
pub fn rref_in_order(rows: &mut [Vec<Scalar>], col_order: &[usize]) -> Vec<(usize, usize)> {
    let mut pivots = Vec::new();
    let mut next = 0usize;
    for &c in col_order {
        if next >= rows.len() {
            break;
        }
        let Some(pr) = (next..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(next, pr);
        let inv = {
            let p = &rows[next][c];
            Scalar::one() / p.clone()
        };
        for x in rows[next].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for i in 0..rows.len() {
            if i != next && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let (pivot_row, row) = if i < next {
                    let (a, b) = rows.split_at_mut(next);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&a[next], &mut b[0])
                };
                for (x, p) in row.iter_mut().zip(pivot_row.iter()) {
                    if !p.is_zero() {
                        *x = &*x - &(&f * p);
                    }
                }
            }
        }
        pivots.push((next, c));
        next += 1;
    }
    pivots
}

/// Reduced row echelon form with the natural left-to-right column order.
pub fn rref(rows: &mut [Vec<Scalar>]) -> Vec<(usize, usize)> {
    let cols = rows.first().map_or(0, |r| r.len());
    let order: Vec<usize> = (0..cols).collect();
    rref_in_order(rows, &order)
}

pub fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    rref(&mut rows).len()
}

/// Clears the pivot coordinates of `v` against RREF rows, leaving the
/// canonical coset representative of `v` modulo the row space (supported on
/// non-pivot columns only). `v` lies in the row space iff the result is zero.
pub fn reduce_row(rows: &[Vec<Scalar>], pivots: &[(usize, usize)], v: &mut [Scalar]) {
    for &(r, c) in pivots {
        if !v[c].is_zero() {
            let f = v[c].clone();
            for (x, p) in v.iter_mut().zip(rows[r].iter()) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
    }
}

/// Basis of the right nullspace `{x : M x = 0}` of an `rows x cols` matrix.
pub fn nullspace(mut m: Vec<Vec<Scalar>>, cols: usize) -> Vec<Vec<Scalar>> {
    let pivots = rref(&mut m);
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for f in 0..cols {
        if pivot_cols.contains(&f) {
            continue;
        }
        let mut v = vec![Scalar::zero(); cols];
        v[f] = Scalar::one();
        for &(r, c) in &pivots {
            v[c] = -m[r][f].clone();
        }
        basis.push(v);
    }
    basis
}
