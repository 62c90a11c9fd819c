use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Smith normal form `s · m · t = d` with unimodular `s`, `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub s: IntMatrix,
    pub t: IntMatrix,
    pub d: IntMatrix,
    /// Nonzero diagonal of `d`, positive, each dividing the next.
    pub divisors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

/// Position of the nonzero entry of smallest magnitude in the trailing block
/// `m[p.., p..]`.
fn smallest_in_block(m: &IntMatrix, p: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in p..m.rows() {
        for j in p..m.cols() {
            let x = &m[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.magnitude() < m[(bi, bj)].magnitude()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smallest nonzero entry in row `p` (right of the pivot) or column `p`
/// (below the pivot), pivot included.
fn smallest_in_cross(m: &IntMatrix, p: usize) -> (usize, usize) {
    let mut best = (p, p);
    let consider = |i: usize, j: usize, best: &mut (usize, usize)| {
        let x = &m[(i, j)];
        let cur = &m[*best];
        if !x.is_zero() && (cur.is_zero() || x.magnitude() < cur.magnitude()) {
            *best = (i, j);
        }
    };
    for i in p..m.rows() {
        consider(i, p, &mut best);
    }
    for j in p + 1..m.cols() {
        consider(p, j, &mut best);
    }
    best
}

/// Computes the Smith normal form by gcd-driven row and column reduction.
///
/// The pivot is always the smallest nonzero entry available, and every pivot
/// is checked to divide the remaining block before it is frozen, so the
/// divisibility chain holds without a separate fix-up pass over the diagonal.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = m.shape();
    let mut d = m.clone();
    let mut s = IntMatrix::identity(rows);
    let mut t = IntMatrix::identity(cols);
    let mut divisors = Vec::new();

    for p in 0..rows.min(cols) {
        let Some((i, j)) = smallest_in_block(&d, p) else {
            break;
        };
        d.swap_rows(p, i);
        s.swap_rows(p, i);
        d.swap_cols(p, j);
        t.swap_cols(p, j);

        loop {
            let (i, j) = smallest_in_cross(&d, p);
            d.swap_rows(p, i);
            s.swap_rows(p, i);
            d.swap_cols(p, j);
            t.swap_cols(p, j);

            let pivot = d[(p, p)].clone();
            let mut clean = true;
            for i in p + 1..rows {
                if d[(i, p)].is_zero() {
                    continue;
                }
                let q = d[(i, p)].div_floor(&pivot);
                d.row_axpy(i, p, &q);
                s.row_axpy(i, p, &q);
                clean &= d[(i, p)].is_zero();
            }
            for j in p + 1..cols {
                if d[(p, j)].is_zero() {
                    continue;
                }
                let q = d[(p, j)].div_floor(&pivot);
                d.col_axpy(j, p, &q);
                t.col_axpy(j, p, &q);
                clean &= d[(p, j)].is_zero();
            }
            if !clean {
                continue;
            }

            // Row and column are clear; the pivot must also divide the rest.
            let offender =
                (p + 1..rows).find(|&i| (p + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let minus_one = BigInt::from(-1);
                    d.row_axpy(p, i, &minus_one);
                    s.row_axpy(p, i, &minus_one);
                }
                None => break,
            }
        }

        if d[(p, p)].is_negative() {
            d.negate_row(p);
            s.negate_row(p);
        }
        divisors.push(d[(p, p)].clone());
    }

    SnfResult { s, t, d, divisors }
}
