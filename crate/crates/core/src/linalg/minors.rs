use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;
use crate::{Error, Result};

/// Exact determinant by Bareiss fraction-free elimination.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "determinant of a non-square {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    Ok(bareiss(m.to_rows()))
}

fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Rank over ℚ, by fraction-free row echelon reduction.
pub fn rank(m: &IntMatrix) -> usize {
    let mut a = m.to_rows();
    let mut r = 0;
    for c in 0..m.cols() {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let (piv, lead) = (a[r][c].clone(), a[i][c].clone());
            let pivot_row = a[r].clone();
            for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                *x = &*x * &piv - &lead * y;
            }
            let content = a[i].iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if !content.is_zero() && !content.is_one() {
                a[i].iter_mut().for_each(|x| *x /= &content);
            }
        }
        r += 1;
    }
    r
}

/// Elementary divisors `l_k = d_k / d_{k−1}` where `d_k` is the gcd of all
/// `k×k` minors and `d_0 = 1`.
///
/// This enumerates minors directly and shares nothing with the unimodular
/// reduction in [`super::smith_normal_form`]; it exists to cross-check it.
/// Cost grows combinatorially, so keep it to small matrices.
pub fn elementary_divisors_via_minors(m: &IntMatrix) -> Vec<BigInt> {
    let mut divisors = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = BigInt::zero();
        for rows in (0..m.rows()).combinations(k) {
            for cols in (0..m.cols()).combinations(k) {
                g = g.gcd(&bareiss(m.select(&rows, &cols).to_rows()));
                if g.is_one() {
                    break;
                }
            }
            if g.is_one() {
                break;
            }
        }
        if g.is_zero() {
            break;
        }
        divisors.push((&g / &prev).abs());
        prev = g;
    }
    divisors
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.iter().copied())).unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn determinant_examples() {
        let ex2 = m(&[&[2, 4, 1], &[2, 6, 2], &[1, 0, 2]]);
        assert_eq!(determinant(&ex2).unwrap().abs(), BigInt::from(10));
        let ex3 = m(&[
            &[1, 0, 0, -1],
            &[0, 1, 0, 0],
            &[2, -1, -1, 0],
            &[-1, 1, 0, 0],
        ]);
        assert_eq!(determinant(&ex3).unwrap().abs(), BigInt::from(1));
        assert_eq!(
            determinant(&IntMatrix::identity(5)).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            determinant(&IntMatrix::zeros(0, 0)).unwrap(),
            BigInt::from(1)
        );
    }

    #[test]
    fn determinant_signs_and_pivoting() {
        assert_eq!(
            determinant(&m(&[&[0, 1], &[1, 0]])).unwrap(),
            BigInt::from(-1)
        );
        assert_eq!(
            determinant(&m(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])).unwrap(),
            BigInt::from(-1)
        );
        assert_eq!(
            determinant(&m(&[&[1, 2], &[2, 4]])).unwrap(),
            BigInt::from(0)
        );
    }

    #[test]
    fn determinant_rejects_non_square() {
        assert!(matches!(
            determinant(&IntMatrix::zeros(2, 3)),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&m(&[&[2, 4, 1], &[2, 6, 2]])), 2);
        assert_eq!(rank(&IntMatrix::zeros(3, 4)), 0);
        assert_eq!(rank(&IntMatrix::identity(4)), 4);
        assert_eq!(rank(&m(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]])), 2);
    }

    #[test]
    fn minors_oracle_examples() {
        assert_eq!(
            elementary_divisors_via_minors(&m(&[&[2, 4, 1], &[2, 6, 2]])),
            ints(&[1, 2])
        );
        assert!(elementary_divisors_via_minors(&IntMatrix::zeros(3, 3)).is_empty());
        assert_eq!(
            elementary_divisors_via_minors(&m(&[&[4, 6], &[2, 8]])),
            ints(&[2, 10])
        );
    }
}
