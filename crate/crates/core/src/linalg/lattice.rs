use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{determinant, IntMatrix};
use crate::{Cardinal, Error, Result};

/// A sublattice of `ℤ^dim`, stored as its row-style Hermite normal form.
///
/// Basis rows are in echelon form with strictly increasing pivot columns,
/// positive pivots, and every entry above a pivot reduced into `[0, pivot)`.
/// The basis is therefore canonical: equal lattices have equal bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn axpy(target: &mut [BigInt], factor: &BigInt, source: &[BigInt]) {
    for (t, s) in target.iter_mut().zip(source) {
        *t -= factor * s;
    }
}

impl Lattice {
    pub fn from_generators(dim: usize, generators: &[Vec<BigInt>]) -> Result<Self> {
        if let Some((i, g)) = generators.iter().enumerate().find(|(_, g)| g.len() != dim) {
            return Err(Error::Shape(format!(
                "generator {i} has length {}, expected {dim}",
                g.len()
            )));
        }
        let mut a: Vec<Vec<BigInt>> = generators.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..dim {
            // Euclid down column c among rows r.. until one nonzero remains.
            loop {
                let smallest = (r..a.len())
                    .filter(|&i| !a[i][c].is_zero())
                    .min_by(|&i, &j| a[i][c].magnitude().cmp(a[j][c].magnitude()));
                let Some(p) = smallest else { break };
                a.swap(r, p);
                let mut done = true;
                for i in r + 1..a.len() {
                    if a[i][c].is_zero() {
                        continue;
                    }
                    let q = a[i][c].div_floor(&a[r][c]);
                    let (head, tail) = a.split_at_mut(i);
                    axpy(&mut tail[0], &q, &head[r]);
                    done &= tail[0][c].is_zero();
                }
                if done {
                    break;
                }
            }
            if r >= a.len() || a[r][c].is_zero() {
                continue;
            }
            if a[r][c].is_negative() {
                a[r].iter_mut().for_each(|x| *x = -std::mem::take(x));
            }
            for i in 0..r {
                let q = a[i][c].div_floor(&a[r][c]);
                if !q.is_zero() {
                    let (head, tail) = a.split_at_mut(r);
                    axpy(&mut head[i], &q, &tail[0]);
                }
            }
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        Ok(Lattice {
            dim,
            basis: a,
            pivots,
        })
    }

    /// Lattice spanned by the columns of `m` inside `ℤ^rows`.
    pub fn column_lattice(m: &IntMatrix) -> Self {
        Self::from_generators(m.rows(), &m.columns()).expect("columns have length rows")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim
    }

    /// Integer coordinates of `v` in the basis, or `None` when `v` is not in
    /// the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(
            v.len(),
            self.dim,
            "vector length must match lattice dimension"
        );
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            let (q, r) = rest[c].div_rem(&row[c]);
            if !r.is_zero() {
                return None;
            }
            axpy(&mut rest, &q, row);
            coords.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Canonical representative of `v + L`: pivot coordinates land in
    /// `[0, pivot)`. For a full-rank lattice this is a fundamental domain.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut rest = v.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            let q = rest[c].div_floor(&row[c]);
            if !q.is_zero() {
                axpy(&mut rest, &q, row);
            }
        }
        rest
    }

    /// `[ℤ^dim : L]`, i.e. the product of the pivots when full rank.
    pub fn index_in_ambient(&self) -> Cardinal {
        if !self.is_full_rank() {
            return Cardinal::Infinite;
        }
        Cardinal::from_abs(
            &self
                .basis
                .iter()
                .zip(&self.pivots)
                .map(|(r, &c)| r[c].clone())
                .product(),
        )
    }
}

/// Index `[L_super : L_sub]` of the lattice spanned by `sub` inside the lattice
/// spanned by `sup`.
///
/// Every `sub` vector must be an integer combination of the `sup` vectors.
/// When `sub` has smaller rank the index is `Infinite`.
pub fn lattice_index(sub: &[Vec<BigInt>], sup: &[Vec<BigInt>]) -> Result<Cardinal> {
    let dim = sup.first().or(sub.first()).map_or(0, Vec::len);
    let outer = Lattice::from_generators(dim, sup)?;
    let inner = Lattice::from_generators(dim, sub)?;
    if let Some(index) = sub.iter().position(|v| !outer.contains(v)) {
        return Err(Error::NotContained { index });
    }
    if inner.rank() < outer.rank() {
        return Ok(Cardinal::Infinite);
    }
    let coords: Vec<Vec<BigInt>> = inner
        .basis()
        .iter()
        .map(|b| {
            outer
                .coordinates(b)
                .expect("inner basis lies in outer lattice")
        })
        .collect();
    let change = IntMatrix::from_rows(coords)?;
    Ok(Cardinal::from_abs(&determinant(&change)?))
}

/// Enumerates `ℤ^rows / (column lattice of m)` by breadth-first search over
/// unit steps, each element kept as its Hermite-reduced representative.
///
/// Returns `Ok(None)` for an infinite cokernel and an error once more than
/// `cap` elements have been reached.
pub fn cokernel_elements(m: &IntMatrix, cap: u64) -> Result<Option<Vec<Vec<BigInt>>>> {
    let lattice = Lattice::column_lattice(m);
    if !lattice.is_full_rank() {
        return Ok(None);
    }
    let n = m.rows();
    let zero = vec![BigInt::zero(); n];
    let mut seen: HashSet<Vec<BigInt>> = HashSet::from([zero.clone()]);
    let mut order = vec![zero.clone()];
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for i in 0..n {
            let mut y = x.clone();
            y[i] += BigInt::one();
            let y = lattice.reduce(&y);
            if seen.insert(y.clone()) {
                if seen.len() as u64 > cap {
                    return Err(Error::SizeCap {
                        what: "cokernel enumeration",
                        size: format!(">{cap}"),
                        cap,
                    });
                }
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(Some(order))
}
