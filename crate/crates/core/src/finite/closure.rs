use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use super::{CayleyTable, FiniteGroup};
use crate::{Error, Result};

/// Cap on the number of elements produced by [`close_group`].
pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

/// Concrete group elements that can be closed into a Cayley table.
pub trait GroupElement: Clone + Eq + Hash {
    /// `self · other`.
    fn compose(&self, other: &Self) -> Self;
    fn identity_like(&self) -> Self;
    /// Whether two elements live in the same ambient group.
    fn compatible(&self, other: &Self) -> bool;
    fn label(&self) -> String;
}

/// Permutation of `{0, …, n−1}`; composition applies `self` first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidGroup(format!(
                    "{images:?} is not a permutation"
                )));
            }
        }
        Ok(Permutation(images))
    }

    /// Parses cycle notation on the points `1..=degree`, e.g. `"(1 2 3)(4 5)"`.
    /// `"()"` and the empty string are the identity. Commas are accepted as
    /// separators.
    pub fn from_cycles(text: &str, degree: usize) -> Result<Self> {
        let bad = |why: String| Error::InvalidGroup(format!("cycle notation {text:?}: {why}"));
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| bad("expected '('".into()))?;
            let close = body.find(')').ok_or_else(|| bad("missing ')'".into()))?;
            let points = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    let p: usize = s.parse().map_err(|_| bad(format!("bad point {s:?}")))?;
                    if p == 0 || p > degree {
                        return Err(bad(format!("point {p} outside 1..={degree}")));
                    }
                    if std::mem::replace(&mut used[p - 1], true) {
                        return Err(bad(format!("point {p} repeated")));
                    }
                    Ok(p - 1)
                })
                .collect::<Result<Vec<usize>>>()?;
            for (i, &p) in points.iter().enumerate() {
                images[p] = points[(i + 1) % points.len()];
            }
            rest = body[close + 1..].trim_start();
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point]
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            any = true;
            f.write_str("(")?;
            let mut p = start;
            loop {
                seen[p] = true;
                write!(f, "{}", p + 1)?;
                p = self.0[p];
                if p == start {
                    break;
                }
                f.write_str(" ")?;
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

impl GroupElement for Permutation {
    fn compose(&self, other: &Self) -> Self {
        Permutation(self.0.iter().map(|&i| other.0[i]).collect())
    }

    fn identity_like(&self) -> Self {
        Permutation((0..self.0.len()).collect())
    }

    fn compatible(&self, other: &Self) -> bool {
        self.0.len() == other.0.len()
    }

    fn label(&self) -> String {
        self.to_string()
    }
}

/// Invertible square matrix over the prime field `ℤ/p`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModMatrix {
    modulus: u64,
    dim: usize,
    entries: Vec<u64>,
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl ModMatrix {
    pub fn new(modulus: u64, rows: &[Vec<i64>]) -> Result<Self> {
        if !is_prime(modulus) || modulus > u32::MAX as u64 {
            return Err(Error::InvalidGroup(format!(
                "modulus {modulus} is not a small prime"
            )));
        }
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidGroup(
                "matrix generator must be square and nonempty".into(),
            ));
        }
        let entries: Vec<u64> = rows
            .iter()
            .flatten()
            .map(|&x| x.rem_euclid(modulus as i64) as u64)
            .collect();
        let m = ModMatrix {
            modulus,
            dim,
            entries,
        };
        if m.determinant() == 0 {
            return Err(Error::InvalidGroup(format!(
                "{m} is singular mod {modulus}"
            )));
        }
        Ok(m)
    }

    fn determinant(&self) -> u64 {
        let (p, n) = (self.modulus, self.dim);
        let mut a = self.entries.clone();
        let mut det = 1u64;
        for c in 0..n {
            let Some(r) = (c..n).find(|&r| a[r * n + c] != 0) else {
                return 0;
            };
            if r != c {
                for j in 0..n {
                    a.swap(r * n + j, c * n + j);
                }
                det = (p - det) % p;
            }
            let piv = a[c * n + c];
            det = det * piv % p;
            let inv = pow_mod(piv, p - 2, p);
            for i in c + 1..n {
                let f = a[i * n + c] * inv % p;
                for j in c..n {
                    a[i * n + j] = (a[i * n + j] + p * p - f * a[c * n + j] % p) % p;
                }
            }
        }
        det
    }
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.dim {
            if i > 0 {
                f.write_str(", ")?;
            }
            let row: Vec<String> = self.entries[i * self.dim..(i + 1) * self.dim]
                .iter()
                .map(u64::to_string)
                .collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        f.write_str("]")
    }
}

impl GroupElement for ModMatrix {
    fn compose(&self, other: &Self) -> Self {
        let (n, p) = (self.dim, self.modulus);
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = (0..n)
                    .map(|l| self.entries[i * n + l] * other.entries[l * n + j] % p)
                    .sum::<u64>()
                    % p;
            }
        }
        ModMatrix {
            modulus: p,
            dim: n,
            entries,
        }
    }

    fn identity_like(&self) -> Self {
        let n = self.dim;
        let entries = (0..n * n).map(|ij| u64::from(ij / n == ij % n)).collect();
        ModMatrix {
            modulus: self.modulus,
            dim: n,
            entries,
        }
    }

    fn compatible(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.dim == other.dim
    }

    fn label(&self) -> String {
        self.to_string()
    }
}

/// Closes a generator list into a Cayley table.
///
/// Elements are numbered breadth-first from the identity (index 0), trying
/// generators in the given order, so the numbering is deterministic. Each
/// element is labelled with its concrete form.
pub fn close_group<T: GroupElement>(generators: &[T], cap: usize) -> Result<FiniteGroup> {
    let Some(first) = generators.first() else {
        return Ok(FiniteGroup::trivial());
    };
    if generators.iter().any(|g| !g.compatible(first)) {
        return Err(Error::InvalidGroup(
            "generators act on different spaces".into(),
        ));
    }
    let identity = first.identity_like();
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
    let mut parent: Vec<(usize, usize)> = vec![(0, 0)];
    // right[g][x] = index of x·g
    let mut right: Vec<Vec<u32>> = vec![Vec::new(); generators.len()];
    let mut i = 0;
    while i < elements.len() {
        for (gi, g) in generators.iter().enumerate() {
            let y = elements[i].compose(g);
            let next = elements.len();
            let yi = *index.entry(y.clone()).or_insert(next);
            if yi == next {
                if next >= cap {
                    return Err(Error::ClosureCap { cap });
                }
                elements.push(y);
                parent.push((i, gi));
            }
            right[gi].push(yi as u32);
        }
        i += 1;
    }
    let n = elements.len();
    // a·b = (a·parent(b))·g where b = parent(b)·g
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        mul[a * n] = a as u32;
    }
    for b in 1..n {
        let (pb, gi) = parent[b];
        for a in 0..n {
            mul[a * n + b] = right[gi][mul[a * n + pb] as usize];
        }
    }
    let gens = generators.iter().map(|g| index[g]).collect();
    let labels = elements.iter().map(GroupElement::label).collect();
    Ok(CayleyTable::from_trusted(n, mul, 0, gens, Some(labels)).into())
}

/// The binary icosahedral group, realized as the 2×2 determinant-one matrices
/// over `ℤ/5` generated by `[[1, 1], [0, 1]]` and `[[0, −1], [1, 0]]`.
pub fn binary_icosahedral() -> FiniteGroup {
    let gens = [
        ModMatrix::new(5, &[vec![1, 1], vec![0, 1]]).expect("valid generator"),
        ModMatrix::new(5, &[vec![0, -1], vec![1, 0]]).expect("valid generator"),
    ];
    close_group(&gens, DEFAULT_CLOSURE_CAP).expect("order 120 is below the cap")
}
