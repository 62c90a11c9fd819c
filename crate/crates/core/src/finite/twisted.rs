use num_bigint::BigUint;

use super::{FiniteGroup, FiniteHom};
use crate::{Error, Result};

/// Cap on the number of `(k−1)`-tuples a twisted-class sweep may visit.
pub const DEFAULT_TUPLE_CAP: u64 = 10_000_000;

/// Partition of the codomain tuples `(α₂, …, α_k)` into twisted classes.
///
/// Tuple indices are mixed radix over the codomain order with `α₂` most
/// significant. Classes are numbered in order of their smallest tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedPartition {
    pub class_count: usize,
    pub class_of: Vec<u32>,
    pub class_sizes: Vec<u64>,
}

impl TwistedPartition {
    fn from_labels(labels: impl IntoIterator<Item = usize>, len: usize) -> Self {
        let mut rename = vec![u32::MAX; len];
        let mut class_of = Vec::with_capacity(len);
        let mut class_sizes = Vec::new();
        for label in labels {
            if rename[label] == u32::MAX {
                rename[label] = class_sizes.len() as u32;
                class_sizes.push(0);
            }
            let id = rename[label];
            class_sizes[id as usize] += 1;
            class_of.push(id);
        }
        TwistedPartition {
            class_count: class_sizes.len(),
            class_of,
            class_sizes,
        }
    }
}

struct Setup<'a> {
    domain: &'a FiniteGroup,
    codomain: &'a FiniteGroup,
    homs: &'a [FiniteHom],
    tuples: usize,
}

fn setup(homs: &[FiniteHom], cap: u64) -> Result<Setup<'_>> {
    if homs.len() < 2 {
        return Err(Error::TooFewHomomorphisms(homs.len()));
    }
    let (domain, codomain) = (homs[0].domain(), homs[0].codomain());
    if let Some(i) = homs
        .iter()
        .position(|h| h.domain() != domain || h.codomain() != codomain)
    {
        return Err(Error::Shape(format!(
            "homomorphism {i} has a different domain or codomain"
        )));
    }
    let exponent = (homs.len() - 1) as u32;
    let tuples = (codomain.order() as u64)
        .checked_pow(exponent)
        .filter(|&t| t <= cap);
    let tuples = tuples.ok_or_else(|| Error::SizeCap {
        what: "tuple space",
        size: format!("{}^{exponent}", codomain.order()),
        cap,
    })?;
    Ok(Setup {
        domain,
        codomain,
        homs,
        tuples: tuples as usize,
    })
}

impl Setup<'_> {
    fn decode(&self, mut t: usize, out: &mut [usize]) {
        let h = self.codomain.order();
        for slot in out.iter_mut().rev() {
            *slot = t % h;
            t /= h;
        }
    }

    fn encode(&self, entries: &[usize]) -> usize {
        entries
            .iter()
            .fold(0, |acc, &a| acc * self.codomain.order() + a)
    }

    /// Index of `z · t`, the tuple `(φ₁(z) αᵢ φᵢ(z)⁻¹)ᵢ`.
    fn act(&self, z: usize, t: usize, scratch: &mut [usize]) -> usize {
        let c = self.codomain;
        self.decode(t, scratch);
        let left = self.homs[0].apply(z);
        for (a, h) in scratch.iter_mut().zip(&self.homs[1..]) {
            *a = c.mul(c.mul(left, *a), c.inv(h.apply(z)));
        }
        self.encode(scratch)
    }
}

fn find(parent: &mut [u32], mut x: usize) -> usize {
    while parent[x] as usize != x {
        let up = parent[parent[x] as usize];
        parent[x] = up;
        x = up as usize;
    }
    x
}

/// Twisted classes of `(φ₁, …, φ_k)`: orbits of `(α₂, …, α_k)` under
/// `z · αᵢ = φ₁(z) αᵢ φᵢ(z)⁻¹`, computed by union-find over the domain
/// generators. `class_count` is the Reidemeister number.
pub fn twisted_reidemeister(homs: &[FiniteHom], cap: u64) -> Result<TwistedPartition> {
    let s = setup(homs, cap)?;
    let gens = s.domain.generators();
    let mut parent: Vec<u32> = (0..s.tuples as u32).collect();
    let mut scratch = vec![0; homs.len() - 1];
    for t in 0..s.tuples {
        for &g in &gens {
            let u = s.act(g, t, &mut scratch);
            let (a, b) = (find(&mut parent, t), find(&mut parent, u));
            if a != b {
                // keep the smaller index as root
                let (lo, hi) = (a.min(b), a.max(b));
                parent[hi] = lo as u32;
            }
        }
    }
    let roots: Vec<usize> = (0..s.tuples).map(|t| find(&mut parent, t)).collect();
    Ok(TwistedPartition::from_labels(roots, s.tuples))
}

/// Same partition as [`twisted_reidemeister`], found by sweeping every domain
/// element over the first unvisited tuple.
pub fn twisted_reidemeister_by_expansion(homs: &[FiniteHom], cap: u64) -> Result<TwistedPartition> {
    let s = setup(homs, cap)?;
    let mut owner = vec![usize::MAX; s.tuples];
    let mut scratch = vec![0; homs.len() - 1];
    for t in 0..s.tuples {
        if owner[t] != usize::MAX {
            continue;
        }
        for z in 0..s.domain.order() {
            let u = s.act(z, t, &mut scratch);
            owner[u] = t;
        }
    }
    Ok(TwistedPartition::from_labels(owner, s.tuples))
}

/// Number of conjugacy classes of `g`.
pub fn conjugacy_class_count(g: &FiniteGroup) -> usize {
    let id = FiniteHom::identity(g);
    twisted_reidemeister(&[id.clone(), id], g.order() as u64)
        .expect("a group has as many 1-tuples as elements")
        .class_count
}

/// Image of a tuple under the bijection matching the classes of
/// `(φ₁, …, φ_k)` with those of the system with homs `a < b` swapped
/// (0-based hom positions).
///
/// Swapping two homs other than `φ₁` swaps the tuple entries. Swapping `φ₁`
/// with `φᵢ` sends `α` to `(αᵢ⁻¹α₂, …, αᵢ⁻¹, …, αᵢ⁻¹α_k)` with `αᵢ⁻¹` in slot `i`.
pub fn transposition_image(
    codomain: &FiniteGroup,
    tuple: &[usize],
    a: usize,
    b: usize,
) -> Vec<usize> {
    assert!(
        a < b && b <= tuple.len(),
        "positions must satisfy a < b < k"
    );
    let mut out = tuple.to_vec();
    if a > 0 {
        out.swap(a - 1, b - 1);
        return out;
    }
    let pivot = codomain.inv(tuple[b - 1]);
    for (l, slot) in out.iter_mut().enumerate() {
        *slot = if l == b - 1 {
            pivot
        } else {
            codomain.mul(pivot, tuple[l])
        };
    }
    out
}

/// The pairwise numbers `R(φ₁, φⱼ)` set against the multi-map number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteProductLaw {
    pub multi: usize,
    pub pairwise: Vec<usize>,
    pub product: BigUint,
    /// Whether the pairwise product divides the multi-map number. This holds
    /// for abelian targets but can fail otherwise.
    pub divides: bool,
}

pub fn product_law(homs: &[FiniteHom], cap: u64) -> Result<FiniteProductLaw> {
    let multi = twisted_reidemeister(homs, cap)?.class_count;
    let pairwise = homs[1..]
        .iter()
        .map(|h| Ok(twisted_reidemeister(&[homs[0].clone(), h.clone()], cap)?.class_count))
        .collect::<Result<Vec<usize>>>()?;
    let product: BigUint = pairwise.iter().map(|&r| BigUint::from(r)).product();
    let divides = (BigUint::from(multi) % &product) == BigUint::from(0u8);
    Ok(FiniteProductLaw {
        multi,
        pairwise,
        product,
        divides,
    })
}
