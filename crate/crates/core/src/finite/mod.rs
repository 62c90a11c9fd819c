//! Finite groups as Cayley tables, and Reidemeister classes of tuples of
//! homomorphisms between them.
//!
//! A [`FiniteGroup`] is a direct product of one or more [`CayleyTable`]
//! factors with elements numbered in mixed radix (first factor most
//! significant). Products of large groups therefore never materialize a full
//! table; the order-14400 group `G × G` for `|G| = 120` costs two 120×120
//! tables.

mod closure;
mod twisted;

use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

pub use closure::{binary_icosahedral, close_group, ModMatrix, Permutation, DEFAULT_CLOSURE_CAP};
pub use twisted::{
    conjugacy_class_count, product_law, transposition_image, twisted_reidemeister,
    twisted_reidemeister_by_expansion, FiniteProductLaw, TwistedPartition, DEFAULT_TUPLE_CAP,
};

/// Largest order a [`FiniteGroup`] may have, products included.
pub const MAX_GROUP_ORDER: usize = 10_000_000;

/// A single group given by its multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    mul: Vec<u32>,
    identity: u32,
    inv: Vec<u32>,
    generators: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl CayleyTable {
    /// Validates a multiplication table: closure, identity, inverses and
    /// associativity.
    ///
    /// Associativity is checked as `(x·y)·g = x·(y·g)` for all `x, y` and every
    /// `g` in a generating set, which implies it for all triples.
    pub fn new(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup(
                "a group needs at least one element".into(),
            ));
        }
        if n > u32::MAX as usize || n > MAX_GROUP_ORDER {
            return Err(Error::InvalidGroup(format!(
                "order {n} too large for a table"
            )));
        }
        let mut mul = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "table row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!(
                    "entry {bad} in row {i} is out of range"
                )));
            }
            mul.extend(row.iter().map(|&x| x as u32));
        }
        if let Some(labels) = &labels {
            if labels.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "{} labels for {n} elements",
                    labels.len()
                )));
            }
        }
        let at = |a: usize, b: usize| mul[a * n + b] as usize;
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;
        let mut inv = Vec::with_capacity(n);
        for x in 0..n {
            let y = (0..n)
                .find(|&y| at(x, y) == identity && at(y, x) == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {x} has no inverse")))?;
            inv.push(y as u32);
        }
        let generators = generating_set(n, identity, &at);
        for &g in &generators {
            for x in 0..n {
                for y in 0..n {
                    if at(at(x, y), g) != at(x, at(y, g)) {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails for ({x}, {y}, {g})"
                        )));
                    }
                }
            }
        }
        Ok(CayleyTable {
            order: n,
            mul,
            identity: identity as u32,
            inv,
            generators: generators.into_iter().map(|g| g as u32).collect(),
            labels,
        })
    }

    /// Assembles a table already known to be a group (closure output).
    pub(crate) fn from_trusted(
        order: usize,
        mul: Vec<u32>,
        identity: usize,
        generators: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Self {
        let mut inv = vec![0u32; order];
        for x in 0..order {
            let row = &mul[x * order..(x + 1) * order];
            let y = row
                .iter()
                .position(|&p| p as usize == identity)
                .expect("group element has an inverse");
            inv[x] = y as u32;
        }
        CayleyTable {
            order,
            mul,
            identity: identity as u32,
            inv,
            generators: generators.into_iter().map(|g| g as u32).collect(),
            labels,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn identity(&self) -> usize {
        self.identity as usize
    }
}

/// Greedy generating set: add the first element outside the subgroup built so far.
fn generating_set(n: usize, identity: usize, at: &impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut inside = vec![false; n];
    inside[identity] = true;
    let mut members = vec![identity];
    let mut gens = Vec::new();
    for x in 0..n {
        if inside[x] {
            continue;
        }
        gens.push(x);
        // close under right multiplication, rescanning from the start
        let mut i = 0;
        while i < members.len() {
            let m = members[i];
            for &g in &gens {
                let y = at(m, g);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
    }
    gens
}

/// A finite group: a direct product of Cayley tables.
#[derive(Clone)]
pub struct FiniteGroup {
    factors: Vec<Arc<CayleyTable>>,
    order: usize,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.factors.len() == other.factors.len()
            && self
                .factors
                .iter()
                .zip(&other.factors)
                .all(|(a, b)| Arc::ptr_eq(a, b) || a == b)
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orders: Vec<usize> = self.factors.iter().map(|t| t.order).collect();
        write!(f, "FiniteGroup(order {}, factors {:?})", self.order, orders)
    }
}

impl From<CayleyTable> for FiniteGroup {
    fn from(table: CayleyTable) -> Self {
        FiniteGroup {
            order: table.order,
            factors: vec![Arc::new(table)],
        }
    }
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        Ok(CayleyTable::new(table, None)?.into())
    }

    pub fn trivial() -> Self {
        CayleyTable::from_trusted(1, vec![0], 0, vec![], Some(vec!["e".into()])).into()
    }

    /// `ℤ/n` with element `i` the residue `i`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        let mul = (0..n * n)
            .map(|ab| ((ab / n + ab % n) % n) as u32)
            .collect();
        let gens = if n > 1 { vec![1] } else { vec![] };
        CayleyTable::from_trusted(n, mul, 0, gens, None).into()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn factors(&self) -> &[Arc<CayleyTable>] {
        &self.factors
    }

    pub fn is_product(&self) -> bool {
        self.factors.len() > 1
    }

    /// Component indices of `x`, one per factor.
    pub fn components(&self, mut x: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (slot, t) in out.iter_mut().zip(&self.factors).rev() {
            *slot = x % t.order;
            x /= t.order;
        }
        out
    }

    pub fn from_components(&self, components: &[usize]) -> usize {
        components
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&c, t)| acc * t.order + c)
    }

    pub fn identity(&self) -> usize {
        let ids: Vec<usize> = self.factors.iter().map(|t| t.identity()).collect();
        self.from_components(&ids)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        if let [t] = self.factors.as_slice() {
            return t.mul(a, b);
        }
        let (ca, cb) = (self.components(a), self.components(b));
        let prod: Vec<usize> = self
            .factors
            .iter()
            .enumerate()
            .map(|(i, t)| t.mul(ca[i], cb[i]))
            .collect();
        self.from_components(&prod)
    }

    pub fn inv(&self, a: usize) -> usize {
        if let [t] = self.factors.as_slice() {
            return t.inv(a);
        }
        let inv: Vec<usize> = self
            .components(a)
            .into_iter()
            .zip(&self.factors)
            .map(|(c, t)| t.inv(c))
            .collect();
        self.from_components(&inv)
    }

    /// A generating set: the generators of each factor, embedded.
    pub fn generators(&self) -> Vec<usize> {
        let ids: Vec<usize> = self.factors.iter().map(|t| t.identity()).collect();
        let mut gens = Vec::new();
        for (i, t) in self.factors.iter().enumerate() {
            for &g in &t.generators {
                let mut c = ids.clone();
                c[i] = g as usize;
                gens.push(self.from_components(&c));
            }
        }
        gens
    }

    pub fn label(&self, x: usize) -> String {
        let parts: Vec<String> = self
            .components(x)
            .into_iter()
            .zip(&self.factors)
            .map(|(c, t)| match &t.labels {
                Some(l) => l[c].clone(),
                None => c.to_string(),
            })
            .collect();
        if parts.len() == 1 {
            parts.into_iter().next().unwrap()
        } else {
            format!("({})", parts.join(", "))
        }
    }

    /// Element carrying the given label, for single-factor groups with labels.
    pub fn find_label(&self, label: &str) -> Option<usize> {
        match self.factors.as_slice() {
            [t] => t.labels.as_ref()?.iter().position(|l| l == label),
            _ => None,
        }
    }

    /// The single-factor group of factor `i`.
    pub fn factor_group(&self, i: usize) -> FiniteGroup {
        let t = self.factors[i].clone();
        FiniteGroup {
            order: t.order,
            factors: vec![t],
        }
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// `G × H` with componentwise multiplication.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    let order = g
        .order
        .checked_mul(h.order)
        .filter(|&o| o <= MAX_GROUP_ORDER)
        .ok_or(Error::SizeCap {
            what: "direct product",
            size: format!("{}*{}", g.order, h.order),
            cap: MAX_GROUP_ORDER as u64,
        })?;
    let mut factors = g.factors.clone();
    factors.extend(h.factors.iter().cloned());
    Ok(FiniteGroup { factors, order })
}

/// Homomorphism between finite groups stored as a full image table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteHom {
    domain: FiniteGroup,
    codomain: FiniteGroup,
    image: Vec<u32>,
}

impl fmt::Debug for FiniteHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteHom({:?} -> {:?})", self.domain, self.codomain)
    }
}

impl FiniteHom {
    /// Checks `image(x·g) = image(x)·image(g)` for every `x` and every domain
    /// generator `g`, which is equivalent to being a homomorphism.
    pub fn new(domain: FiniteGroup, codomain: FiniteGroup, image: Vec<usize>) -> Result<Self> {
        if image.len() != domain.order() {
            return Err(Error::NotHomomorphism(format!(
                "image table has {} entries for a domain of order {}",
                image.len(),
                domain.order()
            )));
        }
        if let Some(&bad) = image.iter().find(|&&y| y >= codomain.order()) {
            return Err(Error::NotHomomorphism(format!(
                "image {bad} outside the codomain"
            )));
        }
        for g in domain.generators() {
            for x in 0..domain.order() {
                if image[domain.mul(x, g)] != codomain.mul(image[x], image[g]) {
                    return Err(Error::NotHomomorphism(format!(
                        "image of {} * {} is not the product of images",
                        domain.label(x),
                        domain.label(g)
                    )));
                }
            }
        }
        let image = image.into_iter().map(|y| y as u32).collect();
        Ok(FiniteHom {
            domain,
            codomain,
            image,
        })
    }

    /// Extends prescribed images of `domain.generators()` to a homomorphism,
    /// failing if the assignment is inconsistent with the relations.
    pub fn from_generator_images(
        domain: FiniteGroup,
        codomain: FiniteGroup,
        images: &[usize],
    ) -> Result<Self> {
        let gens = domain.generators();
        if images.len() != gens.len() {
            return Err(Error::NotHomomorphism(format!(
                "{} generator images for {} generators",
                images.len(),
                gens.len()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&y| y >= codomain.order()) {
            return Err(Error::NotHomomorphism(format!(
                "image {bad} outside the codomain"
            )));
        }
        let mut image = vec![usize::MAX; domain.order()];
        image[domain.identity()] = codomain.identity();
        let mut queue = vec![domain.identity()];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (&g, &gi) in gens.iter().zip(images) {
                let y = domain.mul(x, g);
                if image[y] == usize::MAX {
                    image[y] = codomain.mul(image[x], gi);
                    queue.push(y);
                }
            }
            i += 1;
        }
        Self::new(domain, codomain, image)
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        FiniteHom {
            domain: g.clone(),
            codomain: g.clone(),
            image: (0..g.order() as u32).collect(),
        }
    }

    /// The constant map onto the identity.
    pub fn trivial(domain: &FiniteGroup, codomain: &FiniteGroup) -> Self {
        FiniteHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            image: vec![codomain.identity() as u32; domain.order()],
        }
    }

    /// Projection of a product group onto its factor `i`.
    pub fn projection(product: &FiniteGroup, i: usize) -> Result<Self> {
        if i >= product.factors.len() {
            return Err(Error::InvalidGroup(format!(
                "projection onto factor {i} of a group with {} factors",
                product.factors.len()
            )));
        }
        let codomain = product.factor_group(i);
        let image = (0..product.order())
            .map(|x| product.components(x)[i] as u32)
            .collect();
        Ok(FiniteHom {
            domain: product.clone(),
            codomain,
            image,
        })
    }

    pub fn domain(&self) -> &FiniteGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteGroup {
        &self.codomain
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x] as usize
    }
}
