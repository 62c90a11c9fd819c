//! Torsion-free nilpotent groups of class at most 2 in polycyclic form, and
//! homomorphisms between them.
//!
//! A [`PcGroup`] has generators `x₁, …, x_p` (non-central) followed by
//! `z₁, …, z_q` (central). Every element has a unique normal form
//! `x₁^{e₁} ⋯ x_p^{e_p} z₁^{f₁} ⋯ z_q^{f_q}`, stored as a [`PcWord`]. The only
//! relations are `[xᵢ, xⱼ] = z^{C(i,j)}` with `[x, y] = x⁻¹y⁻¹xy`; central
//! generators commute with everything.
//!
//! The commutator values must span the central block exactly, so that
//! `[G, G]` is the free abelian group on the `z`'s and `G^ab` is free on the
//! `x`'s. A generator that is central but not a product of commutators (a
//! free abelian factor, say) is listed among the non-central generators with
//! trivial commutators.

mod reduction;

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::{cokernel_order, IntMatrix};
use crate::{Cardinal, Error, Result};

pub use reduction::{
    central_extension_data, delta_image_order, delta_images, diagonal_pair,
    recount_by_identification, reid_nilpotent, reid_nilpotent_multi, CentralExtensionData,
    NilpotentOutcome, NilpotentReport, NILMANIFOLD_NOTE,
};

/// Normal-form exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PcWord {
    exps: Vec<BigInt>,
}

impl PcWord {
    pub fn new(exps: Vec<BigInt>) -> Self {
        PcWord { exps }
    }

    pub fn from_i64(exps: &[i64]) -> Self {
        PcWord {
            exps: exps.iter().map(|&e| BigInt::from(e)).collect(),
        }
    }

    pub fn exponents(&self) -> &[BigInt] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(Zero::is_zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcGroup {
    names: Vec<String>,
    noncentral: usize,
    /// `C(i, j)` for `i > j`, at `i(i−1)/2 + j`, as a vector over the central block.
    comm: Vec<Vec<BigInt>>,
}

fn tri(i: usize, j: usize) -> usize {
    debug_assert!(i > j);
    i * (i - 1) / 2 + j
}

impl PcGroup {
    /// Builds a presentation from generator names, a centrality mask and
    /// commutator relations `(i, j, w)` meaning `[gᵢ, gⱼ] = w`.
    ///
    /// Central generators must come last. Each `w` is a full-length exponent
    /// vector supported on the central generators. Pairs not listed commute.
    pub fn new(
        names: Vec<String>,
        central: &[bool],
        relations: &[(usize, usize, Vec<BigInt>)],
    ) -> Result<Self> {
        let n = names.len();
        if central.len() != n {
            return Err(Error::InvalidGroup(format!(
                "{} centrality flags for {n} generators",
                central.len()
            )));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = names
            .iter()
            .find(|s| s.is_empty() || !seen.insert(s.as_str()))
        {
            return Err(Error::InvalidGroup(format!(
                "generator name {dup:?} is empty or repeated"
            )));
        }
        let p = central.iter().take_while(|&&c| !c).count();
        if central[p..].iter().any(|&c| !c) {
            return Err(Error::InvalidGroup(
                "central generators must come after all non-central ones".into(),
            ));
        }
        let q = n - p;
        let mut comm: Vec<Option<Vec<BigInt>>> = vec![None; p * p.saturating_sub(1) / 2];
        for (i, j, w) in relations {
            let (i, j) = (*i, *j);
            let bad = |why: String| Error::InvalidGroup(format!("relation [{i}, {j}]: {why}"));
            if i >= n || j >= n {
                return Err(bad("generator index out of range".into()));
            }
            if w.len() != n {
                return Err(bad(format!(
                    "value has {} exponents, expected {n}",
                    w.len()
                )));
            }
            if w[..p].iter().any(|e| !e.is_zero()) {
                return Err(bad(
                    "value is not central, so the group is not of class 2".into()
                ));
            }
            if i == j || i >= p || j >= p {
                if w.iter().all(Zero::is_zero) {
                    continue;
                }
                return Err(bad(
                    "only distinct non-central generators may have a nontrivial commutator".into(),
                ));
            }
            // [gⱼ, gᵢ] = [gᵢ, gⱼ]⁻¹
            let (hi, lo, value) = if i > j {
                (i, j, w[p..].to_vec())
            } else {
                (j, i, w[p..].iter().map(|e| -e).collect())
            };
            let slot = &mut comm[tri(hi, lo)];
            match slot {
                Some(old) if *old != value => {
                    return Err(bad("conflicts with an earlier relation".into()))
                }
                _ => *slot = Some(value),
            }
        }
        let comm: Vec<Vec<BigInt>> = comm
            .into_iter()
            .map(|c| c.unwrap_or_else(|| vec![BigInt::zero(); q]))
            .collect();
        if q > 0 {
            let span = IntMatrix::from_columns(q, &comm)?;
            if cokernel_order(&span) != Cardinal::one() {
                return Err(Error::InvalidGroup(
                    "the commutator values do not span the central generators; list central \
                     generators that are not products of commutators as non-central"
                        .into(),
                ));
            }
        }
        Ok(PcGroup {
            names,
            noncentral: p,
            comm,
        })
    }

    /// Free abelian group on the given generators.
    pub fn abelian(names: Vec<String>) -> Result<Self> {
        let central = vec![false; names.len()];
        Self::new(names, &central, &[])
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Rank of `G^ab`: the number of non-central generators.
    pub fn abelian_rank(&self) -> usize {
        self.noncentral
    }

    /// Rank of `[G, G]`: the number of central generators.
    pub fn commutator_rank(&self) -> usize {
        self.names.len() - self.noncentral
    }

    pub fn is_abelian(&self) -> bool {
        self.commutator_rank() == 0
    }

    /// `[gᵢ, gⱼ]` for non-central `i, j`, as a vector over the central block.
    pub fn commutator_value(&self, i: usize, j: usize) -> Vec<BigInt> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Greater => self.comm[tri(i, j)].clone(),
            Less => self.comm[tri(j, i)].iter().map(|e| -e).collect(),
            Equal => vec![BigInt::zero(); self.commutator_rank()],
        }
    }

    pub fn identity(&self) -> PcWord {
        PcWord {
            exps: vec![BigInt::zero(); self.len()],
        }
    }

    pub fn generator(&self, i: usize) -> PcWord {
        let mut w = self.identity();
        w.exps[i] = BigInt::one();
        w
    }

    /// Word with the given non-central and central parts.
    pub fn word_from_parts(&self, noncentral: &[BigInt], central: &[BigInt]) -> PcWord {
        assert_eq!(noncentral.len(), self.noncentral);
        assert_eq!(central.len(), self.commutator_rank());
        PcWord {
            exps: noncentral.iter().chain(central).cloned().collect(),
        }
    }

    pub fn noncentral_part<'w>(&self, w: &'w PcWord) -> &'w [BigInt] {
        &w.exps[..self.noncentral]
    }

    pub fn central_part<'w>(&self, w: &'w PcWord) -> &'w [BigInt] {
        &w.exps[self.noncentral..]
    }

    pub fn check_word(&self, w: &PcWord) -> Result<()> {
        if w.len() != self.len() {
            return Err(Error::Shape(format!(
                "word has {} exponents, the group has {} generators",
                w.len(),
                self.len()
            )));
        }
        Ok(())
    }

    /// `Σ_{i>j} aᵢ bⱼ C(i, j)`: the central correction from moving `b` left past `a`.
    #[allow(clippy::needless_range_loop)]
    fn correction(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.commutator_rank()];
        for i in 1..self.noncentral {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..i {
                if b[j].is_zero() {
                    continue;
                }
                let scale = &a[i] * &b[j];
                for (o, c) in out.iter_mut().zip(&self.comm[tri(i, j)]) {
                    *o += &scale * c;
                }
            }
        }
        out
    }

    /// Normal form of `u · v` by class-2 collection.
    pub fn multiply(&self, u: &PcWord, v: &PcWord) -> PcWord {
        let p = self.noncentral;
        let extra = self.correction(&u.exps[..p], &v.exps[..p]);
        let mut exps: Vec<BigInt> = u.exps.iter().zip(&v.exps).map(|(a, b)| a + b).collect();
        for (e, c) in exps[p..].iter_mut().zip(extra) {
            *e += c;
        }
        PcWord { exps }
    }

    pub fn inverse(&self, u: &PcWord) -> PcWord {
        self.power(u, &BigInt::from(-1))
    }

    /// `u^e` for any integer `e`: with `u = x^a z^c`,
    /// `u^e = x^{ea} z^{ec + e(e−1)/2 · Σ_{i>j} aᵢaⱼC(i,j)}`.
    pub fn power(&self, u: &PcWord, e: &BigInt) -> PcWord {
        let p = self.noncentral;
        let a = &u.exps[..p];
        let self_corr = self.correction(a, a);
        let tri_e: BigInt = e * (e - 1) / 2;
        let mut exps: Vec<BigInt> = u.exps.iter().map(|x| e * x).collect();
        for (x, c) in exps[p..].iter_mut().zip(self_corr) {
            *x += &tri_e * c;
        }
        PcWord { exps }
    }

    /// `[u, v] = u⁻¹v⁻¹uv`, by collection.
    pub fn commutator(&self, u: &PcWord, v: &PcWord) -> PcWord {
        let left = self.multiply(&self.inverse(u), &self.inverse(v));
        self.multiply(&self.multiply(&left, u), v)
    }

    /// Product `g_{i₁}^{e₁} ⋯ g_{i_r}^{e_r}` of generator powers, in any order.
    pub fn word_from_syllables(&self, syllables: &[(usize, BigInt)]) -> Result<PcWord> {
        let mut w = self.identity();
        for (i, e) in syllables {
            if *i >= self.len() {
                return Err(Error::Shape(format!("generator index {i} out of range")));
            }
            w = self.multiply(&w, &self.power(&self.generator(*i), e));
        }
        Ok(w)
    }

    pub fn format_word(&self, w: &PcWord) -> String {
        let parts: Vec<String> = self
            .names
            .iter()
            .zip(&w.exps)
            .filter(|(_, e)| !e.is_zero())
            .map(|(n, e)| {
                if e.is_one() {
                    n.clone()
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

impl fmt::Display for PcGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}", self.names.join(", "))?;
        let mut sep = " | ";
        for i in 1..self.noncentral {
            for j in 0..i {
                let c = self.commutator_value(j, i);
                if c.iter().all(Zero::is_zero) {
                    continue;
                }
                let zeros = vec![BigInt::zero(); self.noncentral];
                let value = self.format_word(&self.word_from_parts(&zeros, &c));
                write!(f, "{sep}[{}, {}] = {value}", self.names[j], self.names[i])?;
                sep = ", ";
            }
        }
        f.write_str(">")
    }
}

/// The direct power `G^m`, with generators reordered so the non-central ones
/// of every copy come first.
#[derive(Debug, Clone)]
pub struct DirectPower {
    pub group: PcGroup,
    base: PcGroup,
    copies: usize,
}

pub fn direct_power_pc(g: &PcGroup, m: usize) -> Result<DirectPower> {
    if m == 0 {
        return Err(Error::Precondition(
            "a direct power needs at least one copy".into(),
        ));
    }
    let (p, q) = (g.abelian_rank(), g.commutator_rank());
    let name = |i: usize, copy: usize| {
        if m == 1 {
            g.names[i].clone()
        } else {
            format!("{}[{}]", g.names[i], copy + 1)
        }
    };
    let mut names = Vec::with_capacity(m * g.len());
    for copy in 0..m {
        names.extend((0..p).map(|i| name(i, copy)));
    }
    for copy in 0..m {
        names.extend((p..p + q).map(|i| name(i, copy)));
    }
    let n = m * g.len();
    let mut central = vec![false; m * p];
    central.resize(n, true);
    let mut relations = Vec::new();
    for copy in 0..m {
        for i in 1..p {
            for j in 0..i {
                let mut w = vec![BigInt::zero(); n];
                for (l, c) in g.comm[tri(i, j)].iter().enumerate() {
                    w[m * p + copy * q + l] = c.clone();
                }
                relations.push((copy * p + i, copy * p + j, w));
            }
        }
    }
    let group = PcGroup::new(names, &central, &relations)?;
    Ok(DirectPower {
        group,
        base: g.clone(),
        copies: m,
    })
}

impl DirectPower {
    pub fn copies(&self) -> usize {
        self.copies
    }

    /// The element whose `i`-th coordinate is `words[i]`.
    pub fn combine(&self, words: &[PcWord]) -> PcWord {
        assert_eq!(words.len(), self.copies);
        let g = &self.base;
        let mut nc = Vec::new();
        let mut c = Vec::new();
        for w in words {
            nc.extend_from_slice(g.noncentral_part(w));
            c.extend_from_slice(g.central_part(w));
        }
        self.group.word_from_parts(&nc, &c)
    }

    /// The injection of copy `i`.
    pub fn injection(&self, i: usize) -> PcHom {
        let g = &self.base;
        let images = (0..g.len())
            .map(|s| {
                let mut words = vec![g.identity(); self.copies];
                words[i] = g.generator(s);
                self.combine(&words)
            })
            .collect();
        PcHom {
            domain: g.clone(),
            codomain: self.group.clone(),
            images,
        }
    }
}

/// Homomorphism given by the images of the domain generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcHom {
    domain: PcGroup,
    codomain: PcGroup,
    images: Vec<PcWord>,
}

/// Outcome of [`validate_hom`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomCheck {
    pub valid: bool,
    pub diagnostics: Vec<String>,
}

impl PcHom {
    /// Checks shapes only; see [`validate_hom`] and [`PcHom::new`].
    pub fn unchecked(domain: PcGroup, codomain: PcGroup, images: Vec<PcWord>) -> Result<Self> {
        if images.len() != domain.len() {
            return Err(Error::Shape(format!(
                "{} generator images for {} generators",
                images.len(),
                domain.len()
            )));
        }
        for w in &images {
            codomain.check_word(w)?;
        }
        Ok(PcHom {
            domain,
            codomain,
            images,
        })
    }

    /// Builds the map and rejects it unless every relation is preserved.
    pub fn new(domain: PcGroup, codomain: PcGroup, images: Vec<PcWord>) -> Result<Self> {
        let h = Self::unchecked(domain, codomain, images)?;
        let check = validate_hom(&h);
        if !check.valid {
            return Err(Error::NotHomomorphism(check.diagnostics.join("; ")));
        }
        Ok(h)
    }

    pub fn identity(g: &PcGroup) -> Self {
        let images = (0..g.len()).map(|i| g.generator(i)).collect();
        PcHom {
            domain: g.clone(),
            codomain: g.clone(),
            images,
        }
    }

    pub fn domain(&self) -> &PcGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &PcGroup {
        &self.codomain
    }

    pub fn images(&self) -> &[PcWord] {
        &self.images
    }

    /// `φ(g₁^{e₁} ⋯ g_n^{e_n}) = φ(g₁)^{e₁} ⋯ φ(g_n)^{e_n}`.
    pub fn apply(&self, w: &PcWord) -> PcWord {
        let c = &self.codomain;
        w.exps
            .iter()
            .zip(&self.images)
            .filter(|(e, _)| !e.is_zero())
            .fold(c.identity(), |acc, (e, img)| {
                c.multiply(&acc, &c.power(img, e))
            })
    }

    /// `φ` followed by `other`.
    pub fn then(&self, other: &PcHom) -> Result<PcHom> {
        if other.domain != self.codomain {
            return Err(Error::Shape(
                "composition of maps with mismatched groups".into(),
            ));
        }
        let images = self.images.iter().map(|w| other.apply(w)).collect();
        Ok(PcHom {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            images,
        })
    }
}

/// Checks `[φ(gᵢ), φ(gⱼ)] = φ([gᵢ, gⱼ])` for every pair of generators, which
/// covers every defining relation of the domain.
pub fn validate_hom(h: &PcHom) -> HomCheck {
    let (d, c) = (&h.domain, &h.codomain);
    let mut diagnostics = Vec::new();
    for i in 0..d.len() {
        for j in 0..i {
            let expected = if i < d.abelian_rank() {
                let value = d.commutator_value(i, j);
                h.apply(&d.word_from_parts(&vec![BigInt::zero(); d.abelian_rank()], &value))
            } else {
                c.identity()
            };
            let actual = c.commutator(&h.images[i], &h.images[j]);
            if actual != expected {
                diagnostics.push(format!(
                    "[{}, {}] maps to {} but [{}, {}] = {}",
                    d.names[i],
                    d.names[j],
                    c.format_word(&expected),
                    c.format_word(&h.images[i]),
                    c.format_word(&h.images[j]),
                    c.format_word(&actual)
                ));
            }
        }
    }
    HomCheck {
        valid: diagnostics.is_empty(),
        diagnostics,
    }
}

/// The map into `G^k` whose `i`-th coordinate is `homs[i]`.
pub fn tuple_hom(power: &DirectPower, homs: &[&PcHom]) -> Result<PcHom> {
    if homs.len() != power.copies || homs.is_empty() {
        return Err(Error::Shape(format!(
            "{} maps for a power with {} copies",
            homs.len(),
            power.copies
        )));
    }
    let domain = homs[0].domain.clone();
    if homs
        .iter()
        .any(|h| h.domain != domain || h.codomain != power.base)
    {
        return Err(Error::Shape("maps must share domain and codomain".into()));
    }
    let images = (0..domain.len())
        .map(|s| {
            let words: Vec<PcWord> = homs.iter().map(|h| h.images[s].clone()).collect();
            power.combine(&words)
        })
        .collect();
    Ok(PcHom {
        domain,
        codomain: power.group.clone(),
        images,
    })
}

/// `Σ_{i>j} (uᵢvⱼ − vᵢuⱼ) C(i, j)`: the commutator of two words read off the
/// bilinear form, without collection.
pub fn commutator_by_form(g: &PcGroup, u: &PcWord, v: &PcWord) -> Vec<BigInt> {
    let p = g.abelian_rank();
    let (a, b) = (&u.exps[..p], &v.exps[..p]);
    let ab = g.correction(a, b);
    let ba = g.correction(b, a);
    ab.into_iter().zip(ba).map(|(x, y)| x - y).collect()
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn w(xs: &[i64]) -> PcWord {
        PcWord::from_i64(xs)
    }

    #[test]
    fn beta_alpha_collects_to_alpha_beta_gamma_inverse() {
        let h = heisenberg();
        assert_eq!(h.multiply(&h.generator(1), &h.generator(0)), w(&[1, 1, -1]));
        assert_eq!(h.multiply(&w(&[2, -1, 5]), &h.identity()), w(&[2, -1, 5]));
        assert_eq!(
            h.commutator(&h.generator(0), &h.generator(1)),
            w(&[0, 0, 1])
        );
        assert_eq!(
            h.commutator(&h.generator(1), &h.generator(0)),
            w(&[0, 0, -1])
        );
    }

    #[test]
    fn inverse_and_power_agree_with_repeated_products() {
        let h = heisenberg();
        let u = w(&[2, -3, 1]);
        assert!(h.multiply(&u, &h.inverse(&u)).is_identity());
        assert!(h.multiply(&h.inverse(&u), &u).is_identity());
        let mut acc = h.identity();
        for e in 0..6 {
            assert_eq!(h.power(&u, &BigInt::from(e)), acc);
            assert_eq!(h.power(&u, &BigInt::from(-e)), h.inverse(&acc));
            acc = h.multiply(&acc, &u);
        }
    }

    #[test]
    fn hall_identity_consequences_in_g1() {
        let g = g1();
        let (b, c, e) = (g.generator(1), g.generator(4), g.generator(5));
        assert!(g.commutator(&b, &e).is_identity());
        assert!(g.commutator(&c, &e).is_identity());
        let be = g.multiply(&b, &e);
        assert!(g.multiply(&be, &g.inverse(&be)).is_identity());
        let (a, d) = (g.generator(0), g.generator(2));
        assert_eq!(g.commutator(&a, &d), e);
        assert_eq!(g.to_string(), "<a, b, d, t, c, e | [a, b] = c, [a, d] = e>");
    }

    #[test]
    fn commutator_matches_bilinear_form() {
        let g = g1();
        let u = w(&[3, -1, 2, 5, 1, -4]);
        let v = w(&[-2, 4, 1, 0, 7, 2]);
        let by_collection = g.commutator(&u, &v);
        assert!(g.noncentral_part(&by_collection).iter().all(Zero::is_zero));
        assert_eq!(
            g.central_part(&by_collection),
            &commutator_by_form(&g, &u, &v)[..]
        );
    }

    #[test]
    fn example_maps_are_homomorphisms() {
        let maps = example_maps();
        for m in &maps {
            assert!(validate_hom(m).valid);
        }
        let g = g1();
        let u = w(&[1, 2, -1, 3, 0, 1]);
        let v = w(&[-2, 1, 1, 0, 2, -1]);
        for m in &maps {
            let h = m.codomain();
            assert_eq!(
                m.apply(&g.multiply(&u, &v)),
                h.multiply(&m.apply(&u), &m.apply(&v))
            );
        }
    }

    #[test]
    fn collapsing_both_generators_is_rejected() {
        let h = heisenberg();
        let bad = PcHom::unchecked(
            h.clone(),
            h.clone(),
            vec![w(&[1, 0, 0]), w(&[1, 0, 0]), w(&[0, 0, 1])],
        )
        .unwrap();
        let check = validate_hom(&bad);
        assert!(!check.valid);
        assert!(check.diagnostics[0].contains("[beta, alpha] maps to gamma^-1"));
        assert!(PcHom::new(h.clone(), h.clone(), vec![w(&[1, 0, 0]); 3]).is_err());
    }

    #[test]
    fn presentation_errors() {
        let names = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        // central before non-central
        assert!(PcGroup::new(names(&["z", "x"]), &[true, false], &[]).is_err());
        // value with a non-central exponent
        assert!(PcGroup::new(
            names(&["x", "y", "z"]),
            &[false, false, true],
            &[(0, 1, ints(&[1, 0, 1]))]
        )
        .is_err());
        // z not spanned by commutators
        assert!(PcGroup::new(
            names(&["x", "y", "z"]),
            &[false, false, true],
            &[(0, 1, ints(&[0, 0, 2]))]
        )
        .is_err());
        assert!(PcGroup::new(names(&["x", "y", "z"]), &[false, false, true], &[]).is_err());
        // conflicting orientations
        let rels = [(0, 1, ints(&[0, 0, 1])), (1, 0, ints(&[0, 0, 1]))];
        assert!(PcGroup::new(names(&["x", "y", "z"]), &[false, false, true], &rels).is_err());
        // consistent orientations
        let rels = [(0, 1, ints(&[0, 0, 1])), (1, 0, ints(&[0, 0, -1]))];
        assert!(PcGroup::new(names(&["x", "y", "z"]), &[false, false, true], &rels).is_ok());
        assert!(PcGroup::new(names(&["x", "x"]), &[false, false], &[]).is_err());
    }

    #[test]
    fn direct_powers() {
        let h = heisenberg();
        let same = direct_power_pc(&h, 1).unwrap();
        assert_eq!(same.group, h);
        let sq = direct_power_pc(&h, 2).unwrap();
        assert_eq!(sq.group.len(), 6);
        assert_eq!(sq.group.commutator_rank(), 2);
        assert_eq!(
            sq.group.names()[..4],
            ["alpha[1]", "beta[1]", "alpha[2]", "beta[2]"].map(String::from)
        );
        for i in 0..2 {
            assert!(validate_hom(&sq.injection(i)).valid);
        }
        let x = sq.injection(0).apply(&h.generator(0));
        let y = sq.injection(1).apply(&h.generator(1));
        assert!(sq.group.commutator(&x, &y).is_identity());
        let ab = direct_power_pc(&PcGroup::abelian(vec!["x".into()]).unwrap(), 3).unwrap();
        assert!(ab.group.is_abelian());
        assert_eq!(ab.group.len(), 3);
        assert!(direct_power_pc(&h, 0).is_err());
    }
}
