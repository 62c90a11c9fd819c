//! Reduction along `1 → [G,G] → G → G^ab → 1`.
//!
//! For `φ, ψ : G₁ → G₂` write `φ′, ψ′` for the restrictions to the commutator
//! subgroups and `φ̄, ψ̄` for the induced maps of abelianizations. When
//! `R(φ′, ψ′)` is finite,
//!
//! ```text
//! R(φ, ψ) · |Im δ| = R(φ′, ψ′) · R(φ̄, ψ̄)
//! ```
//!
//! where `δ : ker(ψ̄ − φ̄) → coker(ψ′ − φ′)` sends `θ̄` to the class of
//! `ψ(θ)φ(θ)⁻¹` for any lift `θ`.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;

use super::{direct_power_pc, tuple_hom, validate_hom, PcGroup, PcHom, PcWord};
use crate::linalg::{self, cokernel_elements, kernel_basis, lattice_index, IntMatrix, Lattice};
use crate::{Cardinal, Error, Result};

/// Annotation attached to every nilmanifold report.
pub const NILMANIFOLD_NOTE: &str =
    "nilmanifold target: for a nilmanifold domain of dimension at least (k-1) dim N, \
     N(f1,...,fk) is either 0 or equal to R(f1,...,fk)";

/// Matrices of the restricted and abelianized maps. Columns are indexed by
/// domain generators, rows by codomain generators, both in presentation order
/// (non-central generators for the abelianizations, central ones for the
/// commutator subgroups).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralExtensionData {
    pub a1_rank: usize,
    pub a2_rank: usize,
    pub b1_rank: usize,
    pub b2_rank: usize,
    pub phi_prime: IntMatrix,
    pub psi_prime: IntMatrix,
    pub phi_bar: IntMatrix,
    pub psi_bar: IntMatrix,
}

impl CentralExtensionData {
    /// `ψ̄ − φ̄`.
    pub fn bar_difference(&self) -> IntMatrix {
        self.psi_bar.checked_sub(&self.phi_bar).expect("same shape")
    }

    /// `ψ′ − φ′`.
    pub fn prime_difference(&self) -> IntMatrix {
        self.psi_prime
            .checked_sub(&self.phi_prime)
            .expect("same shape")
    }
}

fn check_pair(phi: &PcHom, psi: &PcHom) -> Result<()> {
    if phi.domain() != psi.domain() || phi.codomain() != psi.codomain() {
        return Err(Error::Shape(
            "both maps must share domain and codomain".into(),
        ));
    }
    for (name, h) in [("phi", phi), ("psi", psi)] {
        let check = validate_hom(h);
        if !check.valid {
            return Err(Error::NotHomomorphism(format!(
                "{name}: {}",
                check.diagnostics.join("; ")
            )));
        }
    }
    Ok(())
}

fn split_matrices(h: &PcHom) -> Result<(IntMatrix, IntMatrix)> {
    let (d, c) = (h.domain(), h.codomain());
    let (p1, p2) = (d.abelian_rank(), c.abelian_rank());
    let bar_cols: Vec<Vec<BigInt>> = h.images()[..p1]
        .iter()
        .map(|w| c.noncentral_part(w).to_vec())
        .collect();
    let mut prime_cols = Vec::new();
    for (s, w) in h.images()[p1..].iter().enumerate() {
        if c.noncentral_part(w).iter().any(|e| !e.is_zero()) {
            return Err(Error::Consistency(format!(
                "image of the commutator generator {} is {}, outside the commutator subgroup",
                d.names()[p1 + s],
                c.format_word(w)
            )));
        }
        prime_cols.push(c.central_part(w).to_vec());
    }
    Ok((
        IntMatrix::from_columns(p2, &bar_cols)?,
        IntMatrix::from_columns(c.commutator_rank(), &prime_cols)?,
    ))
}

pub fn central_extension_data(phi: &PcHom, psi: &PcHom) -> Result<CentralExtensionData> {
    check_pair(phi, psi)?;
    let (phi_bar, phi_prime) = split_matrices(phi)?;
    let (psi_bar, psi_prime) = split_matrices(psi)?;
    let (d, c) = (phi.domain(), phi.codomain());
    Ok(CentralExtensionData {
        a1_rank: d.commutator_rank(),
        a2_rank: c.commutator_rank(),
        b1_rank: d.abelian_rank(),
        b2_rank: c.abelian_rank(),
        phi_prime,
        psi_prime,
        phi_bar,
        psi_bar,
    })
}

fn delta_of_lift(phi: &PcHom, psi: &PcHom, theta: &PcWord) -> Result<Vec<BigInt>> {
    let c = phi.codomain();
    let w = c.multiply(&psi.apply(theta), &c.inverse(&phi.apply(theta)));
    if c.noncentral_part(&w).iter().any(|e| !e.is_zero()) {
        return Err(Error::Consistency(format!(
            "psi(theta) phi(theta)^-1 = {} is not in the commutator subgroup",
            c.format_word(&w)
        )));
    }
    Ok(c.central_part(&w).to_vec())
}

/// `δ` on a basis of `ker(ψ̄ − φ̄)`, each `θ̄` lifted to the normal form with
/// zero central exponents. Vectors are over the codomain's central generators.
pub fn delta_images(
    phi: &PcHom,
    psi: &PcHom,
    data: &CentralExtensionData,
) -> Result<Vec<Vec<BigInt>>> {
    let d = phi.domain();
    let zeros = vec![BigInt::zero(); d.commutator_rank()];
    kernel_basis(&data.bar_difference())
        .iter()
        .map(|theta| delta_of_lift(phi, psi, &d.word_from_parts(theta, &zeros)))
        .collect()
}

/// `|Im δ|`, the order of the subgroup of `coker(ψ′ − φ′)` generated by the
/// δ-images.
pub fn delta_image_order(
    phi: &PcHom,
    psi: &PcHom,
    data: &CentralExtensionData,
) -> Result<Cardinal> {
    let diff = data.prime_difference();
    if !linalg::cokernel_order(&diff).is_finite() {
        return Err(Error::Precondition(
            "|Im delta| needs a finite R(phi', psi')".into(),
        ));
    }
    let base = diff.columns();
    let mut with_deltas = base.clone();
    with_deltas.extend(delta_images(phi, psi, data)?);
    if data.a2_rank == 0 {
        return Ok(Cardinal::one());
    }
    lattice_index(&base, &with_deltas)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NilpotentOutcome {
    Value(Cardinal),
    /// `R(φ′, ψ′)` is infinite, so the central-extension formula does not
    /// apply; the string says which hypothesis failed.
    UnsupportedReduction(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotentReport {
    pub outcome: NilpotentOutcome,
    /// `R(φ̄, ψ̄)`.
    pub r_bar: Cardinal,
    /// `R(φ′, ψ′)`.
    pub r_prime: Cardinal,
    /// Present whenever the formula was applied.
    pub im_delta: Option<Cardinal>,
    /// Rank of `Coin(φ̄, ψ̄) = ker(ψ̄ − φ̄)`.
    pub coin_bar_rank: usize,
    pub data: CentralExtensionData,
    pub trace: Vec<String>,
}

impl NilpotentReport {
    pub fn value(&self) -> Option<&Cardinal> {
        match &self.outcome {
            NilpotentOutcome::Value(v) => Some(v),
            NilpotentOutcome::UnsupportedReduction(_) => None,
        }
    }
}

/// `R(φ, ψ)` for maps between class-2 groups.
pub fn reid_nilpotent(phi: &PcHom, psi: &PcHom) -> Result<NilpotentReport> {
    let data = central_extension_data(phi, psi)?;
    let bar_diff = data.bar_difference();
    let prime_diff = data.prime_difference();
    let r_bar = linalg::cokernel_order(&bar_diff);
    let r_prime = linalg::cokernel_order(&prime_diff);
    let coin_bar_rank = data.b1_rank - linalg::rank(&bar_diff);
    let prime_rank = linalg::rank(&prime_diff);
    let coin_prime_rank = data.a1_rank - prime_rank;

    let mut trace = vec![
        format!("phi_bar = {}, psi_bar = {}", data.phi_bar, data.psi_bar),
        format!("phi' = {}, psi' = {}", data.phi_prime, data.psi_prime),
        format!("R_bar = #coker(psi_bar - phi_bar) = {r_bar}"),
        format!("R' = #coker(psi' - phi') = {r_prime}"),
        format!(
            "rk Im(psi' - phi') = {prime_rank}, rk A2 = {}",
            data.a2_rank
        ),
        format!(
            "rk Coin(phi', psi') = {coin_prime_rank}, rk A1 - rk A2 = {}",
            data.a1_rank as i64 - data.a2_rank as i64
        ),
        format!("rk Coin(phi_bar, psi_bar) = {coin_bar_rank}"),
    ];
    let report = |outcome, im_delta, mut trace: Vec<String>| {
        trace.push(NILMANIFOLD_NOTE.to_string());
        Ok(NilpotentReport {
            outcome,
            r_bar: r_bar.clone(),
            r_prime: r_prime.clone(),
            im_delta,
            coin_bar_rank,
            data: data.clone(),
            trace,
        })
    };

    if !r_bar.is_finite() {
        trace.push("R_bar is infinite, hence R = infinite".into());
        return report(NilpotentOutcome::Value(Cardinal::Infinite), None, trace);
    }
    if prime_rank < data.a2_rank {
        let why = format!(
            "R(phi', psi') is infinite (rk Im(psi' - phi') = {prime_rank} < rk A2 = {}); \
             the route through a quotient of the abelianization is not implemented",
            data.a2_rank
        );
        trace.push(format!("unsupported-reduction: {why}"));
        return report(NilpotentOutcome::UnsupportedReduction(why), None, trace);
    }
    if coin_prime_rank + data.a2_rank != data.a1_rank {
        let why = format!("rk Coin(phi', psi') = {coin_prime_rank} differs from rk A1 - rk A2");
        trace.push(format!("unsupported-reduction: {why}"));
        return report(NilpotentOutcome::UnsupportedReduction(why), None, trace);
    }

    let im_delta = delta_image_order(phi, psi, &data)?;
    let (Cardinal::Finite(rp), Cardinal::Finite(rb), Cardinal::Finite(id)) =
        (&r_prime, &r_bar, &im_delta)
    else {
        return Err(Error::Consistency(
            "finite cokernels produced an infinite quantity".into(),
        ));
    };
    let numerator: BigUint = rp * rb;
    let (value, rem) = numerator.div_rem(id);
    if !rem.is_zero() || &value * id != numerator {
        return Err(Error::Consistency(format!(
            "R' * R_bar = {numerator} is not divisible by |Im delta| = {id}"
        )));
    }
    trace.push(format!("|Im delta| = {im_delta}"));
    trace.push(format!(
        "R = R' * R_bar / |Im delta| = {rp} * {rb} / {id} = {value}"
    ));
    report(
        NilpotentOutcome::Value(Cardinal::Finite(value)),
        Some(im_delta),
        trace,
    )
}

/// `R(φ₁, …, φ_k)` as `R((φ₁, …, φ₁), (φ₂, …, φ_k))` into the `(k−1)`-th
/// direct power of the codomain.
pub fn reid_nilpotent_multi(homs: &[PcHom]) -> Result<NilpotentReport> {
    if homs.len() < 2 {
        return Err(Error::TooFewHomomorphisms(homs.len()));
    }
    let (f, g) = diagonal_pair(homs)?;
    let mut report = reid_nilpotent(&f, &g)?;
    report.trace.insert(
        0,
        format!(
            "F = (phi_1, ..., phi_1), G = (phi_2, ..., phi_{}) into the {}-fold power of the codomain",
            homs.len(),
            homs.len() - 1
        ),
    );
    Ok(report)
}

/// The pair `F = (φ₁, …, φ₁)`, `G = (φ₂, …, φ_k)`.
pub fn diagonal_pair(homs: &[PcHom]) -> Result<(PcHom, PcHom)> {
    let codomain: &PcGroup = homs[0].codomain();
    let power = direct_power_pc(codomain, homs.len() - 1)?;
    let firsts: Vec<&PcHom> = vec![&homs[0]; homs.len() - 1];
    let rest: Vec<&PcHom> = homs[1..].iter().collect();
    Ok((tuple_hom(&power, &firsts)?, tuple_hom(&power, &rest)?))
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// `R(φ, ψ)` as `#î₂(𝓡(φ′, ψ′)) · R(φ̄, ψ̄)`, by listing `coker(ψ′ − φ′)`
/// and merging classes that become equal in `𝓡(φ, ψ)`.
///
/// Two central classes `σ, σ′` merge when `σ′σ⁻¹ = ψ(z)φ(z)⁻¹` for some
/// `z`; such `z` project into `ker(ψ̄ − φ̄)`. Lifts here are built by
/// multiplying generator powers in reverse order, a different section from
/// the one used by [`delta_images`].
pub fn recount_by_identification(phi: &PcHom, psi: &PcHom, cap: u64) -> Result<Cardinal> {
    let data = central_extension_data(phi, psi)?;
    let r_bar = linalg::cokernel_order(&data.bar_difference());
    if !r_bar.is_finite() {
        return Ok(Cardinal::Infinite);
    }
    let diff = data.prime_difference();
    let Some(elements) = cokernel_elements(&diff, cap)? else {
        return Err(Error::Precondition(
            "the recount needs a finite R(phi', psi')".into(),
        ));
    };
    let d = phi.domain();
    let mut shifts = Vec::new();
    for theta in kernel_basis(&data.bar_difference()) {
        let syllables: Vec<(usize, BigInt)> = theta.into_iter().enumerate().rev().collect();
        let lift = d.word_from_syllables(&syllables)?;
        shifts.push(delta_of_lift(phi, psi, &lift)?);
    }
    let lattice = Lattice::column_lattice(&diff);
    let index: HashMap<&Vec<BigInt>, usize> =
        elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut parent: Vec<usize> = (0..elements.len()).collect();
    for (i, x) in elements.iter().enumerate() {
        for s in &shifts {
            let moved: Vec<BigInt> = x.iter().zip(s).map(|(a, b)| a + b).collect();
            let j = *index.get(&lattice.reduce(&moved)).ok_or_else(|| {
                Error::Consistency("shifted class is not a listed representative".into())
            })?;
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a.max(b)] = a.min(b);
        }
    }
    let orbits = (0..elements.len())
        .filter(|&i| find(&mut parent, i) == i)
        .count();
    Ok(Cardinal::from(orbits as u64) * r_bar)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::abelian::{reid_pair, AbelianHom};
    use itertools::Itertools;

    fn w(xs: &[i64]) -> PcWord {
        PcWord::from_i64(xs)
    }

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.iter().copied())).unwrap()
    }

    fn heisenberg_pair() -> (PcHom, PcHom) {
        let h = heisenberg();
        let phi = PcHom::new(
            h.clone(),
            h.clone(),
            vec![w(&[3, 0, 0]), w(&[0, -1, 0]), w(&[0, 0, -3])],
        )
        .unwrap();
        (phi, PcHom::identity(&h))
    }

    #[test]
    fn worked_example_matrices() {
        let [p1, p2, p3] = example_maps();
        let (f, g) = diagonal_pair(&[p1, p2, p3]).unwrap();
        let data = central_extension_data(&f, &g).unwrap();
        assert_eq!(
            (data.a1_rank, data.b1_rank, data.a2_rank, data.b2_rank),
            (2, 4, 2, 4)
        );
        assert_eq!(
            data.phi_bar,
            m(&[&[2, 0, 0, 0], &[0, 1, 0, 0], &[2, 0, 0, 0], &[0, 1, 0, 0]])
        );
        assert_eq!(
            data.psi_bar,
            m(&[&[1, 0, 0, 1], &[0, 0, 0, 0], &[0, 1, 1, 0], &[1, 0, 0, 0]])
        );
        assert_eq!(data.phi_prime, m(&[&[2, 0], &[2, 0]]));
        assert_eq!(data.psi_prime, m(&[&[0, 0], &[-1, -1]]));
        assert_eq!(
            data.phi_bar.checked_sub(&data.psi_bar).unwrap(),
            m(&[
                &[1, 0, 0, -1],
                &[0, 1, 0, 0],
                &[2, -1, -1, 0],
                &[-1, 1, 0, 0]
            ])
        );
        assert_eq!(
            data.phi_prime.checked_sub(&data.psi_prime).unwrap(),
            m(&[&[2, 0], &[3, 1]])
        );
    }

    #[test]
    fn worked_example_value() {
        let maps = example_maps();
        let r = reid_nilpotent_multi(&maps).unwrap();
        assert_eq!(r.r_bar, Cardinal::from(1));
        assert_eq!(r.r_prime, Cardinal::from(2));
        assert_eq!(r.im_delta, Some(Cardinal::from(1)));
        assert_eq!(r.value(), Some(&Cardinal::from(2)));
        assert_eq!(r.coin_bar_rank, 0);
        let (f, g) = diagonal_pair(&maps).unwrap();
        assert_eq!(
            recount_by_identification(&f, &g, 1000).unwrap(),
            Cardinal::from(2)
        );
    }

    #[test]
    fn worked_example_is_order_independent() {
        let maps = example_maps();
        for order in (0..3).permutations(3) {
            let homs: Vec<PcHom> = order.iter().map(|&i| maps[i].clone()).collect();
            assert_eq!(
                reid_nilpotent_multi(&homs).unwrap().value(),
                Some(&Cardinal::from(2)),
                "{order:?}"
            );
        }
    }

    #[test]
    fn heisenberg_pair_gives_sixteen() {
        let (phi, psi) = heisenberg_pair();
        let r = reid_nilpotent(&phi, &psi).unwrap();
        assert_eq!(r.r_bar, Cardinal::from(4));
        assert_eq!(r.r_prime, Cardinal::from(4));
        assert_eq!(r.im_delta, Some(Cardinal::from(1)));
        assert_eq!(r.value(), Some(&Cardinal::from(16)));
        assert_eq!(
            recount_by_identification(&phi, &psi, 1000).unwrap(),
            Cardinal::from(16)
        );
    }

    #[test]
    fn singular_abelianized_difference_is_infinite() {
        // ψ̄ − φ̄ = [[0, 0], [1, 0]]
        let h = heisenberg();
        let psi = PcHom::new(
            h.clone(),
            h.clone(),
            vec![w(&[1, 1, 0]), w(&[0, 1, 0]), w(&[0, 0, 1])],
        )
        .unwrap();
        let r = reid_nilpotent(&PcHom::identity(&h), &psi).unwrap();
        assert_eq!(r.value(), Some(&Cardinal::Infinite));
        assert_eq!(r.coin_bar_rank, 1);
    }

    /// `⟨α, β, s, γ | [α, β] = γ⟩`: the Heisenberg group times `ℤ`.
    fn heisenberg_times_z() -> PcGroup {
        let names = ["alpha", "beta", "s", "gamma"].map(String::from).to_vec();
        PcGroup::new(
            names,
            &[false, false, false, true],
            &[(0, 1, ints(&[0, 0, 0, 1]))],
        )
        .unwrap()
    }

    #[test]
    fn infinite_prime_part_is_unsupported() {
        let (g, h) = (heisenberg_times_z(), heisenberg());
        let phi = PcHom::new(
            g.clone(),
            h.clone(),
            vec![w(&[1, 0, 0]), w(&[0, 1, 0]), w(&[0, 0, 0]), w(&[0, 0, 1])],
        )
        .unwrap();
        // s is central, so it cannot go to α
        assert!(PcHom::new(
            g.clone(),
            h.clone(),
            vec![w(&[1, 0, 0]), w(&[0, 1, 0]), w(&[1, 0, 0]), w(&[0, 0, 1])]
        )
        .is_err());
        let psi = PcHom::new(
            g.clone(),
            h.clone(),
            vec![w(&[-1, 0, 0]), w(&[0, -1, 0]), w(&[0, 0, 2]), w(&[0, 0, 1])],
        )
        .unwrap();
        let r = reid_nilpotent(&phi, &psi).unwrap();
        assert_eq!(r.r_bar, Cardinal::from(4));
        assert_eq!(r.coin_bar_rank, 1);
        // ψ′ − φ′ = [0]
        assert_eq!(r.r_prime, Cardinal::Infinite);
        assert!(matches!(
            r.outcome,
            NilpotentOutcome::UnsupportedReduction(_)
        ));
        assert!(r.value().is_none());
    }

    #[test]
    fn delta_images_are_counted() {
        let (g, h) = (heisenberg_times_z(), heisenberg());
        let phi = PcHom::new(
            g.clone(),
            h.clone(),
            vec![w(&[1, 0, 0]), w(&[0, 1, 0]), w(&[0, 0, 1]), w(&[0, 0, 1])],
        )
        .unwrap();
        let psi = PcHom::new(
            g.clone(),
            h.clone(),
            vec![w(&[3, 0, 0]), w(&[0, -1, 0]), w(&[0, 0, 0]), w(&[0, 0, -3])],
        )
        .unwrap();
        let data = central_extension_data(&phi, &psi).unwrap();
        // ker(ψ̄ − φ̄) is spanned by s̄, and δ(s̄) = ψ(s)φ(s)⁻¹ = γ⁻¹
        assert_eq!(delta_images(&phi, &psi, &data).unwrap(), vec![ints(&[-1])]);
        let r = reid_nilpotent(&phi, &psi).unwrap();
        assert_eq!(r.r_bar, Cardinal::from(4));
        assert_eq!(r.r_prime, Cardinal::from(4));
        assert_eq!(r.im_delta, Some(Cardinal::from(4)));
        assert_eq!(r.value(), Some(&Cardinal::from(4)));
        assert_eq!(
            recount_by_identification(&phi, &psi, 1000).unwrap(),
            Cardinal::from(4)
        );
    }

    #[test]
    fn equal_maps_are_infinite() {
        let [p1, ..] = example_maps();
        let r = reid_nilpotent_multi(&[p1.clone(), p1.clone(), p1]).unwrap();
        assert_eq!(r.value(), Some(&Cardinal::Infinite));
        let h = heisenberg();
        let id = PcHom::identity(&h);
        assert_eq!(
            reid_nilpotent(&id, &id).unwrap().value(),
            Some(&Cardinal::Infinite)
        );
    }

    #[test]
    fn two_maps_match_the_pair_computation() {
        let [p1, p2, _] = example_maps();
        let multi = reid_nilpotent_multi(&[p1.clone(), p2.clone()]).unwrap();
        let pair = reid_nilpotent(&p1, &p2).unwrap();
        assert_eq!(multi.outcome, pair.outcome);
        assert_eq!(multi.data, pair.data);
    }

    #[test]
    fn abelian_groups_agree_with_torus_engine() {
        let z2 = PcGroup::abelian(vec!["x".into(), "y".into()]).unwrap();
        let phi = PcHom::new(z2.clone(), z2.clone(), vec![w(&[2, 1]), w(&[4, 6])]).unwrap();
        let psi = PcHom::new(z2.clone(), z2.clone(), vec![w(&[0, 0]), w(&[1, 0])]).unwrap();
        let data = central_extension_data(&phi, &psi).unwrap();
        assert_eq!(data.phi_prime.shape(), (0, 0));
        let r = reid_nilpotent(&phi, &psi).unwrap();
        let expected = reid_pair(
            &AbelianHom::new(data.phi_bar.clone()),
            &AbelianHom::new(data.psi_bar.clone()),
        )
        .unwrap();
        assert_eq!(r.value(), Some(&expected));
        assert_eq!(expected, Cardinal::from(9));
    }

    #[test]
    fn broken_maps_are_rejected() {
        let h = heisenberg();
        let bad = PcHom::unchecked(
            h.clone(),
            h.clone(),
            vec![w(&[1, 0, 0]), w(&[1, 0, 0]), w(&[0, 0, 1])],
        )
        .unwrap();
        assert!(matches!(
            reid_nilpotent(&bad, &PcHom::identity(&h)),
            Err(Error::NotHomomorphism(_))
        ));
        assert!(reid_nilpotent_multi(&[PcHom::identity(&h)]).is_err());
    }

    #[test]
    fn extension_formula_holds_on_random_endomorphisms() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let h = heisenberg();
        let mut checked = 0;
        for _ in 0..200 {
            let mut endo = || {
                let (a, b, c, d) = (
                    rng.gen_range(-4..=4),
                    rng.gen_range(-4..=4),
                    rng.gen_range(-4..=4),
                    rng.gen_range(-4..=4),
                );
                let (x, y) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
                PcHom::new(
                    h.clone(),
                    h.clone(),
                    vec![w(&[a, c, x]), w(&[b, d, y]), w(&[0, 0, a * d - b * c])],
                )
                .unwrap()
            };
            let (phi, psi) = (endo(), endo());
            let r = reid_nilpotent(&phi, &psi).unwrap();
            if let (Some(Cardinal::Finite(v)), Some(Cardinal::Finite(id))) =
                (r.value(), &r.im_delta)
            {
                assert_eq!(
                    Cardinal::Finite(v * id),
                    r.r_prime.clone() * r.r_bar.clone()
                );
                assert_eq!(
                    recount_by_identification(&phi, &psi, 100_000).unwrap(),
                    Cardinal::Finite(v.clone())
                );
                checked += 1;
            }
        }
        assert!(checked > 50);
    }
}
