//! Maps into tori: homomorphisms `ℤ^m → ℤ^n` given by integer matrices.
//!
//! For an abelian target the Reidemeister set of a pair is the cokernel of the
//! difference, and the multi-map set `R(φ₁, …, φ_k)` is the Reidemeister set
//! of the pair `(φ₁, …, φ₁)`, `(φ₂, …, φ_k)` into `ℤ^{(k−1)n}`. Its size is
//! the cokernel order of the stacked difference matrix whose `j`-th block is
//! `φ_{j+1} − φ₁`.
//!
//! Differences are always taken as `ψ − φ`; cardinalities do not depend on the
//! sign.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;

use crate::linalg::{self, cokernel_elements, lattice_index, IntMatrix, Lattice};
use crate::{Cardinal, Error, Result};

/// Annotation attached to every torus report: the tool reports `R` and never
/// decides which branch of the dichotomy holds.
pub const JIANG_NOTE: &str =
    "torus target is of Jiang type: N(f1,...,fk) is either 0 or equal to R(f1,...,fk)";

/// Homomorphism `ℤ^m → ℤ^n`; column `j` is the image of the `j`-th generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianHom {
    matrix: IntMatrix,
}

impl AbelianHom {
    pub fn new(matrix: IntMatrix) -> Self {
        AbelianHom { matrix }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn target_rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn domain_rank(&self) -> usize {
        self.matrix.cols()
    }
}

impl From<IntMatrix> for AbelianHom {
    fn from(matrix: IntMatrix) -> Self {
        AbelianHom::new(matrix)
    }
}

/// An ordered tuple `(φ₁, …, φ_k)`, `k ≥ 2`, of equally shaped homomorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianSystem {
    homs: Vec<AbelianHom>,
}

impl AbelianSystem {
    pub fn new(homs: Vec<AbelianHom>) -> Result<Self> {
        if homs.len() < 2 {
            return Err(Error::TooFewHomomorphisms(homs.len()));
        }
        let shape = homs[0].matrix.shape();
        if let Some((i, h)) = homs
            .iter()
            .enumerate()
            .find(|(_, h)| h.matrix.shape() != shape)
        {
            return Err(Error::Shape(format!(
                "homomorphism {} is {}x{}, homomorphism 1 is {}x{}",
                i + 1,
                h.matrix.rows(),
                h.matrix.cols(),
                shape.0,
                shape.1
            )));
        }
        Ok(AbelianSystem { homs })
    }

    pub fn from_matrices(matrices: Vec<IntMatrix>) -> Result<Self> {
        Self::new(matrices.into_iter().map(AbelianHom::new).collect())
    }

    pub fn homs(&self) -> &[AbelianHom] {
        &self.homs
    }

    pub fn k(&self) -> usize {
        self.homs.len()
    }

    pub fn target_rank(&self) -> usize {
        self.homs[0].target_rank()
    }

    pub fn domain_rank(&self) -> usize {
        self.homs[0].domain_rank()
    }

    /// Subsystem keeping the homomorphisms at the given (0-based) positions.
    pub fn select(&self, positions: &[usize]) -> Result<Self> {
        Self::new(positions.iter().map(|&i| self.homs[i].clone()).collect())
    }

    /// Precomposes every map with the projection `ℤ^{m+extra} → ℤ^m`, i.e.
    /// appends `extra` zero columns.
    pub fn pad_domain(&self, extra: usize) -> Self {
        let pad = IntMatrix::zeros(self.target_rank(), extra);
        AbelianSystem {
            homs: self
                .homs
                .iter()
                .map(|h| AbelianHom::new(h.matrix.hstack(&pad).expect("same row count")))
                .collect(),
        }
    }

    /// The `k−1` difference blocks `φ_{j} − φ₁`, `j = 2..k`.
    pub fn difference_blocks(&self) -> Vec<IntMatrix> {
        let base = &self.homs[0].matrix;
        self.homs[1..]
            .iter()
            .map(|h| h.matrix.checked_sub(base).expect("uniform shapes"))
            .collect()
    }
}

/// Outcome of a torus computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReidemeisterReport {
    pub value: Cardinal,
    /// `R(φ₁, φ_j)` for `j = 2..k`.
    pub pairwise: Vec<Cardinal>,
    /// `|ker Ψ|`, present when `value` is finite.
    pub ker_psi_order: Option<Cardinal>,
    pub trace: Vec<String>,
}

/// The `(k−1)n × m` matrix whose `j`-th `n`-row block is `φ_{j+1} − φ₁`.
pub fn stacked_difference(system: &AbelianSystem) -> IntMatrix {
    system
        .difference_blocks()
        .into_iter()
        .reduce(|acc, b| acc.vstack(&b).expect("uniform shapes"))
        .expect("a system has at least two homomorphisms")
}

/// `R(φ, ψ) = #coker(ψ − φ)`.
pub fn reid_pair(phi: &AbelianHom, psi: &AbelianHom) -> Result<Cardinal> {
    let diff = psi.matrix.checked_sub(&phi.matrix)?;
    Ok(linalg::cokernel_order(&diff))
}

pub fn reid_multi(system: &AbelianSystem) -> ReidemeisterReport {
    let stacked = stacked_difference(system);
    let snf = linalg::smith_normal_form(&stacked);
    let value = linalg::cokernel_order(&stacked);
    let mut trace = vec![
        format!(
            "stacked difference ({}x{}) = {}",
            stacked.rows(),
            stacked.cols(),
            stacked
        ),
        format!("smith divisors = {}", join(&snf.divisors)),
        format!("R(phi_1..phi_{}) = #coker = {}", system.k(), value),
    ];
    let pairwise: Vec<Cardinal> = system.homs[1..]
        .iter()
        .map(|h| reid_pair(&system.homs[0], h).expect("uniform shapes"))
        .collect();
    for (j, r) in pairwise.iter().enumerate() {
        trace.push(format!("R(phi_1, phi_{}) = {}", j + 2, r));
    }
    let ker_psi = if value.is_finite() {
        let order = ker_psi_order(system).expect("finite value satisfies the precondition");
        trace.push(format!("|ker Psi| = {order}"));
        Some(order)
    } else {
        None
    };
    trace.push(JIANG_NOTE.to_string());
    ReidemeisterReport {
        value,
        pairwise,
        ker_psi_order: ker_psi,
        trace,
    }
}

fn embed_block(block: &[BigInt], j: usize, blocks: usize) -> Vec<BigInt> {
    let n = block.len();
    let mut v = vec![BigInt::zero(); n * blocks];
    v[j * n..(j + 1) * n].clone_from_slice(block);
    v
}

/// Order of the kernel of `Ψ : 𝓡(φ₁, …, φ_k) → ∏ 𝓡(φ₁, φ_j)`.
///
/// Computed as the lattice index of the image of the stacked difference
/// inside `Im(φ₂ − φ₁) × ⋯ × Im(φ_k − φ₁)`, without reference to any
/// pairwise Reidemeister number.
pub fn ker_psi_order(system: &AbelianSystem) -> Result<Cardinal> {
    let stacked = stacked_difference(system);
    if !linalg::cokernel_order(&stacked).is_finite() {
        return Err(Error::Precondition(
            "ker Psi is only computed when R(phi_1, ..., phi_k) is finite".into(),
        ));
    }
    let blocks = system.difference_blocks();
    let count = blocks.len();
    let product_generators: Vec<Vec<BigInt>> = blocks
        .iter()
        .enumerate()
        .flat_map(|(j, b)| {
            b.columns()
                .into_iter()
                .map(move |c| embed_block(&c, j, count))
        })
        .collect();
    lattice_index(&stacked.columns(), &product_generators)
}

/// `|ker Ψ|` by brute force: list every class of the cokernel of the stacked
/// difference and count those whose blocks all vanish in the pairwise
/// cokernels.
pub fn ker_psi_order_by_enumeration(system: &AbelianSystem, cap: u64) -> Result<Cardinal> {
    let stacked = stacked_difference(system);
    let Some(elements) = cokernel_elements(&stacked, cap)? else {
        return Err(Error::Precondition(
            "ker Psi is only computed when R(phi_1, ..., phi_k) is finite".into(),
        ));
    };
    let n = system.target_rank();
    let pair_lattices: Vec<Lattice> = system
        .difference_blocks()
        .iter()
        .map(Lattice::column_lattice)
        .collect();
    let in_kernel = elements
        .iter()
        .filter(|x| {
            pair_lattices
                .iter()
                .enumerate()
                .all(|(j, l)| l.reduce(&x[j * n..(j + 1) * n]).iter().all(Zero::is_zero))
        })
        .count();
    Ok(Cardinal::from(in_kernel as u64))
}

/// Reorders the maps: position `i` of the result holds `φ_{σ(i)}`.
/// `sigma` is 0-based.
pub fn permute_system(system: &AbelianSystem, sigma: &[usize]) -> Result<AbelianSystem> {
    if !is_permutation(sigma, system.k()) {
        return Err(Error::InvalidPermutation(sigma.to_vec()));
    }
    AbelianSystem::new(sigma.iter().map(|&i| system.homs[i].clone()).collect())
}

pub(crate) fn is_permutation(sigma: &[usize], k: usize) -> bool {
    let mut seen = vec![false; k];
    sigma.len() == k
        && sigma
            .iter()
            .all(|&i| i < k && !std::mem::replace(&mut seen[i], true))
}

/// Product law for a finite multi-map number: the pairwise product divides
/// it and the quotient is `|ker Ψ|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductLaw {
    pub all_pairwise_finite: bool,
    pub product: Cardinal,
    pub divides: bool,
    pub quotient: Option<BigUint>,
    pub ker_psi_order: Cardinal,
    pub quotient_matches_kernel: bool,
}

/// Product over the sub-systems `(φ₁, …, φ̂_i, …, φ_k)`, `i = 2..k`, which in
/// general does *not* divide the full number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeaveOneOut {
    /// Entry `i` is the number with `φ_{i+2}` omitted.
    pub values: Vec<Cardinal>,
    pub product: Cardinal,
    pub divides: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisibilityReport {
    pub multi: Cardinal,
    pub pairwise: Vec<Cardinal>,
    /// `None` when the multi-map number is infinite (nothing to divide).
    pub product_law: Option<ProductLaw>,
    /// Only for `k ≥ 4`; for `k = 3` the sub-systems are the pairs.
    pub leave_one_out: Option<LeaveOneOut>,
}

pub fn divisibility_report(system: &AbelianSystem) -> DivisibilityReport {
    let report = reid_multi(system);
    let product_law = report.ker_psi_order.as_ref().map(|ker| {
        let product: Cardinal = report.pairwise.iter().cloned().product();
        let (divides, quotient) = match (&product, &report.value) {
            (Cardinal::Finite(p), Cardinal::Finite(v)) if !p.is_zero() => {
                let (q, r) = v.div_rem(p);
                (r.is_zero(), r.is_zero().then_some(q))
            }
            _ => (false, None),
        };
        let quotient_matches_kernel = quotient
            .as_ref()
            .is_some_and(|q| Cardinal::Finite(q.clone()) == *ker);
        ProductLaw {
            all_pairwise_finite: report.pairwise.iter().all(Cardinal::is_finite),
            product,
            divides,
            quotient,
            ker_psi_order: ker.clone(),
            quotient_matches_kernel,
        }
    });
    let leave_one_out = (system.k() >= 4).then(|| {
        let values: Vec<Cardinal> = (1..system.k())
            .map(|omit| {
                let keep: Vec<usize> = (0..system.k()).filter(|&i| i != omit).collect();
                reid_multi(&system.select(&keep).expect("k-1 >= 2 maps")).value
            })
            .collect();
        let product: Cardinal = values.iter().cloned().product();
        let divides = product.divides(&report.value);
        LeaveOneOut {
            values,
            product,
            divides,
        }
    });
    DivisibilityReport {
        multi: report.value,
        pairwise: report.pairwise,
        product_law,
        leave_one_out,
    }
}

fn join(xs: &[BigInt]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(xs: &[i64]) -> AbelianHom {
        AbelianHom::new(IntMatrix::from_rows([xs.iter().copied()]).unwrap())
    }

    fn example2() -> AbelianSystem {
        AbelianSystem::new(vec![
            row(&[1, 1, 1]),
            row(&[3, 5, 2]),
            row(&[3, 7, 3]),
            row(&[2, 1, 3]),
        ])
        .unwrap()
    }

    #[test]
    fn stacked_matrix_of_example2() {
        let expected = IntMatrix::from_rows([[2, 4, 1], [2, 6, 2], [1, 0, 2]]).unwrap();
        assert_eq!(stacked_difference(&example2()), expected);
    }

    #[test]
    fn stacked_matrix_degenerate_cases() {
        let s = AbelianSystem::new(vec![row(&[1, 2]), row(&[4, 4])]).unwrap();
        assert_eq!(
            stacked_difference(&s),
            IntMatrix::from_rows([[3, 2]]).unwrap()
        );
        let same = AbelianSystem::new(vec![row(&[1, 2]); 3]).unwrap();
        assert!(stacked_difference(&same).is_zero());
    }

    #[test]
    fn example2_values() {
        let s = example2();
        assert_eq!(reid_multi(&s).value, Cardinal::from(10));
        let triples = [[0, 1, 2], [0, 1, 3], [0, 2, 3]];
        let values: Vec<Cardinal> = triples
            .iter()
            .map(|t| reid_multi(&s.select(t).unwrap()).value)
            .collect();
        assert_eq!(
            values,
            vec![Cardinal::from(2), Cardinal::from(1), Cardinal::from(2)]
        );
    }

    #[test]
    fn pair_values() {
        // gcd(3-1, 7-1, 3-1) = 2
        assert_eq!(
            reid_pair(&row(&[1, 1, 1]), &row(&[3, 7, 3])).unwrap(),
            Cardinal::from(2)
        );
        assert_eq!(
            reid_pair(&row(&[1, 1, 1]), &row(&[1, 1, 1])).unwrap(),
            Cardinal::Infinite
        );
        let phi = AbelianHom::new(IntMatrix::zeros(2, 2));
        let psi = AbelianHom::new(IntMatrix::from_rows([[2, 0], [3, 1]]).unwrap());
        assert_eq!(reid_pair(&phi, &psi).unwrap(), Cardinal::from(2));
        assert!(reid_pair(&phi, &row(&[1, 2])).is_err());
    }

    #[test]
    fn too_few_or_ragged_systems_are_rejected() {
        assert_eq!(
            AbelianSystem::new(vec![row(&[1])]),
            Err(Error::TooFewHomomorphisms(1))
        );
        assert!(matches!(
            AbelianSystem::new(vec![row(&[1]), row(&[1, 2])]),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn three_maps_from_two_torus_factor_through_pair_gcds() {
        // differences (A d12, B d12) and (C d13, D d13) with d12 = 3, d13 = 2,
        // (A, B) = (1, 2), (C, D) = (1, 5): R = 3 * 2 * |5 - 2| = 18
        let s = AbelianSystem::new(vec![row(&[0, 0]), row(&[3, 6]), row(&[2, 10])]).unwrap();
        let rep = reid_multi(&s);
        assert_eq!(rep.value, Cardinal::from(18));
        assert_eq!(rep.pairwise, vec![Cardinal::from(3), Cardinal::from(2)]);
        assert_eq!(rep.ker_psi_order, Some(Cardinal::from(3)));
    }

    #[test]
    fn kernel_of_psi_examples() {
        let s = example2();
        let triple = s.select(&[0, 1, 2]).unwrap();
        assert_eq!(ker_psi_order(&triple).unwrap(), Cardinal::from(1));
        assert_eq!(
            ker_psi_order_by_enumeration(&triple, 1000).unwrap(),
            Cardinal::from(1)
        );
        assert_eq!(ker_psi_order(&s).unwrap(), Cardinal::from(5));
        let pair = s.select(&[0, 3]).unwrap();
        assert_eq!(ker_psi_order(&pair).unwrap(), Cardinal::from(1));
        let same = AbelianSystem::new(vec![row(&[1, 2]); 3]).unwrap();
        assert!(matches!(ker_psi_order(&same), Err(Error::Precondition(_))));
    }

    #[test]
    fn disjoint_blocks_have_trivial_kernel() {
        // φ₁ = 0, φ₂ and φ₃ act on disjoint coordinates of ℤ²
        let s = AbelianSystem::new(vec![row(&[0, 0]), row(&[5, 0]), row(&[0, 7])]).unwrap();
        assert_eq!(reid_multi(&s).value, Cardinal::from(35));
        assert_eq!(ker_psi_order(&s).unwrap(), Cardinal::from(1));
    }

    #[test]
    fn permutations() {
        let s = example2();
        assert_eq!(permute_system(&s, &[0, 1, 2, 3]).unwrap(), s);
        let swapped = permute_system(&s, &[1, 0, 2, 3]).unwrap();
        assert_eq!(reid_multi(&swapped).value, Cardinal::from(10));
        assert!(permute_system(&s, &[0, 0, 1, 2]).is_err());
        assert!(permute_system(&s, &[0, 1, 2]).is_err());
    }

    #[test]
    fn divisibility_examples() {
        let s = example2();
        let triple = divisibility_report(&s.select(&[0, 1, 2]).unwrap());
        let law = triple.product_law.unwrap();
        assert!(law.divides && law.quotient_matches_kernel);
        assert_eq!(law.product, Cardinal::from(2));

        let full = divisibility_report(&s);
        assert!(full.product_law.unwrap().divides);
        let loo = full.leave_one_out.unwrap();
        assert_eq!(loo.product, Cardinal::from(4));
        assert_eq!(loo.divides, Some(false));

        let same = divisibility_report(&AbelianSystem::new(vec![row(&[1, 2]); 3]).unwrap());
        assert_eq!(same.multi, Cardinal::Infinite);
        assert!(same.product_law.is_none());
    }
}
