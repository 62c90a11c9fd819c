use coincidence_core::abelian::{reid_pair, AbelianHom};
use coincidence_core::nilpotent::{
    commutator_by_form, delta_images, direct_power_pc, recount_by_identification, reid_nilpotent,
    tuple_hom, validate_hom, PcGroup, PcHom, PcWord,
};
use coincidence_core::{Cardinal, IntMatrix};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn heisenberg() -> PcGroup {
    PcGroup::new(
        names(&["alpha", "beta", "gamma"]),
        &[false, false, true],
        &[(0, 1, ints(&[0, 0, 1]))],
    )
    .unwrap()
}

/// A class-2 group with three commutator generators.
fn free_class_two() -> PcGroup {
    let rels = [
        (0, 1, ints(&[0, 0, 0, 1, 0, 0])),
        (0, 2, ints(&[0, 0, 0, 0, 1, 0])),
        (1, 2, ints(&[0, 0, 0, 0, 0, 1])),
    ];
    PcGroup::new(
        names(&["x", "y", "z", "u", "v", "w"]),
        &[false, false, false, true, true, true],
        &rels,
    )
    .unwrap()
}

fn word(len: usize) -> impl Strategy<Value = PcWord> {
    prop::collection::vec(-6i64..=6, len).prop_map(|xs| PcWord::from_i64(&xs))
}

/// Endomorphism of the Heisenberg group from a 2×2 matrix and central shifts.
fn heisenberg_endo() -> impl Strategy<Value = PcHom> {
    (
        prop::array::uniform4(-4i64..=4),
        prop::array::uniform2(-3i64..=3),
    )
        .prop_map(|([a, b, c, d], [x, y])| {
            let h = heisenberg();
            let images = vec![
                PcWord::from_i64(&[a, c, x]),
                PcWord::from_i64(&[b, d, y]),
                PcWord::from_i64(&[0, 0, a * d - b * c]),
            ];
            PcHom::new(h.clone(), h, images).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn collection_is_a_group_law(u in word(6), v in word(6), w in word(6)) {
        let g = free_class_two();
        prop_assert_eq!(g.multiply(&g.multiply(&u, &v), &w), g.multiply(&u, &g.multiply(&v, &w)));
        prop_assert_eq!(g.multiply(&u, &g.identity()), u.clone());
        prop_assert_eq!(g.multiply(&g.identity(), &u), u.clone());
        prop_assert!(g.multiply(&u, &g.inverse(&u)).is_identity());
        let c = g.commutator(&u, &v);
        prop_assert!(g.noncentral_part(&c).iter().all(Zero::is_zero));
        prop_assert_eq!(g.central_part(&c), &commutator_by_form(&g, &u, &v)[..]);
    }

    #[test]
    fn valid_maps_respect_products(phi in heisenberg_endo(), u in word(3), v in word(3)) {
        let h = phi.domain().clone();
        prop_assert!(validate_hom(&phi).valid);
        prop_assert_eq!(phi.apply(&h.multiply(&u, &v)), h.multiply(&phi.apply(&u), &phi.apply(&v)));
        prop_assert_eq!(phi.apply(&h.inverse(&u)), h.inverse(&phi.apply(&u)));
    }

    #[test]
    fn power_maps_respect_products(phi in heisenberg_endo(), psi in heisenberg_endo(), u in word(6), v in word(6)) {
        let power = direct_power_pc(phi.domain(), 2).unwrap();
        let g = &power.group;
        let pair = tuple_hom(&power, &[&phi, &psi]).unwrap();
        prop_assert!(validate_hom(&pair).valid);
        let h = phi.domain();
        let split = |w: &PcWord| -> Vec<PcWord> {
            let e = w.exponents();
            vec![PcWord::new(vec![e[0].clone(), e[1].clone(), e[4].clone()]), PcWord::new(vec![e[2].clone(), e[3].clone(), e[5].clone()])]
        };
        let uv = g.multiply(&u, &v);
        let (su, sv, suv) = (split(&u), split(&v), split(&uv));
        for i in 0..2 {
            prop_assert_eq!(&h.multiply(&su[i], &sv[i]), &suv[i]);
        }
    }

    #[test]
    fn central_extension_identity_holds(phi in heisenberg_endo(), psi in heisenberg_endo()) {
        let r = reid_nilpotent(&phi, &psi).unwrap();
        match (r.value(), &r.im_delta) {
            (Some(Cardinal::Finite(v)), Some(im)) => {
                prop_assert_eq!(Cardinal::Finite(v.clone()) * im.clone(), r.r_prime.clone() * r.r_bar.clone());
                prop_assert_eq!(recount_by_identification(&phi, &psi, 100_000).unwrap(), Cardinal::Finite(v.clone()));
                // every δ-image is central
                prop_assert!(delta_images(&phi, &psi, &r.data).is_ok());
            }
            (Some(Cardinal::Infinite), _) => prop_assert_eq!(&r.r_bar, &Cardinal::Infinite),
            (None, _) => prop_assert_eq!(&r.r_prime, &Cardinal::Infinite),
            (Some(Cardinal::Finite(_)), None) => prop_assert!(false, "finite value without |Im delta|"),
        }
    }

    #[test]
    fn abelian_presentations_match_the_torus_engine(
        n in 1..=3usize,
        a in prop::collection::vec(-5i64..=5, 9),
        b in prop::collection::vec(-5i64..=5, 9),
    ) {
        let gens: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let z = PcGroup::abelian(gens).unwrap();
        let matrix = |xs: &[i64]| IntMatrix::from_fn(n, n, |i, j| BigInt::from(xs[i * n + j]));
        let as_hom = |xs: &[i64]| {
            let images = (0..n).map(|j| PcWord::from_i64(&(0..n).map(|i| xs[i * n + j]).collect::<Vec<_>>())).collect();
            PcHom::new(z.clone(), z.clone(), images).unwrap()
        };
        let r = reid_nilpotent(&as_hom(&a), &as_hom(&b)).unwrap();
        let expected = reid_pair(&AbelianHom::new(matrix(&a)), &AbelianHom::new(matrix(&b))).unwrap();
        prop_assert_eq!(r.value(), Some(&expected));
    }
}
