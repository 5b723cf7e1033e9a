mod common;

use std::collections::HashSet;

use common::{field, group, hom, inverse_order, Q};
use hopfcalc::abgroup::{
    function_algebra, group_algebra, hom_cokernel, hom_kernel, index_oracle, smith_normal_form, AbGroup, IntMatrix,
};
use hopfcalc::hopfcore::{dual, tensor_product, FinBimonoid};
use hopfcalc::volume::inverse_volume;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn has_char_dividing(f: hopfcalc::exactla::Field, n: u64) -> bool {
    let p = f.characteristic();
    p != 0 && n.is_multiple_of(p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_and_function_algebras_are_bicommutative_hopf(g in group(12), f in field()) {
        for a in [group_algebra(&g, f), function_algebra(&g, f)] {
            let report = a.check_axioms();
            prop_assert!(report.is_bicommutative_hopf(), "{}: {:?}", a.name(), report);
            prop_assert_eq!(a.dim() as u64, g.order());
        }
    }

    #[test]
    fn json_round_trip(g in group(12), f in field()) {
        let a = group_algebra(&g, f);
        let back = FinBimonoid::from_json(&a.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), a.to_json());
        prop_assert_eq!(back.mul_matrix(), a.mul_matrix());
        prop_assert_eq!(back.comul_matrix(), a.comul_matrix());
    }

    #[test]
    fn tensor_and_dual_stay_hopf(g in group(6), h in group(6), f in field()) {
        let (a, b) = (group_algebra(&g, f), function_algebra(&h, f));
        prop_assert!(tensor_product(&a, &b).unwrap().check_axioms().is_hopf());
        prop_assert!(dual(&a).check_axioms().is_hopf());
    }

    #[test]
    fn inverse_volume_is_reciprocal_order(g in group(16), f in field()) {
        let a = group_algebra(&g, f);
        let expected = if has_char_dividing(f, g.order()) { None } else { inverse_order(f, g.order()) };
        prop_assert_eq!(inverse_volume(&a), expected.clone());
        prop_assert_eq!(inverse_volume(&dual(&a)), expected.clone());
        prop_assert_eq!(inverse_volume(&function_algebra(&g, f)), expected);
    }

    #[test]
    fn inverse_volume_is_multiplicative(g in group(6), h in group(6), f in field()) {
        let (a, b) = (group_algebra(&g, f), group_algebra(&h, f));
        let ab = tensor_product(&a, &b).unwrap();
        let product = match (inverse_volume(&a), inverse_volume(&b)) {
            (Some(x), Some(y)) => Some(&x * &y),
            _ => None,
        };
        prop_assert_eq!(inverse_volume(&ab), product);
    }

    #[test]
    fn canonical_groups_satisfy_divisibility(orders in prop::collection::vec(1u64..=12, 0..4)) {
        let g = AbGroup::canonical(&orders).unwrap();
        prop_assert_eq!(g.order(), orders.iter().product::<u64>());
        prop_assert!(g.factors().iter().all(|&d| d >= 2));
        prop_assert!(g.factors().windows(2).all(|w| w[1] % w[0] == 0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn kernel_and_cokernel_orders_match_enumeration(rho in hom(24)) {
        let (g, h) = (rho.domain(), rho.codomain());
        let zero = vec![0u64; h.rank()];
        let kernel = g.elements().filter(|x| rho.apply(x) == zero).count() as u64;
        let image: HashSet<Vec<u64>> = g.elements().map(|x| rho.apply(&x)).collect();
        let (ker, cok) = (hom_kernel(&rho), hom_cokernel(&rho));
        prop_assert_eq!(ker.order(), kernel);
        prop_assert_eq!(cok.order() * image.len() as u64, h.order());
        prop_assert_eq!(ker.order() * image.len() as u64, g.order());
        let index = BigRational::new(BigInt::from(ker.order()), BigInt::from(cok.order()));
        prop_assert_eq!(index_oracle(&rho), index);
    }

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(rows in (1usize..4, 1usize..4)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-30i64..=30, c), r)))
    {
        let m = IntMatrix::from_rows(&rows);
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d.clone());
        prop_assert!(snf.u.determinant().abs().is_one());
        prop_assert!(snf.v.determinant().abs().is_one());
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                prop_assert!(i == j || snf.d.get(i, j).is_zero());
            }
        }
        let diag = snf.diagonal();
        prop_assert!(diag.iter().all(|d| !d.is_negative()));
        for w in diag.windows(2) {
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides);
        }
    }
}

#[test]
fn rational_volume_of_every_small_group() {
    for n in 1..=12u64 {
        let g = AbGroup::cyclic(n);
        let expected = inverse_order(Q, n);
        assert_eq!(inverse_volume(&group_algebra(&g, Q)), expected);
    }
}
