use std::sync::Arc;

use super::*;
use crate::abgroup::{function_algebra, group_algebra, induced_hom, AbGroup, AbHom};
use crate::exactla::{invert, Field, Matrix, Scalar};

const Q: Field = Field::RATIONALS;

fn zn(n: u64) -> FinBimonoid {
    group_algebra(&AbGroup::cyclic(n), Q)
}

fn q(s: &str) -> Scalar {
    Scalar::parse(Q, s).unwrap()
}

#[test]
fn group_algebra_z2_passes_all_axioms() {
    let a = zn(2);
    let report = a.check_axioms();
    assert!(report.is_bicommutative_hopf(), "{report:?}");
    assert!(FinBimonoid::unit_object(Q).check_axioms().is_bicommutative_hopf());
}

#[test]
fn swapped_comultiplication_breaks_coassociativity() {
    let a = zn(2);
    // Δ(e) = g⊗g, Δ(g) = e⊗e.
    let comul = Matrix::from_ints(Q, &[&[0, 1], &[0, 0], &[0, 0], &[1, 0]]);
    let bad = FinBimonoid::new("bad", Q, a.mul_matrix().clone(), a.unit().to_vec(), comul, a.counit().to_vec(), None)
        .unwrap();
    let report = bad.check_axioms();
    assert!(!report.coassociative || !report.left_counital);
    assert!(!report.is_bimonoid());
}

#[test]
fn homomorphism_examples() {
    let a = Arc::new(zn(3));
    assert!(LinMap::identity(a).is_bimonoid_hom());
    let rho = AbHom::new(AbGroup::cyclic(4), AbGroup::cyclic(2), vec![vec![1]]).unwrap();
    assert!(induced_hom(&rho, Q).is_bimonoid_hom());
    let b = Arc::new(zn(2));
    let swap = Matrix::from_ints(Q, &[&[0, 1], &[1, 0]]);
    assert!(!LinMap::new(b.clone(), b, swap).unwrap().is_bimonoid_hom());
}

#[test]
fn composition_of_homomorphisms_is_a_homomorphism() {
    let r1 = AbHom::new(AbGroup::cyclic(8), AbGroup::cyclic(4), vec![vec![1]]).unwrap();
    let r2 = AbHom::new(AbGroup::cyclic(4), AbGroup::cyclic(2), vec![vec![1]]).unwrap();
    let f = induced_hom(&r1, Q);
    let g = induced_hom(&r2, Q);
    let gf = g.compose(&f).unwrap();
    assert!(gf.is_bimonoid_hom());
    assert_eq!(gf, induced_hom(&r2.compose(&r1).unwrap(), Q).with_endpoints(f.domain().clone(), g.codomain().clone()).unwrap());
}

#[test]
fn crt_isomorphism() {
    let a = tensor_product(&zn(2), &zn(3)).unwrap();
    assert!(a.check_axioms().is_bicommutative_hopf());
    let b = zn(6);
    // Basis (i, j) of ℤ/2⊗ℤ/3 goes to the element 3i + 4j mod 6.
    let mut m = Matrix::zeros(Q, 6, 6);
    for i in 0..2 {
        for j in 0..3 {
            m.set((3 * i + 4 * j) % 6, i * 3 + j, Scalar::one(Q));
        }
    }
    assert!(invert(&m).is_some());
    let iso = LinMap::new(Arc::new(a), Arc::new(b), m).unwrap();
    assert!(iso.is_bimonoid_hom());
}

#[test]
fn tensor_with_unit_is_identity() {
    let a = zn(3);
    assert_eq!(tensor_product(&a, &FinBimonoid::unit_object(Q)).unwrap(), a);
    assert_eq!(tensor_product(&FinBimonoid::unit_object(Q), &a).unwrap(), a);
}

#[test]
fn dual_is_function_algebra_and_involutive() {
    for n in [2, 3, 4] {
        let g = AbGroup::cyclic(n);
        let a = group_algebra(&g, Q);
        assert_eq!(dual(&a), function_algebra(&g, Q));
        assert_eq!(dual(&dual(&a)), a);
    }
    let one = FinBimonoid::unit_object(Q);
    assert_eq!(dual(&one), one);
}

#[test]
fn convolution_units_and_antipode() {
    let a = Arc::new(zn(2));
    let id = LinMap::identity(a.clone());
    let unit = LinMap::unit_of(a.clone()).compose(&LinMap::counit_of(a.clone())).unwrap();
    assert_eq!(convolution(&id, &unit).unwrap(), id);
    assert_eq!(convolution(&unit, &id).unwrap(), id);

    let b = Arc::new(zn(3));
    let id = LinMap::identity(b.clone());
    let s = LinMap::new(b.clone(), b.clone(), b.antipode().unwrap().clone()).unwrap();
    let trivial = LinMap::unit_of(b.clone()).compose(&LinMap::counit_of(b.clone())).unwrap();
    assert_eq!(convolution(&id, &s).unwrap(), trivial);
}

#[test]
fn normalized_integral_is_convolution_idempotent() {
    let a = Arc::new(zn(2));
    let one = Arc::new(FinBimonoid::unit_object(Q));
    let sigma = LinMap::new(one, a, Matrix::column_vector(Q, vec![q("1/2"), q("1/2")])).unwrap();
    assert_eq!(convolution(&sigma, &sigma).unwrap(), sigma);
}

#[test]
fn antipode_solver() {
    let a = zn(4);
    let s = a.compute_antipode().unwrap();
    let expect = Matrix::from_fn(Q, 4, 4, |r, c| if r == (4 - c) % 4 { Scalar::one(Q) } else { Scalar::zero(Q) });
    assert_eq!(s, expect);
    assert_eq!(FinBimonoid::unit_object(Q).compute_antipode().unwrap(), Matrix::identity(Q, 1));
    let f = function_algebra(&AbGroup::new(vec![2, 2]).unwrap(), Q);
    assert_eq!(f.compute_antipode().as_ref(), f.antipode());
}

#[test]
fn scalar_mul_by_zero() {
    let a = Arc::new(zn(2));
    assert!(scalar_mul(&Scalar::zero(Q), &LinMap::identity(a)).is_zero());
}

#[test]
fn json_round_trip() {
    let a = zn(4);
    let js = a.to_json();
    let back = FinBimonoid::from_json(&js).unwrap();
    assert_eq!(back, a);
    assert_eq!(back.name(), a.name());
    assert_eq!(back.to_json(), js);
    let f = group_algebra(&AbGroup::cyclic(3), Field::prime(5).unwrap());
    assert_eq!(FinBimonoid::from_json(&f.to_json()).unwrap(), f);
}
