use num_bigint::BigInt;
use num_rational::BigRational;

use super::random::{random_group, random_hom, rng};
use super::*;
use crate::exactla::Field;
use crate::hopfcore::dual;

fn big(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows)
}

fn cyclic_hom(n: u64, m: u64, image: i64) -> AbHom {
    AbHom::new(AbGroup::cyclic(n), AbGroup::cyclic(m), vec![vec![image]]).unwrap()
}

/// Kernel order by brute force over the domain.
fn kernel_order(f: &AbHom) -> u64 {
    let zero = vec![0; f.codomain().rank()];
    f.domain().elements().filter(|x| f.apply(x) == zero).count() as u64
}

fn image_order(f: &AbHom) -> u64 {
    let mut seen: Vec<Vec<u64>> = f.domain().elements().map(|x| f.apply(&x)).collect();
    seen.sort();
    seen.dedup();
    seen.len() as u64
}

#[test]
fn snf_examples() {
    assert_eq!(smith_normal_form(&big(&[vec![2]])).diagonal(), vec![BigInt::from(2)]);
    let d = smith_normal_form(&big(&[vec![4, 0], vec![0, 6]])).diagonal();
    assert_eq!(d, vec![BigInt::from(2), BigInt::from(12)]);
    let id = smith_normal_form(&IntMatrix::identity(2));
    assert_eq!(id.d, IntMatrix::identity(2));
}

#[test]
fn snf_handles_rectangular_and_zero() {
    let s = smith_normal_form(&big(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
    assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    let z = smith_normal_form(&IntMatrix::zeros(2, 3));
    assert!(z.diagonal().iter().all(|x| x == &BigInt::from(0)));
    let wide = smith_normal_form(&big(&[vec![0, 3, 6]]));
    assert_eq!(wide.diagonal(), vec![BigInt::from(3)]);
}

#[test]
fn canonical_form() {
    assert_eq!(AbGroup::canonical(&[2, 3]).unwrap().factors(), &[6]);
    assert_eq!(AbGroup::canonical(&[4, 6]).unwrap().factors(), &[2, 12]);
    assert_eq!(AbGroup::canonical(&[1]).unwrap(), AbGroup::trivial());
    assert!(AbGroup::new(vec![4, 2]).is_err());
}

#[test]
fn kernel_cokernel_examples() {
    let rho = cyclic_hom(4, 2, 1);
    assert_eq!(hom_kernel(&rho), AbGroup::cyclic(2));
    assert_eq!(hom_cokernel(&rho), AbGroup::trivial());

    let iota = cyclic_hom(2, 4, 2);
    assert_eq!(hom_kernel(&iota), AbGroup::trivial());
    assert_eq!(hom_cokernel(&iota), AbGroup::cyclic(2));

    let zero = AbHom::zero(&AbGroup::cyclic(5), &AbGroup::cyclic(3));
    assert_eq!(hom_kernel(&zero), AbGroup::cyclic(5));
    assert_eq!(hom_cokernel(&zero), AbGroup::cyclic(3));
}

#[test]
fn ill_formed_homs_are_rejected() {
    assert!(AbHom::new(AbGroup::cyclic(2), AbGroup::cyclic(4), vec![vec![1]]).is_err());
    assert!(AbHom::new(AbGroup::cyclic(2), AbGroup::cyclic(4), vec![vec![1, 0]]).is_err());
}

#[test]
fn index_oracle_examples() {
    assert_eq!(index_oracle(&cyclic_hom(4, 2, 1)), BigRational::from_integer(2.into()));
    assert_eq!(index_oracle(&AbHom::identity(&AbGroup::cyclic(6))), BigRational::from_integer(1.into()));
    assert_eq!(index_oracle(&cyclic_hom(2, 4, 2)), BigRational::new(1.into(), 2.into()));
}

#[test]
fn random_homs_match_enumeration() {
    let mut r = rng(7);
    for _ in 0..60 {
        let g = random_group(&mut r, 64, 12);
        let h = random_group(&mut r, 64, 12);
        let f = random_hom(&mut r, &g, &h);
        let (ker, incl) = kernel_with_inclusion(&f);
        let (cok, proj) = cokernel_with_projection(&f);
        assert_eq!(ker.order(), kernel_order(&f), "{f:?}");
        assert_eq!(cok.order() * image_order(&f), h.order(), "{f:?}");
        assert_eq!(kernel_order(&f) * image_order(&f), g.order());
        // The inclusion is injective and lands in the kernel.
        assert_eq!(kernel_order(&incl), 1);
        let zero = vec![0; h.rank()];
        assert!(ker.elements().all(|x| f.apply(&incl.apply(&x)) == zero));
        // The projection is onto and kills the image.
        assert_eq!(image_order(&proj), cok.order());
        let zero = vec![0; cok.rank()];
        assert!(g.elements().all(|x| proj.apply(&f.apply(&x)) == zero));
    }
}

#[test]
fn algebras_pass_axioms_and_dualize() {
    for factors in [vec![2], vec![3], vec![2, 2], vec![6]] {
        let g = AbGroup::new(factors).unwrap();
        let a = group_algebra(&g, Field::RATIONALS);
        assert!(a.check_axioms().is_bicommutative_hopf());
        let f = function_algebra(&g, Field::RATIONALS);
        assert!(f.check_axioms().is_bicommutative_hopf());
        assert_eq!(dual(&a), f);
    }
}

#[test]
fn induced_and_counting_maps() {
    let rho = cyclic_hom(4, 2, 1);
    let xi = induced_hom(&rho, Field::RATIONALS);
    assert!(xi.is_bimonoid_hom());
    let expect = crate::exactla::Matrix::from_ints(Field::RATIONALS, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
    assert_eq!(xi.matrix(), &expect);
    assert_eq!(counting_integral(&rho, Field::RATIONALS).matrix(), &expect.transpose());
}

#[test]
fn hom_enumeration_counts() {
    // |Hom(ℤ/n, ℤ/m)| = gcd(n, m); Hom into or out of a product multiplies.
    let c = |n| AbGroup::cyclic(n);
    assert_eq!(all_homs(&c(4), &c(6)).len(), 2);
    assert_eq!(all_homs(&c(6), &c(6)).len(), 6);
    let v4 = AbGroup::new(vec![2, 2]).unwrap();
    assert_eq!(all_homs(&v4, &v4).len(), 16);
    assert_eq!(all_homs(&c(4), &v4).len(), 4);
    assert_eq!(all_homs(&AbGroup::trivial(), &c(3)).len(), 1);
    assert_eq!(all_homs(&c(3), &AbGroup::trivial()).len(), 1);
    let homs = all_homs(&c(4), &c(2));
    assert!(homs.contains(&AbHom::zero(&c(4), &c(2))));
    // Distinct as maps on elements.
    let images: std::collections::HashSet<Vec<Vec<u64>>> =
        all_homs(&v4, &c(4)).iter().map(|f| v4.elements().map(|x| f.apply(&x)).collect()).collect();
    assert_eq!(images.len(), 4);
}
