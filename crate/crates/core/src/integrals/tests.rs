use std::sync::Arc;

use super::*;
use crate::abgroup::{counting_integral, function_algebra, group_algebra, induced_hom, AbGroup, AbHom};
use crate::exactla::{null_space, Field};
use crate::hopfcore::{convolution, scalar_mul};
use crate::kerco::{cokernel_hopf, kernel_hopf};

const Q: Field = Field::RATIONALS;

fn q(s: &str) -> Scalar {
    Scalar::parse(Q, s).unwrap()
}

fn fp(p: u64) -> Field {
    Field::prime(p).unwrap()
}

fn hom(n: u64, m: u64, image: i64) -> AbHom {
    AbHom::new(AbGroup::cyclic(n), AbGroup::cyclic(m), vec![vec![image]]).unwrap()
}

fn quotient_4_2(field: Field) -> LinMap {
    induced_hom(&hom(4, 2, 1), field)
}

fn ints(field: Field, v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_int(field, x)).collect()
}

/// Constraint matrix whose column `k` is the residual of the identities at the
/// `k`-th unit matrix, all maps built as full Kronecker products.
fn kron_constraints(shape: (usize, usize), field: Field, residual: impl Fn(&Matrix) -> Vec<Matrix>) -> Matrix {
    let (r, c) = shape;
    let columns: Vec<Vec<Scalar>> = (0..r * c)
        .map(|k| {
            let mut e = Matrix::zeros(field, r, c);
            e.set(k / c, k % c, Scalar::one(field));
            residual(&e).iter().flat_map(|m| m.entries().to_vec()).collect()
        })
        .collect();
    let height = columns[0].len();
    Matrix::from_columns(field, height, &columns)
}

fn oracle_integrals(a: &FinBimonoid, side: Side, co: bool) -> Subspace {
    let (n, field) = (a.dim(), a.field());
    let id = Matrix::identity(field, n);
    let (mul, comul) = (a.mul_matrix(), a.comul_matrix());
    let (eta, eps) = (a.unit_matrix(), a.counit_matrix());
    let shape = if co { (1, n) } else { (n, 1) };
    let m = kron_constraints(shape, field, |x| {
        let mut out = Vec::new();
        if co {
            if side.has_left() {
                out.push(&(&x.kron(&id) * comul) - &(&eta * x));
            }
            if side.has_right() {
                out.push(&(&id.kron(x) * comul) - &(&eta * x));
            }
        } else {
            if side.has_left() {
                out.push(&(mul * &x.kron(&id)) - &(x * &eps));
            }
            if side.has_right() {
                out.push(&(mul * &id.kron(x)) - &(x * &eps));
            }
        }
        out
    });
    null_space(&m)
}

fn oracle_along(xi: &LinMap, side: Side) -> Subspace {
    let (a, b) = (&**xi.domain(), &**xi.codomain());
    let field = a.field();
    let (ia, ib) = (Matrix::identity(field, a.dim()), Matrix::identity(field, b.dim()));
    let x = xi.matrix();
    let m = kron_constraints((a.dim(), b.dim()), field, |mu| {
        let mut out = Vec::new();
        if side.has_right() {
            out.push(&(a.mul_matrix() * &mu.kron(&ia)) - &(&(mu * b.mul_matrix()) * &ib.kron(x)));
            out.push(&(&mu.kron(&ib) * b.comul_matrix()) - &(&(&ia.kron(x) * a.comul_matrix()) * mu));
        }
        if side.has_left() {
            out.push(&(a.mul_matrix() * &ia.kron(mu)) - &(&(mu * b.mul_matrix()) * &x.kron(&ib)));
            out.push(&(&ib.kron(mu) * b.comul_matrix()) - &(&(&x.kron(&ia) * a.comul_matrix()) * mu));
        }
        out
    });
    null_space(&m)
}

/// A mix of homomorphisms: induced maps, their duals between function algebras,
/// units, counits and trivial maps, over several fields.
fn sample_homs() -> Vec<LinMap> {
    let mut out = Vec::new();
    for field in [Q, fp(2), fp(3)] {
        for (n, m, img) in [(4, 2, 1), (2, 4, 2), (6, 3, 1), (3, 3, 2), (4, 4, 2), (2, 2, 0)] {
            let f = induced_hom(&hom(n, m, img), field);
            let dual_map = LinMap::new(
                Arc::new(crate::hopfcore::dual(f.codomain())),
                Arc::new(crate::hopfcore::dual(f.domain())),
                f.matrix().transpose(),
            )
            .unwrap();
            out.push(f);
            out.push(dual_map);
        }
        let v4 = Arc::new(group_algebra(&AbGroup::new(vec![2, 2]).unwrap(), field));
        out.push(LinMap::unit_of(v4.clone()));
        out.push(LinMap::counit_of(v4.clone()));
        let c4 = Arc::new(function_algebra(&AbGroup::cyclic(4), field));
        out.push(LinMap::trivial(v4, c4));
    }
    out
}

#[test]
fn integral_space_examples() {
    let z3 = group_algebra(&AbGroup::cyclic(3), Q);
    let s = integral_space(&z3, Side::TwoSided);
    assert_eq!(s.dim(), 1);
    assert!(s.basis().contains(&ints(Q, &[1, 1, 1])));

    let f2 = fp(2);
    let z2 = group_algebra(&AbGroup::cyclic(2), f2);
    let s = integral_space(&z2, Side::Left);
    assert_eq!(s.basis().vectors(), &[ints(f2, &[1, 1])]);
    assert!(z2.counit_of(&ints(f2, &[1, 1])).is_zero());
    assert_eq!(normalized_integral(&z2), None);

    let one = FinBimonoid::unit_object(Q);
    assert_eq!(integral_space(&one, Side::TwoSided).basis().vectors(), &[vec![q("1")]]);
}

#[test]
fn brute_force_integrals_over_f2() {
    // All four vectors of 𝔽₂[ℤ/2]; exactly 0 and e+g absorb multiplication.
    let f2 = fp(2);
    let z2 = group_algebra(&AbGroup::cyclic(2), f2);
    let space = integral_space(&z2, Side::TwoSided);
    for x in 0..2 {
        for y in 0..2 {
            let v = ints(f2, &[x, y]);
            assert_eq!(is_integral(&z2, &v, Side::TwoSided), space.basis().contains(&v));
            assert_eq!(space.basis().contains(&v), x == y);
        }
    }
}

#[test]
fn cointegral_space_examples() {
    let z2 = group_algebra(&AbGroup::cyclic(2), Q);
    let s = cointegral_space(&z2, Side::TwoSided);
    assert_eq!(s.shape(), (1, 2));
    assert_eq!(s.basis().vectors(), &[ints(Q, &[1, 0])]);

    let f3 = function_algebra(&AbGroup::cyclic(3), Q);
    assert_eq!(cointegral_space(&f3, Side::TwoSided).basis().vectors(), &[ints(Q, &[1, 1, 1])]);
    assert_eq!(cointegral_space(&FinBimonoid::unit_object(Q), Side::Left).dim(), 1);
}

#[test]
fn normalized_integrals_of_cyclic_group_algebras() {
    for n in 1..=6u64 {
        let a = group_algebra(&AbGroup::cyclic(n), Q);
        let (sigma, affine) = normalized_integral_solution(&a).unwrap();
        let inv = Scalar::from_int(Q, n as i64).inv().unwrap();
        assert_eq!(sigma, vec![inv; n as usize]);
        assert_eq!(affine, 0);
        let shared = Arc::new(a);
        let s = LinMap::from_vector(shared.clone(), sigma).unwrap();
        assert_eq!(convolution(&s, &s).unwrap(), s);
        let mut delta = vec![Scalar::zero(Q); n as usize];
        delta[0] = Scalar::one(Q);
        assert_eq!(normalized_cointegral(&shared).unwrap(), delta);
    }
    assert_eq!(normalized_integral(&FinBimonoid::unit_object(Q)), Some(vec![q("1")]));
}

#[test]
fn integral_spaces_match_kron_oracle() {
    let mut bimonoids = Vec::new();
    for field in [Q, fp(2), fp(3)] {
        for g in [vec![2], vec![3], vec![4], vec![2, 2], vec![6]] {
            let g = AbGroup::new(g).unwrap();
            bimonoids.push(group_algebra(&g, field));
            bimonoids.push(function_algebra(&g, field));
        }
    }
    for a in &bimonoids {
        for side in [Side::Left, Side::Right, Side::TwoSided] {
            assert_eq!(integral_space(a, side).basis(), &oracle_integrals(a, side, false), "{} {side}", a.name());
            assert_eq!(cointegral_space(a, side).basis(), &oracle_integrals(a, side, true), "{} {side}", a.name());
        }
    }
}

#[test]
fn integral_along_spaces_match_kron_oracle() {
    for xi in sample_homs() {
        for side in [Side::Left, Side::Right, Side::TwoSided] {
            let space = integral_along_space(&xi, side).unwrap();
            assert_eq!(space.basis(), &oracle_along(&xi, side), "{} {side}", space.anchor());
        }
    }
}

#[test]
fn along_counit_and_unit_recover_plain_integrals() {
    let a = Arc::new(group_algebra(&AbGroup::cyclic(2), Q));
    let along = integral_along_space(&LinMap::counit_of(a.clone()), Side::Right).unwrap();
    assert_eq!(along.basis(), integral_space(&a, Side::Right).basis());
    let along = integral_along_space(&LinMap::unit_of(a.clone()), Side::Right).unwrap();
    assert_eq!(along.basis(), cointegral_space(&a, Side::Right).basis());
}

#[test]
fn along_examples() {
    let z3 = Arc::new(group_algebra(&AbGroup::cyclic(3), Q));
    let id = LinMap::identity(z3);
    assert!(integral_along_space(&id, Side::TwoSided).unwrap().contains(id.matrix()));

    let xi = quotient_4_2(Q);
    let counting = counting_integral(&hom(4, 2, 1), Q);
    assert!(integral_along_space(&xi, Side::TwoSided).unwrap().contains(counting.matrix()));

    let b = Arc::new(group_algebra(&AbGroup::cyclic(2), Q));
    let swap = LinMap::new(b.clone(), b, Matrix::from_ints(Q, &[&[0, 1], &[1, 0]])).unwrap();
    assert_eq!(integral_along_space(&swap, Side::Left), Err(Error::NotAHomomorphism));
}

#[test]
fn normalized_along_examples() {
    let xi = quotient_4_2(Q);
    let sol = normalized_along_solution(&xi).unwrap().unwrap();
    let counting = counting_integral(&hom(4, 2, 1), Q);
    assert_eq!(sol.map, scalar_mul(&q("1/2"), &counting));
    assert_eq!(sol.affine_dim, 0);

    let z3 = Arc::new(group_algebra(&AbGroup::cyclic(3), Q));
    let id = LinMap::identity(z3);
    assert_eq!(normalized_integral_along(&id).unwrap(), Some(id));

    assert_eq!(normalized_integral_along(&quotient_4_2(fp(2))).unwrap(), None);
    let f3 = fp(3);
    let sol = normalized_integral_along(&quotient_4_2(f3)).unwrap().unwrap();
    let half = Scalar::from_int(f3, 2).inv().unwrap();
    assert_eq!(sol, scalar_mul(&half, &counting_integral(&hom(4, 2, 1), f3)));
}

#[test]
fn generator_examples() {
    let xi = quotient_4_2(Q);
    let mu = normalized_integral_along(&xi).unwrap().unwrap();
    assert!(is_generator(&mu, &xi).unwrap());

    // g ↦ g⁵ on ℤ/6 is its own inverse.
    let auto = induced_hom(&hom(6, 6, 5), Q);
    let inverse = LinMap::new(auto.codomain().clone(), auto.domain().clone(), auto.matrix().clone()).unwrap();
    assert!(is_generator(&inverse, &auto).unwrap());

    let a = Arc::new(group_algebra(&AbGroup::cyclic(2), Q));
    let eps = LinMap::counit_of(a.clone());
    let sigma = Matrix::column_vector(Q, vec![q("1/2"), q("1/2")]);
    let one = eps.codomain().clone();
    let twice = LinMap::new(one.clone(), a.clone(), sigma.scale(&q("2"))).unwrap();
    assert!(!is_generator(&twice, &eps).unwrap());
    let sigma = LinMap::new(one, a.clone(), sigma).unwrap();
    assert!(is_generator(&sigma, &eps).unwrap());

    let not_integral = LinMap::new(eps.codomain().clone(), a, Matrix::column_vector(Q, vec![q("1"), q("0")])).unwrap();
    assert_eq!(is_generator(&not_integral, &eps), Err(Error::NotAnIntegral));
}

#[test]
fn transfers_to_kernel_and_cokernel() {
    let xi = quotient_4_2(Q);
    let mu = normalized_integral_along(&xi).unwrap().unwrap();
    let ker = kernel_hopf(&xi).unwrap();
    let phi = transfer_to_kernel(&mu, &xi, &ker).unwrap();
    assert_eq!(phi, vec![q("1/2"), q("1/2")]);
    assert!(ker.structure().counit_of(&phi).is_one());
    assert!(is_integral(ker.structure(), &phi, Side::TwoSided));

    let cok = cokernel_hopf(&xi).unwrap();
    let r = transfer_to_cokernel(&mu, &xi, &cok).unwrap();
    assert_eq!(r, vec![q("1")]);
    assert!(is_cointegral(cok.structure(), &r, Side::TwoSided));

    let a = Arc::new(group_algebra(&AbGroup::cyclic(2), Q));
    let eps = LinMap::counit_of(a.clone());
    let sigma = LinMap::new(eps.codomain().clone(), a, Matrix::column_vector(Q, vec![q("1/2"), q("1/2")])).unwrap();
    let ker = kernel_hopf(&eps).unwrap();
    assert_eq!(transfer_to_kernel(&sigma, &eps, &ker).unwrap(), sigma.matrix().column(0));
}

#[test]
fn cokernel_transfer_of_a_unit_is_the_cointegral() {
    // Along η_B the cokernel is B itself and F̂ returns the cointegral.
    let b = Arc::new(group_algebra(&AbGroup::cyclic(3), Q));
    let eta = LinMap::unit_of(b.clone());
    let mu = normalized_integral_along(&eta).unwrap().unwrap();
    let cok = cokernel_hopf(&eta).unwrap();
    assert_eq!(transfer_to_cokernel(&mu, &eta, &cok).unwrap(), ints(Q, &[1, 0, 0]));
}

#[test]
fn ltimes_and_rtimes() {
    let xi = quotient_4_2(Q);
    let mu = normalized_integral_along(&xi).unwrap().unwrap();
    let ker = kernel_hopf(&xi).unwrap();
    let eta = ker.structure().unit().to_vec();
    assert_eq!(ltimes(&eta, &ker, &mu).unwrap(), mu);

    let phi = ints(Q, &[3, -1]);
    assert_eq!(rtimes(&mu, &phi, &ker).unwrap(), scalar_mul(&q("2"), &mu));
    assert!(is_integral_along(&ltimes(&phi, &ker, &mu).unwrap(), &xi, Side::Right));

    let space = integral_along_space(&xi, Side::TwoSided).unwrap();
    assert_eq!(space.dim(), 1);
    for other in space.elements() {
        let other = LinMap::new(mu.domain().clone(), mu.codomain().clone(), other).unwrap();
        let f = transfer_to_kernel(&other, &xi, &ker).unwrap();
        assert_eq!(ltimes(&f, &ker, &mu).unwrap(), other);
    }
    assert!(matches!(ltimes(&[q("1")], &ker, &mu), Err(Error::ShapeMismatch(_))));
}

#[test]
fn composition_of_integrals_is_an_integral() {
    let xi = induced_hom(&hom(8, 4, 1), Q);
    let xi2 = induced_hom(&hom(4, 2, 1), Q).with_endpoints(xi.codomain().clone(), Arc::new(group_algebra(&AbGroup::cyclic(2), Q))).unwrap();
    let composite = xi2.compose(&xi).unwrap();
    for side in [Side::Left, Side::Right, Side::TwoSided] {
        for m in integral_along_space(&xi, side).unwrap().elements() {
            let mu = LinMap::new(xi.codomain().clone(), xi.domain().clone(), m).unwrap();
            for m2 in integral_along_space(&xi2, side).unwrap().elements() {
                let mu2 = LinMap::new(xi2.codomain().clone(), xi2.domain().clone(), m2).unwrap();
                assert!(is_integral_along(&mu.compose(&mu2).unwrap(), &composite, side));
            }
        }
    }
}

#[test]
fn counting_oracle_for_surjections() {
    let cases = [(hom(4, 2, 1), true), (hom(6, 3, 1), true), (hom(6, 2, 1), true), (hom(8, 2, 1), true), (hom(3, 3, 1), true)];
    for (rho, _) in cases {
        let kernel_order = crate::abgroup::hom_kernel(&rho).order() as i64;
        for field in [Q, fp(2), fp(3), fp(5)] {
            let xi = induced_hom(&rho, field);
            let got = normalized_integral_along(&xi).unwrap();
            match Scalar::from_int(field, kernel_order).inv() {
                Some(inv) => assert_eq!(got, Some(scalar_mul(&inv, &counting_integral(&rho, field)))),
                None => assert_eq!(got, None, "{field} divides {kernel_order}"),
            }
        }
    }
}

#[test]
fn report_json_shape() {
    let xi = quotient_4_2(Q);
    let space = integral_along_space(&xi, Side::TwoSided).unwrap();
    let mu = normalized_integral_along(&xi).unwrap().unwrap();
    let r = space.report(Some(mu.matrix()), Some(true));
    assert_eq!(r["kind"], "two-sided");
    assert_eq!(r["dimension"], 1);
    assert_eq!(r["generator"], true);
    assert_eq!(r["basis"].as_array().unwrap().len(), 1);
    assert!(r["normalized"].is_array());
}

#[test]
fn side_parsing() {
    assert_eq!("left".parse::<Side>().unwrap(), Side::Left);
    assert_eq!("two-sided".parse::<Side>().unwrap(), Side::TwoSided);
    assert!("up".parse::<Side>().is_err());
}
