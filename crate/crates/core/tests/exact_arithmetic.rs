use hopfcalc::exactla::{invert, null_space, rank, rref, solve_right, Field, Matrix, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

const Q: Field = Field::RATIONALS;

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Q), (0usize..4).prop_map(|i| Field::prime([2, 3, 5, 7][i]).unwrap())]
}

fn big_prime_field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(4_294_967_291u64), Just(2_147_483_647u64), Just(65_521u64)].prop_map(|p| Field::prime(p).unwrap())
}

fn rational() -> impl Strategy<Value = Scalar> {
    (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| Scalar::from_ratio(Q, &BigInt::from(n), &BigInt::from(d)).unwrap())
}

fn scalar_in(field: Field) -> impl Strategy<Value = Scalar> {
    (-40i64..=40, 1i64..=9).prop_map(move |(n, d)| {
        let d = Scalar::from_int(field, d);
        let d = if d.is_zero() { Scalar::one(field) } else { d };
        Scalar::from_int(field, n).checked_div(&d).unwrap()
    })
}

fn matrix(field: Field, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| {
        let rows = v.chunks(cols).map(|r| r.iter().map(|&x| Scalar::from_int(field, x)).collect()).collect();
        Matrix::from_rows(field, rows).unwrap()
    })
}

fn field_and_matrix() -> impl Strategy<Value = (Field, Matrix)> {
    (fields(), 1usize..5, 1usize..5).prop_flat_map(|(f, r, c)| (Just(f), matrix(f, r, c)))
}

proptest! {
    #[test]
    fn rationals_are_reduced(x in rational()) {
        let r = x.to_big_rational();
        prop_assert!(r.denom().is_positive());
        let g = num_integer::Integer::gcd(r.numer(), r.denom());
        prop_assert!(g.is_one() || r.numer().is_zero());
        let text = x.to_string();
        prop_assert_eq!(Scalar::parse(Q, &text).unwrap(), x);
    }

    #[test]
    fn rational_arithmetic_matches_bigrational(x in rational(), y in rational()) {
        let (a, b) = (x.to_big_rational(), y.to_big_rational());
        prop_assert_eq!((&x + &y).to_big_rational(), &a + &b);
        prop_assert_eq!((&x - &y).to_big_rational(), &a - &b);
        prop_assert_eq!((&x * &y).to_big_rational(), &a * &b);
        if !b.is_zero() {
            prop_assert_eq!(x.checked_div(&y).unwrap().to_big_rational(), &a / &b);
        }
    }

    #[test]
    fn prime_residues_stay_in_range(f in big_prime_field(), n in any::<i64>(), m in any::<i64>()) {
        let p = BigInt::from(f.characteristic());
        let (x, y) = (Scalar::from_int(f, n), Scalar::from_int(f, m));
        for v in [&x * &y, &x + &y, &x - &y] {
            let r = v.to_big_rational();
            prop_assert!(r.is_integer());
            prop_assert!(!r.numer().is_negative() && *r.numer() < p);
        }
        let expected = (BigInt::from(n) * BigInt::from(m)) % &p;
        let expected = if expected.is_negative() { expected + &p } else { expected };
        prop_assert_eq!((&x * &y).to_big_rational(), BigRational::from_integer(expected));
    }

    #[test]
    fn field_axioms((f, a, b, c) in fields().prop_flat_map(|f| (Just(f), scalar_in(f), scalar_in(f), scalar_in(f)))) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a - &a, Scalar::zero(f));
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn matrix_product_is_associative(
        (f, a, b, c) in (fields(), 1usize..4, 1usize..4, 1usize..4, 1usize..4)
            .prop_flat_map(|(f, n, m, k, l)| (Just(f), matrix(f, n, m), matrix(f, m, k), matrix(f, k, l)))
    ) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!((&a * &b).field(), f);
        prop_assert_eq!((&a * &b).entries().len(), a.rows() * b.cols());
    }

    #[test]
    fn rank_nullity((_, m) in field_and_matrix()) {
        let null = null_space(&m);
        prop_assert_eq!(rank(&m) + null.dim(), m.cols());
        for v in null.vectors() {
            prop_assert!(m.apply(v).iter().all(Scalar::is_zero));
        }
        let (r, pivots) = rref(&m);
        prop_assert_eq!(pivots.len(), rank(&m));
        prop_assert_eq!(rref(&r).0, r.clone());
        for (row, &p) in pivots.iter().enumerate() {
            prop_assert!(r.get(row, p).is_one());
        }
    }

    #[test]
    fn solve_right_solves((f, a, x) in (fields(), 1usize..5, 1usize..5, 1usize..3)
        .prop_flat_map(|(f, n, m, k)| (Just(f), matrix(f, n, m), matrix(f, m, k))))
    {
        let b = &a * &x;
        let sol = solve_right(&a, &b).unwrap().expect("a consistent system is solvable");
        prop_assert_eq!(&a * &sol, b);
        prop_assert_eq!(sol.field(), f);
    }

    #[test]
    fn inverses_are_two_sided((f, m) in (fields(), 1usize..5).prop_flat_map(|(f, n)| (Just(f), matrix(f, n, n)))) {
        match invert(&m) {
            Some(inv) => {
                prop_assert!((&m * &inv).is_identity());
                prop_assert!((&inv * &m).is_identity());
            }
            None => prop_assert!(rank(&m) < m.rows()),
        }
        prop_assert_eq!(m.field(), f);
    }
}
