#![allow(dead_code)]

use hopfcalc::abgroup::random::{random_hom, rng};
use hopfcalc::abgroup::{AbGroup, AbHom};
use hopfcalc::exactla::{Field, Scalar};
use proptest::prelude::*;

pub const Q: Field = Field::RATIONALS;

pub fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Q), prop::sample::select(vec![2u64, 3, 5, 7]).prop_map(|p| Field::prime(p).unwrap())]
}

/// A group of order at most `cap`, built from up to two cyclic factors.
pub fn group(cap: u64) -> impl Strategy<Value = AbGroup> {
    prop::collection::vec(1u64..=cap.min(8), 0..=2)
        .prop_filter("order cap", move |v| v.iter().product::<u64>() <= cap)
        .prop_map(|v| AbGroup::canonical(&v).unwrap())
}

pub fn hom(cap: u64) -> impl Strategy<Value = AbHom> {
    (group(cap), group(cap), any::<u64>()).prop_map(|(g, h, seed)| random_hom(&mut rng(seed), &g, &h))
}

/// Homomorphisms `G₀ → G₁ → … → G_len`.
pub fn chain(len: usize, cap: u64) -> impl Strategy<Value = Vec<AbHom>> {
    (prop::collection::vec(group(cap), len + 1), any::<u64>()).prop_map(|(gs, seed)| {
        let mut r = rng(seed);
        gs.windows(2).map(|w| random_hom(&mut r, &w[0], &w[1])).collect()
    })
}

pub fn inverse_order(field: Field, n: u64) -> Option<Scalar> {
    Scalar::from_int(field, n as i64).inv()
}
