use serde::Serialize;

use super::FinBimonoid;
use crate::exactla::Scalar;

/// Outcome of every bimonoid axiom, checked by contracting structure constants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub associative: bool,
    pub left_unital: bool,
    pub right_unital: bool,
    pub coassociative: bool,
    pub left_counital: bool,
    pub right_counital: bool,
    pub comul_multiplicative: bool,
    pub counit_multiplicative: bool,
    pub comul_unit: bool,
    pub counit_unit: bool,
    /// `None` when no antipode is present.
    pub antipode: Option<bool>,
    pub commutative: bool,
    pub cocommutative: bool,
}

impl AxiomReport {
    pub(super) fn of(a: &FinBimonoid) -> Self {
        AxiomReport {
            associative: associative(a),
            left_unital: unital(a, true),
            right_unital: unital(a, false),
            coassociative: coassociative(a),
            left_counital: counital(a, true),
            right_counital: counital(a, false),
            comul_multiplicative: comul_multiplicative(a),
            counit_multiplicative: counit_multiplicative(a),
            comul_unit: a.coproduct(a.unit()) == outer(a.unit(), a.unit()),
            counit_unit: a.counit_of(a.unit()).is_one(),
            antipode: a.antipode().map(|_| antipode_valid(a)),
            commutative: a.is_commutative(),
            cocommutative: a.is_cocommutative(),
        }
    }

    /// All bimonoid axioms hold (antipode, if present, included).
    pub fn is_bimonoid(&self) -> bool {
        self.associative
            && self.left_unital
            && self.right_unital
            && self.coassociative
            && self.left_counital
            && self.right_counital
            && self.comul_multiplicative
            && self.counit_multiplicative
            && self.comul_unit
            && self.counit_unit
            && self.antipode != Some(false)
    }

    pub fn is_hopf(&self) -> bool {
        self.is_bimonoid() && self.antipode == Some(true)
    }

    pub fn is_bicommutative_hopf(&self) -> bool {
        self.is_hopf() && self.commutative && self.cocommutative
    }
}

fn outer(u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    u.iter().flat_map(|x| v.iter().map(move |y| x * y)).collect()
}

fn associative(a: &FinBimonoid) -> bool {
    let n = a.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let ij = a.product(&a.basis_vector(i), &a.basis_vector(j));
            (0..n).all(|k| {
                let ek = a.basis_vector(k);
                let jk = a.product(&a.basis_vector(j), &ek);
                a.product(&ij, &ek) == a.product(&a.basis_vector(i), &jk)
            })
        })
    })
}

fn unital(a: &FinBimonoid, left: bool) -> bool {
    (0..a.dim()).all(|i| {
        let e = a.basis_vector(i);
        let p = if left { a.product(a.unit(), &e) } else { a.product(&e, a.unit()) };
        p == e
    })
}

/// Applies `Δ` to one tensor factor of a flattened `A⊗A` vector.
fn comul_on_factor(a: &FinBimonoid, t: &[Scalar], first: bool) -> Vec<Scalar> {
    let n = a.dim();
    let mut out = vec![Scalar::zero(a.field()); n * n * n];
    for (idx, c) in t.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let (x, y) = (idx / n, idx % n);
        let split = if first { x } else { y };
        for (p, q, d) in a.basis_coproduct(split) {
            let cd = c * d;
            let pos = if first { (p * n + q) * n + y } else { (x * n + p) * n + q };
            out[pos] += &cd;
        }
    }
    out
}

fn coassociative(a: &FinBimonoid) -> bool {
    (0..a.dim()).all(|k| {
        let d = a.coproduct(&a.basis_vector(k));
        comul_on_factor(a, &d, true) == comul_on_factor(a, &d, false)
    })
}

fn counital(a: &FinBimonoid, left: bool) -> bool {
    let n = a.dim();
    (0..n).all(|k| {
        let mut v = a.zero_vector();
        for (i, j, c) in a.basis_coproduct(k) {
            let (kept, dropped) = if left { (*j, *i) } else { (*i, *j) };
            v[kept] += &(c * &a.counit()[dropped]);
        }
        v == a.basis_vector(k)
    })
}

/// Product in `A⊗A` of two flattened tensors.
fn tensor_square_product(a: &FinBimonoid, s: &[Scalar], t: &[Scalar]) -> Vec<Scalar> {
    let n = a.dim();
    let mut out = vec![Scalar::zero(a.field()); n * n];
    for (x, c) in s.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (y, d) in t.iter().enumerate().filter(|(_, d)| !d.is_zero()) {
            let cd = c * d;
            for (p, u) in a.basis_product(x / n, y / n) {
                for (q, v) in a.basis_product(x % n, y % n) {
                    out[p * n + q] += &(&cd * &(u * v));
                }
            }
        }
    }
    out
}

fn comul_multiplicative(a: &FinBimonoid) -> bool {
    let n = a.dim();
    let deltas: Vec<Vec<Scalar>> = (0..n).map(|i| a.coproduct(&a.basis_vector(i))).collect();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let ij = a.product(&a.basis_vector(i), &a.basis_vector(j));
            a.coproduct(&ij) == tensor_square_product(a, &deltas[i], &deltas[j])
        })
    })
}

fn counit_multiplicative(a: &FinBimonoid) -> bool {
    let n = a.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let ij = a.product(&a.basis_vector(i), &a.basis_vector(j));
            a.counit_of(&ij) == &a.counit()[i] * &a.counit()[j]
        })
    })
}

fn antipode_valid(a: &FinBimonoid) -> bool {
    let Some(s) = a.antipode() else { return false };
    let images: Vec<Vec<Scalar>> = (0..a.dim()).map(|i| s.column(i)).collect();
    (0..a.dim()).all(|k| {
        let target: Vec<Scalar> = a.unit().iter().map(|u| u * &a.counit()[k]).collect();
        let mut left = a.zero_vector();
        let mut right = a.zero_vector();
        for (i, j, c) in a.basis_coproduct(k) {
            let l = a.product(&images[*i], &a.basis_vector(*j));
            let r = a.product(&a.basis_vector(*i), &images[*j]);
            for (x, y) in left.iter_mut().zip(&l) {
                *x += &(c * y);
            }
            for (x, y) in right.iter_mut().zip(&r) {
                *x += &(c * y);
            }
        }
        left == target && right == target
    })
}
