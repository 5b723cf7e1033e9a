use std::sync::Arc;

use super::{AbGroup, AbHom};
use crate::exactla::{Field, Matrix, Scalar};
use crate::hopfcore::{FinBimonoid, LinMap};

/// The group algebra `F[G]`: `e_g·e_h = e_{g+h}`, `Δ(e_g) = e_g⊗e_g`, `S(e_g) = e_{-g}`.
pub fn group_algebra(g: &AbGroup, field: Field) -> FinBimonoid {
    let n = g.order() as usize;
    let one = Scalar::one(field);
    let elems: Vec<Vec<u64>> = g.elements().collect();
    let mut mul = Matrix::zeros(field, n, n * n);
    let mut comul = Matrix::zeros(field, n * n, n);
    let mut antipode = Matrix::zeros(field, n, n);
    for (a, x) in elems.iter().enumerate() {
        for (b, y) in elems.iter().enumerate() {
            mul.set(g.index_of(&g.add(x, y)), a * n + b, one.clone());
        }
        comul.set(a * n + a, a, one.clone());
        antipode.set(g.index_of(&g.neg(x)), a, one.clone());
    }
    let mut unit = vec![Scalar::zero(field); n];
    unit[0] = one.clone();
    let counit = vec![one; n];
    FinBimonoid::new(format!("{field}[{}]", g.display()), field, mul, unit, comul, counit, Some(antipode))
        .expect("group algebra is well formed")
}

/// The function algebra `F^G`: pointwise product on the basis of indicator functions.
pub fn function_algebra(g: &AbGroup, field: Field) -> FinBimonoid {
    let n = g.order() as usize;
    let one = Scalar::one(field);
    let elems: Vec<Vec<u64>> = g.elements().collect();
    let mut mul = Matrix::zeros(field, n, n * n);
    let mut comul = Matrix::zeros(field, n * n, n);
    let mut antipode = Matrix::zeros(field, n, n);
    for (a, x) in elems.iter().enumerate() {
        mul.set(a, a * n + a, one.clone());
        for (b, y) in elems.iter().enumerate() {
            comul.set(a * n + b, g.index_of(&g.add(x, y)), one.clone());
        }
        antipode.set(g.index_of(&g.neg(x)), a, one.clone());
    }
    let unit = vec![one.clone(); n];
    let mut counit = vec![Scalar::zero(field); n];
    counit[0] = one;
    FinBimonoid::new(format!("{field}^{}", g.display()), field, mul, unit, comul, counit, Some(antipode))
        .expect("function algebra is well formed")
}

/// `ρ_* : F[G] → F[H]`, `e_g ↦ e_{ρ(g)}`.
pub fn induced_hom(f: &AbHom, field: Field) -> LinMap {
    let a = Arc::new(group_algebra(f.domain(), field));
    let b = Arc::new(group_algebra(f.codomain(), field));
    let mut m = Matrix::zeros(field, b.dim(), a.dim());
    for (i, x) in f.domain().elements().enumerate() {
        m.set(f.codomain().index_of(&f.apply(&x)), i, Scalar::one(field));
    }
    LinMap::new(a, b, m).expect("shapes agree")
}

/// `F[H] → F[G]`, `e_h ↦ Σ_{ρ(g)=h} e_g`.
pub fn counting_integral(f: &AbHom, field: Field) -> LinMap {
    let forward = induced_hom(f, field);
    LinMap::new(forward.codomain().clone(), forward.domain().clone(), forward.matrix().transpose())
        .expect("shapes agree")
}
