//! Integrals and cointegrals of bimonoids and integrals along homomorphisms,
//! each computed as the solution space of a linear system.
//!
//! Side conventions: a left integral `φ: 1 → A` satisfies `φ·a = ε(a)φ`, a
//! right one `a·φ = ε(a)φ`. A left cointegral `ψ: A → 1` satisfies
//! `(ψ⊗id)Δ = ψ(−)η`, a right one `(id⊗ψ)Δ = ψ(−)η`.
//!
//! For `ξ: A → B` an integral along `ξ` is `μ: B → A`. It is a right integral when
//! `μ(b)·a = μ(b·ξ(a))` and `(μ⊗id)Δ_B = (id⊗ξ)Δ_A μ` hold, and a left integral when
//! `a·μ(b) = μ(ξ(a)·b)` and `(id⊗μ)Δ_B = (ξ⊗id)Δ_A μ` hold. It is normalized when
//! `ξμξ = ξ`. Unknown matrices `μ` are flattened row-major: entry `(p, q)` sits at
//! `p·dim(B) + q`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactla::{null_space_of_rows, rank, solve_right, Matrix, Scalar, Subspace};
use crate::hopfcore::{dual, FinBimonoid, LinMap};
use crate::kerco::SubHopf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

impl Side {
    fn has_left(self) -> bool {
        matches!(self, Side::Left | Side::TwoSided)
    }

    fn has_right(self) -> bool {
        matches!(self, Side::Right | Side::TwoSided)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::TwoSided => "two-sided",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" | "l" => Ok(Side::Left),
            "right" | "r" => Ok(Side::Right),
            "two-sided" | "both" | "two" => Ok(Side::TwoSided),
            other => Err(Error::Parse(format!("unknown side {other:?}"))),
        }
    }
}

/// A space of (co)integrals. Elements are matrices of a fixed shape stored
/// flattened row-major in `basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralSpace {
    kind: Side,
    anchor: String,
    shape: (usize, usize),
    basis: Subspace,
}

impl IntegralSpace {
    pub fn kind(&self) -> Side {
        self.kind
    }

    /// Name of the bimonoid or homomorphism the space belongs to.
    pub fn anchor(&self) -> &str {
        &self.anchor
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.shape
    }

    pub fn basis(&self) -> &Subspace {
        &self.basis
    }

    pub fn elements(&self) -> Vec<Matrix> {
        self.basis.vectors().iter().map(|v| unflatten(v, self.shape)).collect()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        m.shape() == self.shape && self.basis.contains(m.entries())
    }

    pub fn report(&self, normalized: Option<&Matrix>, generator: Option<bool>) -> Value {
        let mut out = json!({
            "kind": self.kind,
            "anchor": self.anchor,
            "dimension": self.dim(),
            "basis": self.elements().iter().map(Matrix::to_json).collect::<Vec<_>>(),
            "normalized": normalized.map(Matrix::to_json),
        });
        if let Some(g) = generator {
            out["generator"] = json!(g);
        }
        out
    }
}

fn unflatten(v: &[Scalar], (rows, cols): (usize, usize)) -> Matrix {
    let field = v[0].field();
    Matrix::from_fn(field, rows, cols, |r, c| v[r * cols + c].clone())
}

fn map_anchor(xi: &LinMap) -> String {
    format!("{} → {}", xi.domain().name(), xi.codomain().name())
}

// ---------------------------------------------------------------------------
// Integrals and cointegrals of a bimonoid

/// Rows of `φ·e_j = ε_j φ` (left) and `e_j·φ = ε_j φ` (right).
fn absorption_rows(a: &FinBimonoid, side: Side) -> Vec<Vec<Scalar>> {
    let (n, field) = (a.dim(), a.field());
    let mut rows = Vec::new();
    let mut sides = Vec::new();
    if side.has_left() {
        sides.push(true);
    }
    if side.has_right() {
        sides.push(false);
    }
    for left in sides {
        for j in 0..n {
            let mut block = vec![vec![Scalar::zero(field); n]; n];
            for i in 0..n {
                let terms = if left { a.basis_product(i, j) } else { a.basis_product(j, i) };
                for (t, c) in terms {
                    block[*t][i] += c;
                }
            }
            for (t, row) in block.iter_mut().enumerate() {
                row[t] -= &a.counit()[j];
            }
            rows.extend(block.into_iter().filter(|r| !r.iter().all(Scalar::is_zero)));
        }
    }
    rows
}

/// Direct check of the integral identities for a vector of `a`.
pub fn is_integral(a: &FinBimonoid, v: &[Scalar], side: Side) -> bool {
    if v.len() != a.dim() {
        return false;
    }
    (0..a.dim()).all(|j| {
        let e = a.basis_vector(j);
        let expect: Vec<Scalar> = v.iter().map(|x| x * &a.counit()[j]).collect();
        (!side.has_left() || a.product(v, &e) == expect) && (!side.has_right() || a.product(&e, v) == expect)
    })
}

/// Direct check of the cointegral identities for a covector of `a`.
pub fn is_cointegral(a: &FinBimonoid, w: &[Scalar], side: Side) -> bool {
    let (n, field) = (a.dim(), a.field());
    if w.len() != n {
        return false;
    }
    (0..n).all(|k| {
        let mut left = vec![Scalar::zero(field); n];
        let mut right = vec![Scalar::zero(field); n];
        for (i, j, c) in a.basis_coproduct(k) {
            left[*j] += &(c * &w[*i]);
            right[*i] += &(c * &w[*j]);
        }
        let expect: Vec<Scalar> = a.unit().iter().map(|x| x * &w[k]).collect();
        (!side.has_left() || left == expect) && (!side.has_right() || right == expect)
    })
}

fn checked(space: IntegralSpace, ok: impl Fn(&[Scalar]) -> bool) -> IntegralSpace {
    for v in space.basis.vectors() {
        assert!(ok(v), "solution of the {} system for {} fails the identities", space.kind, space.anchor);
    }
    space
}

pub fn integral_space(a: &FinBimonoid, side: Side) -> IntegralSpace {
    let basis = null_space_of_rows(a.field(), a.dim(), absorption_rows(a, side));
    let space = IntegralSpace { kind: side, anchor: a.name().to_string(), shape: (a.dim(), 1), basis };
    checked(space, |v| is_integral(a, v, side))
}

/// Cointegrals of `a` are the integrals of its dual, read as covectors.
pub fn cointegral_space(a: &FinBimonoid, side: Side) -> IntegralSpace {
    let basis = null_space_of_rows(a.field(), a.dim(), absorption_rows(&dual(a), side));
    let space = IntegralSpace { kind: side, anchor: a.name().to_string(), shape: (1, a.dim()), basis };
    checked(space, |w| is_cointegral(a, w, side))
}

/// Solves `lin(v) = target` for `v` in `space`, where `images[k] = lin(basis[k])`.
/// Returns one solution and the dimension of the affine solution set.
fn affine_point(space: &Subspace, images: &[Vec<Scalar>], target: Vec<Scalar>) -> Option<(Vec<Scalar>, usize)> {
    let field = space.field();
    let m = Matrix::from_columns(field, target.len(), images);
    let x = solve_right(&m, &Matrix::column_vector(field, target)).expect("shapes agree")?;
    let mut v = vec![Scalar::zero(field); space.ambient()];
    for (k, b) in space.vectors().iter().enumerate() {
        let c = x.get(k, 0);
        if c.is_zero() {
            continue;
        }
        for (s, y) in v.iter_mut().zip(b) {
            *s += &(c * y);
        }
    }
    Some((v, space.dim() - rank(&m)))
}

/// The normalized two-sided integral `σ_A` with the dimension of the affine
/// set of normalized two-sided integrals (0 when the solution is unique).
pub fn normalized_integral_solution(a: &FinBimonoid) -> Option<(Vec<Scalar>, usize)> {
    let space = integral_space(a, Side::TwoSided);
    let images: Vec<Vec<Scalar>> = space.basis.vectors().iter().map(|v| vec![a.counit_of(v)]).collect();
    affine_point(&space.basis, &images, vec![Scalar::one(a.field())])
}

pub fn normalized_integral(a: &FinBimonoid) -> Option<Vec<Scalar>> {
    normalized_integral_solution(a).map(|(v, _)| v)
}

/// The normalized two-sided cointegral `σ^A` with `σ^A(η) = 1`.
pub fn normalized_cointegral_solution(a: &FinBimonoid) -> Option<(Vec<Scalar>, usize)> {
    let space = cointegral_space(a, Side::TwoSided);
    let field = a.field();
    let images: Vec<Vec<Scalar>> =
        space.basis.vectors().iter().map(|w| vec![crate::hopfcore::dot(w, a.unit(), field)]).collect();
    affine_point(&space.basis, &images, vec![Scalar::one(field)])
}

pub fn normalized_cointegral(a: &FinBimonoid) -> Option<Vec<Scalar>> {
    normalized_cointegral_solution(a).map(|(w, _)| w)
}

// ---------------------------------------------------------------------------
// Integrals along a homomorphism

fn require_hom(xi: &LinMap) -> Result<()> {
    if xi.is_bimonoid_hom() {
        Ok(())
    } else {
        Err(Error::NotAHomomorphism)
    }
}

fn push_block(rows: &mut Vec<Vec<Scalar>>, block: Vec<Vec<Scalar>>) {
    rows.extend(block.into_iter().filter(|r| !r.iter().all(Scalar::is_zero)));
}

fn along_rows(xi: &LinMap, side: Side) -> Vec<Vec<Scalar>> {
    let (a, b) = (&**xi.domain(), &**xi.codomain());
    let (na, nb, field) = (a.dim(), b.dim(), a.field());
    let width = na * nb;
    let zero_block = |rows: usize| vec![vec![Scalar::zero(field); width]; rows];
    let xcol: Vec<Vec<Scalar>> = (0..na).map(|j| xi.matrix().column(j)).collect();
    let mut rows = Vec::new();

    for left in [false, true] {
        if (left && !side.has_left()) || (!left && !side.has_right()) {
            continue;
        }
        // Module identities: μ(b)·a = μ(b·ξ(a)) on the right, a·μ(b) = μ(ξ(a)·b) on the left.
        for q in 0..nb {
            let bq = b.basis_vector(q);
            for j in 0..na {
                let mut block = zero_block(na);
                for p in 0..na {
                    let terms = if left { a.basis_product(j, p) } else { a.basis_product(p, j) };
                    for (t, c) in terms {
                        block[*t][p * nb + q] += c;
                    }
                }
                let moved = if left { b.product(&xcol[j], &bq) } else { b.product(&bq, &xcol[j]) };
                for (s, c) in moved.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    for (t, row) in block.iter_mut().enumerate() {
                        row[t * nb + s] -= c;
                    }
                }
                push_block(&mut rows, block);
            }
        }
        // Comodule identities, one block per basis vector of B.
        for q in 0..nb {
            let mut block = zero_block(na * nb);
            if left {
                // (id⊗μ)Δ_B = (ξ⊗id)Δ_A μ, component (u, t) at u·na + t.
                for (u, j, c) in b.basis_coproduct(q) {
                    for t in 0..na {
                        block[u * na + t][t * nb + j] += c;
                    }
                }
                for p in 0..na {
                    for (i, t, c) in a.basis_coproduct(p) {
                        for (u, x) in xcol[*i].iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                            block[u * na + t][p * nb + q] -= &(c * x);
                        }
                    }
                }
            } else {
                // (μ⊗id)Δ_B = (id⊗ξ)Δ_A μ, component (t, u) at t·nb + u.
                for (i, u, c) in b.basis_coproduct(q) {
                    for t in 0..na {
                        block[t * nb + u][t * nb + i] += c;
                    }
                }
                for p in 0..na {
                    for (t, j, c) in a.basis_coproduct(p) {
                        for (u, x) in xcol[*j].iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                            block[t * nb + u][p * nb + q] -= &(c * x);
                        }
                    }
                }
            }
            push_block(&mut rows, block);
        }
    }
    rows
}

/// Direct check of the integral-along identities for a matrix `μ: B → A`.
pub fn is_integral_along_matrix(mu: &Matrix, xi: &LinMap, side: Side) -> bool {
    let (a, b) = (&**xi.domain(), &**xi.codomain());
    let (na, nb, field) = (a.dim(), b.dim(), a.field());
    if mu.shape() != (na, nb) || mu.field() != field {
        return false;
    }
    let xcol: Vec<Vec<Scalar>> = (0..na).map(|j| xi.matrix().column(j)).collect();
    let mcol: Vec<Vec<Scalar>> = (0..nb).map(|q| mu.column(q)).collect();
    for q in 0..nb {
        let bq = b.basis_vector(q);
        for j in 0..na {
            let aj = a.basis_vector(j);
            if side.has_right() && a.product(&mcol[q], &aj) != mu.apply(&b.product(&bq, &xcol[j])) {
                return false;
            }
            if side.has_left() && a.product(&aj, &mcol[q]) != mu.apply(&b.product(&xcol[j], &bq)) {
                return false;
            }
        }
        let pushed = a.coproduct(&mcol[q]);
        if side.has_right() {
            let mut lhs = vec![Scalar::zero(field); na * nb];
            for (i, u, c) in b.basis_coproduct(q) {
                for t in 0..na {
                    lhs[t * nb + u] += &(c * &mcol[*i][t]);
                }
            }
            let mut rhs = vec![Scalar::zero(field); na * nb];
            for t in 0..na {
                for jp in 0..na {
                    let w = &pushed[t * na + jp];
                    if w.is_zero() {
                        continue;
                    }
                    for u in 0..nb {
                        rhs[t * nb + u] += &(w * &xcol[jp][u]);
                    }
                }
            }
            if lhs != rhs {
                return false;
            }
        }
        if side.has_left() {
            let mut lhs = vec![Scalar::zero(field); nb * na];
            for (u, j, c) in b.basis_coproduct(q) {
                for t in 0..na {
                    lhs[u * na + t] += &(c * &mcol[*j][t]);
                }
            }
            let mut rhs = vec![Scalar::zero(field); nb * na];
            for ip in 0..na {
                for t in 0..na {
                    let w = &pushed[ip * na + t];
                    if w.is_zero() {
                        continue;
                    }
                    for u in 0..nb {
                        rhs[u * na + t] += &(w * &xcol[ip][u]);
                    }
                }
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// `mu: B → A` is an integral along `xi: A → B` on the given side.
pub fn is_integral_along(mu: &LinMap, xi: &LinMap, side: Side) -> bool {
    crate::hopfcore::same_object(mu.domain(), xi.codomain())
        && crate::hopfcore::same_object(mu.codomain(), xi.domain())
        && is_integral_along_matrix(mu.matrix(), xi, side)
}

pub fn integral_along_space(xi: &LinMap, side: Side) -> Result<IntegralSpace> {
    require_hom(xi)?;
    let (na, nb) = (xi.domain().dim(), xi.codomain().dim());
    let basis = null_space_of_rows(xi.field(), na * nb, along_rows(xi, side));
    let space = IntegralSpace { kind: side, anchor: map_anchor(xi), shape: (na, nb), basis };
    Ok(checked(space, |v| is_integral_along_matrix(&unflatten(v, (na, nb)), xi, side)))
}

/// The normalized integral along `ξ` together with the dimension of the affine
/// set of normalized two-sided integrals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedIntegral {
    pub map: LinMap,
    pub affine_dim: usize,
}

pub fn normalized_along_solution(xi: &LinMap) -> Result<Option<NormalizedIntegral>> {
    let space = integral_along_space(xi, Side::TwoSided)?;
    let x = xi.matrix();
    let images: Vec<Vec<Scalar>> = space.elements().iter().map(|m| (&(x * m) * x).entries().to_vec()).collect();
    let Some((v, affine_dim)) = affine_point(&space.basis, &images, x.entries().to_vec()) else {
        return Ok(None);
    };
    let map = LinMap::new(xi.codomain().clone(), xi.domain().clone(), unflatten(&v, space.shape))?;
    let m = map.matrix();
    let mx = m * x;
    let xm = x * m;
    if &(&mx * m) != m {
        return Err(Error::IdentityFailed(format!("μξμ ≠ μ along {}", map_anchor(xi))));
    }
    if &mx * &mx != mx || &xm * &xm != xm {
        return Err(Error::IdentityFailed(format!("ξμ or μξ is not idempotent along {}", map_anchor(xi))));
    }
    Ok(Some(NormalizedIntegral { map, affine_dim }))
}

pub fn normalized_integral_along(xi: &LinMap) -> Result<Option<LinMap>> {
    Ok(normalized_along_solution(xi)?.map(|s| s.map))
}

/// Whether `μ` generates: `μξμ′ = μ′ = μ′ξμ` for every left and right integral `μ′`.
pub fn is_generator(mu: &LinMap, xi: &LinMap) -> Result<bool> {
    require_hom(xi)?;
    if !is_integral_along(mu, xi, Side::TwoSided) {
        return Err(Error::NotAnIntegral);
    }
    let (m, x) = (mu.matrix(), xi.matrix());
    let mx = m * x;
    for side in [Side::Right, Side::Left] {
        for other in integral_along_space(xi, side)?.elements() {
            if &mx * &other != other || &(&other * x) * m != other {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Transfers to the kernel and cokernel, and the two actions of kernel vectors

/// Coordinates of `μ(η_B)` in the kernel basis.
pub fn transfer_to_kernel(mu: &LinMap, xi: &LinMap, ker: &SubHopf) -> Result<Vec<Scalar>> {
    if !is_integral_along(mu, xi, Side::Right) {
        return Err(Error::NotAnIntegral);
    }
    let v = mu.image_of(xi.codomain().unit());
    ker.coordinates(&v)
        .ok_or_else(|| Error::FactorizationFailed("μ(η) does not lie in the kernel".into()))
}

/// The covector `r` on the cokernel with `r ∘ cok(ξ) = ε_A ∘ μ`.
pub fn transfer_to_cokernel(mu: &LinMap, xi: &LinMap, cok: &SubHopf) -> Result<Vec<Scalar>> {
    if !is_integral_along(mu, xi, Side::Right) {
        return Err(Error::NotAnIntegral);
    }
    let e = &xi.domain().counit_matrix() * mu.matrix();
    let section = cok.splitting();
    let r = &e * section;
    if &r * cok.map().matrix() != e {
        return Err(Error::FactorizationFailed("ε∘μ does not descend through the cokernel".into()));
    }
    Ok(r.entries().to_vec())
}

fn kernel_vector(phi: &[Scalar], ker: &SubHopf) -> Result<Vec<Scalar>> {
    if phi.len() != ker.dim() {
        return Err(Error::ShapeMismatch(format!("kernel vector has length {}, expected {}", phi.len(), ker.dim())));
    }
    Ok(ker.map().image_of(phi))
}

/// `φ⋉μ: b ↦ ker(φ)·μ(b)`.
pub fn ltimes(phi: &[Scalar], ker: &SubHopf, mu: &LinMap) -> Result<LinMap> {
    let k = kernel_vector(phi, ker)?;
    let a = mu.codomain();
    let cols: Vec<Vec<Scalar>> = (0..mu.domain().dim()).map(|q| a.product(&k, &mu.matrix().column(q))).collect();
    LinMap::new(mu.domain().clone(), a.clone(), Matrix::from_columns(a.field(), a.dim(), &cols))
}

/// `μ⋊φ: b ↦ μ(b)·ker(φ)`.
pub fn rtimes(mu: &LinMap, phi: &[Scalar], ker: &SubHopf) -> Result<LinMap> {
    let k = kernel_vector(phi, ker)?;
    let a = mu.codomain();
    let cols: Vec<Vec<Scalar>> = (0..mu.domain().dim()).map(|q| a.product(&mu.matrix().column(q), &k)).collect();
    LinMap::new(mu.domain().clone(), a.clone(), Matrix::from_columns(a.field(), a.dim(), &cols))
}

#[cfg(test)]
mod tests;
