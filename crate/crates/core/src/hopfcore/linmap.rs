use std::sync::Arc;

use super::FinBimonoid;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Scalar};

/// A linear map between the underlying spaces of two bimonoids.
#[derive(Clone, Debug)]
pub struct LinMap {
    domain: Arc<FinBimonoid>,
    codomain: Arc<FinBimonoid>,
    matrix: Matrix,
}

impl PartialEq for LinMap {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
            && same_object(&self.domain, &other.domain)
            && same_object(&self.codomain, &other.codomain)
    }
}

impl Eq for LinMap {}

impl LinMap {
    pub fn new(domain: Arc<FinBimonoid>, codomain: Arc<FinBimonoid>, matrix: Matrix) -> Result<Self> {
        for end in [&domain, &codomain] {
            if end.field() != matrix.field() {
                return Err(Error::FieldMismatch(matrix.field().to_string(), end.field().to_string()));
            }
        }
        if matrix.shape() != (codomain.dim(), domain.dim()) {
            return Err(Error::ShapeMismatch(format!(
                "map {} → {} needs a {}x{} matrix, found {:?}",
                domain.name(),
                codomain.name(),
                codomain.dim(),
                domain.dim(),
                matrix.shape()
            )));
        }
        Ok(LinMap { domain, codomain, matrix })
    }

    pub fn identity(a: Arc<FinBimonoid>) -> Self {
        let m = Matrix::identity(a.field(), a.dim());
        LinMap { domain: a.clone(), codomain: a, matrix: m }
    }

    /// The unit `η_A : 1 → A`.
    pub fn unit_of(a: Arc<FinBimonoid>) -> Self {
        let one = Arc::new(FinBimonoid::unit_object(a.field()));
        LinMap { matrix: a.unit_matrix(), domain: one, codomain: a }
    }

    /// The counit `ε_A : A → 1`.
    pub fn counit_of(a: Arc<FinBimonoid>) -> Self {
        let one = Arc::new(FinBimonoid::unit_object(a.field()));
        LinMap { matrix: a.counit_matrix(), domain: a, codomain: one }
    }

    /// The trivial homomorphism `η_B ∘ ε_A`.
    pub fn trivial(a: Arc<FinBimonoid>, b: Arc<FinBimonoid>) -> Self {
        let m = &b.unit_matrix() * &a.counit_matrix();
        LinMap { domain: a, codomain: b, matrix: m }
    }

    /// A vector of `A` as a map `1 → A`.
    pub fn from_vector(a: Arc<FinBimonoid>, v: Vec<Scalar>) -> Result<Self> {
        let one = Arc::new(FinBimonoid::unit_object(a.field()));
        let m = Matrix::column_vector(a.field(), v);
        Self::new(one, a, m)
    }

    /// A covector of `A` as a map `A → 1`.
    pub fn from_covector(a: Arc<FinBimonoid>, v: Vec<Scalar>) -> Result<Self> {
        let one = Arc::new(FinBimonoid::unit_object(a.field()));
        let m = Matrix::row_vector(a.field(), v);
        Self::new(a, one, m)
    }

    pub fn domain(&self) -> &Arc<FinBimonoid> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FinBimonoid> {
        &self.codomain
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn field(&self) -> Field {
        self.matrix.field()
    }

    pub fn image_of(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(v)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinMap) -> Result<LinMap> {
        if !same_object(&inner.codomain, &self.domain) {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose {} → {} after {} → {}",
                self.domain.name(),
                self.codomain.name(),
                inner.domain.name(),
                inner.codomain.name()
            )));
        }
        Ok(LinMap {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: &self.matrix * &inner.matrix,
        })
    }

    /// Same matrix, endpoints replaced by structurally equal ones.
    pub fn with_endpoints(&self, domain: Arc<FinBimonoid>, codomain: Arc<FinBimonoid>) -> Result<LinMap> {
        LinMap::new(domain, codomain, self.matrix.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Scalar value of a map `1 → 1`.
    pub fn as_scalar(&self) -> Option<&Scalar> {
        self.matrix.as_scalar()
    }

    pub fn is_bimonoid_hom(&self) -> bool {
        is_bimonoid_hom(self)
    }

    pub fn parallel(&self, other: &LinMap) -> bool {
        same_object(&self.domain, &other.domain) && same_object(&self.codomain, &other.codomain)
    }
}

pub(crate) fn same_object(a: &Arc<FinBimonoid>, b: &Arc<FinBimonoid>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub fn scalar_mul(lambda: &Scalar, f: &LinMap) -> LinMap {
    LinMap { domain: f.domain.clone(), codomain: f.codomain.clone(), matrix: f.matrix.scale(lambda) }
}

/// Checks `f∘∇ = ∇∘(f⊗f)`, `f∘η = η`, `Δ∘f = (f⊗f)∘Δ` and `ε∘f = ε` on basis elements.
pub fn is_bimonoid_hom(f: &LinMap) -> bool {
    let (a, b) = (&*f.domain, &*f.codomain);
    if a.field() != b.field() {
        return false;
    }
    let images: Vec<Vec<Scalar>> = (0..a.dim()).map(|i| f.matrix.column(i)).collect();
    if f.image_of(a.unit()) != b.unit() {
        return false;
    }
    for (i, img) in images.iter().enumerate() {
        if b.counit_of(img) != a.counit()[i] {
            return false;
        }
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = f.image_of(&a.product(&a.basis_vector(i), &a.basis_vector(j)));
            if lhs != b.product(&images[i], &images[j]) {
                return false;
            }
        }
    }
    let nb = b.dim();
    for k in 0..a.dim() {
        let mut pushed = vec![Scalar::zero(a.field()); nb * nb];
        for (i, j, c) in a.basis_coproduct(k) {
            for (p, x) in images[*i].iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let cx = c * x;
                for (q, y) in images[*j].iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                    pushed[p * nb + q] += &(&cx * y);
                }
            }
        }
        if b.coproduct(&images[k]) != pushed {
            return false;
        }
    }
    true
}

/// `f ∗ g = ∇_B ∘ (f⊗g) ∘ Δ_A` for parallel maps.
pub fn convolution(f: &LinMap, g: &LinMap) -> Result<LinMap> {
    if !f.parallel(g) {
        return Err(Error::ShapeMismatch("convolution needs parallel maps".into()));
    }
    let (a, b) = (&*f.domain, &*f.codomain);
    let columns: Vec<Vec<Scalar>> = (0..a.dim())
        .map(|k| {
            let mut acc = b.zero_vector();
            for (i, j, c) in a.basis_coproduct(k) {
                let term = b.product(&f.matrix.column(*i), &g.matrix.column(*j));
                for (x, y) in acc.iter_mut().zip(&term) {
                    if !y.is_zero() {
                        *x += &(c * y);
                    }
                }
            }
            acc
        })
        .collect();
    LinMap::new(f.domain.clone(), f.codomain.clone(), Matrix::from_columns(a.field(), b.dim(), &columns))
}
