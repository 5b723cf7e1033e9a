//! Finite-dimensional bimonoids as structure constants.
//!
//! Index conventions: `mul[i][j][k]` is the coefficient of `e_k` in `e_i·e_j`
//! and `comul[k][i][j]` the coefficient of `e_i⊗e_j` in `Δ(e_k)`. Internally the
//! multiplication is an `n × n²` matrix and the comultiplication `n² × n`.

mod axioms;
mod json;
mod linmap;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{solve_right, symmetry_map, Field, Matrix, Scalar};

pub use axioms::AxiomReport;
pub use json::{read_json, BimonoidFile, FieldRepr, LinMapFile};
pub use linmap::{convolution, is_bimonoid_hom, scalar_mul, LinMap};
pub(crate) use linmap::same_object;

/// A finite-dimensional bimonoid, optionally with an antipode.
#[derive(Clone, Debug)]
pub struct FinBimonoid {
    name: String,
    field: Field,
    dim: usize,
    mul: Matrix,
    unit: Vec<Scalar>,
    comul: Matrix,
    counit: Vec<Scalar>,
    antipode: Option<Matrix>,
    products: Vec<Vec<(usize, Scalar)>>,
    coproducts: Vec<Vec<(usize, usize, Scalar)>>,
}

impl PartialEq for FinBimonoid {
    /// Structural equality; the name is not compared.
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.mul == other.mul
            && self.unit == other.unit
            && self.comul == other.comul
            && self.counit == other.counit
            && self.antipode == other.antipode
    }
}

impl Eq for FinBimonoid {}

impl FinBimonoid {
    /// Builds a bimonoid from its structure matrices. Shapes and fields are
    /// validated; the axioms are not (see [`FinBimonoid::check_axioms`]).
    pub fn new(
        name: impl Into<String>,
        field: Field,
        mul: Matrix,
        unit: Vec<Scalar>,
        comul: Matrix,
        counit: Vec<Scalar>,
        antipode: Option<Matrix>,
    ) -> Result<Self> {
        let n = unit.len();
        let expect = |what: &str, m: &Matrix, shape: (usize, usize)| -> Result<()> {
            if m.field() != field {
                return Err(Error::FieldMismatch(m.field().to_string(), field.to_string()));
            }
            if m.shape() != shape {
                return Err(Error::ShapeMismatch(format!("{what} has shape {:?}, expected {shape:?}", m.shape())));
            }
            Ok(())
        };
        expect("multiplication", &mul, (n, n * n))?;
        expect("comultiplication", &comul, (n * n, n))?;
        if counit.len() != n {
            return Err(Error::ShapeMismatch(format!("counit has length {}, expected {n}", counit.len())));
        }
        if let Some(s) = &antipode {
            expect("antipode", s, (n, n))?;
        }
        if let Some(bad) = unit.iter().chain(&counit).find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(bad.field().to_string(), field.to_string()));
        }
        let products = (0..n * n)
            .map(|col| {
                (0..n)
                    .filter_map(|k| {
                        let c = mul.get(k, col);
                        (!c.is_zero()).then(|| (k, c.clone()))
                    })
                    .collect()
            })
            .collect();
        let coproducts = (0..n)
            .map(|k| {
                (0..n * n)
                    .filter_map(|row| {
                        let c = comul.get(row, k);
                        (!c.is_zero()).then(|| (row / n, row % n, c.clone()))
                    })
                    .collect()
            })
            .collect();
        Ok(FinBimonoid {
            name: name.into(),
            field,
            dim: n,
            mul,
            unit,
            comul,
            counit,
            antipode,
            products,
            coproducts,
        })
    }

    /// The unit object `1`: the one-dimensional bimonoid.
    pub fn unit_object(field: Field) -> Self {
        let one = || Matrix::identity(field, 1);
        Self::new("1", field, one(), vec![Scalar::one(field)], one(), vec![Scalar::one(field)], Some(one()))
            .expect("unit object is well formed")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `n × n²` multiplication matrix.
    pub fn mul_matrix(&self) -> &Matrix {
        &self.mul
    }

    /// `n² × n` comultiplication matrix.
    pub fn comul_matrix(&self) -> &Matrix {
        &self.comul
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn unit_matrix(&self) -> Matrix {
        Matrix::column_vector(self.field, self.unit.clone())
    }

    pub fn counit_matrix(&self) -> Matrix {
        Matrix::row_vector(self.field, self.counit.clone())
    }

    pub fn antipode(&self) -> Option<&Matrix> {
        self.antipode.as_ref()
    }

    pub fn with_antipode(&self, antipode: Option<Matrix>) -> Result<Self> {
        Self::new(
            self.name.clone(),
            self.field,
            self.mul.clone(),
            self.unit.clone(),
            self.comul.clone(),
            self.counit.clone(),
            antipode,
        )
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vec![Scalar::zero(self.field); self.dim]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vector();
        v[i] = Scalar::one(self.field);
        v
    }

    /// Nonzero terms of `e_i·e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i * self.dim + j]
    }

    /// Nonzero terms `(i, j, c)` of `Δ(e_k) = Σ c·e_i⊗e_j`.
    pub fn basis_coproduct(&self, k: usize) -> &[(usize, usize, Scalar)] {
        &self.coproducts[k]
    }

    pub fn product(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vector();
        for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in self.basis_product(i, j) {
                    out[*k] += &(&ab * c);
                }
            }
        }
        out
    }

    /// `Δ(u)` flattened into `A⊗A`.
    pub fn coproduct(&self, u: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = vec![Scalar::zero(self.field); n * n];
        for (k, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (i, j, c) in self.basis_coproduct(k) {
                out[i * n + j] += &(a * c);
            }
        }
        out
    }

    pub fn counit_of(&self, u: &[Scalar]) -> Scalar {
        dot(&self.counit, u, self.field)
    }

    /// Matrix of `x ↦ a·x`.
    pub fn left_mul_matrix(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.product(a, &self.basis_vector(j))).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// Matrix of `x ↦ x·a`.
    pub fn right_mul_matrix(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.product(&self.basis_vector(j), a)).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (i + 1..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    pub fn is_cocommutative(&self) -> bool {
        let swap = symmetry_map(self.dim, self.dim, self.field);
        &swap * &self.comul == self.comul
    }

    pub fn check_axioms(&self) -> AxiomReport {
        AxiomReport::of(self)
    }

    /// The antipode as the solution of `∇(S⊗id)Δ = ηε = ∇(id⊗S)Δ`, when one exists.
    pub fn compute_antipode(&self) -> Option<Matrix> {
        let (n, field) = (self.dim, self.field);
        // Unknown S[r][i] sits at column r·n + i; each Δ(e_k) gives 2n equations.
        let mut system = Matrix::zeros(field, 2 * n * n, n * n);
        let mut rhs = Matrix::zeros(field, 2 * n * n, 1);
        for k in 0..n {
            for t in 0..n {
                let target = &self.counit[k] * &self.unit[t];
                rhs.set(k * n + t, 0, target.clone());
                rhs.set(n * n + k * n + t, 0, target);
            }
            for (i, j, c) in self.basis_coproduct(k) {
                for r in 0..n {
                    for (t, m) in self.basis_product(r, *j) {
                        system.add_at(k * n + t, r * n + i, &(c * m));
                    }
                    for (t, m) in self.basis_product(*i, r) {
                        system.add_at(n * n + k * n + t, r * n + j, &(c * m));
                    }
                }
            }
        }
        let x = solve_right(&system, &rhs).ok()??;
        Some(Matrix::from_fn(field, n, n, |r, i| x.get(r * n + i, 0).clone()))
    }

    pub fn into_shared(self) -> Arc<Self> {
        Arc::new(self)
    }
}

pub(crate) fn dot(u: &[Scalar], v: &[Scalar], field: Field) -> Scalar {
    let mut acc = Scalar::zero(field);
    for (a, b) in u.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            acc += &(a * b);
        }
    }
    acc
}

/// `A⊗B` with structure routed through the symmetry.
pub fn tensor_product(a: &FinBimonoid, b: &FinBimonoid) -> Result<FinBimonoid> {
    if a.field != b.field {
        return Err(Error::FieldMismatch(a.field.to_string(), b.field.to_string()));
    }
    let (na, nb, field) = (a.dim, b.dim, a.field);
    let middle = Matrix::identity(field, na)
        .kron(&symmetry_map(nb, na, field))
        .kron(&Matrix::identity(field, nb));
    let mul = &a.mul.kron(&b.mul) * &middle;
    let middle_back = Matrix::identity(field, na)
        .kron(&symmetry_map(na, nb, field))
        .kron(&Matrix::identity(field, nb));
    let comul = &middle_back * &a.comul.kron(&b.comul);
    let outer = |u: &[Scalar], v: &[Scalar]| -> Vec<Scalar> {
        u.iter().flat_map(|x| v.iter().map(move |y| x * y)).collect()
    };
    let antipode = match (&a.antipode, &b.antipode) {
        (Some(s), Some(t)) => Some(s.kron(t)),
        _ => None,
    };
    FinBimonoid::new(
        format!("{}⊗{}", a.name, b.name),
        field,
        mul,
        outer(&a.unit, &b.unit),
        comul,
        outer(&a.counit, &b.counit),
        antipode,
    )
}

/// The dual bimonoid: transpose multiplication and comultiplication, swap unit and counit.
pub fn dual(a: &FinBimonoid) -> FinBimonoid {
    FinBimonoid::new(
        format!("{}^∨", a.name),
        a.field,
        a.comul.transpose(),
        a.counit.clone(),
        a.mul.transpose(),
        a.unit.clone(),
        a.antipode.as_ref().map(Matrix::transpose),
    )
    .expect("dual of a well-formed bimonoid is well formed")
}

#[cfg(test)]
mod tests;
