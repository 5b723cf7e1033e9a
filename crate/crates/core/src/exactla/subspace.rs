use super::echelon::{rref, EchelonBasis};
use super::{Field, Matrix, Scalar};
use crate::error::{Error, Result};

/// Subspace of `F^n` held in canonical form: the nonzero rows of the reduced
/// row echelon form of any spanning set. Two subspaces are equal exactly when
/// their canonical bases are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Self::from_echelon(full_echelon(field, ambient))
    }

    pub fn span<I>(field: Field, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let mut e = EchelonBasis::new(field, ambient);
        for v in vectors {
            if e.is_full() {
                break;
            }
            e.insert(v);
        }
        Self::from_echelon(e)
    }

    /// Span of the columns of `m`.
    pub fn column_span(m: &Matrix) -> Self {
        Self::span(m.field(), m.rows(), m.to_columns())
    }

    pub(crate) fn from_echelon(e: EchelonBasis) -> Self {
        let (field, ambient) = (e.field(), e.width());
        let (basis, pivots) = e.into_rref();
        Subspace { field, ambient, basis, pivots }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the columns of an `ambient × dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.ambient, &self.basis)
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residue = v.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in residue.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &(c * y);
                }
            }
        }
        residue.iter().all(Scalar::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Left inverse of the basis matrix: picks out the pivot coordinates.
    pub fn coordinate_map(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim(), self.ambient);
        for (k, &p) in self.pivots.iter().enumerate() {
            m.set(k, p, Scalar::one(self.field));
        }
        m
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains(v))
    }
}

fn full_echelon(field: Field, n: usize) -> EchelonBasis {
    let mut e = EchelonBasis::new(field, n);
    for i in 0..n {
        let mut v = vec![Scalar::zero(field); n];
        v[i] = Scalar::one(field);
        e.insert(v);
    }
    e
}

pub fn subspace_equal(a: &Subspace, b: &Subspace) -> bool {
    a == b
}

/// Null space from the rows of a stack of constraint blocks sharing a column count.
///
/// Rows are absorbed incrementally, so tall stacks with small rank stay cheap.
pub fn null_space_of_rows<I>(field: Field, width: usize, rows: I) -> Subspace
where
    I: IntoIterator<Item = Vec<Scalar>>,
{
    let mut e = EchelonBasis::new(field, width);
    for r in rows {
        if e.is_full() {
            break;
        }
        e.insert(r);
    }
    let (rows, pivots) = e.into_rref();
    let free: Vec<usize> = (0..width).filter(|j| pivots.binary_search(j).is_err()).collect();
    let solutions = free.iter().map(|&f| {
        let mut v = vec![Scalar::zero(field); width];
        v[f] = Scalar::one(field);
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = -&row[f];
        }
        v
    });
    Subspace::span(field, width, solutions)
}

pub fn null_space(m: &Matrix) -> Subspace {
    null_space_of_rows(m.field(), m.cols(), m.to_rows())
}

pub fn image_basis(m: &Matrix) -> Subspace {
    Subspace::column_span(m)
}

/// Some `X` with `a·X = b`, free variables set to zero.
pub fn solve_right(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field().to_string(), b.field().to_string()));
    }
    if a.rows() != b.rows() {
        return Err(Error::ShapeMismatch(format!(
            "solve_right: {} rows on the left, {} on the right",
            a.rows(),
            b.rows()
        )));
    }
    let (r, pivots) = rref(&a.hstack(b));
    let n = a.cols();
    if pivots.iter().any(|&p| p >= n) {
        return Ok(None);
    }
    let mut x = Matrix::zeros(a.field(), n, b.cols());
    for (i, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x.set(p, j, r.get(i, n + j).clone());
        }
    }
    Ok(Some(x))
}

pub fn invert(m: &Matrix) -> Option<Matrix> {
    if !m.is_square() {
        return None;
    }
    let x = solve_right(m, &Matrix::identity(m.field(), m.rows())).ok()??;
    (&x * m).is_identity().then_some(x)
}

/// Factors an idempotent `p = ι·π` with `π·ι = id`.
pub fn split_idempotent(p: &Matrix) -> Result<(Matrix, Matrix)> {
    if !p.is_square() {
        return Err(Error::ShapeMismatch("idempotent must be square".into()));
    }
    if &(p * p) != p {
        return Err(Error::NotIdempotent);
    }
    let iota = image_basis(p).basis_matrix();
    let pi = solve_right(&iota, p)?.ok_or(Error::NotIdempotent)?;
    debug_assert!((&pi * &iota).is_identity());
    Ok((iota, pi))
}

/// Quotient `F^n / W` with a coordinate section.
///
/// Representatives are the lowest-index basis vectors not eliminated by `W`, so
/// `section` maps quotient basis vector `k` to `e_{representatives[k]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub relations: Subspace,
    pub representatives: Vec<usize>,
    /// `dim × n`, kernel exactly `relations`.
    pub projection: Matrix,
    /// `n × dim`, with `projection · section = id`.
    pub section: Matrix,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn of(relations: Subspace) -> Quotient {
        let (field, n) = (relations.field(), relations.ambient());
        // Eliminating in reversed coordinates puts pivots at the highest indices.
        let mut e = EchelonBasis::new(field, n);
        for v in relations.vectors() {
            e.insert(v.iter().rev().cloned().collect());
        }
        let (rows, rev_pivots) = e.into_rref();
        let mut eliminated = vec![None; n];
        for (row, &rp) in rows.iter().zip(&rev_pivots) {
            let original: Vec<Scalar> = row.iter().rev().cloned().collect();
            eliminated[n - 1 - rp] = Some(original);
        }
        let representatives: Vec<usize> = (0..n).filter(|&j| eliminated[j].is_none()).collect();
        let mut index = vec![usize::MAX; n];
        for (k, &j) in representatives.iter().enumerate() {
            index[j] = k;
        }
        let dim = representatives.len();
        let mut projection = Matrix::zeros(field, dim, n);
        for j in 0..n {
            match &eliminated[j] {
                None => projection.set(index[j], j, Scalar::one(field)),
                Some(row) => {
                    for (&r, k) in representatives.iter().zip(0..) {
                        if !row[r].is_zero() {
                            projection.set(k, j, -&row[r]);
                        }
                    }
                }
            }
        }
        let mut section = Matrix::zeros(field, n, dim);
        for (k, &j) in representatives.iter().enumerate() {
            section.set(j, k, Scalar::one(field));
        }
        Quotient { relations, representatives, projection, section }
    }
}
