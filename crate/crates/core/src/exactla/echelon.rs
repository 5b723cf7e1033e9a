use super::{Field, Matrix, Scalar};

/// Incrementally built row-echelon basis of a span of row vectors.
///
/// Rows are kept sorted by pivot with unit pivots. Insertion reduces the new row
/// against the existing ones, so the cost is proportional to the current rank.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: Field,
    width: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(field: Field, width: usize) -> Self {
        EchelonBasis { field, width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    /// Reduces `v` against the basis; returns the remainder.
    pub fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row).skip(p) {
                if !r.is_zero() {
                    *x -= &(&c * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v.to_vec()).iter().all(Scalar::is_zero)
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.width, "echelon row width mismatch");
        if self.is_full() {
            return false;
        }
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        for x in v.iter_mut().skip(p) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    /// Fully reduced rows (zeros above every pivot) and their pivot columns.
    pub fn into_rref(mut self) -> (Vec<Vec<Scalar>>, Vec<usize>) {
        for k in (0..self.rows.len()).rev() {
            let p = self.pivots[k];
            let (above, rest) = self.rows.split_at_mut(k);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                if row[p].is_zero() {
                    continue;
                }
                let c = row[p].clone();
                for (x, r) in row.iter_mut().zip(pivot_row).skip(p) {
                    if !r.is_zero() {
                        *x -= &(&c * r);
                    }
                }
            }
        }
        (self.rows, self.pivots)
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

/// Reduced row echelon form with leftmost pivots.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut basis = EchelonBasis::new(m.field(), m.cols());
    for i in 0..m.rows() {
        basis.insert(m.row(i).to_vec());
    }
    let (mut rows, pivots) = basis.into_rref();
    rows.resize(m.rows(), vec![Scalar::zero(m.field()); m.cols()]);
    (Matrix::from_fn(m.field(), m.rows(), m.cols(), |i, j| rows[i][j].clone()), pivots)
}

pub fn rank(m: &Matrix) -> usize {
    let mut basis = EchelonBasis::new(m.field(), m.cols());
    for i in 0..m.rows() {
        basis.insert(m.row(i).to_vec());
    }
    basis.rank()
}
