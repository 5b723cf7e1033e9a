//! Exact field arithmetic and dense linear algebra.
//!
//! Everything here is exact: equality of matrices and subspaces is literal.
//! Tensor products flatten lexicographically, `(i, j) ↦ i·dim(W) + j`.

mod echelon;
mod matrix;
mod scalar;
mod subspace;

pub use echelon::{rank, rref, EchelonBasis};
pub use matrix::{symmetry_map, Matrix};
pub use scalar::{Field, Scalar};
pub use subspace::{
    image_basis, invert, null_space, null_space_of_rows, solve_right, split_idempotent,
    subspace_equal, Quotient, Subspace,
};

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::RATIONALS;

    fn q(s: &str) -> Scalar {
        Scalar::parse(Q, s).unwrap()
    }

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn rref_examples() {
        let (r, p) = rref(&Matrix::from_ints(Q, &[&[2, 4], &[1, 2]]));
        assert_eq!(r, Matrix::from_ints(Q, &[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);

        let id = Matrix::identity(Q, 3);
        assert_eq!(rref(&id), (id.clone(), vec![0, 1, 2]));

        let (r, p) = rref(&Matrix::from_ints(f2(), &[&[1, 1], &[1, 1]]));
        assert_eq!(r, Matrix::from_ints(f2(), &[&[1, 1], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn null_space_examples() {
        let z = null_space(&Matrix::zeros(Q, 2, 2));
        assert_eq!(z, Subspace::full(Q, 2));
        assert_eq!(z.vectors()[0], vec![q("1"), q("0")]);

        let line = null_space(&Matrix::from_ints(Q, &[&[1, 1]]));
        assert_eq!(line.vectors(), &[vec![q("1"), q("-1")]]);

        assert_eq!(null_space(&Matrix::from_ints(Q, &[&[1, 2], &[3, 4]])).dim(), 0);
    }

    #[test]
    fn kron_examples() {
        let swap = symmetry_map(1, 2, Q);
        assert!(swap.is_identity());
        let swap2 = Matrix::from_ints(Q, &[&[0, 1], &[1, 0]]);
        let k = Matrix::identity(Q, 2).kron(&swap2);
        assert_eq!(k.block(0, 2, 0, 2), swap2);
        assert_eq!(k.block(2, 2, 2, 2), swap2);
        assert!(k.block(0, 2, 2, 2).is_zero());
        assert_eq!(Matrix::from_ints(Q, &[&[2]]).kron(&Matrix::from_ints(Q, &[&[3]])), Matrix::from_ints(Q, &[&[6]]));
    }

    #[test]
    fn swap_tensor_swap_matches_symmetry() {
        // kron(s, s) on V⊗V⊗V⊗V (dim 2 each) with V⊗V in the middle regrouped:
        // it swaps factors 1↔2 and 3↔4, which is s_{2,2} ⊗ s_{2,2} by construction.
        let s = symmetry_map(2, 2, Q);
        let ss = s.kron(&s);
        for idx in 0..16 {
            let (a, b, c, d) = (idx >> 3 & 1, idx >> 2 & 1, idx >> 1 & 1, idx & 1);
            let mut v = vec![Scalar::zero(Q); 16];
            v[idx] = Scalar::one(Q);
            let w = ss.apply(&v);
            let target = (b << 3) | (a << 2) | (d << 1) | c;
            for (k, x) in w.iter().enumerate() {
                assert_eq!(x.is_one(), k == target);
            }
        }
    }

    #[test]
    fn symmetry_examples() {
        let s = symmetry_map(2, 2, Q);
        assert!(s.get(0, 0).is_one() && s.get(3, 3).is_one());
        assert!(s.get(2, 1).is_one() && s.get(1, 2).is_one());
        let s23 = symmetry_map(2, 3, Q);
        let s32 = symmetry_map(3, 2, Q);
        assert!((&s32 * &s23).is_identity());
    }

    #[test]
    fn split_idempotent_examples() {
        let (i, p) = split_idempotent(&Matrix::from_ints(Q, &[&[1, 0], &[0, 0]])).unwrap();
        assert_eq!(i, Matrix::from_ints(Q, &[&[1], &[0]]));
        assert_eq!(p, Matrix::from_ints(Q, &[&[1, 0]]));

        let half = Matrix::from_ints(Q, &[&[1, 1], &[1, 1]]).scale(&q("1/2"));
        let (i, p) = split_idempotent(&half).unwrap();
        assert_eq!(i, Matrix::from_ints(Q, &[&[1], &[1]]));
        assert_eq!(p, Matrix::row_vector(Q, vec![q("1/2"), q("1/2")]));
        assert!((&p * &i).is_identity());
        assert_eq!(&i * &p, half);

        let id = Matrix::identity(Q, 3);
        assert_eq!(split_idempotent(&id).unwrap(), (id.clone(), id));

        assert!(matches!(
            split_idempotent(&Matrix::from_ints(Q, &[&[2]])),
            Err(crate::Error::NotIdempotent)
        ));
    }

    #[test]
    fn solve_invert_subspace_examples() {
        assert_eq!(invert(&Matrix::from_ints(Q, &[&[2]])).unwrap(), Matrix::row_vector(Q, vec![q("1/2")]));
        let x = solve_right(&Matrix::from_ints(Q, &[&[1, 1]]), &Matrix::from_ints(Q, &[&[1]])).unwrap().unwrap();
        assert_eq!(x, Matrix::from_ints(Q, &[&[1], &[0]]));
        assert!(solve_right(&Matrix::zeros(Q, 1, 1), &Matrix::from_ints(Q, &[&[1]])).unwrap().is_none());

        let a = Subspace::span(Q, 2, [vec![q("1"), q("1")]]);
        let b = Subspace::span(Q, 2, [vec![q("2"), q("2")]]);
        assert!(subspace_equal(&a, &b));
    }

    #[test]
    fn quotient_picks_low_representatives() {
        let rel = Subspace::span(Q, 4, [
            vec![q("-1"), q("0"), q("1"), q("0")],
            vec![q("0"), q("-1"), q("0"), q("1")],
        ]);
        let quot = Quotient::of(rel.clone());
        assert_eq!(quot.representatives, vec![0, 1]);
        assert!((&quot.projection * &quot.section).is_identity());
        for v in rel.vectors() {
            assert!(quot.projection.apply(v).iter().all(Scalar::is_zero));
        }
        assert_eq!(null_space(&quot.projection), rel);
    }
}
