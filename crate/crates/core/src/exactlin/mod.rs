//! Exact dense linear algebra over prime fields and the rationals.
//!
//! Every homological computation in the crate reduces to kernels, cokernels
//! and linear solves over these matrices. Bases are fixed by reduced-echelon
//! conventions so identical inputs give identical outputs.

mod field;
mod matrix;
pub mod poly;

pub use field::{FieldSpec, Scalar, DEFAULT_PRIME};
pub use matrix::ExactMatrix;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("linear system has no solution")]
    NoSolution,
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("cannot parse scalar `{0}`")]
    BadScalar(String),
    #[error("cannot parse field `{0}` (expected `QQ` or `Fp <p>`)")]
    BadField(String),
}

/// Null space basis (columns), canonical.
pub fn kernel(m: &ExactMatrix) -> ExactMatrix {
    m.kernel()
}

/// Cokernel projection and cokernel dimension.
pub fn cokernel(m: &ExactMatrix) -> (ExactMatrix, usize) {
    m.cokernel()
}

/// Particular solution of `a * x = b`.
pub fn solve(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
    a.solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;

    const F: FieldSpec = FieldSpec::Prime(32003);

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let v: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        ExactMatrix::from_i64_rows(F, cols, &v)
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let k = kernel(&ExactMatrix::identity(F, 2));
        assert_eq!(k.shape(), (2, 0));
    }

    #[test]
    fn kernel_of_row_one_one() {
        let k = kernel(&m(&[&[1, 1]]));
        assert_eq!(k, m(&[&[1], &[-1]]));
    }

    #[test]
    fn kernel_of_rank_two_4x3() {
        // third column = first + 2 * second
        let a = m(&[&[1, 0, 1], &[0, 1, 2], &[2, 3, 8], &[5, -1, 3]]);
        assert_eq!(a.rank(), 2);
        let k = kernel(&a);
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn cokernel_cases() {
        let (p, d) = cokernel(&ExactMatrix::identity(F, 3));
        assert_eq!(d, 0);
        assert_eq!(p.rows(), 0);

        let (p, d) = cokernel(&ExactMatrix::zeros(F, 3, 2));
        assert_eq!(d, 3);
        assert!(p.is_identity());

        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[-1, -2, -3]]);
        let (p, d) = cokernel(&a);
        assert_eq!(d, 2);
        assert!(p.mul(&a).is_zero());
        assert_eq!(p.rank(), 2);
    }

    #[test]
    fn solve_cases() {
        let b = m(&[&[3, 4], &[5, 6]]);
        assert_eq!(solve(&ExactMatrix::identity(F, 2), &b).unwrap(), b);
        let a = m(&[&[1, 1]]);
        let x = solve(&a, &m(&[&[0]])).unwrap();
        assert!(a.mul(&x).is_zero());
        assert_eq!(
            solve(&m(&[&[1], &[0]]), &m(&[&[0], &[1]])),
            Err(LinalgError::NoSolution)
        );
        assert!(matches!(
            solve(&m(&[&[1]]), &m(&[&[1], &[1]])),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rationals_work_too() {
        let q = FieldSpec::Rationals;
        let a = ExactMatrix::from_i64_rows(q, 2, &[vec![2, 1], vec![4, 3]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert_eq!(q.format(inv.get(0, 0)), "3/2");
    }

    fn arb_matrix() -> impl Strategy<Value = (u64, usize, usize, usize)> {
        (any::<u64>(), 0usize..6, 0usize..6, 0usize..4)
    }

    /// Random matrix of bounded rank: product of two random factors.
    fn build((seed, r, c, k): (u64, usize, usize, usize)) -> ExactMatrix {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a = ExactMatrix::random(F, r, k, &mut rng);
        let b = ExactMatrix::random(F, k, c, &mut rng);
        a.mul(&b)
    }

    proptest! {
        #[test]
        fn rank_nullity(spec in arb_matrix()) {
            let a = build(spec);
            let k = a.kernel();
            prop_assert_eq!(a.rank() + k.cols(), a.cols());
            prop_assert!(a.mul(&k).is_zero());
            prop_assert_eq!(k.rank(), k.cols());
        }

        #[test]
        fn cokernel_annihilates(spec in arb_matrix()) {
            let a = build(spec);
            let (p, d) = a.cokernel();
            prop_assert_eq!(d, a.rows() - a.rank());
            prop_assert!(p.mul(&a).is_zero());
            prop_assert_eq!(p.rank(), d);
        }

        #[test]
        fn solve_is_exact(spec in arb_matrix(), seed in any::<u64>()) {
            let a = build(spec);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let x0 = ExactMatrix::random(F, a.cols(), 2, &mut rng);
            let b = a.mul(&x0);
            let x = a.solve(&b).unwrap();
            prop_assert_eq!(a.mul(&x), b);
            // determinism
            prop_assert_eq!(a.solve(&a.mul(&x0)).unwrap(), x);
        }
    }
}
