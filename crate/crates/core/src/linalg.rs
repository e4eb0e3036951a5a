//! Dense symmetric eigendecomposition.

use nalgebra::DMatrix;

use crate::matrix::SquareMatrix;
use crate::Scalar;

/// Eigenvalues (descending) and matching unit eigenvectors as columns of the
/// returned matrix. The input must be symmetric. Work is done in f64.
pub fn symmetric_eigen<T: Scalar>(m: &SquareMatrix<T>) -> (Vec<T>, SquareMatrix<T>) {
    let n = m.dim();
    let a = DMatrix::from_fn(n, n, |i, j| m[(i, j)].as_f64());
    let eig = a.symmetric_eigen();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| T::lit(eig.eigenvalues[i])).collect();
    let vectors = SquareMatrix::from_fn(n, |r, c| T::lit(eig.eigenvectors[(r, order[c])]));
    (values, vectors)
}
