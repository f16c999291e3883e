//! Thin dense layer over the eigensolver backend.

use faer::{MatRef, Side};

use crate::error::{Error, Result};
use crate::operators::SparseOperator;

/// Column-major dense real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[j * self.rows + i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[j * self.rows + i] = v;
    }

    /// Column `j` as a contiguous slice.
    pub fn col(&self, j: usize) -> &[f64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn from_sparse(op: &SparseOperator) -> Self {
        let n = op.dim();
        let mut m = Self::zeros(n, n);
        for &(r, c, v) in op.entries() {
            m.set(r as usize, c as usize, v);
        }
        m
    }
}

/// Eigendecomposition of a symmetric matrix: ascending eigenvalues and the
/// orthonormal eigenvector columns.
pub(crate) fn symmetric_eigen(m: &DenseMatrix) -> Result<(Vec<f64>, DenseMatrix)> {
    let n = m.rows;
    debug_assert_eq!(m.rows, m.cols);
    let view: MatRef<'_, f64> = MatRef::from_column_major_slice(&m.data, n, n);
    let evd = view
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| Error::DimensionMismatch(n, n))?;
    let mut values = Vec::with_capacity(n);
    for k in 0..n {
        values.push(evd.S()[k]);
    }
    let mut vectors = DenseMatrix::zeros(n, n);
    let u = evd.U();
    for j in 0..n {
        for i in 0..n {
            vectors.set(i, j, u[(i, j)]);
        }
    }
    // The backend returns nondecreasing eigenvalues; the rest of the crate
    // relies on that ordering.
    debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
    Ok((values, vectors))
}

/// Singular values of a dense complex matrix given as interleaved
/// column-major (re, im) pairs.
pub(crate) fn complex_singular_values(
    re: &DenseMatrix,
    im: &DenseMatrix,
) -> Result<Vec<f64>> {
    use faer::Mat;
    use num_complex::Complex64;
    let m = Mat::from_fn(re.rows, re.cols, |i, j| Complex64::new(re.get(i, j), im.get(i, j)));
    m.singular_values()
        .map_err(|_| Error::DimensionMismatch(re.rows, re.cols))
}
