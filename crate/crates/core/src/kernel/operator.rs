use faer::linalg::matmul::matmul;
use faer::{c64, Accum, Mat, MatRef, Par};

/// Block application of a complex linear map and of its adjoint.
pub trait LinearOperator: Sync {
    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;
    /// `A x` for a block of columns `x` (`ncols × b`).
    fn apply_block(&self, x: MatRef<'_, c64>) -> Mat<c64>;
    /// `Aᴴ y` for a block of columns `y` (`nrows × b`).
    fn apply_adjoint_block(&self, y: MatRef<'_, c64>) -> Mat<c64>;
}

pub(crate) fn gemm(a: MatRef<'_, c64>, b: MatRef<'_, c64>) -> Mat<c64> {
    let mut out = Mat::zeros(a.nrows(), b.ncols());
    matmul(out.as_mut(), Accum::Replace, a, b, c64::new(1.0, 0.0), Par::Seq);
    out
}

/// `aᴴ b`.
pub(crate) fn gemm_adjoint(a: MatRef<'_, c64>, b: MatRef<'_, c64>) -> Mat<c64> {
    let mut out = Mat::zeros(a.ncols(), b.ncols());
    matmul(out.as_mut(), Accum::Replace, a.adjoint(), b, c64::new(1.0, 0.0), Par::Seq);
    out
}

impl LinearOperator for Mat<c64> {
    fn nrows(&self) -> usize {
        Mat::nrows(self)
    }

    fn ncols(&self) -> usize {
        Mat::ncols(self)
    }

    fn apply_block(&self, x: MatRef<'_, c64>) -> Mat<c64> {
        gemm(self.as_ref(), x)
    }

    fn apply_adjoint_block(&self, y: MatRef<'_, c64>) -> Mat<c64> {
        gemm_adjoint(self.as_ref(), y)
    }
}
