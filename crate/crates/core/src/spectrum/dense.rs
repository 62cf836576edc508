use faer::{c64, Mat, MatRef, Par};

use crate::error::{Error, Result};
use crate::kernel::{InteractionBlock, Representation};

use super::{SpectrumResult, SvdMethod};

/// Full SVD of a dense block.
pub fn svd_dense(block: &InteractionBlock, vectors: bool) -> Result<SpectrumResult> {
    match block.representation() {
        Representation::Dense(z) => svd_dense_matrix(z.as_ref(), vectors),
        Representation::Operator { .. } => Err(Error::Size { rows: block.rows(), cols: block.cols(), cap: 0 }),
    }
}

/// Full SVD of a complex matrix; the floor is `max(m, n) ε`.
pub fn svd_dense_matrix(z: MatRef<'_, c64>, vectors: bool) -> Result<SpectrumResult> {
    faer::set_global_parallelism(Par::Seq);
    let floor = (z.nrows().max(z.ncols()) as f64 * f64::EPSILON).min(0.5);
    if vectors {
        let svd = z.thin_svd().map_err(|e| Error::Convergence(format!("{e:?}")))?;
        let sigmas: Vec<f64> = svd.S().column_vector().iter().map(|s| s.re).collect();
        let u: Mat<c64> = svd.U().to_owned();
        let v: Mat<c64> = svd.V().to_owned();
        SpectrumResult::new(sigmas, Some(u), Some(v), SvdMethod::Dense, None, floor)
    } else {
        let sigmas = z.singular_values().map_err(|e| Error::Convergence(format!("{e:?}")))?;
        SpectrumResult::new(sigmas, None, None, SvdMethod::Dense, None, floor)
    }
}
