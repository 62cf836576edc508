//! Scalar Green kernels and interaction blocks.

mod block;
mod dump;
mod operator;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::geometry::Vec3;
use crate::special::hankel2_0;

pub use block::{assemble_dense, assemble_dense_with_cap, DenseCap, InteractionBlock, Representation};
pub use dump::{read_dense_dump, write_dense_dump, DumpHeader};
pub use operator::LinearOperator;
pub(crate) use operator::{gemm, gemm_adjoint};

/// Kernel dimensionality and wavenumber.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    pub dim: usize,
    pub k: f64,
}

impl KernelSpec {
    pub fn new(dim: usize, k: f64) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(param(format!("kernel dimension must be 2 or 3, got {dim}")));
        }
        if !(k > 0.0) || !k.is_finite() {
            return Err(param(format!("wavenumber must be positive, got {k}")));
        }
        Ok(Self { dim, k })
    }

    pub fn from_wavelength(dim: usize, wavelength: f64) -> Result<Self> {
        Self::new(dim, std::f64::consts::TAU / wavelength)
    }

    /// Kernel as a function of distance; `r` must be positive.
    #[inline]
    pub fn at_distance(&self, r: f64) -> Complex64 {
        let kr = self.k * r;
        if self.dim == 3 {
            let (s, c) = kr.sin_cos();
            Complex64::new(c / r, -s / r)
        } else {
            hankel2_0(kr)
        }
    }

    pub fn eval(&self, r: Vec3<f64>, rp: Vec3<f64>) -> Result<Complex64> {
        let dist = (r - rp).norm();
        if !(dist > 0.0) {
            return Err(Error::Singularity);
        }
        Ok(self.at_distance(dist))
    }
}

/// `exp(−jkR)/R` for outgoing waves under the `exp(+jωt)` convention.
pub fn kernel_3d(k: f64, r: Vec3<f64>, rp: Vec3<f64>) -> Result<Complex64> {
    KernelSpec::new(3, k)?.eval(r, rp)
}

/// `H₀⁽²⁾(kR)`.
pub fn kernel_2d(k: f64, r: Vec3<f64>, rp: Vec3<f64>) -> Result<Complex64> {
    KernelSpec::new(2, k)?.eval(r, rp)
}
