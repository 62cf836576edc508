//! Singular-value spectra, rank-at-threshold and knee detection.

mod dense;
mod randomized;
mod rank;

use faer::{c64, Mat};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use dense::{svd_dense, svd_dense_matrix};
pub use randomized::{svd_randomized, svd_randomized_with, RandomizedOptions};
pub use rank::{detect_knee, rank_at, rank_report, remainder_width, RankReport, KNEE_CHORD_TAU};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SvdMethod {
    Dense,
    Randomized,
}

/// Descending singular values with optional singular vectors.
#[derive(Debug, Clone)]
pub struct SpectrumResult {
    sigmas: Vec<f64>,
    u: Option<Mat<c64>>,
    v: Option<Mat<c64>>,
    method: SvdMethod,
    seed: Option<u64>,
    tol_floor: f64,
}

impl SpectrumResult {
    /// Validates ordering and positivity of `sigmas`.
    pub fn new(
        sigmas: Vec<f64>,
        u: Option<Mat<c64>>,
        v: Option<Mat<c64>>,
        method: SvdMethod,
        seed: Option<u64>,
        tol_floor: f64,
    ) -> Result<Self> {
        match sigmas.first() {
            Some(&s) if s > 0.0 && s.is_finite() => {}
            _ => return Err(Error::Degenerate("spectrum needs a positive leading singular value".into())),
        }
        if sigmas.windows(2).any(|w| !(w[1] <= w[0]) || w[1] < 0.0) {
            return Err(Error::Degenerate("singular values must be nonnegative and non-increasing".into()));
        }
        if !(0.0..1.0).contains(&tol_floor) {
            return Err(Error::Parameter(format!("tol_floor must lie in [0, 1), got {tol_floor}")));
        }
        for (m, name) in [(&u, "U"), (&v, "V")] {
            if let Some(m) = m {
                if m.ncols() != sigmas.len() {
                    return Err(Error::Parameter(format!(
                        "{name} has {} columns for {} values",
                        m.ncols(),
                        sigmas.len()
                    )));
                }
            }
        }
        Ok(Self { sigmas, u, v, method, seed, tol_floor })
    }

    /// Spectrum from values alone (dense method, zero floor).
    pub fn from_sigmas(sigmas: Vec<f64>) -> Result<Self> {
        Self::new(sigmas, None, None, SvdMethod::Dense, None, 0.0)
    }

    pub fn sigmas(&self) -> &[f64] {
        &self.sigmas
    }

    /// `σ_n / σ₁`.
    pub fn normalized(&self) -> Vec<f64> {
        let s1 = self.sigmas[0];
        self.sigmas.iter().map(|s| s / s1).collect()
    }

    pub fn len(&self) -> usize {
        self.sigmas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigmas.is_empty()
    }

    /// Observer-side singular vectors.
    pub fn u(&self) -> Option<&Mat<c64>> {
        self.u.as_ref()
    }

    /// Source-side singular vectors.
    pub fn v(&self) -> Option<&Mat<c64>> {
        self.v.as_ref()
    }

    pub fn method(&self) -> SvdMethod {
        self.method
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Smallest `σ/σ₁` the spectrum can certify.
    pub fn tol_floor(&self) -> f64 {
        self.tol_floor
    }

    /// Drops the singular vectors.
    pub fn without_vectors(mut self) -> Self {
        self.u = None;
        self.v = None;
        self
    }
}
