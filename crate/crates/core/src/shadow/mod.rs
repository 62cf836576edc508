//! Cumulative mutual shadow areas and lengths, and the DoF predictors
//! derived from them.

mod clip;
mod closed_form;
mod los;
mod planar;
mod predict;
mod sweep;

use serde::{Deserialize, Serialize};

use crate::scalar::Real;

pub use clip::{clip_convex, polygon_area};
pub use closed_form::{shadow_discs_closed_form, shadow_lines_closed_form};
pub use los::{los_area_clouds, los_length_clouds, shadow_area_los, shadow_length_los};
pub use planar::shadow_length_planar;
pub use predict::{is_quasi_planar, knee_estimate, predict_knee};
pub use sweep::{direction_shadow, shadow_area_sweep, SweepSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShadowKind {
    Area,
    Length,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShadowMethod {
    LosIntegral,
    ClosedForm,
    PlaneWaveSweep,
}

/// Cumulative mutual shadow with its DoF predictor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShadowEstimate<T> {
    /// Area (m²) or length (m).
    pub value: T,
    pub kind: ShadowKind,
    /// `value / λ²` for areas, `value / λ` for lengths.
    pub dof: T,
    pub method: ShadowMethod,
    /// Relative quadrature error estimate; `None` when no refinement was possible.
    pub rel_err_est: Option<T>,
}

impl<T: Real> ShadowEstimate<T> {
    pub fn new(value: T, kind: ShadowKind, wavelength: T, method: ShadowMethod, rel_err_est: Option<T>) -> Self {
        let dof = match kind {
            ShadowKind::Area => value / (wavelength * wavelength),
            ShadowKind::Length => value / wavelength,
        };
        Self { value, kind, dof, method, rel_err_est }
    }

    /// Same shadow, predictor re-expressed at another wavelength.
    pub fn at_wavelength(&self, wavelength: T) -> Self {
        Self::new(self.value, self.kind, wavelength, self.method, self.rel_err_est)
    }
}
