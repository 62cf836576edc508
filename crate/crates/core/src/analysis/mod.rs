//! Aperture/diffraction subspace diagnostics and scaling studies.

mod dft;
mod localization;
mod scaling;
pub mod svg;

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::{rank_at, SpectrumResult};

pub use dft::{mode_dft, predict_band, ModeDft, SpectralBand};
pub use localization::{
    edge_concentration, localization_map, localization_map_with, LocalizationMap, LocalizationOptions,
};
pub use scaling::{
    analyze_case, loglog_slope, scaling_study, study_from_rows, CaseOptions, CaseReport, ScalingRow, ScalingStudy,
};

/// Cap reported by [`edge_concentration`] when the interior carries no energy.
pub const RATIO_CAP: f64 = 1e6;

/// Column group of the singular vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Group {
    /// The first `round(knee_pred)` columns.
    Aperture,
    /// The columns after the aperture group, up to `rank_at(tau)` or a fixed count.
    Remainder,
}

/// Column range of `group`. `remainder_count` replaces `rank_at(tau)` as the
/// end of the remainder group.
pub fn group_columns(
    spectrum: &SpectrumResult,
    group: Group,
    knee_pred: f64,
    tau: f64,
    remainder_count: Option<usize>,
) -> Result<Range<usize>> {
    let knee = (knee_pred.round().max(1.0) as usize).min(spectrum.len());
    let range = match group {
        Group::Aperture => 0..knee,
        Group::Remainder => {
            let end = match remainder_count {
                Some(c) => knee + c,
                None => rank_at(spectrum, tau)?,
            };
            knee..end.max(knee)
        }
    };
    if range.is_empty() {
        return Err(Error::Degenerate(format!("{group:?} group is empty")));
    }
    Ok(range)
}
