use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};

use super::SpectrumResult;

/// Relative level closing the knee-detection chord.
pub const KNEE_CHORD_TAU: f64 = 0.1;

/// Minimum vertical gap, as a fraction of the chord's drop, for a knee.
const KNEE_MIN_GAP: f64 = 0.05;

/// `𝓡*(τ)`: the number of `σ_n/σ₁ > τ`.
pub fn rank_at(spectrum: &SpectrumResult, tau: f64) -> Result<usize> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(param(format!("tau must lie in (0, 1), got {tau}")));
    }
    if tau < spectrum.tol_floor() {
        return Err(Error::Floor { tau, floor: spectrum.tol_floor() });
    }
    let s1 = spectrum.sigmas()[0];
    Ok(spectrum.sigmas().iter().take_while(|&&s| s / s1 > tau).count())
}

/// Knee index (1-based) of the normalized curve: the point of
/// `(n, log₁₀ σ_n/σ₁)` farthest above the chord from `n = 1` to the last
/// index above [`KNEE_CHORD_TAU`]. Ties go to the smaller index.
pub fn detect_knee(spectrum: &SpectrumResult) -> Result<usize> {
    let norm = spectrum.normalized();
    let reliable = norm.iter().filter(|&&s| s > spectrum.tol_floor()).count();
    if reliable < 10 {
        return Err(Error::Degenerate(format!("only {reliable} values above the floor")));
    }
    let end = rank_at(spectrum, KNEE_CHORD_TAU.max(spectrum.tol_floor()))?;
    if end < 3 {
        return Err(Error::Degenerate("no plateau before the first decade of decay".into()));
    }
    let y: Vec<f64> = norm[..end].iter().map(|s| s.log10()).collect();
    let drop = y[0] - y[end - 1];
    let slope = (y[end - 1] - y[0]) / (end - 1) as f64;
    let (mut best, mut gap) = (0, f64::NEG_INFINITY);
    for (i, &yi) in y.iter().enumerate() {
        let g = yi - (y[0] + slope * i as f64);
        if g > gap {
            gap = g;
            best = i;
        }
    }
    if !(gap > KNEE_MIN_GAP * drop) {
        return Err(Error::Degenerate("log-scale curve has no knee".into()));
    }
    Ok(best + 1)
}

/// `max(0, 𝓡*(τ) − round(knee_pred))`.
pub fn remainder_width(spectrum: &SpectrumResult, knee_pred: f64, tau: f64) -> Result<usize> {
    if !(knee_pred >= 0.0) {
        return Err(param("knee predictor must be nonnegative"));
    }
    let rank = rank_at(spectrum, tau)?;
    Ok(rank.saturating_sub(knee_pred.round() as usize))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankReport {
    pub tau: f64,
    pub rank: usize,
    pub knee_pred: f64,
    /// `None` when the curve has no detectable knee.
    pub knee_detected: Option<usize>,
    pub remainder_width: usize,
}

pub fn rank_report(spectrum: &SpectrumResult, knee_pred: f64, tau: f64) -> Result<RankReport> {
    let knee_detected = match detect_knee(spectrum) {
        Ok(k) => Some(k),
        Err(Error::Degenerate(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(RankReport {
        tau,
        rank: rank_at(spectrum, tau)?,
        knee_pred,
        knee_detected,
        remainder_width: remainder_width(spectrum, knee_pred, tau)?,
    })
}
