use serde::{Deserialize, Serialize};

use crate::error::{param, Result};
use crate::geometry::{build_scene, GeometrySpec, ScenePair};
use crate::kernel::{assemble_dense, InteractionBlock};
use crate::shadow::{knee_estimate, ShadowEstimate};
use crate::spectrum::{
    rank_report, svd_dense, svd_randomized_with, RandomizedOptions, RankReport, SpectrumResult, SvdMethod,
};

/// Settings for one geometry → spectrum → rank pipeline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseOptions {
    pub method: SvdMethod,
    /// Threshold for rank and remainder width.
    pub tau: f64,
    /// Stopping level of the randomized solver; defaults to `tau`.
    pub target_tau: Option<f64>,
    pub seed: u64,
    pub vectors: bool,
    /// Memory the matrix-free operator may spend on cached entries.
    pub budget_bytes: usize,
}

impl Default for CaseOptions {
    fn default() -> Self {
        Self {
            method: SvdMethod::Randomized,
            tau: 1e-12,
            target_tau: None,
            seed: 42,
            vectors: false,
            budget_bytes: 3 << 30,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CaseReport {
    pub spec: GeometrySpec,
    pub scene: ScenePair<f64>,
    pub ka: f64,
    pub estimate: ShadowEstimate<f64>,
    pub spectrum: SpectrumResult,
    pub report: RankReport,
}

pub fn analyze_case(spec: &GeometrySpec, opts: &CaseOptions) -> Result<CaseReport> {
    spec.validate()?;
    let scene = build_scene::<f64>(spec, spec.lambda)?;
    let estimate = knee_estimate(&scene)?;
    let spectrum = match opts.method {
        SvdMethod::Dense => svd_dense(&assemble_dense(&scene)?, opts.vectors)?,
        SvdMethod::Randomized => {
            let op = InteractionBlock::operator_with_budget(&scene, opts.budget_bytes)?;
            let ro = RandomizedOptions { vectors: opts.vectors, ..Default::default() };
            svd_randomized_with(&op, opts.target_tau.unwrap_or(opts.tau), opts.seed, &ro)?
        }
    };
    let report = rank_report(&spectrum, estimate.dof, opts.tau)?;
    let ka = 2.0 * std::f64::consts::PI * spec.a / spec.lambda;
    Ok(CaseReport { spec: spec.clone(), scene, ka, estimate, spectrum, report })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub ka: f64,
    pub knee_pred: f64,
    pub knee_detected: Option<usize>,
    pub rank: usize,
    pub remainder_width: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingStudy {
    pub tau: f64,
    pub rows: Vec<ScalingRow>,
    /// Least-squares slope of `log(remainder_width)` against `log(ka)`.
    pub slope: f64,
}

impl ScalingRow {
    pub fn from_case(case: &CaseReport) -> Self {
        Self {
            ka: case.ka,
            knee_pred: case.report.knee_pred,
            knee_detected: case.report.knee_detected,
            rank: case.report.rank,
            remainder_width: case.report.remainder_width,
        }
    }
}

/// Slope of the least-squares line through `(ln x, ln y)`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(param("slope needs at least two paired samples"));
    }
    if x.iter().chain(y).any(|&v| !(v > 0.0 && v.is_finite())) {
        return Err(param("log-log slope needs positive finite samples"));
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|v| (v - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(param("slope needs at least two distinct sizes"));
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    Ok(sxy / sxx)
}

/// Runs every member of `family` at `tau` and fits the remainder growth.
pub fn scaling_study(family: &[GeometrySpec], tau: f64, opts: &CaseOptions) -> Result<ScalingStudy> {
    let opts = CaseOptions { tau, vectors: false, ..*opts };
    let mut rows = Vec::with_capacity(family.len());
    for spec in family {
        let case = analyze_case(spec, &opts)?;
        log::info!("{} a={} remainder={}", spec.shape, spec.a, case.report.remainder_width);
        rows.push(ScalingRow::from_case(&case));
    }
    study_from_rows(tau, rows)
}

pub fn study_from_rows(tau: f64, rows: Vec<ScalingRow>) -> Result<ScalingStudy> {
    let x: Vec<f64> = rows.iter().map(|r| r.ka).collect();
    let y: Vec<f64> = rows.iter().map(|r| r.remainder_width as f64).collect();
    let slope = loglog_slope(&x, &y)?;
    Ok(ScalingStudy { tau, rows, slope })
}
