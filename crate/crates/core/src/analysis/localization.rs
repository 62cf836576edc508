use std::ops::Range;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::ScenePair;
use crate::spectrum::SpectrumResult;

use super::{group_columns, Group, RATIO_CAP};

/// Per-observer-point energy of a group of left singular vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalizationMap {
    pub group: Group,
    pub columns: Range<usize>,
    /// Mean over the group's columns of `|U[i][c]|²`.
    pub mean_square: Vec<f64>,
    /// `log₁₀` of the max-normalized RMS, clipped to `[−1, 0]`.
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LocalizationOptions {
    /// Fixed remainder group size instead of `rank_at(tau) − knee`.
    pub remainder_count: Option<usize>,
    /// Average each point with its neighbours within 1.5 sampling cells.
    pub smoothing: bool,
}

pub fn localization_map(
    spectrum: &SpectrumResult,
    scene: &ScenePair<f64>,
    group: Group,
    knee_pred: f64,
    tau: f64,
) -> Result<LocalizationMap> {
    localization_map_with(spectrum, scene, group, knee_pred, tau, &LocalizationOptions::default())
}

pub fn localization_map_with(
    spectrum: &SpectrumResult,
    scene: &ScenePair<f64>,
    group: Group,
    knee_pred: f64,
    tau: f64,
    opts: &LocalizationOptions,
) -> Result<LocalizationMap> {
    let u = spectrum.u().ok_or(Error::MissingVectors)?;
    let columns = group_columns(spectrum, group, knee_pred, tau, opts.remainder_count)?;
    if columns.end > u.ncols() {
        return Err(Error::MissingVectors);
    }
    if u.nrows() != scene.observer().len() {
        return Err(Error::Shape { expected: scene.observer().len(), found: u.nrows() });
    }
    let width = columns.len() as f64;
    let mut ms: Vec<f64> = (0..u.nrows())
        .into_par_iter()
        .map(|i| columns.clone().map(|c| u[(i, c)].norm_sqr()).sum::<f64>() / width)
        .collect();
    if opts.smoothing {
        ms = smooth(scene, &ms);
    }
    let values = normalize(&ms);
    Ok(LocalizationMap { group, columns, mean_square: ms, values })
}

fn smooth(scene: &ScenePair<f64>, ms: &[f64]) -> Vec<f64> {
    let obs = scene.observer();
    let pts = obs.points();
    let reach = 1.5 * obs.spacing();
    let r2 = reach * reach;
    (0..pts.len())
        .into_par_iter()
        .map(|i| {
            let (mut sum, mut count) = (0.0, 0usize);
            for (j, p) in pts.iter().enumerate() {
                if (*p - pts[i]).norm_sq() <= r2 {
                    sum += ms[j];
                    count += 1;
                }
            }
            sum / count as f64
        })
        .collect()
}

fn normalize(ms: &[f64]) -> Vec<f64> {
    let peak = ms.iter().cloned().fold(0.0f64, f64::max).sqrt();
    ms.iter()
        .map(|&m| {
            if peak == 0.0 {
                return -1.0;
            }
            let v = (m.sqrt() / peak).log10();
            if v.is_nan() {
                -1.0
            } else {
                v.clamp(-1.0, 0.0)
            }
        })
        .collect()
}

/// Ratio of the mean energy of points within `band_width` of the boundary to
/// the mean energy of the remaining points, capped at [`RATIO_CAP`].
pub fn edge_concentration(map: &LocalizationMap, scene: &ScenePair<f64>, band_width: f64) -> Result<f64> {
    let bd = scene.observer().boundary_dist();
    if bd.len() != map.mean_square.len() {
        return Err(Error::Shape { expected: bd.len(), found: map.mean_square.len() });
    }
    let (mut edge, mut ne, mut inner, mut ni) = (0.0, 0usize, 0.0, 0usize);
    for (&m, &d) in map.mean_square.iter().zip(bd) {
        if d < band_width {
            edge += m;
            ne += 1;
        } else {
            inner += m;
            ni += 1;
        }
    }
    if ne == 0 {
        return Err(Error::EmptyBand(band_width));
    }
    if ni == 0 || inner == 0.0 {
        return Ok(RATIO_CAP);
    }
    Ok(((edge / ne as f64) / (inner / ni as f64)).min(RATIO_CAP))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_scene, GeometrySpec};
    use crate::kernel::assemble_dense;
    use crate::spectrum::{svd_dense, SvdMethod};
    use faer::{c64, Mat};

    fn line_scene() -> ScenePair<f64> {
        build_scene(&GeometrySpec::lines(4.0, 4.0, 0.0), 1.0).unwrap()
    }

    fn with_u(u: Mat<c64>) -> SpectrumResult {
        let n = u.ncols();
        let s: Vec<f64> = (0..n).map(|i| 1.0 / (i + 1) as f64).collect();
        SpectrumResult::new(s, Some(u), None, SvdMethod::Dense, None, 0.0).unwrap()
    }

    #[test]
    fn uniform_column_gives_flat_map() {
        let scene = line_scene();
        let n = scene.observer().len();
        let u = Mat::from_fn(n, 1, |_, _| c64::new(1.0 / (n as f64).sqrt(), 0.0));
        let m = localization_map(&with_u(u), &scene, Group::Aperture, 1.0, 1e-6).unwrap();
        assert!(m.values.iter().all(|v| v.abs() < 1e-12));
        assert!((edge_concentration(&m, &scene, 1.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn indicator_column() {
        let scene = line_scene();
        let n = scene.observer().len();
        let u = Mat::from_fn(n, 1, |i, _| c64::new(if i == 0 { 1.0 } else { 0.0 }, 0.0));
        let m = localization_map(&with_u(u), &scene, Group::Aperture, 1.0, 1e-6).unwrap();
        assert_eq!(m.values[0], 0.0);
        assert!(m.values[1..].iter().all(|&v| v == -1.0));
        assert_eq!(edge_concentration(&m, &scene, 1.0).unwrap(), RATIO_CAP);
    }

    #[test]
    fn group_energy_is_complete() {
        let scene = build_scene(&GeometrySpec::plates(3.0, 3.0, 0.0), 1.0).unwrap();
        let s = svd_dense(&assemble_dense(&scene).unwrap(), true).unwrap();
        let n = scene.observer().len() as f64;
        for (group, pred) in [(Group::Aperture, 12.0), (Group::Remainder, 12.0)] {
            let m = localization_map(&s, &scene, group, pred, 1e-6).unwrap();
            let total: f64 = m.mean_square.iter().sum();
            assert!((total - 1.0).abs() < 1e-10);
            // equivalently the per-point column sums average to size / N_o
            let mean_sum = total * m.columns.len() as f64 / n;
            assert!((mean_sum - m.columns.len() as f64 / n).abs() < 1e-10);
            assert!(m.values.iter().all(|v| (-1.0..=0.0).contains(v)));
        }
    }

    #[test]
    fn missing_vectors_and_empty_band() {
        let scene = line_scene();
        let s = SpectrumResult::from_sigmas(vec![1.0, 0.5]).unwrap();
        assert!(matches!(localization_map(&s, &scene, Group::Aperture, 1.0, 0.1), Err(Error::MissingVectors)));
        let n = scene.observer().len();
        let u = Mat::from_fn(n, 1, |_, _| c64::new(1.0, 0.0));
        let m = localization_map(&with_u(u), &scene, Group::Aperture, 1.0, 1e-6).unwrap();
        assert!(matches!(edge_concentration(&m, &scene, 0.0), Err(Error::EmptyBand(_))));
    }

    #[test]
    fn smoothing_keeps_uniform_maps_uniform() {
        let scene = build_scene(&GeometrySpec::plates(2.0, 2.0, 0.0), 1.0).unwrap();
        let n = scene.observer().len();
        let u = Mat::from_fn(n, 1, |_, _| c64::new(1.0 / (n as f64).sqrt(), 0.0));
        let opts = LocalizationOptions { smoothing: true, ..Default::default() };
        let m = localization_map_with(&with_u(u), &scene, Group::Aperture, 1.0, 1e-6, &opts).unwrap();
        assert!(m.values.iter().all(|v| v.abs() < 1e-12));
    }
}
