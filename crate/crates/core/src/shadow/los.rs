use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{Domain, PointCloud, ScenePair, Shape};
use crate::scalar::{pairwise_sum, Real};

use super::planar::shadow_length_planar;
use super::{ShadowEstimate, ShadowKind, ShadowMethod};

/// Cap on source-observer pairs at the fine quadrature level.
const PAIR_CAP: f64 = 1.2e8;
/// Coarse cells per smallest feature for surfaces and for curves.
const SURFACE_CELLS: f64 = 16.0;
const CURVE_CELLS: f64 = 128.0;
/// Largest accepted error estimate before reporting divergence.
const DIVERGENCE_LIMIT: f64 = 0.05;

#[derive(Clone, Copy)]
enum Power {
    Area,
    Length,
}

fn pair_sum<T: Real>(obs: &PointCloud<T>, src: &PointCloud<T>, power: Power) -> Result<T> {
    let (sp, sn, sw) = (src.points(), src.normals(), src.weights());
    let rows: Vec<T> = obs
        .points()
        .par_iter()
        .zip(obs.normals().par_iter())
        .zip(obs.weights().par_iter())
        .map(|((&p, &n), &w)| {
            let mut acc = T::zero();
            for j in 0..sp.len() {
                let r = p - sp[j];
                let r2 = r.norm_sq();
                let num = n.dot(r).abs() * sn[j].dot(r).abs();
                let den = match power {
                    Power::Area => r2 * r2,
                    Power::Length => r2 * r2.sqrt(),
                };
                acc = acc + sw[j] * num / den;
            }
            acc * w
        })
        .collect();
    let total = pairwise_sum(&rows);
    if !total.is_finite() {
        return Err(Error::Divergence { rel_change: f64::INFINITY });
    }
    Ok(total)
}

/// Line-of-sight shadow area quadrature over the given clouds and weights.
pub fn los_area_clouds<T: Real>(observer: &PointCloud<T>, source: &PointCloud<T>) -> Result<T> {
    pair_sum(observer, source, Power::Area)
}

/// Line-of-sight shadow length quadrature over the given curve clouds.
pub fn los_length_clouds<T: Real>(observer: &PointCloud<T>, source: &PointCloud<T>) -> Result<T> {
    pair_sum(observer, source, Power::Length)
}

fn base_spacing<T: Real>(src: &Domain<T>, obs: &Domain<T>, separation: T, cells: f64) -> T {
    let feature = src.feature_size().min(obs.feature_size());
    (feature / T::lit(cells)).min(separation / T::lit(2.0))
}

/// Two nested quadrature levels and a Richardson-extrapolated value.
fn refined<T: Real>(
    scene: &ScenePair<T>,
    src: &Domain<T>,
    obs: &Domain<T>,
    power: Power,
    cells: f64,
) -> Result<(T, T)> {
    let separation = scene.source().min_distance_to(scene.observer());
    let mut spacing = base_spacing(src, obs, separation, cells);
    let (mut s1, mut o1) = (src.sample(spacing)?, obs.sample(spacing)?);
    // fine level has roughly 2^dim times the coarse points on each side
    let growth = if matches!(power, Power::Area) { 16.0 } else { 4.0 };
    let pairs = (s1.len() * o1.len()) as f64 * growth;
    if pairs > PAIR_CAP {
        let exponent = if matches!(power, Power::Area) { 0.25 } else { 0.5 };
        spacing = spacing * T::lit((pairs / PAIR_CAP).powf(exponent));
        s1 = src.sample(spacing)?;
        o1 = obs.sample(spacing)?;
    }
    let coarse = pair_sum(&o1, &s1, power)?;
    let fine = pair_sum(&obs.sample_refined(spacing, 2)?, &src.sample_refined(spacing, 2)?, power)?;
    let three = T::lit(3.0);
    let value = (T::lit(4.0) * fine - coarse) / three;
    let rel = if value > T::zero() { (fine - coarse).abs() / (three * value) } else { T::zero() };
    if rel > T::lit(DIVERGENCE_LIMIT) {
        return Err(Error::Divergence { rel_change: rel.as_f64() });
    }
    Ok((value.max(T::zero()), rel))
}

/// Cumulative mutual shadow area of a 3-D scene from the line-of-sight
/// double surface integral. Catalog scenes are re-sampled on two nested
/// wavelength-independent grids and extrapolated; bare clouds use their
/// own weights.
pub fn shadow_area_los<T: Real>(scene: &ScenePair<T>) -> Result<ShadowEstimate<T>> {
    if scene.dim() != 3 {
        return Err(Error::Dimension { expected: 3, found: scene.dim() });
    }
    let (value, rel) = match (scene.source_domain(), scene.observer_domain()) {
        (Some(src), Some(obs)) => {
            let (v, r) = refined(scene, src, obs, Power::Area, SURFACE_CELLS)?;
            (v, Some(r))
        }
        _ => (los_area_clouds(scene.observer(), scene.source())?, None),
    };
    Ok(ShadowEstimate::new(value, ShadowKind::Area, scene.wavelength(), ShadowMethod::LosIntegral, rel))
}

/// Cumulative mutual shadow length. Segment pairs use the double line
/// integral directly; planar regions (2-D regions or quasi-planar 3-D
/// scenes) use their in-plane outlines with visibility.
pub fn shadow_length_los<T: Real>(scene: &ScenePair<T>) -> Result<ShadowEstimate<T>> {
    match (scene.source_domain(), scene.observer_domain()) {
        (Some(src), Some(obs)) => {
            let curves = matches!(src.shape, Shape::Segment { .. }) && matches!(obs.shape, Shape::Segment { .. });
            if !curves {
                return shadow_length_planar(scene);
            }
            let (v, r) = refined(scene, src, obs, Power::Length, CURVE_CELLS)?;
            Ok(ShadowEstimate::new(v, ShadowKind::Length, scene.wavelength(), ShadowMethod::LosIntegral, Some(r)))
        }
        _ => {
            if scene.dim() != 2 {
                return Err(Error::Dimension { expected: 2, found: scene.dim() });
            }
            let v = los_length_clouds(scene.observer(), scene.source())?;
            Ok(ShadowEstimate::new(v, ShadowKind::Length, scene.wavelength(), ShadowMethod::LosIntegral, None))
        }
    }
}
