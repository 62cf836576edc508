use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::geometry::{ccw, Domain, ScenePair, Vec3};
use crate::scalar::{pairwise_sum, Real};

use super::clip::{clip_convex, polygon_area};
use super::{ShadowEstimate, ShadowKind, ShadowMethod};

/// Product quadrature over a hemisphere of directions, midpoint in
/// `cos θ` and in `φ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub n_cos: usize,
    pub n_phi: usize,
    /// Sides of the equal-area polygons standing in for discs.
    pub disc_sides: usize,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self { n_cos: 160, n_phi: 160, disc_sides: 64 }
    }
}

impl SweepSpec {
    pub fn new(n_cos: usize, n_phi: usize) -> Self {
        Self { n_cos, n_phi, ..Self::default() }
    }

    pub fn directions(&self) -> usize {
        self.n_cos * self.n_phi
    }
}

fn project<T: Real>(poly: &[Vec3<T>], e1: Vec3<T>, e2: Vec3<T>) -> Vec<Vec3<T>> {
    ccw(poly.iter().map(|p| Vec3::new(p.dot(e1), p.dot(e2), T::zero())).collect())
}

/// Overlap area of the two polygons' shadows on the plane normal to `k`.
pub fn direction_shadow<T: Real>(source: &[Vec3<T>], observer: &[Vec3<T>], k: Vec3<T>) -> T {
    let k = k.normalized();
    let e1 = k.any_orthogonal();
    let e2 = k.cross(e1);
    let s = project(source, e1, e2);
    let o = project(observer, e1, e2);
    polygon_area(&clip_convex(&s, &o))
}

/// Source polygon, observer polygon and hemisphere axis.
type Setup<T> = (Vec<Vec3<T>>, Vec<Vec3<T>>, Vec3<T>);

fn polygons<T: Real>(scene: &ScenePair<T>, sides: usize) -> Result<Setup<T>> {
    let (src, obs): (&Domain<T>, &Domain<T>) = match (scene.source_domain(), scene.observer_domain()) {
        (Some(s), Some(o)) => (s, o),
        _ => return Err(Error::UnsupportedShape("plane-wave sweep needs analytic domains".into())),
    };
    let axis = src.centroid() - obs.centroid();
    let axis =
        if axis.norm() > T::epsilon() * (T::one() + src.feature_size()) { axis.normalized() } else { obs.normal() };
    Ok((src.convex_polygon(sides)?, obs.convex_polygon(sides)?, axis))
}

fn integrate<T: Real>(source: &[Vec3<T>], observer: &[Vec3<T>], axis: Vec3<T>, n_cos: usize, n_phi: usize) -> T {
    let e1 = axis.any_orthogonal();
    let e2 = axis.cross(e1);
    let dc = T::one() / T::from_usize_lossy(n_cos);
    let dp = T::TAU() / T::from_usize_lossy(n_phi);
    let rows: Vec<T> = (0..n_cos)
        .into_par_iter()
        .map(|i| {
            let c = (T::from_usize_lossy(i) + T::lit(0.5)) * dc;
            let s = (T::one() - c * c).max(T::zero()).sqrt();
            let vals: Vec<T> = (0..n_phi)
                .map(|j| {
                    let p = (T::from_usize_lossy(j) + T::lit(0.5)) * dp;
                    let k = axis * c + e1 * (s * p.cos()) + e2 * (s * p.sin());
                    direction_shadow(source, observer, k)
                })
                .collect();
            pairwise_sum(&vals)
        })
        .collect();
    pairwise_sum(&rows) * dc * dp
}

/// Cumulative mutual shadow area as the integral of per-direction shadow
/// overlaps over the hemisphere about the observer-to-source axis.
pub fn shadow_area_sweep<T: Real>(scene: &ScenePair<T>, spec: &SweepSpec) -> Result<ShadowEstimate<T>> {
    if scene.dim() != 3 {
        return Err(Error::Dimension { expected: 3, found: scene.dim() });
    }
    if spec.n_cos < 2 || spec.n_phi < 4 {
        return Err(param("sweep needs at least 2 polar and 4 azimuthal directions"));
    }
    let (src, obs, axis) = polygons(scene, spec.disc_sides)?;
    let fine = integrate(&src, &obs, axis, spec.n_cos, spec.n_phi);
    let coarse = integrate(&src, &obs, axis, spec.n_cos / 2, spec.n_phi / 2);
    let rel = if fine > T::zero() { (fine - coarse).abs() / (T::lit(3.0) * fine) } else { T::zero() };
    Ok(ShadowEstimate::new(fine, ShadowKind::Area, scene.wavelength(), ShadowMethod::PlaneWaveSweep, Some(rel)))
}
