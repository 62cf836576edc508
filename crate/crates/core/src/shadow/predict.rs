use crate::error::Result;
use crate::geometry::ScenePair;
use crate::scalar::Real;

use super::los::{shadow_area_los, shadow_length_los};
use super::planar::shadow_length_planar;
use super::ShadowEstimate;

/// Parallel domains whose planes are less than a wavelength apart.
pub fn is_quasi_planar<T: Real>(scene: &ScenePair<T>) -> bool {
    if scene.dim() != 3 {
        return false;
    }
    let (Some(src), Some(obs)) = (scene.source_domain(), scene.observer_domain()) else {
        return false;
    };
    let n = obs.normal();
    if n.cross(src.normal()).norm() > T::lit(1e-6) {
        return false;
    }
    n.dot(src.centroid() - obs.centroid()).abs() < scene.wavelength()
}

/// Shadow estimate behind the knee predictor: the area in 3-D, the length
/// in 2-D, and the in-plane length for quasi-planar scenes or whenever the
/// area predictor drops below one.
pub fn knee_estimate<T: Real>(scene: &ScenePair<T>) -> Result<ShadowEstimate<T>> {
    if scene.dim() == 2 {
        return shadow_length_los(scene);
    }
    if is_quasi_planar(scene) {
        return shadow_length_planar(scene);
    }
    let area = shadow_area_los(scene)?;
    if area.dof < T::one() {
        if let Ok(len) = shadow_length_planar(scene) {
            return Ok(len);
        }
    }
    Ok(area)
}

/// Knee-index predictor `𝒩 = 𝒜/λ²` or `Ñ = ℒ/λ`, doubled for vector fields.
pub fn predict_knee<T: Real>(scene: &ScenePair<T>, vector_doubling: bool) -> Result<T> {
    let dof = knee_estimate(scene)?.dof;
    Ok(if vector_doubling { dof + dof } else { dof })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_scene, GeometrySpec};
    use crate::shadow::ShadowKind;

    #[test]
    fn discs_predictor() {
        let scene = build_scene::<f64>(&GeometrySpec::discs(5.0, 5.0), 1.0).unwrap();
        let n = predict_knee(&scene, false).unwrap();
        let oracle = std::f64::consts::PI.powi(2) / 4.0 * (5.0f64.sqrt() - 1.0).powi(2) * 25.0;
        assert!((n - oracle).abs() / oracle < 1e-3);
        assert!((oracle - 94.2).abs() < 0.1);
        assert_eq!(predict_knee(&scene, true).unwrap(), 2.0 * n);
    }

    #[test]
    fn coplanar_falls_back_to_length() {
        let scene = build_scene::<f64>(&GeometrySpec::coplanar(30.0), 1.0).unwrap();
        let e = knee_estimate(&scene).unwrap();
        assert_eq!(e.kind, ShadowKind::Length);
        assert!((e.dof - 20.0).abs() < 0.5, "{}", e.dof);
    }

    #[test]
    fn slab_is_quasi_planar() {
        let scene = build_scene::<f64>(&GeometrySpec::plate_and_frame(4.0, 0.5), 1.0).unwrap();
        assert!(is_quasi_planar(&scene));
        assert_eq!(knee_estimate(&scene).unwrap().kind, ShadowKind::Length);
        let discs = build_scene::<f64>(&GeometrySpec::discs(2.0, 2.0), 1.0).unwrap();
        assert!(!is_quasi_planar(&discs));
    }
}
