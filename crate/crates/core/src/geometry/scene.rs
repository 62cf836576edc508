use crate::error::{param, Error, Result};
use crate::scalar::{robust_ceil, Real};

use super::cloud::PointCloud;
use super::domain::{Domain, Placement, Shape};
use super::spec::{GeometrySpec, ShapeKind};
use super::vec3::{RigidMotion, Vec3};

/// Source and observer point sets at a given wavelength.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenePair<T> {
    source: PointCloud<T>,
    observer: PointCloud<T>,
    wavelength: T,
    dim: usize,
    domains: Option<[Domain<T>; 2]>,
}

impl<T: Real> ScenePair<T> {
    /// Pairs two clouds. Fails when dimensions disagree or any source point
    /// coincides with an observer point.
    pub fn new(source: PointCloud<T>, observer: PointCloud<T>, wavelength: T) -> Result<Self> {
        if source.dim() != observer.dim() {
            return Err(Error::Dimension { expected: observer.dim(), found: source.dim() });
        }
        if !(wavelength > T::zero()) {
            return Err(param("wavelength must be positive"));
        }
        let min = source.min_distance_to(&observer);
        if !(min > T::zero()) {
            return Err(Error::Overlap { min_distance: min.as_f64(), limit: 0.0 });
        }
        let dim = source.dim();
        Ok(Self { source, observer, wavelength, dim, domains: None })
    }

    /// Attaches the analytic domains the clouds were sampled from.
    pub fn with_domains(mut self, source: Domain<T>, observer: Domain<T>) -> Self {
        self.domains = Some([source, observer]);
        self
    }

    pub fn source(&self) -> &PointCloud<T> {
        &self.source
    }

    pub fn observer(&self) -> &PointCloud<T> {
        &self.observer
    }

    pub fn wavelength(&self) -> T {
        self.wavelength
    }

    pub fn wavenumber(&self) -> T {
        T::TAU() / self.wavelength
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn source_domain(&self) -> Option<&Domain<T>> {
        self.domains.as_ref().map(|d| &d[0])
    }

    pub fn observer_domain(&self) -> Option<&Domain<T>> {
        self.domains.as_ref().map(|d| &d[1])
    }

    /// Same geometry, different wavelength (clouds are kept as sampled).
    pub fn with_wavelength(&self, wavelength: T) -> Result<Self> {
        if !(wavelength > T::zero()) {
            return Err(param("wavelength must be positive"));
        }
        Ok(Self { wavelength, ..self.clone() })
    }

    /// Applies one rigid motion to both domains.
    pub fn transformed(&self, motion: &RigidMotion<T>) -> Result<Self> {
        Ok(Self {
            source: self.source.transformed(motion)?,
            observer: self.observer.transformed(motion)?,
            wavelength: self.wavelength,
            dim: self.dim,
            domains: self.domains.map(|[s, o]| [s.transformed(motion), o.transformed(motion)]),
        })
    }

    /// Swaps the roles of source and observer.
    pub fn swapped(&self) -> Self {
        Self {
            source: self.observer.clone(),
            observer: self.source.clone(),
            wavelength: self.wavelength,
            dim: self.dim,
            domains: self.domains.map(|[s, o]| [o, s]),
        }
    }
}

/// Builds the catalog scene described by `spec` at `wavelength`, sampled at
/// `wavelength / spec.delta`. Domains closer than `wavelength / 100` are
/// rejected.
pub fn build_scene<T: Real>(spec: &GeometrySpec, wavelength: T) -> Result<ScenePair<T>> {
    spec.validate()?;
    if !(wavelength > T::zero()) {
        return Err(param("wavelength must be positive"));
    }
    let spacing = wavelength / T::lit(spec.delta);
    let (source_dom, observer_dom) = catalog_domains(spec, spacing)?;
    let source = source_dom.sample(spacing)?;
    let observer = observer_dom.sample(spacing)?;
    let limit = wavelength / T::lit(100.0);
    let min = source.min_distance_to(&observer);
    if !(min > limit) {
        return Err(Error::Overlap { min_distance: min.as_f64(), limit: limit.as_f64() });
    }
    let dim = spec.dim();
    Ok(ScenePair { source, observer, wavelength, dim, domains: Some([source_dom, observer_dom]) })
}

/// `(source, observer)` domains of a catalog spec. `spacing` only matters
/// for the frame, whose hole is snapped to the sampling grid.
pub fn catalog_domains<T: Real>(spec: &GeometrySpec, spacing: T) -> Result<(Domain<T>, Domain<T>)> {
    let a = T::lit(spec.a);
    let d = T::lit(spec.d);
    let h = T::lit(spec.h);
    let phi = T::lit(spec.phi);
    let z = T::zero();
    let dim = spec.dim();
    let square = Shape::Rectangle { width: a, height: a };
    let at = |x: T, y: T, zz: T| Placement::at(Vec3::new(x, y, zz));
    let mut pair = match spec.shape {
        ShapeKind::ParallelDiscs => {
            let disc = Shape::Disc { radius: a };
            (Domain::new(disc, at(z, z, d), 3), Domain::new(disc, at(z, z, z), 3))
        }
        ShapeKind::ParallelPlates => (Domain::new(square, at(h, z, d), 3), Domain::new(square, at(z, z, z), 3)),
        ShapeKind::SlantedPlates => {
            let (s, c) = phi.sin_cos();
            (Domain::new(square, at(a + d * c, z, d * s), 3), Domain::new(square, at(z, z, z), 3))
        }
        ShapeKind::CoplanarSquares => {
            let two_a = a + a;
            (Domain::new(square, at(two_a, two_a, z), dim), Domain::new(square, at(z, z, z), dim))
        }
        ShapeKind::ParallelLines => {
            let seg = Shape::Segment { length: a };
            (Domain::new(seg, at(h, d, z), 2), Domain::new(seg, at(z, z, z), 2))
        }
        ShapeKind::PlateAndFrame => {
            let half = a / T::lit(2.0);
            let outer = a * T::lit(3.0);
            let cells = robust_ceil(outer / spacing);
            let cell = outer / T::from_usize_lossy(cells);
            // hole edge on a grid line at least one cell beyond the plate edge
            let margin = outer / T::lit(2.0) - (half + cell);
            let keep = (margin / cell * T::lit(1.0 + 1e-9)).floor();
            if keep < T::one() {
                return Err(param("frame too narrow for the sampling spacing"));
            }
            let inner = (outer / T::lit(2.0) - keep * cell) * T::lit(2.0);
            (Domain::new(square, at(-half, -half, h), 3), Domain::new(Shape::Frame { outer, inner }, at(z, z, z), 3))
        }
    };
    pair.0.disc_sampling = spec.disc_sampling;
    pair.1.disc_sampling = spec.disc_sampling;
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn discs_point_count_matches_area_over_spacing() {
        let spec = GeometrySpec::discs(1.0, 1.0).with_lambda(0.4);
        let scene = build_scene(&spec, 0.4).unwrap();
        let expected = PI * (1.0f64 / 0.1).powi(2);
        for c in [scene.source(), scene.observer()] {
            let n = c.len() as f64;
            assert!((n - expected).abs() / expected < 0.10, "count {n}");
            assert!(c.spacing() <= 0.1 + 1e-12);
        }
    }

    #[test]
    fn lines_sixteen_points_each() {
        let spec = GeometrySpec::lines(1.0, 1.0, 0.0);
        let scene = build_scene::<f64>(&spec, 0.25).unwrap();
        assert_eq!(scene.dim(), 2);
        for c in [scene.source(), scene.observer()] {
            assert_eq!(c.len(), 16);
            assert!((c.total_weight() - 1.0).abs() < 1e-12);
            assert!(c.normals().iter().all(|n| n.x == 0.0 && n.z == 0.0));
        }
    }

    #[test]
    fn touching_discs_rejected() {
        let spec = GeometrySpec::discs(1.0, 0.0);
        assert!(matches!(build_scene(&spec, 1.0), Err(Error::Overlap { .. })));
        let spec = GeometrySpec::discs(1.0, 0.005);
        assert!(matches!(build_scene(&spec, 1.0), Err(Error::Overlap { .. })));
    }

    #[test]
    fn weights_complete_for_catalog() {
        let specs = [
            (GeometrySpec::discs(1.0, 1.0), PI, PI),
            (GeometrySpec::plates(1.0, 1.0, 0.3), 1.0, 1.0),
            (GeometrySpec::slanted(1.0, 1.0, 0.7), 1.0, 1.0),
            (GeometrySpec::coplanar(1.0), 1.0, 1.0),
            (GeometrySpec::lines(1.0, 0.5, 0.2), 1.0, 1.0),
        ];
        for (spec, src_area, obs_area) in specs {
            let s = build_scene(&spec, 0.2).unwrap();
            assert!((s.source().total_weight() - src_area).abs() / src_area < 1e-6, "{spec:?}");
            assert!((s.observer().total_weight() - obs_area).abs() / obs_area < 1e-6, "{spec:?}");
        }
    }

    #[test]
    fn plate_and_frame_layout() {
        let spec = GeometrySpec::plate_and_frame(2.0, 0.25);
        let s = build_scene::<f64>(&spec, 1.0).unwrap();
        let frame = s.observer_domain().unwrap();
        let Shape::Frame { outer, inner } = frame.shape else { panic!() };
        assert_eq!(outer, 6.0);
        assert!(inner >= 2.0 + 2.0 * 0.25 - 1e-12);
        assert!((s.observer().total_weight() - (outer * outer - inner * inner)).abs() < 1e-9);
        assert!(s.source().points().iter().all(|p| (p.z - 0.25).abs() < 1e-15));
    }

    #[test]
    fn slanted_closest_edges_at_distance_d() {
        let spec = GeometrySpec::slanted(1.0, 1.0, PI / 4.0);
        let (src, obs) = catalog_domains::<f64>(&spec, 0.1).unwrap();
        let edge_obs = obs.placement.map(Vec3::new(1.0, 0.0, 0.0));
        let edge_src = src.placement.origin;
        assert!(((edge_src - edge_obs).norm() - 1.0).abs() < 1e-12);
    }
}
