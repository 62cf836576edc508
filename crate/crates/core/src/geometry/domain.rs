//! Analytic description of the flat source/observer domains.

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::scalar::{robust_ceil, Real};

use super::cloud::PointCloud;
use super::sampling::{
    sample_disc_grid, sample_disc_rings, sample_frame_cells, sample_rectangle_cells, sample_segment_cells,
};
use super::vec3::{RigidMotion, Vec3};

/// Planar shape in its local frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape<T> {
    /// Disc centred at the local origin.
    Disc { radius: T },
    /// Rectangle spanning `[0, width] x [0, height]` along `u`, `v`.
    Rectangle { width: T, height: T },
    /// Square annulus centred at the origin; `outer`/`inner` are full edge lengths.
    Frame { outer: T, inner: T },
    /// Segment `[0, length]` along `u` (2-D only); its normal is `v`.
    Segment { length: T },
}

/// Point layout used for discs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscSampling {
    #[default]
    Rings,
    Grid,
}

/// Local orthonormal frame `(u, v, n)` anchored at `origin`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Placement<T> {
    pub origin: Vec3<T>,
    pub u: Vec3<T>,
    pub v: Vec3<T>,
    pub n: Vec3<T>,
}

impl<T: Real> Placement<T> {
    /// Axis-aligned frame (`u = x`, `v = y`, `n = z`) at `origin`.
    pub fn at(origin: Vec3<T>) -> Self {
        Self { origin, u: Vec3::unit_x(), v: Vec3::unit_y(), n: Vec3::unit_z() }
    }

    #[inline]
    pub fn map(&self, local: Vec3<T>) -> Vec3<T> {
        self.origin + self.u * local.x + self.v * local.y + self.n * local.z
    }

    fn transformed(&self, m: &RigidMotion<T>) -> Self {
        Self { origin: m.apply(self.origin), u: m.rotate(self.u), v: m.rotate(self.v), n: m.rotate(self.n) }
    }
}

/// Straight piece of a planar boundary with its unit normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Curve<T> {
    pub start: Vec3<T>,
    pub end: Vec3<T>,
    pub normal: Vec3<T>,
}

/// In-plane description of a domain: boundary curves that radiate and the
/// convex pieces that block lines of sight. Coordinates are 2-D (`z = 0`).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Outline<T> {
    pub curves: Vec<Curve<T>>,
    pub occluders: Vec<Vec<Vec3<T>>>,
}

/// A catalog domain: shape, placement and ambient dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain<T> {
    pub shape: Shape<T>,
    pub placement: Placement<T>,
    pub dim: usize,
    pub disc_sampling: DiscSampling,
}

impl<T: Real> Domain<T> {
    pub fn new(shape: Shape<T>, placement: Placement<T>, dim: usize) -> Self {
        Self { shape, placement, dim, disc_sampling: DiscSampling::Rings }
    }

    /// Area of a surface or length of a segment.
    pub fn measure(&self) -> T {
        match self.shape {
            Shape::Disc { radius } => T::PI() * radius * radius,
            Shape::Rectangle { width, height } => width * height,
            Shape::Frame { outer, inner } => outer * outer - inner * inner,
            Shape::Segment { length } => length,
        }
    }

    /// Smallest feature size, used to pick shadow-quadrature resolution.
    pub fn feature_size(&self) -> T {
        match self.shape {
            Shape::Disc { radius } => radius,
            Shape::Rectangle { width, height } => width.min(height),
            Shape::Frame { outer, inner } => (outer - inner) / T::lit(2.0),
            Shape::Segment { length } => length,
        }
    }

    pub fn centroid(&self) -> Vec3<T> {
        let two = T::lit(2.0);
        let local = match self.shape {
            Shape::Disc { .. } | Shape::Frame { .. } => Vec3::zero(),
            Shape::Rectangle { width, height } => Vec3::new(width / two, height / two, T::zero()),
            Shape::Segment { length } => Vec3::new(length / two, T::zero(), T::zero()),
        };
        self.placement.map(local)
    }

    /// Unit normal of the surface (or of the segment, in-plane).
    pub fn normal(&self) -> Vec3<T> {
        match self.shape {
            Shape::Segment { .. } => self.placement.v,
            _ => self.placement.n,
        }
    }

    fn base_counts(&self, spacing: T) -> (usize, usize) {
        match self.shape {
            Shape::Disc { radius } => (robust_ceil(radius / spacing), 0),
            Shape::Rectangle { width, height } => (robust_ceil(width / spacing), robust_ceil(height / spacing)),
            Shape::Frame { outer, .. } => (robust_ceil(outer / spacing), 0),
            Shape::Segment { length } => (robust_ceil(length / spacing), 0),
        }
    }

    /// Samples the domain with cells no wider than `spacing`.
    pub fn sample(&self, spacing: T) -> Result<PointCloud<T>> {
        self.sample_refined(spacing, 1)
    }

    /// Samples with the cell counts implied by `spacing` multiplied by
    /// `factor`, so successive factors give exactly nested refinements.
    pub fn sample_refined(&self, spacing: T, factor: usize) -> Result<PointCloud<T>> {
        if !(spacing > T::zero()) || factor == 0 {
            return Err(param("sampling spacing and refinement factor must be positive"));
        }
        let (na, nb) = self.base_counts(spacing);
        let local = match self.shape {
            Shape::Disc { radius } => match self.disc_sampling {
                DiscSampling::Rings => {
                    let rings = na * factor;
                    sample_disc_rings(radius, rings, radius / T::from_usize_lossy(rings))?
                }
                DiscSampling::Grid => sample_disc_grid(radius, spacing / T::from_usize_lossy(factor))?,
            },
            Shape::Rectangle { width, height } => sample_rectangle_cells(width, height, na * factor, nb * factor)?,
            Shape::Frame { outer, inner } => sample_frame_cells(outer, inner, na * factor)?,
            Shape::Segment { length } => sample_segment_cells(length, na * factor)?,
        };
        self.place(&local)
    }

    fn place(&self, local: &PointCloud<T>) -> Result<PointCloud<T>> {
        let pl = &self.placement;
        let points = local
            .points()
            .iter()
            .map(|p| {
                let mut q = pl.map(*p);
                if self.dim == 2 {
                    q.z = T::zero();
                }
                q
            })
            .collect();
        let nrm = self.normal();
        PointCloud::new(
            points,
            vec![nrm; local.len()],
            local.weights().to_vec(),
            local.boundary_dist().to_vec(),
            self.dim,
            local.spacing(),
        )
    }

    pub fn transformed(&self, motion: &RigidMotion<T>) -> Self {
        Self { placement: self.placement.transformed(motion), ..*self }
    }

    /// Vertices of the domain as a convex polygon in world coordinates.
    /// Discs become regular `sides`-gons with the disc's area.
    pub fn convex_polygon(&self, sides: usize) -> Result<Vec<Vec3<T>>> {
        let local = self.local_polygon(sides)?;
        Ok(local.into_iter().map(|p| self.placement.map(p)).collect())
    }

    fn local_polygon(&self, sides: usize) -> Result<Vec<Vec3<T>>> {
        match self.shape {
            Shape::Disc { radius } => {
                if sides < 3 {
                    return Err(param("polygonal disc needs at least 3 sides"));
                }
                let n = T::from_usize_lossy(sides);
                // equal-area circumradius: (n/2) R^2 sin(2 pi/n) = pi r^2
                let circ = radius * (T::TAU() / (n * (T::TAU() / n).sin())).sqrt();
                Ok((0..sides)
                    .map(|i| {
                        let th = T::TAU() * T::from_usize_lossy(i) / n;
                        Vec3::new(circ * th.cos(), circ * th.sin(), T::zero())
                    })
                    .collect())
            }
            Shape::Rectangle { width, height } => Ok(vec![
                Vec3::zero(),
                Vec3::new(width, T::zero(), T::zero()),
                Vec3::new(width, height, T::zero()),
                Vec3::new(T::zero(), height, T::zero()),
            ]),
            Shape::Frame { .. } => Err(Error::UnsupportedShape("square frame is not convex".into())),
            Shape::Segment { .. } => Err(Error::UnsupportedShape("segment has no area".into())),
        }
    }

    /// Projects the domain into the plane spanned by `e1`, `e2` through
    /// `origin` and returns its radiating boundary and blocking pieces.
    /// Segments are returned as a single curve; surfaces as their outline
    /// with outward normals (a frame's hole edges point into the hole).
    pub fn outline(&self, origin: Vec3<T>, e1: Vec3<T>, e2: Vec3<T>, disc_sides: usize) -> Result<Outline<T>> {
        let proj = |p: Vec3<T>| {
            let d = p - origin;
            Vec3::new(d.dot(e1), d.dot(e2), T::zero())
        };
        let proj_dir = |v: Vec3<T>| Vec3::new(v.dot(e1), v.dot(e2), T::zero());
        match self.shape {
            Shape::Segment { length } => {
                let a = proj(self.placement.origin);
                let b = proj(self.placement.map(Vec3::new(length, T::zero(), T::zero())));
                let nrm = proj_dir(self.placement.v);
                if nrm.norm() < T::lit(1e-9) {
                    return Err(Error::Geometry("segment normal lies outside the section plane".into()));
                }
                Ok(Outline { curves: vec![Curve { start: a, end: b, normal: nrm.normalized() }], occluders: vec![] })
            }
            Shape::Disc { .. } | Shape::Rectangle { .. } => {
                let poly: Vec<Vec3<T>> =
                    self.local_polygon(disc_sides)?.into_iter().map(|p| proj(self.placement.map(p))).collect();
                let poly = ccw(poly);
                Ok(Outline { curves: polygon_curves(&poly, false), occluders: vec![poly] })
            }
            Shape::Frame { outer, inner } => {
                let (o, i) = (outer / T::lit(2.0), inner / T::lit(2.0));
                let square = |h: T| {
                    vec![
                        Vec3::new(-h, -h, T::zero()),
                        Vec3::new(h, -h, T::zero()),
                        Vec3::new(h, h, T::zero()),
                        Vec3::new(-h, h, T::zero()),
                    ]
                };
                let map_all = |pts: Vec<Vec3<T>>| ccw(pts.into_iter().map(|p| proj(self.placement.map(p))).collect());
                let outer_poly = map_all(square(o));
                let inner_poly = map_all(square(i));
                let mut curves = polygon_curves(&outer_poly, false);
                curves.extend(polygon_curves(&inner_poly, true));
                let z = T::zero();
                let bands = [
                    [(-o, -o), (o, -o), (o, -i), (-o, -i)],
                    [(-o, i), (o, i), (o, o), (-o, o)],
                    [(-o, -i), (-i, -i), (-i, i), (-o, i)],
                    [(i, -i), (o, -i), (o, i), (i, i)],
                ];
                let occluders =
                    bands.iter().map(|b| map_all(b.iter().map(|&(x, y)| Vec3::new(x, y, z)).collect())).collect();
                Ok(Outline { curves, occluders })
            }
        }
    }
}

pub(crate) fn signed_area<T: Real>(poly: &[Vec3<T>]) -> T {
    let n = poly.len();
    let mut acc = T::zero();
    for i in 0..n {
        let (p, q) = (poly[i], poly[(i + 1) % n]);
        acc = acc + (p.x * q.y - q.x * p.y);
    }
    acc / T::lit(2.0)
}

pub(crate) fn ccw<T: Real>(mut poly: Vec<Vec3<T>>) -> Vec<Vec3<T>> {
    if signed_area(&poly) < T::zero() {
        poly.reverse();
    }
    poly
}

fn polygon_curves<T: Real>(poly: &[Vec3<T>], inward: bool) -> Vec<Curve<T>> {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let (p, q) = (poly[i], poly[(i + 1) % n]);
            let d = q - p;
            let mut nrm = Vec3::new(d.y, -d.x, T::zero()).normalized();
            if inward {
                nrm = -nrm;
            }
            Curve { start: p, end: q, normal: nrm }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_area_polygon() {
        let d = Domain::new(Shape::Disc { radius: 1.0 }, Placement::at(Vec3::zero()), 3);
        let poly = d.convex_polygon(64).unwrap();
        let a = signed_area(&poly);
        assert!((a - std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn refined_sampling_doubles_counts() {
        let d = Domain::new(Shape::Rectangle { width: 1.0f64, height: 0.5 }, Placement::at(Vec3::zero()), 3);
        let c1 = d.sample_refined(0.1, 1).unwrap();
        let c2 = d.sample_refined(0.1, 2).unwrap();
        assert_eq!(c2.len(), 4 * c1.len());
        assert!((c2.total_weight() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn frame_outline_normals_point_away_from_material() {
        let d = Domain::new(Shape::Frame { outer: 3.0f64, inner: 1.0 }, Placement::at(Vec3::zero()), 3);
        let o = d.outline(Vec3::zero(), Vec3::unit_x(), Vec3::unit_y(), 0).unwrap();
        assert_eq!(o.curves.len(), 8);
        assert_eq!(o.occluders.len(), 4);
        for c in &o.curves {
            let mid = (c.start + c.end) * 0.5;
            let probe = mid + c.normal * 0.01;
            let m = probe.x.abs().max(probe.y.abs());
            // probe leaves the material: either outside the outer square or inside the hole
            assert!(!(0.5..=1.5).contains(&m), "normal points into material at {mid:?}");
        }
    }
}
