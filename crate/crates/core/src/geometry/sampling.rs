//! Point sampling of the flat catalog shapes in their local frames.
//!
//! Surfaces are produced in the `z = 0` plane with normal `+z`; segments lie
//! along `+x` with normal `+y`. Every sampler is cell-centred with cells no
//! wider than the requested spacing, so the weights sum to the exact area
//! (or length) of the domain.

use crate::error::{param, Result};
use crate::scalar::{robust_ceil, Real};

use super::cloud::PointCloud;
use super::vec3::Vec3;

fn check_positive<T: Real>(name: &str, v: T) -> Result<()> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(param(format!("{name} must be positive and finite, got {v}")))
    }
}

/// Concentric-ring (body-of-revolution style) sampling of a disc centred at
/// the origin. Ring `i` sits at the radial midpoint of its annulus; each
/// point carries the area of its annulus sector.
pub fn sample_disc<T: Real>(radius: T, spacing: T) -> Result<PointCloud<T>> {
    check_positive("radius", radius)?;
    check_positive("spacing", spacing)?;
    sample_disc_rings(radius, robust_ceil(radius / spacing), spacing)
}

pub(crate) fn sample_disc_rings<T: Real>(radius: T, rings: usize, spacing: T) -> Result<PointCloud<T>> {
    let two_pi = T::TAU();
    let dr = radius / T::from_usize_lossy(rings);
    let arc = dr.min(spacing);
    let mut pts = Vec::new();
    let mut wts = Vec::new();
    let mut bd = Vec::new();
    for i in 0..rings {
        let rho = (T::from_usize_lossy(i) + T::lit(0.5)) * dr;
        let m = robust_ceil(two_pi * rho / arc);
        let w = rho * dr * two_pi / T::from_usize_lossy(m);
        for j in 0..m {
            let theta = two_pi * (T::from_usize_lossy(j) + T::lit(0.5)) / T::from_usize_lossy(m);
            let (s, c) = theta.sin_cos();
            pts.push(Vec3::new(rho * c, rho * s, T::zero()));
            wts.push(w);
            bd.push(radius - rho);
        }
    }
    let n = pts.len();
    PointCloud::new(pts, vec![Vec3::unit_z(); n], wts, bd, 3, spacing.max(dr))
}

/// Uniform square-grid sampling of a disc: the cells whose centres fall
/// inside the disc, with equal weights normalised to the disc area.
pub fn sample_disc_grid<T: Real>(radius: T, spacing: T) -> Result<PointCloud<T>> {
    check_positive("radius", radius)?;
    check_positive("spacing", spacing)?;
    let n = robust_ceil(T::lit(2.0) * radius / spacing);
    let c = T::lit(2.0) * radius / T::from_usize_lossy(n);
    let mut pts = Vec::new();
    let mut bd = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let x = -radius + (T::from_usize_lossy(i) + T::lit(0.5)) * c;
            let y = -radius + (T::from_usize_lossy(j) + T::lit(0.5)) * c;
            let rho = (x * x + y * y).sqrt();
            if rho < radius {
                pts.push(Vec3::new(x, y, T::zero()));
                bd.push(radius - rho);
            }
        }
    }
    if pts.is_empty() {
        pts.push(Vec3::zero());
        bd.push(radius);
    }
    let m = pts.len();
    let w = T::PI() * radius * radius / T::from_usize_lossy(m);
    PointCloud::new(pts, vec![Vec3::unit_z(); m], vec![w; m], bd, 3, c)
}

/// Cell-centred grid on `[0, edge_a] x [0, edge_b]`.
pub fn sample_rectangle<T: Real>(edge_a: T, edge_b: T, spacing: T) -> Result<PointCloud<T>> {
    check_positive("edge_a", edge_a)?;
    check_positive("edge_b", edge_b)?;
    check_positive("spacing", spacing)?;
    sample_rectangle_cells(edge_a, edge_b, robust_ceil(edge_a / spacing), robust_ceil(edge_b / spacing))
}

pub(crate) fn sample_rectangle_cells<T: Real>(edge_a: T, edge_b: T, na: usize, nb: usize) -> Result<PointCloud<T>> {
    let ca = edge_a / T::from_usize_lossy(na);
    let cb = edge_b / T::from_usize_lossy(nb);
    let mut pts = Vec::with_capacity(na * nb);
    let mut bd = Vec::with_capacity(na * nb);
    for j in 0..nb {
        let y = (T::from_usize_lossy(j) + T::lit(0.5)) * cb;
        for i in 0..na {
            let x = (T::from_usize_lossy(i) + T::lit(0.5)) * ca;
            pts.push(Vec3::new(x, y, T::zero()));
            bd.push(x.min(edge_a - x).min(y).min(edge_b - y));
        }
    }
    let n = pts.len();
    PointCloud::new(pts, vec![Vec3::unit_z(); n], vec![ca * cb; n], bd, 3, ca.max(cb))
}

/// Midpoint sampling of the segment `[0, length]` on the x axis (2-D).
pub fn sample_segment<T: Real>(length: T, spacing: T) -> Result<PointCloud<T>> {
    check_positive("length", length)?;
    check_positive("spacing", spacing)?;
    sample_segment_cells(length, robust_ceil(length / spacing))
}

pub(crate) fn sample_segment_cells<T: Real>(length: T, n: usize) -> Result<PointCloud<T>> {
    let c = length / T::from_usize_lossy(n);
    let pts: Vec<Vec3<T>> =
        (0..n).map(|i| Vec3::new((T::from_usize_lossy(i) + T::lit(0.5)) * c, T::zero(), T::zero())).collect();
    let bd = pts.iter().map(|p| p.x.min(length - p.x)).collect();
    PointCloud::new(pts, vec![Vec3::unit_y(); n], vec![c; n], bd, 2, c)
}

/// Square frame centred at the origin: the cells of an `outer`-wide grid
/// whose centres lie outside the central `inner`-wide square hole. `inner`
/// must fall on a grid line for the weights to sum to the frame area.
pub fn sample_frame<T: Real>(outer: T, inner: T, spacing: T) -> Result<PointCloud<T>> {
    check_positive("outer", outer)?;
    check_positive("inner", inner)?;
    check_positive("spacing", spacing)?;
    if inner >= outer {
        return Err(param("frame hole must be smaller than its outer edge"));
    }
    sample_frame_cells(outer, inner, robust_ceil(outer / spacing))
}

pub(crate) fn sample_frame_cells<T: Real>(outer: T, inner: T, n: usize) -> Result<PointCloud<T>> {
    let half = outer / T::lit(2.0);
    let hole = inner / T::lit(2.0);
    let c = outer / T::from_usize_lossy(n);
    let mut pts = Vec::new();
    let mut bd = Vec::new();
    for j in 0..n {
        let y = -half + (T::from_usize_lossy(j) + T::lit(0.5)) * c;
        for i in 0..n {
            let x = -half + (T::from_usize_lossy(i) + T::lit(0.5)) * c;
            let m = x.abs().max(y.abs());
            if m > hole {
                let dx = (x.abs() - hole).max(T::zero());
                let dy = (y.abs() - hole).max(T::zero());
                let to_hole = (dx * dx + dy * dy).sqrt();
                pts.push(Vec3::new(x, y, T::zero()));
                bd.push((half - m).min(to_hole));
            }
        }
    }
    if pts.is_empty() {
        return Err(param("frame sampling produced no points"));
    }
    let k = pts.len();
    PointCloud::new(pts, vec![Vec3::unit_z(); k], vec![c * c; k], bd, 3, c)
}
