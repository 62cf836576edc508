use crate::error::{param, Result};
use crate::scalar::{pairwise_sum, Real};

use super::vec3::{RigidMotion, Vec3};

/// Sampled surface (3-D) or curve/planar region (2-D) with per-point
/// normals, quadrature weights and distance to the domain boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud<T> {
    points: Vec<Vec3<T>>,
    normals: Vec<Vec3<T>>,
    weights: Vec<T>,
    boundary_dist: Vec<T>,
    dim: usize,
    spacing: T,
}

impl<T: Real> PointCloud<T> {
    /// Validates and assembles a cloud. `spacing` is the nominal (largest)
    /// distance between neighbouring samples.
    pub fn new(
        points: Vec<Vec3<T>>,
        normals: Vec<Vec3<T>>,
        weights: Vec<T>,
        boundary_dist: Vec<T>,
        dim: usize,
        spacing: T,
    ) -> Result<Self> {
        let n = points.len();
        if n == 0 {
            return Err(param("point cloud is empty"));
        }
        if normals.len() != n || weights.len() != n || boundary_dist.len() != n {
            return Err(param("point cloud arrays differ in length"));
        }
        if dim != 2 && dim != 3 {
            return Err(param(format!("dimension must be 2 or 3, got {dim}")));
        }
        let tol = T::lit(1e-12).max(T::epsilon() * T::lit(16.0));
        for (i, nrm) in normals.iter().enumerate() {
            if (nrm.norm() - T::one()).abs() > tol {
                return Err(param(format!("normal {i} is not unit length")));
            }
        }
        if weights.iter().any(|w| !(*w > T::zero())) {
            return Err(param("quadrature weights must be positive"));
        }
        if boundary_dist.iter().any(|b| !(*b >= T::zero())) {
            return Err(param("boundary distances must be nonnegative"));
        }
        if dim == 2 && points.iter().any(|p| p.z != T::zero()) {
            return Err(param("2-D clouds must lie in the z = 0 plane"));
        }
        if !(spacing > T::zero()) {
            return Err(param("spacing must be positive"));
        }
        Ok(Self { points, normals, weights, boundary_dist, dim, spacing })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec3<T>] {
        &self.points
    }

    pub fn normals(&self) -> &[Vec3<T>] {
        &self.normals
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn boundary_dist(&self) -> &[T] {
        &self.boundary_dist
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn spacing(&self) -> T {
        self.spacing
    }

    /// Sum of quadrature weights (area or length of the sampled domain).
    pub fn total_weight(&self) -> T {
        pairwise_sum(&self.weights)
    }

    /// Weighted centroid.
    pub fn centroid(&self) -> Vec3<T> {
        let w = self.total_weight();
        let acc = self.points.iter().zip(&self.weights).fold(Vec3::zero(), |acc, (p, &wi)| acc + *p * wi);
        acc * (T::one() / w)
    }

    /// Smallest distance between any point of `self` and any point of `other`.
    pub fn min_distance_to(&self, other: &Self) -> T {
        let mut best = T::infinity();
        for p in &self.points {
            for q in &other.points {
                let d2 = (*p - *q).norm_sq();
                if d2 < best {
                    best = d2;
                }
            }
        }
        best.sqrt()
    }

    /// Applies a rigid motion to points and normals. Planar clouds only
    /// accept motions that keep the `z = 0` plane invariant.
    pub fn transformed(&self, motion: &RigidMotion<T>) -> Result<Self> {
        if self.dim == 2 && !motion.is_planar() {
            return Err(param("2-D clouds accept only in-plane motions"));
        }
        let mut points: Vec<Vec3<T>> = self.points.iter().map(|p| motion.apply(*p)).collect();
        if self.dim == 2 {
            for p in &mut points {
                p.z = T::zero();
            }
        }
        let normals = self.normals.iter().map(|n| motion.rotate(*n).normalized()).collect();
        Self::new(points, normals, self.weights.clone(), self.boundary_dist.clone(), self.dim, self.spacing)
    }

    /// Converts the cloud to another scalar type.
    pub fn cast<U: Real>(&self) -> PointCloud<U> {
        PointCloud {
            points: self.points.iter().map(|p| p.cast()).collect(),
            normals: self.normals.iter().map(|n| n.cast::<U>().normalized()).collect(),
            weights: self.weights.iter().map(|w| U::lit(w.as_f64())).collect(),
            boundary_dist: self.boundary_dist.iter().map(|b| U::lit(b.as_f64())).collect(),
            dim: self.dim,
            spacing: U::lit(self.spacing.as_f64()),
        }
    }

    /// Keeps only the points selected by `keep`.
    pub fn subset(&self, keep: impl Fn(usize) -> bool) -> Result<Self> {
        let idx: Vec<usize> = (0..self.len()).filter(|&i| keep(i)).collect();
        Self::new(
            idx.iter().map(|&i| self.points[i]).collect(),
            idx.iter().map(|&i| self.normals[i]).collect(),
            idx.iter().map(|&i| self.weights[i]).collect(),
            idx.iter().map(|&i| self.boundary_dist[i]).collect(),
            self.dim,
            self.spacing,
        )
    }

    /// Concatenates two clouds of equal dimension.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(param("cannot concatenate clouds of different dimension"));
        }
        let cat = |a: &[Vec3<T>], b: &[Vec3<T>]| a.iter().chain(b).copied().collect::<Vec<_>>();
        let catr = |a: &[T], b: &[T]| a.iter().chain(b).copied().collect::<Vec<_>>();
        Self::new(
            cat(&self.points, &other.points),
            cat(&self.normals, &other.normals),
            catr(&self.weights, &other.weights),
            catr(&self.boundary_dist, &other.boundary_dist),
            self.dim,
            self.spacing.max(other.spacing),
        )
    }
}
