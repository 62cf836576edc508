use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::scalar::Real;

/// Cartesian 3-vector. Planar (2-D) data lives in the `z = 0` plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Vec3<T> {
    #[inline]
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    #[inline]
    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn unit_x() -> Self {
        Self::new(T::one(), T::zero(), T::zero())
    }

    pub fn unit_y() -> Self {
        Self::new(T::zero(), T::one(), T::zero())
    }

    pub fn unit_z() -> Self {
        Self::new(T::zero(), T::zero(), T::one())
    }

    #[inline]
    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn cross(self, o: Self) -> Self {
        Self::new(self.y * o.z - self.z * o.y, self.z * o.x - self.x * o.z, self.x * o.y - self.y * o.x)
    }

    #[inline]
    pub fn norm_sq(self) -> T {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> T {
        self.norm_sq().sqrt()
    }

    pub fn normalized(self) -> Self {
        self * (T::one() / self.norm())
    }

    /// Converts every component to another scalar type.
    pub fn cast<U: Real>(self) -> Vec3<U> {
        Vec3::new(U::lit(self.x.as_f64()), U::lit(self.y.as_f64()), U::lit(self.z.as_f64()))
    }

    /// Some unit vector orthogonal to `self` (which must be nonzero).
    pub fn any_orthogonal(self) -> Self {
        let n = self.normalized();
        let trial = if n.x.abs() < T::lit(0.9) { Self::unit_x() } else { Self::unit_y() };
        (trial - n * n.dot(trial)).normalized()
    }
}

impl<T: Real> Add for Vec3<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Real> Sub for Vec3<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Real> Mul<T> for Vec3<T> {
    type Output = Self;
    #[inline]
    fn mul(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}

impl<T: Real> Neg for Vec3<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

/// Proper rotation plus translation, `p -> R p + t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidMotion<T> {
    /// Rotation matrix rows.
    pub rows: [Vec3<T>; 3],
    pub translation: Vec3<T>,
}

impl<T: Real> RigidMotion<T> {
    pub fn identity() -> Self {
        Self { rows: [Vec3::unit_x(), Vec3::unit_y(), Vec3::unit_z()], translation: Vec3::zero() }
    }

    /// Rotation by `angle` about the unit `axis` (Rodrigues), then translation.
    pub fn from_axis_angle(axis: Vec3<T>, angle: T, translation: Vec3<T>) -> Self {
        let k = axis.normalized();
        let (s, c) = angle.sin_cos();
        let t = T::one() - c;
        let rows = [
            Vec3::new(c + k.x * k.x * t, k.x * k.y * t - k.z * s, k.x * k.z * t + k.y * s),
            Vec3::new(k.y * k.x * t + k.z * s, c + k.y * k.y * t, k.y * k.z * t - k.x * s),
            Vec3::new(k.z * k.x * t - k.y * s, k.z * k.y * t + k.x * s, c + k.z * k.z * t),
        ];
        Self { rows, translation }
    }

    #[inline]
    pub fn rotate(&self, v: Vec3<T>) -> Vec3<T> {
        Vec3::new(self.rows[0].dot(v), self.rows[1].dot(v), self.rows[2].dot(v))
    }

    #[inline]
    pub fn apply(&self, p: Vec3<T>) -> Vec3<T> {
        self.rotate(p) + self.translation
    }

    /// True when the motion keeps the `z = 0` plane invariant.
    pub fn is_planar(&self) -> bool {
        let eps = T::lit(1e-12);
        self.rows[2].x.abs() < eps
            && self.rows[2].y.abs() < eps
            && self.rows[0].z.abs() < eps
            && self.rows[1].z.abs() < eps
            && self.translation.z.abs() < eps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rodrigues_rotates_x_into_y() {
        let m = RigidMotion::from_axis_angle(Vec3::unit_z(), std::f64::consts::FRAC_PI_2, Vec3::zero());
        let r = m.rotate(Vec3::unit_x());
        assert!((r - Vec3::unit_y()).norm() < 1e-15);
        assert!(m.is_planar());
    }

    #[test]
    fn orthogonal_helper() {
        for v in [Vec3::new(1.0f64, 2.0, 3.0), Vec3::unit_x(), Vec3::new(0.0, 0.0, -4.0)] {
            let o = v.any_orthogonal();
            assert!(o.dot(v).abs() < 1e-12);
            assert!((o.norm() - 1.0).abs() < 1e-12);
        }
    }
}
