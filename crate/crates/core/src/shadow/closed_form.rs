use crate::error::{param, Result};
use crate::scalar::Real;

use super::{ShadowEstimate, ShadowKind, ShadowMethod};

/// Mutual shadow area of coaxial parallel discs of radius `a` at
/// separation `d`: `π²/4 (√(4a² + d²) − d)²`.
pub fn shadow_discs_closed_form<T: Real>(a: T, d: T, wavelength: T) -> Result<ShadowEstimate<T>> {
    if !(a > T::zero()) || !(d >= T::zero()) || !(wavelength > T::zero()) {
        return Err(param("disc closed form needs a > 0, d >= 0, wavelength > 0"));
    }
    let four = T::lit(4.0);
    // (√(4a²+d²) − d) = 4a² / (√(4a²+d²) + d) avoids cancellation at large d
    let s = (four * a * a + d * d).sqrt();
    let gap = four * a * a / (s + d);
    let value = T::PI() * T::PI() / four * gap * gap;
    Ok(ShadowEstimate::new(value, ShadowKind::Area, wavelength, ShadowMethod::ClosedForm, Some(T::zero())))
}

/// Mutual shadow length of parallel segments of length `a`, `d` apart and
/// shifted by `h`: `√(d²+(a+h)²) − 2√(d²+h²) + √(d²+(a−h)²)`.
pub fn shadow_lines_closed_form<T: Real>(a: T, d: T, h: T, wavelength: T) -> Result<ShadowEstimate<T>> {
    if !(a > T::zero()) || !(d >= T::zero()) || !h.is_finite() || !(wavelength > T::zero()) {
        return Err(param("line closed form needs a > 0, d >= 0, finite h, wavelength > 0"));
    }
    if d == T::zero() && h == T::zero() {
        log::warn!("coincident segments: mutual shadow length degenerates to 2a");
    }
    let r = |x: T| (d * d + x * x).sqrt();
    let value = (r(a + h) - r(h) - r(h) + r(a - h)).max(T::zero());
    Ok(ShadowEstimate::new(value, ShadowKind::Length, wavelength, ShadowMethod::ClosedForm, Some(T::zero())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn disc_examples() {
        let e = shadow_discs_closed_form(1.0, 0.0, 1.0).unwrap();
        assert!((e.value - PI * PI).abs() < 1e-12);
        let e = shadow_discs_closed_form(2.5, 2.5, 1.0).unwrap();
        let oracle = PI * PI / 4.0 * ((4.0f64 * 6.25 + 6.25).sqrt() - 2.5).powi(2);
        assert!((e.value - oracle).abs() < 1e-12);
        assert!((e.dof - 23.56).abs() < 0.01);
        assert_eq!(e.method, ShadowMethod::ClosedForm);
    }

    #[test]
    fn disc_far_limit_and_monotone() {
        let mut prev = f64::INFINITY;
        for d in [0.0, 0.5, 1.0, 4.0, 16.0, 64.0] {
            let v = shadow_discs_closed_form(1.0, d, 1.0).unwrap().value;
            assert!(v < prev);
            prev = v;
        }
        let d = 1e4;
        let v = shadow_discs_closed_form(1.0, d, 1.0).unwrap().value;
        assert!((v / (PI * PI / (d * d)) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn line_examples() {
        let v = shadow_lines_closed_form(1.0f64, 0.0, 0.0, 1.0).unwrap().value;
        assert!((v - 2.0).abs() < 1e-15);
        let v = shadow_lines_closed_form(1.0, 1.0, 0.0, 1.0).unwrap().value;
        assert!((v - 2.0 * (2.0f64.sqrt() - 1.0)).abs() < 1e-14);
        let v = shadow_lines_closed_form(1.0, 2.0, 2.0, 1.0).unwrap().value;
        let oracle = 13.0f64.sqrt() - 2.0 * 8.0f64.sqrt() + 5.0f64.sqrt();
        assert!((v - oracle).abs() < 1e-14);
        assert!((v - 0.1848).abs() < 1e-4);
    }

    #[test]
    fn bad_inputs() {
        assert!(shadow_discs_closed_form(0.0, 1.0, 1.0).is_err());
        assert!(shadow_discs_closed_form(1.0, -1.0, 1.0).is_err());
        assert!(shadow_lines_closed_form(-1.0, 1.0, 0.0, 1.0).is_err());
    }
}
