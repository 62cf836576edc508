use crate::geometry::Vec3;
use crate::scalar::Real;

/// Area of a simple polygon in the `xy` plane (absolute value).
pub fn polygon_area<T: Real>(poly: &[Vec3<T>]) -> T {
    crate::geometry::signed_area(poly).abs()
}

/// Intersection of two convex polygons in the `xy` plane by
/// Sutherland–Hodgman clipping. Both inputs must be counter-clockwise.
pub fn clip_convex<T: Real>(subject: &[Vec3<T>], clipper: &[Vec3<T>]) -> Vec<Vec3<T>> {
    let mut out: Vec<Vec3<T>> = subject.to_vec();
    let mut input = Vec::with_capacity(subject.len() + clipper.len());
    let n = clipper.len();
    for i in 0..n {
        if out.is_empty() {
            break;
        }
        let (a, b) = (clipper[i], clipper[(i + 1) % n]);
        let side = |p: Vec3<T>| (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
        std::mem::swap(&mut input, &mut out);
        out.clear();
        let m = input.len();
        for j in 0..m {
            let cur = input[j];
            let prev = input[(j + m - 1) % m];
            let (sc, sp) = (side(cur), side(prev));
            if sc >= T::zero() {
                if sp < T::zero() {
                    out.push(prev + (cur - prev) * (sp / (sp - sc)));
                }
                out.push(cur);
            } else if sp >= T::zero() {
                out.push(prev + (cur - prev) * (sp / (sp - sc)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(x0: f64, y0: f64, s: f64) -> Vec<Vec3<f64>> {
        vec![
            Vec3::new(x0, y0, 0.0),
            Vec3::new(x0 + s, y0, 0.0),
            Vec3::new(x0 + s, y0 + s, 0.0),
            Vec3::new(x0, y0 + s, 0.0),
        ]
    }

    #[test]
    fn overlapping_squares() {
        let p = clip_convex(&square(0.0, 0.0, 1.0), &square(0.5, 0.25, 1.0));
        assert!((polygon_area(&p) - 0.375).abs() < 1e-15);
    }

    #[test]
    fn disjoint_and_contained() {
        assert!(polygon_area(&clip_convex(&square(0.0, 0.0, 1.0), &square(2.0, 0.0, 1.0))) < 1e-15);
        let inner = square(0.25, 0.25, 0.5);
        assert!((polygon_area(&clip_convex(&inner, &square(0.0, 0.0, 1.0))) - 0.25).abs() < 1e-15);
        assert!((polygon_area(&clip_convex(&square(0.0, 0.0, 1.0), &inner)) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn triangle_against_square() {
        let tri = vec![Vec3::new(0.0, 0.0, 0.0), Vec3::new(2.0, 0.0, 0.0), Vec3::new(0.0, 2.0, 0.0)];
        // square [0,1]² lies fully below x + y = 2
        assert!((polygon_area(&clip_convex(&tri, &square(0.0, 0.0, 1.0))) - 1.0).abs() < 1e-15);
        // square [0.5,1.5]² loses the corner triangle above x + y = 2 (area 0.5)
        assert!((polygon_area(&clip_convex(&tri, &square(0.5, 0.5, 1.0))) - 0.5).abs() < 1e-15);
    }
}
