use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{Curve, Outline, ScenePair, Vec3};
use crate::scalar::{pairwise_sum, robust_ceil, Real};

use super::{ShadowEstimate, ShadowKind, ShadowMethod};

/// Cells along the longer of the two outline perimeters at the coarse level.
const PERIMETER_CELLS: f64 = 1024.0;
const DISC_SIDES: usize = 64;

struct Node<T> {
    p: Vec3<T>,
    n: Vec3<T>,
    w: T,
}

fn nodes<T: Real>(curves: &[Curve<T>], spacing: T) -> Vec<Node<T>> {
    let mut out = Vec::new();
    for c in curves {
        let d = c.end - c.start;
        let len = d.norm();
        let m = robust_ceil(len / spacing);
        let w = len / T::from_usize_lossy(m);
        for i in 0..m {
            let t = (T::from_usize_lossy(i) + T::lit(0.5)) / T::from_usize_lossy(m);
            out.push(Node { p: c.start + d * t, n: c.normal, w });
        }
    }
    out
}

/// True when the open segment `p → q` runs through the interior of the
/// convex counter-clockwise polygon over a positive length.
fn blocked<T: Real>(p: Vec3<T>, q: Vec3<T>, poly: &[Vec3<T>]) -> bool {
    let d = q - p;
    let (mut t0, mut t1) = (T::zero(), T::one());
    let n = poly.len();
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        let e = b - a;
        // outward normal of a CCW edge
        let m = Vec3::new(e.y, -e.x, T::zero());
        let off = m.dot(p - a);
        let den = m.dot(d);
        if den == T::zero() {
            if off > T::zero() {
                return false;
            }
        } else {
            let t = -off / den;
            if den > T::zero() {
                t1 = t1.min(t);
            } else {
                t0 = t0.max(t);
            }
        }
        if t1 - t0 <= T::lit(1e-9) {
            return false;
        }
    }
    true
}

fn visible_sum<T: Real>(obs: &[Node<T>], src: &[Node<T>], occluders: &[Vec<Vec3<T>>]) -> T {
    let rows: Vec<T> = obs
        .par_iter()
        .map(|o| {
            let mut acc = T::zero();
            for s in src {
                let r = o.p - s.p;
                let r2 = r.norm_sq();
                let num = o.n.dot(r).abs() * s.n.dot(r).abs();
                if num == T::zero() || occluders.iter().any(|poly| blocked(s.p, o.p, poly)) {
                    continue;
                }
                acc = acc + s.w * num / (r2 * r2.sqrt());
            }
            acc * o.w
        })
        .collect();
    pairwise_sum(&rows)
}

fn perimeter<T: Real>(o: &Outline<T>) -> T {
    o.curves.iter().fold(T::zero(), |acc, c| acc + (c.end - c.start).norm())
}

/// Mutual shadow length of the in-plane cross-section of a planar or
/// quasi-planar scene: both domains are projected onto the observer's
/// plane and the double line integral runs over their outlines, keeping
/// only mutually visible point pairs.
pub fn shadow_length_planar<T: Real>(scene: &ScenePair<T>) -> Result<ShadowEstimate<T>> {
    let (src, obs) = match (scene.source_domain(), scene.observer_domain()) {
        (Some(s), Some(o)) => (s, o),
        _ => return Err(Error::Geometry("planar shadow length needs analytic domains".into())),
    };
    let (e1, e2, origin) = if scene.dim() == 2 {
        (Vec3::unit_x(), Vec3::unit_y(), Vec3::zero())
    } else {
        let n = obs.normal();
        if n.cross(src.normal()).norm() > T::lit(1e-6) {
            return Err(Error::Geometry("planar cross-section needs parallel domains".into()));
        }
        let e1 = n.any_orthogonal();
        (e1, n.cross(e1), obs.centroid())
    };
    let so = src.outline(origin, e1, e2, DISC_SIDES)?;
    let oo = obs.outline(origin, e1, e2, DISC_SIDES)?;
    let occluders: Vec<Vec<Vec3<T>>> = so.occluders.iter().chain(oo.occluders.iter()).cloned().collect();
    let spacing = perimeter(&so).max(perimeter(&oo)) / T::lit(PERIMETER_CELLS);
    let level = |h: T| visible_sum(&nodes(&oo.curves, h), &nodes(&so.curves, h), &occluders);
    let coarse = level(spacing);
    let fine = level(spacing / T::lit(2.0));
    let rel = if fine > T::zero() { (fine - coarse).abs() / fine } else { T::zero() };
    Ok(ShadowEstimate::new(fine, ShadowKind::Length, scene.wavelength(), ShadowMethod::LosIntegral, Some(rel)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_scene, GeometrySpec};

    #[test]
    fn coplanar_squares_facing_edges() {
        // facing L-shaped edge pairs of two diagonally shifted squares
        let scene = build_scene::<f64>(&GeometrySpec::coplanar(3.0).with_dim(2), 1.0).unwrap();
        let e = shadow_length_planar(&scene).unwrap();
        assert!((e.value / 3.0 - 0.67).abs() < 0.01, "{}", e.value / 3.0);
        let e3 = shadow_length_planar(&build_scene::<f64>(&GeometrySpec::coplanar(3.0), 1.0).unwrap()).unwrap();
        assert!((e3.value - e.value).abs() < 1e-9);
    }

    #[test]
    fn plate_inside_frame_sees_twice_its_perimeter() {
        for h in [0.25, 0.5, 1.0] {
            let scene = build_scene::<f64>(&GeometrySpec::plate_and_frame(2.0, h), 1.0).unwrap();
            let e = shadow_length_planar(&scene).unwrap();
            assert!((e.value - 16.0).abs() / 16.0 < 1e-2, "h={h}: {}", e.value);
        }
    }

    #[test]
    fn segment_blocking() {
        let sq = vec![
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(1.0, 1.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
        ];
        assert!(blocked(Vec3::new(-1.0, 0.5, 0.0), Vec3::new(2.0, 0.5, 0.0), &sq));
        assert!(!blocked(Vec3::new(-1.0, 1.5, 0.0), Vec3::new(2.0, 1.5, 0.0), &sq));
        // leaving the polygon from its boundary is not blocked
        assert!(!blocked(Vec3::new(1.0, 0.5, 0.0), Vec3::new(2.0, 0.5, 0.0), &sq));
        assert!(blocked(Vec3::new(0.0, 0.5, 0.0), Vec3::new(2.0, 0.5, 0.0), &sq));
    }
}
