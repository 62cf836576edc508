use std::ops::Range;

use faer::{c64, Mat};
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ScenePair, Shape};
use crate::spectrum::SpectrumResult;

/// Interval of transverse wavenumbers `[k_lo, k_hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralBand {
    pub k_lo: f64,
    pub k_hi: f64,
}

impl SpectralBand {
    pub fn contains(&self, kx: f64) -> bool {
        kx >= self.k_lo && kx <= self.k_hi
    }

    pub fn width(&self) -> f64 {
        self.k_hi - self.k_lo
    }
}

/// Unitary DFT of the left singular vectors along a uniformly sampled
/// observer line.
#[derive(Debug, Clone)]
pub struct ModeDft {
    /// Bin wavenumbers in ascending order, within `(−π/Δx, π/Δx]`.
    pub k_x: Vec<f64>,
    /// `|X[bin][column]|²`.
    pub power: Mat<f64>,
}

impl ModeDft {
    /// Per-bin power averaged over `columns`.
    pub fn group_power(&self, columns: Range<usize>) -> Vec<f64> {
        let w = columns.len().max(1) as f64;
        (0..self.k_x.len()).map(|b| columns.clone().map(|c| self.power[(b, c)]).sum::<f64>() / w).collect()
    }

    /// Share of the group's power whose bins lie inside `band`.
    pub fn band_fraction(&self, columns: Range<usize>, band: &SpectralBand) -> f64 {
        let p = self.group_power(columns);
        let total: f64 = p.iter().sum();
        if total == 0.0 {
            return 0.0;
        }
        let inside: f64 = p.iter().zip(&self.k_x).filter(|(_, &k)| band.contains(k)).map(|(v, _)| v).sum();
        inside / total
    }
}

fn uniform_step(xs: &[f64]) -> Result<f64> {
    let n = xs.len();
    if n < 2 {
        return Err(Error::NonUniformSampling);
    }
    let dx = (xs[n - 1] - xs[0]) / (n - 1) as f64;
    if dx <= 0.0 {
        return Err(Error::NonUniformSampling);
    }
    let ok = xs.iter().enumerate().all(|(i, &x)| (x - (xs[0] + i as f64 * dx)).abs() <= 1e-9 * dx);
    if ok {
        Ok(dx)
    } else {
        Err(Error::NonUniformSampling)
    }
}

pub fn mode_dft(spectrum: &SpectrumResult, scene: &ScenePair<f64>) -> Result<ModeDft> {
    let u = spectrum.u().ok_or(Error::MissingVectors)?;
    let pts = scene.observer().points();
    if u.nrows() != pts.len() {
        return Err(Error::Shape { expected: pts.len(), found: u.nrows() });
    }
    let (y0, z0) = (pts[0].y, pts[0].z);
    if pts.iter().any(|p| (p.y - y0).abs() > 1e-12 || (p.z - z0).abs() > 1e-12) {
        return Err(Error::NonUniformSampling);
    }
    let xs: Vec<f64> = pts.iter().map(|p| p.x).collect();
    let dx = uniform_step(&xs)?;
    let n = xs.len();
    let fft = FftPlanner::<f64>::new().plan_fft_forward(n);
    let scale = 1.0 / (n as f64).sqrt();

    // bin m maps to m for m ≤ n/2, otherwise m − n
    let signed = |m: usize| if m <= n / 2 { m as isize } else { m as isize - n as isize };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&m| signed(m));
    let k_x = order.iter().map(|&m| 2.0 * std::f64::consts::PI * signed(m) as f64 / (n as f64 * dx)).collect();

    let mut power = Mat::zeros(n, u.ncols());
    let mut buf = vec![c64::new(0.0, 0.0); n];
    for c in 0..u.ncols() {
        for (i, b) in buf.iter_mut().enumerate() {
            *b = u[(i, c)];
        }
        fft.process(&mut buf);
        for (row, &m) in order.iter().enumerate() {
            power[(row, c)] = (buf[m] * scale).norm_sqr();
        }
    }
    Ok(ModeDft { k_x, power })
}

/// Range of `k·(x' − x)/R` over pairs of observer/source segment points.
pub fn predict_band(scene: &ScenePair<f64>) -> Result<SpectralBand> {
    let (Some(src), Some(obs)) = (scene.source_domain(), scene.observer_domain()) else {
        return Err(Error::Geometry("spectral band needs analytic segment domains".into()));
    };
    let ends = |d: &crate::geometry::Domain<f64>| match d.shape {
        Shape::Segment { length } if (d.placement.u.x.abs() - 1.0).abs() < 1e-12 => {
            let a = d.placement.origin;
            Ok([a, a + d.placement.u * length])
        }
        _ => Err(Error::Geometry("spectral band needs segments along x".into())),
    };
    let (s, o) = (ends(src)?, ends(obs)?);
    let k = scene.wavenumber();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for p in &s {
        for q in &o {
            let r = (*p - *q).norm();
            let v = if r == 0.0 { 0.0 } else { k * (p.x - q.x) / r };
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    Ok(SpectralBand { k_lo: lo, k_hi: hi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_scene, GeometrySpec};
    use crate::spectrum::SvdMethod;
    use std::f64::consts::PI;

    fn scene() -> ScenePair<f64> {
        build_scene(&GeometrySpec::lines(4.0, 4.0, 0.0), 1.0).unwrap()
    }

    #[test]
    fn plane_wave_lands_in_one_bin() {
        let sc = scene();
        let pts = sc.observer().points();
        let n = pts.len();
        let dx = pts[1].x - pts[0].x;
        let kx = 2.0 * PI * 3.0 / (n as f64 * dx);
        let u = Mat::from_fn(n, 1, |i, _| c64::from_polar(1.0 / (n as f64).sqrt(), kx * pts[i].x));
        let s = SpectrumResult::new(vec![1.0], Some(u), None, SvdMethod::Dense, None, 0.0).unwrap();
        let d = mode_dft(&s, &sc).unwrap();
        let (b, _) = d.k_x.iter().enumerate().min_by(|a, b| (a.1 - kx).abs().total_cmp(&(b.1 - kx).abs())).unwrap();
        assert!((d.power[(b, 0)] - 1.0).abs() < 1e-10);
        assert!(d.k_x.windows(2).all(|w| w[0] < w[1]));
        assert!(d.k_x[n - 1] <= PI / dx + 1e-12 && d.k_x[0] > -PI / dx);
    }

    #[test]
    fn band_of_facing_lines() {
        let sc = build_scene(&GeometrySpec::lines(4.0, 4.0, 0.0), 1.0).unwrap();
        let b = predict_band(&sc).unwrap();
        let k = 2.0 * PI;
        let e = k * 4.0 / 32f64.sqrt();
        assert!((b.k_lo + e).abs() < 1e-12 && (b.k_hi - e).abs() < 1e-12);
        assert!(b.contains(0.0) && !b.contains(k));
    }

    #[test]
    fn nonuniform_line_rejected() {
        let sc = build_scene(&GeometrySpec::plates(2.0, 2.0, 0.0), 1.0).unwrap();
        let n = sc.observer().len();
        let u = Mat::from_fn(n, 1, |_, _| c64::new(1.0, 0.0));
        let s = SpectrumResult::new(vec![1.0], Some(u), None, SvdMethod::Dense, None, 0.0).unwrap();
        assert!(matches!(mode_dft(&s, &sc), Err(Error::NonUniformSampling)));
    }
}
