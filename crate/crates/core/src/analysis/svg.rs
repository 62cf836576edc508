//! Minimal SVG writers for spectra and localization maps.

use std::fmt::Write;

const W: f64 = 640.0;
const H: f64 = 420.0;
const M: f64 = 60.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

#[derive(Debug, Clone, Default)]
pub struct PlotLabels {
    pub title: String,
    pub x: String,
    pub y: String,
}

pub struct Series<'a> {
    pub label: &'a str,
    pub points: &'a [(f64, f64)],
}

fn extent(vals: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) =
        vals.filter(|v| v.is_finite()).fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-300 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn header(out: &mut String, labels: &PlotLabels) {
    let _ = write!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = write!(out, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = write!(
        out,
        r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{}</text>"#,
        W / 2.0,
        escape(&labels.title)
    );
    let _ = write!(out, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, W / 2.0, H - 10.0, escape(&labels.x));
    let _ = write!(
        out,
        r#"<text x="15" y="{}" text-anchor="middle" transform="rotate(-90 15 {})">{}</text>"#,
        H / 2.0,
        H / 2.0,
        escape(&labels.y)
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn axes(out: &mut String, (x0, x1): (f64, f64), (y0, y1): (f64, f64)) {
    let _ = write!(
        out,
        r##"<rect x="{M}" y="{M}" width="{}" height="{}" fill="none" stroke="#333"/>"##,
        W - 2.0 * M,
        H - 2.0 * M
    );
    for (i, (xv, yv)) in [(x0, y0), (x1, y1)].into_iter().enumerate() {
        let px = if i == 0 { M } else { W - M };
        let py = if i == 0 { H - M } else { M };
        let _ = write!(out, r#"<text x="{px}" y="{}" text-anchor="middle">{}</text>"#, H - M + 16.0, fmt(xv));
        let _ = write!(out, r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#, M - 4.0, py + 4.0, fmt(yv));
    }
}

fn fmt(v: f64) -> String {
    if v != 0.0 && (v.abs() >= 1e4 || v.abs() < 1e-2) {
        format!("{v:.2e}")
    } else {
        format!("{v:.3}")
    }
}

/// Line plot; `log_y` plots `log₁₀ y` and drops non-positive values.
pub fn line_plot(series: &[Series<'_>], labels: &PlotLabels, log_y: bool) -> String {
    let tr = |y: f64| if log_y { y.log10() } else { y };
    let xr = extent(series.iter().flat_map(|s| s.points.iter().map(|p| p.0)));
    let yr = extent(series.iter().flat_map(|s| s.points.iter().map(|p| tr(p.1))));
    let sx = |x: f64| M + (x - xr.0) / (xr.1 - xr.0) * (W - 2.0 * M);
    let sy = |y: f64| H - M - (y - yr.0) / (yr.1 - yr.0) * (H - 2.0 * M);

    let mut out = String::new();
    header(&mut out, labels);
    axes(&mut out, xr, yr);
    for (i, s) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let mut path = String::new();
        for &(x, y) in s.points {
            let v = tr(y);
            if v.is_finite() {
                let _ = write!(path, "{:.2},{:.2} ", sx(x), sy(v));
            }
        }
        let _ =
            write!(out, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, path.trim_end());
        let _ = write!(
            out,
            r#"<text x="{}" y="{}" fill="{color}">{}</text>"#,
            W - M - 120.0,
            M + 16.0 * (i + 1) as f64,
            escape(s.label)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn ramp(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let r = (255.0 * t) as u8;
    let g = (255.0 * (1.0 - (2.0 * t - 1.0).abs())) as u8;
    let b = (255.0 * (1.0 - t)) as u8;
    format!("#{r:02x}{g:02x}{b:02x}")
}

/// Scatter heat map of `values` (in `[−1, 0]`) at planar `points`.
pub fn heatmap(points: &[(f64, f64)], values: &[f64], cell: f64, labels: &PlotLabels) -> String {
    let xr = extent(points.iter().map(|p| p.0));
    let yr = extent(points.iter().map(|p| p.1));
    let span = (xr.1 - xr.0 + cell).max(yr.1 - yr.0 + cell);
    let scale = (H - 2.0 * M).min(W - 2.0 * M) / span;
    let mut out = String::new();
    header(&mut out, labels);
    let side = (cell * scale).max(1.0);
    for (&(x, y), &v) in points.iter().zip(values) {
        let px = M + (x - xr.0) * scale;
        let py = H - M - (y - yr.0) * scale - side;
        let _ = write!(
            out,
            r#"<rect x="{px:.2}" y="{py:.2}" width="{side:.2}" height="{side:.2}" fill="{}"/>"#,
            ramp(v + 1.0)
        );
    }
    out.push_str("</svg>\n");
    out
}
