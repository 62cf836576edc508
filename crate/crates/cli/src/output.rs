use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use shadowrank::geometry::{GeometrySpec, PointCloud};
use shadowrank::spectrum::SpectrumResult;

/// Writes `contents` to `path` through a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)
}

/// File-name stem of a case, e.g. `parallel-discs_a2.5_d2.5`.
pub fn case_id(spec: &GeometrySpec) -> String {
    let mut id = format!("{}_a{}", spec.shape, spec.a);
    for (tag, v) in [("d", spec.d), ("h", spec.h), ("phi", spec.phi)] {
        if v != 0.0 {
            let _ = write!(id, "_{tag}{}", (v * 1e4).round() / 1e4);
        }
    }
    if let Some(dim) = spec.dim {
        let _ = write!(id, "_{dim}d");
    }
    if spec.lambda != 1.0 {
        let _ = write!(id, "_lambda{}", spec.lambda);
    }
    id
}

pub fn spectrum_csv(s: &SpectrumResult) -> String {
    let mut out = String::from("n,sigma,sigma_norm\n");
    for (i, (v, n)) in s.sigmas().iter().zip(s.normalized()).enumerate() {
        let _ = writeln!(out, "{},{v:e},{n:e}", i + 1);
    }
    out
}

pub fn map_csv(cloud: &PointCloud<f64>, values: &[f64]) -> String {
    let mut out = String::from("x,y,z,value\n");
    for (p, v) in cloud.points().iter().zip(values) {
        let _ = writeln!(out, "{},{},{},{v}", p.x, p.y, p.z);
    }
    out
}
