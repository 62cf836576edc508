use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use faer::{c64, Mat};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::InteractionBlock;

/// Sidecar describing a binary block dump.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DumpHeader {
    pub rows: usize,
    pub cols: usize,
    pub k: f64,
    pub dim: usize,
}

fn sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

/// Writes the block row by row as little-endian interleaved `f32` pairs
/// (complex64), plus `<path>.json` with the header.
pub fn write_dense_dump(block: &InteractionBlock, path: &Path) -> Result<DumpHeader> {
    let z = block.to_dense();
    let header = DumpHeader { rows: z.nrows(), cols: z.ncols(), k: block.kernel().k, dim: block.kernel().dim };
    let mut buf = Vec::with_capacity(z.nrows() * z.ncols() * 8);
    for i in 0..z.nrows() {
        for j in 0..z.ncols() {
            let v = z[(i, j)];
            buf.extend_from_slice(&(v.re as f32).to_le_bytes());
            buf.extend_from_slice(&(v.im as f32).to_le_bytes());
        }
    }
    fs::File::create(path)?.write_all(&buf)?;
    fs::write(sidecar(path), serde_json::to_string_pretty(&header)?)?;
    Ok(header)
}

pub fn read_dense_dump(path: &Path) -> Result<(DumpHeader, Mat<c64>)> {
    let header: DumpHeader = serde_json::from_str(&fs::read_to_string(sidecar(path))?)?;
    let bytes = fs::read(path)?;
    let expected = header.rows * header.cols * 8;
    if bytes.len() != expected {
        return Err(Error::Shape { expected, found: bytes.len() });
    }
    let f = |o: usize| f32::from_le_bytes(bytes[o..o + 4].try_into().expect("4 bytes")) as f64;
    let z = Mat::from_fn(header.rows, header.cols, |i, j| {
        let o = (i * header.cols + j) * 8;
        c64::new(f(o), f(o + 4))
    });
    Ok((header, z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_scene, GeometrySpec};
    use crate::kernel::assemble_dense;

    #[test]
    fn round_trip() {
        let dir = std::env::temp_dir().join(format!("shadowrank-dump-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("z.bin");
        let b = assemble_dense(&build_scene(&GeometrySpec::lines(2.0, 1.0, 0.0), 1.0).unwrap()).unwrap();
        let h = write_dense_dump(&b, &path).unwrap();
        assert_eq!((h.rows, h.cols, h.dim), (8, 8, 2));
        let (h2, z) = read_dense_dump(&path).unwrap();
        assert_eq!(h, h2);
        let d = b.to_dense();
        for i in 0..8 {
            for j in 0..8 {
                assert!((z[(i, j)] - d[(i, j)]).norm() < 1e-6);
            }
        }
        fs::remove_dir_all(&dir).unwrap();
    }
}
