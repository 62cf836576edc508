use faer::{c64, Mat, MatRef};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{ScenePair, Vec3};

use super::operator::{gemm, gemm_adjoint, LinearOperator};
use super::KernelSpec;

/// Rows evaluated per tile by the matrix-free path.
const TILE: usize = 256;

/// Largest dense block accepted by [`assemble_dense`], as `rows × cols`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DenseCap {
    pub rows: usize,
    pub cols: usize,
}

impl Default for DenseCap {
    fn default() -> Self {
        Self { rows: 4000, cols: 4000 }
    }
}

impl DenseCap {
    pub fn entries(&self) -> usize {
        self.rows * self.cols
    }
}

#[derive(Debug, Clone)]
pub enum Representation {
    /// Assembled `N_o × N_s` matrix.
    Dense(Mat<c64>),
    /// Matrix-free evaluation. `cache` holds the entries when they fit the
    /// memory budget given at construction.
    Operator { cache: Option<Mat<c64>> },
}

/// Interaction block `Z[i][j] = K(r_i, r'_j)` between observer rows and
/// source columns, with no quadrature weights.
#[derive(Debug, Clone)]
pub struct InteractionBlock {
    scene: ScenePair<f64>,
    kernel: KernelSpec,
    repr: Representation,
}

/// Dense assembly under the default cap.
pub fn assemble_dense(scene: &ScenePair<f64>) -> Result<InteractionBlock> {
    assemble_dense_with_cap(scene, DenseCap::default())
}

pub fn assemble_dense_with_cap(scene: &ScenePair<f64>, cap: DenseCap) -> Result<InteractionBlock> {
    let (rows, cols) = (scene.observer().len(), scene.source().len());
    if rows * cols > cap.entries() {
        return Err(Error::Size { rows, cols, cap: cap.entries() });
    }
    let kernel = KernelSpec::from_wavelength(scene.dim(), scene.wavelength())?;
    let z = fill(scene, &kernel);
    Ok(InteractionBlock { scene: scene.clone(), kernel, repr: Representation::Dense(z) })
}

fn fill(scene: &ScenePair<f64>, kernel: &KernelSpec) -> Mat<c64> {
    let (obs, src) = (scene.observer().points(), scene.source().points());
    let mut z = Mat::<c64>::zeros(obs.len(), src.len());
    z.as_mut().par_col_iter_mut().zip(src.par_iter()).for_each(|(mut col, &s)| {
        for (i, &o) in obs.iter().enumerate() {
            col[i] = kernel.at_distance((o - s).norm());
        }
    });
    z
}

impl InteractionBlock {
    /// Matrix-free block: entries are evaluated on the fly at every apply.
    pub fn operator(scene: &ScenePair<f64>) -> Result<Self> {
        Self::operator_with_budget(scene, 0)
    }

    /// Matrix-free block that keeps its entries in memory when they take at
    /// most `budget_bytes`.
    pub fn operator_with_budget(scene: &ScenePair<f64>, budget_bytes: usize) -> Result<Self> {
        let kernel = KernelSpec::from_wavelength(scene.dim(), scene.wavelength())?;
        let bytes = scene.observer().len() * scene.source().len() * std::mem::size_of::<c64>();
        let cache = (bytes <= budget_bytes).then(|| fill(scene, &kernel));
        Ok(Self { scene: scene.clone(), kernel, repr: Representation::Operator { cache } })
    }

    pub fn scene(&self) -> &ScenePair<f64> {
        &self.scene
    }

    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    pub fn representation(&self) -> &Representation {
        &self.repr
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.repr, Representation::Dense(_))
    }

    pub fn rows(&self) -> usize {
        self.scene.observer().len()
    }

    pub fn cols(&self) -> usize {
        self.scene.source().len()
    }

    /// Stored entries, if any.
    pub fn matrix(&self) -> Option<MatRef<'_, c64>> {
        match &self.repr {
            Representation::Dense(z) => Some(z.as_ref()),
            Representation::Operator { cache } => cache.as_ref().map(|z| z.as_ref()),
        }
    }

    /// Entry `(i, j)` as evaluated by the kernel.
    pub fn entry(&self, i: usize, j: usize) -> c64 {
        match self.matrix() {
            Some(z) => z[(i, j)],
            None => self.kernel.at_distance(self.distance(i, j)),
        }
    }

    #[inline]
    fn distance(&self, i: usize, j: usize) -> f64 {
        (self.scene.observer().points()[i] - self.scene.source().points()[j]).norm()
    }

    /// Dense copy of the block regardless of representation.
    pub fn to_dense(&self) -> Mat<c64> {
        match self.matrix() {
            Some(z) => z.to_owned(),
            None => fill(&self.scene, &self.kernel),
        }
    }

    /// `y = Z x`, one deterministic sum per row.
    pub fn apply(&self, x: &[c64]) -> Result<Vec<c64>> {
        if x.len() != self.cols() {
            return Err(Error::Shape { expected: self.cols(), found: x.len() });
        }
        let y = (0..self.rows())
            .into_par_iter()
            .map(|i| {
                let mut acc = c64::new(0.0, 0.0);
                for (j, xj) in x.iter().enumerate() {
                    acc += self.entry(i, j) * xj;
                }
                acc
            })
            .collect();
        Ok(y)
    }

    /// `x = Zᴴ y`, one deterministic sum per output entry.
    pub fn apply_adjoint(&self, y: &[c64]) -> Result<Vec<c64>> {
        if y.len() != self.rows() {
            return Err(Error::Shape { expected: self.rows(), found: y.len() });
        }
        let x = (0..self.cols())
            .into_par_iter()
            .map(|j| {
                let mut acc = c64::new(0.0, 0.0);
                for (i, yi) in y.iter().enumerate() {
                    acc += self.entry(i, j).conj() * yi;
                }
                acc
            })
            .collect();
        Ok(x)
    }

    fn row_tile(&self, start: usize, len: usize) -> Mat<c64> {
        let (obs, src) = (&self.scene.observer().points()[start..start + len], self.scene.source().points());
        tile(obs, src, &self.kernel)
    }

    fn col_tile(&self, start: usize, len: usize) -> Mat<c64> {
        let (obs, src) = (self.scene.observer().points(), &self.scene.source().points()[start..start + len]);
        tile(obs, src, &self.kernel)
    }
}

fn tile(obs: &[Vec3<f64>], src: &[Vec3<f64>], kernel: &KernelSpec) -> Mat<c64> {
    Mat::from_fn(obs.len(), src.len(), |i, j| kernel.at_distance((obs[i] - src[j]).norm()))
}

fn stack_rows(parts: Vec<Mat<c64>>, rows: usize, cols: usize) -> Mat<c64> {
    let mut out = Mat::zeros(rows, cols);
    let mut r0 = 0;
    for p in parts {
        out.as_mut().submatrix_mut(r0, 0, p.nrows(), cols).copy_from(&p);
        r0 += p.nrows();
    }
    out
}

impl LinearOperator for InteractionBlock {
    fn nrows(&self) -> usize {
        self.rows()
    }

    fn ncols(&self) -> usize {
        self.cols()
    }

    fn apply_block(&self, x: MatRef<'_, c64>) -> Mat<c64> {
        if let Some(z) = self.matrix() {
            return gemm(z, x);
        }
        let n = self.rows();
        let parts: Vec<Mat<c64>> = (0..n.div_ceil(TILE))
            .into_par_iter()
            .map(|t| {
                let start = t * TILE;
                let k = self.row_tile(start, TILE.min(n - start));
                gemm(k.as_ref(), x)
            })
            .collect();
        stack_rows(parts, n, x.ncols())
    }

    fn apply_adjoint_block(&self, y: MatRef<'_, c64>) -> Mat<c64> {
        if let Some(z) = self.matrix() {
            return gemm_adjoint(z, y);
        }
        let n = self.cols();
        let parts: Vec<Mat<c64>> = (0..n.div_ceil(TILE))
            .into_par_iter()
            .map(|t| {
                let start = t * TILE;
                let k = self.col_tile(start, TILE.min(n - start));
                gemm_adjoint(k.as_ref(), y)
            })
            .collect();
        stack_rows(parts, n, y.ncols())
    }
}
