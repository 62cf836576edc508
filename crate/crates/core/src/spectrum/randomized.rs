use faer::{c64, Mat, MatRef, Par};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{param, Error, Result};
use crate::kernel::{gemm, gemm_adjoint, LinearOperator};

use super::{SpectrumResult, SvdMethod};

/// Blocked adaptive range finder settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomizedOptions {
    /// Columns per Gaussian test block.
    pub block: usize,
    /// Power iterations per block.
    pub power: usize,
    /// Extra basis columns kept beyond the last value above the target.
    pub oversample: usize,
    /// Largest basis size; defaults to `min(rows, cols)`.
    pub max_rank: Option<usize>,
    /// Keep singular vectors.
    pub vectors: bool,
}

impl Default for RandomizedOptions {
    fn default() -> Self {
        Self { block: 64, power: 2, oversample: 10, max_rank: None, vectors: false }
    }
}

fn gaussian(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Mat<c64> {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let mut m = Mat::zeros(rows, cols);
    for j in 0..cols {
        for i in 0..rows {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            m[(i, j)] = c64::new(re * scale, im * scale);
        }
    }
    m
}

fn orth(y: MatRef<'_, c64>) -> Mat<c64> {
    y.qr().compute_thin_Q()
}

/// `y − Q (Qᴴ y)`.
fn project_out(q: MatRef<'_, c64>, y: Mat<c64>) -> Mat<c64> {
    if q.ncols() == 0 {
        return y;
    }
    let c = gemm_adjoint(q, y.as_ref());
    &y - gemm(q, c.as_ref())
}

fn hcat(a: Mat<c64>, b: MatRef<'_, c64>) -> Mat<c64> {
    let mut out = Mat::zeros(a.nrows(), a.ncols() + b.ncols());
    out.as_mut().submatrix_mut(0, 0, a.nrows(), a.ncols()).copy_from(&a);
    out.as_mut().submatrix_mut(0, a.ncols(), b.nrows(), b.ncols()).copy_from(b);
    out
}

fn vcat(a: Mat<c64>, b: MatRef<'_, c64>) -> Mat<c64> {
    let mut out = Mat::zeros(a.nrows() + b.nrows(), a.ncols());
    out.as_mut().submatrix_mut(0, 0, a.nrows(), a.ncols()).copy_from(&a);
    out.as_mut().submatrix_mut(a.nrows(), 0, b.nrows(), b.ncols()).copy_from(b);
    out
}

/// Randomized SVD with the default options.
pub fn svd_randomized(op: &impl LinearOperator, target_tau: f64, seed: u64) -> Result<SpectrumResult> {
    svd_randomized_with(op, target_tau, seed, &RandomizedOptions::default())
}

/// Blocked randomized QB factorization `A ≈ Q B` grown until a new block's
/// norm drops below `target_tau / 10` of the leading singular value,
/// followed by an SVD of `B`. The result certifies values down to
/// `target_tau`.
pub fn svd_randomized_with(
    op: &impl LinearOperator,
    target_tau: f64,
    seed: u64,
    opts: &RandomizedOptions,
) -> Result<SpectrumResult> {
    if !(target_tau > 0.0 && target_tau < 1.0) {
        return Err(param(format!("target tau must lie in (0, 1), got {target_tau}")));
    }
    if opts.block == 0 {
        return Err(param("block size must be positive"));
    }
    faer::set_global_parallelism(Par::Seq);
    let (m, n) = (op.nrows(), op.ncols());
    let full = m.min(n);
    let cap = opts.max_rank.unwrap_or(full).min(full);
    let stop = target_tau / 10.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q = Mat::<c64>::zeros(m, 0);
    let mut b = Mat::<c64>::zeros(0, n);
    let mut sigma1 = 0.0f64;
    let mut converged = false;
    while q.ncols() < cap {
        let width = opts.block.min(cap - q.ncols());
        let omega = gaussian(n, width, &mut rng);
        // range of the deflated operator A − Q B
        let deflated = |x: MatRef<'_, c64>| -> Mat<c64> {
            let y = op.apply_block(x);
            if q.ncols() == 0 {
                y
            } else {
                &y - gemm(q.as_ref(), gemm(b.as_ref(), x).as_ref())
            }
        };
        let deflated_adj = |y: MatRef<'_, c64>| -> Mat<c64> {
            let x = op.apply_adjoint_block(y);
            if q.ncols() == 0 {
                x
            } else {
                &x - gemm_adjoint(b.as_ref(), gemm_adjoint(q.as_ref(), y).as_ref())
            }
        };
        let mut qi = orth(deflated(omega.as_ref()).as_ref());
        for _ in 0..opts.power {
            let w = orth(deflated_adj(qi.as_ref()).as_ref());
            qi = orth(deflated(w.as_ref()).as_ref());
        }
        qi = orth(project_out(q.as_ref(), qi).as_ref());
        let bi = op.apply_adjoint_block(qi.as_ref()).adjoint().to_owned();
        let est = bi.norm_l2();
        if q.ncols() == 0 {
            let s = bi.as_ref().singular_values().map_err(|e| Error::Convergence(format!("{e:?}")))?;
            sigma1 = s.first().copied().unwrap_or(0.0);
            if !(sigma1 > 0.0) {
                return Err(Error::Degenerate("operator has no detectable range".into()));
            }
        }
        q = hcat(q, qi.as_ref());
        b = vcat(b, bi.as_ref());
        if est < stop * sigma1 {
            converged = true;
            break;
        }
    }
    if !converged && cap < full {
        return Err(Error::Convergence(format!("no convergence to tau = {target_tau:e} within rank {cap}")));
    }
    let (sigmas, u, v) = if opts.vectors {
        let svd = b.thin_svd().map_err(|e| Error::Convergence(format!("{e:?}")))?;
        let s: Vec<f64> = svd.S().column_vector().iter().map(|s| s.re).collect();
        let u = gemm(q.as_ref(), svd.U());
        (s, Some(u), Some(svd.V().to_owned()))
    } else {
        let s = b.singular_values().map_err(|e| Error::Convergence(format!("{e:?}")))?;
        (s, None, None)
    };
    let certified = sigmas.iter().filter(|&&s| s > target_tau * sigmas[0]).count();
    if converged && sigmas.len() < (certified + opts.oversample).min(full) {
        return Err(Error::Convergence("basis too small for the requested oversampling".into()));
    }
    // an exhausted range is exact down to rounding
    let floor = if converged { target_tau } else { (m.max(n) as f64 * f64::EPSILON).min(target_tau) };
    SpectrumResult::new(sigmas, u, v, SvdMethod::Randomized, Some(seed), floor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_scene, GeometrySpec};
    use crate::kernel::{assemble_dense, InteractionBlock};
    use crate::spectrum::{rank_at, svd_dense, svd_dense_matrix};

    fn random(m: usize, n: usize, seed: u64) -> Mat<c64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        gaussian(m, n, &mut rng)
    }

    #[test]
    fn full_rank_random_block_matches_dense() {
        let z = random(200, 200, 5);
        let dense = svd_dense_matrix(z.as_ref(), false).unwrap();
        let opts = RandomizedOptions { power: 4, ..Default::default() };
        let r = svd_randomized_with(&z, 1e-8, 1, &opts).unwrap();
        for i in 0..50 {
            let (a, b) = (r.sigmas()[i], dense.sigmas()[i]);
            assert!((a - b).abs() / b < 1e-8, "index {i}");
        }
    }

    #[test]
    fn synthetic_rank_five() {
        let (m, n) = (300, 240);
        let u = orth(random(m, 5, 2).as_ref());
        let v = orth(random(n, 5, 3).as_ref());
        let s = [1.0, 0.1, 0.01, 1e-3, 1e-4];
        let us = Mat::from_fn(m, 5, |i, j| u[(i, j)] * s[j]);
        let z = &us * v.adjoint();
        let r = svd_randomized(&z, 1e-6, 7).unwrap();
        assert_eq!(rank_at(&r, 1e-6).unwrap(), 5);
        for (a, b) in r.sigmas().iter().zip(s) {
            assert!((a - b).abs() / b < 1e-10);
        }
        assert!(r.sigmas()[5..].iter().all(|&x| x < 1e-6 * r.sigmas()[0] * 1e-3));
    }

    #[test]
    fn disc_block_matches_dense() {
        let scene = build_scene(&GeometrySpec::discs(2.5, 2.5), 1.0).unwrap();
        let block = assemble_dense(&scene).unwrap();
        let dense = svd_dense(&block, false).unwrap();
        let rand = svd_randomized(&block, 1e-9, 42).unwrap();
        for i in 0..100 {
            let (a, b) = (rand.sigmas()[i], dense.sigmas()[i]);
            assert!((a - b).abs() / b < 1e-6, "index {i}: {a} vs {b}");
        }
        let s1 = dense.sigmas()[0];
        for (i, (&a, &b)) in rand.sigmas().iter().zip(dense.sigmas()).enumerate() {
            if b / s1 >= rand.tol_floor() {
                assert!((a - b).abs() / b <= 1e-3, "index {i}");
            }
        }
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let scene = build_scene(&GeometrySpec::plates(3.0, 3.0, 1.0), 1.0).unwrap();
        let op = InteractionBlock::operator(&scene).unwrap();
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| svd_randomized(&op, 1e-6, 42).unwrap())
        };
        let (a, b) = (run(1), run(8));
        assert_eq!(a.sigmas(), b.sigmas());
    }

    #[test]
    fn vectors_are_orthonormal() {
        let scene = build_scene(&GeometrySpec::lines(8.0, 8.0, 0.0), 1.0).unwrap();
        let block = assemble_dense(&scene).unwrap();
        let opts = RandomizedOptions { vectors: true, block: 16, ..Default::default() };
        let r = svd_randomized_with(&block, 1e-10, 3, &opts).unwrap();
        let u = r.u().unwrap();
        let g = u.adjoint() * u;
        for i in 0..g.nrows() {
            for j in 0..g.ncols() {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((g[(i, j)] - c64::new(e, 0.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn invalid_target() {
        let z = random(10, 10, 1);
        assert!(svd_randomized(&z, 0.0, 1).is_err());
        assert!(svd_randomized(&z, 1.0, 1).is_err());
    }

    #[test]
    fn rank_cap_without_convergence_errors() {
        let z = random(100, 100, 4);
        let opts = RandomizedOptions { max_rank: Some(20), block: 10, ..Default::default() };
        assert!(matches!(svd_randomized_with(&z, 1e-6, 1, &opts), Err(Error::Convergence(_))));
    }
}
