//! Shadow-area and shadow-length predictors for the numerical rank of
//! Helmholtz interaction blocks, with the spectra and diagnostics to check them.
//!
//! Geometry and shadow estimates are generic over [`scalar::Real`] (`f32` or
//! `f64`); kernels, spectra and analysis run in `f64` / complex `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod geometry;
pub mod kernel;
pub mod scalar;
pub mod shadow;
pub mod special;
pub mod spectrum;

pub use error::{Error, Result};

pub type Vec3f = geometry::Vec3<f32>;
pub type Vec3d = geometry::Vec3<f64>;
pub type PointCloudf = geometry::PointCloud<f32>;
pub type PointCloudd = geometry::PointCloud<f64>;
pub type Domainf = geometry::Domain<f32>;
pub type Domaind = geometry::Domain<f64>;
pub type Scenef = geometry::ScenePair<f32>;
pub type Scened = geometry::ScenePair<f64>;
pub type ShadowEstimatef = shadow::ShadowEstimate<f32>;
pub type ShadowEstimated = shadow::ShadowEstimate<f64>;
