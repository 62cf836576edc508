//! Source/observer domain catalog and point sampling.

mod cloud;
mod domain;
mod sampling;
mod scene;
mod spec;
mod vec3;

pub use cloud::PointCloud;
pub(crate) use domain::{ccw, signed_area};
pub use domain::{Curve, DiscSampling, Domain, Outline, Placement, Shape};
pub use sampling::{sample_disc, sample_disc_grid, sample_frame, sample_rectangle, sample_segment};
pub use scene::{build_scene, catalog_domains, ScenePair};
pub use spec::{GeometrySpec, ShapeKind};
pub use vec3::{RigidMotion, Vec3};
