use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};

use super::domain::DiscSampling;

/// Catalog of source/observer configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeKind {
    /// Coaxial discs of radius `a`, `d` apart.
    ParallelDiscs,
    /// Stacked squares of edge `a`, `d` apart, laterally shifted by `h`.
    ParallelPlates,
    /// Parallel squares whose closest edges are `d` apart along the slant angle `phi`.
    SlantedPlates,
    /// Squares of edge `a` in one plane, shifted diagonally by `2a`.
    CoplanarSquares,
    /// 2-D parallel segments of length `a`, `d` apart, shifted by `h`.
    ParallelLines,
    /// Central square plate at height `h` inside a coplanar square frame.
    PlateAndFrame,
}

impl ShapeKind {
    pub const ALL: [ShapeKind; 6] = [
        ShapeKind::ParallelDiscs,
        ShapeKind::ParallelPlates,
        ShapeKind::SlantedPlates,
        ShapeKind::CoplanarSquares,
        ShapeKind::ParallelLines,
        ShapeKind::PlateAndFrame,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ShapeKind::ParallelDiscs => "parallel-discs",
            ShapeKind::ParallelPlates => "parallel-plates",
            ShapeKind::SlantedPlates => "slanted-plates",
            ShapeKind::CoplanarSquares => "coplanar-squares",
            ShapeKind::ParallelLines => "parallel-lines",
            ShapeKind::PlateAndFrame => "plate-and-frame",
        }
    }
}

impl fmt::Display for ShapeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ShapeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ShapeKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            let names: Vec<_> = ShapeKind::ALL.iter().map(|k| k.name()).collect();
            param(format!("unknown shape '{s}', expected one of: {}", names.join(", ")))
        })
    }
}

fn default_delta() -> f64 {
    4.0
}

fn default_lambda() -> f64 {
    1.0
}

fn is_default<T: Default + PartialEq>(v: &T) -> bool {
    *v == T::default()
}

/// Parametric geometry description. Lengths are in meters; `delta` is the
/// number of samples per wavelength along each surface direction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySpec {
    pub shape: ShapeKind,
    pub a: f64,
    #[serde(default)]
    pub d: f64,
    #[serde(default)]
    pub h: f64,
    #[serde(default)]
    pub phi: f64,
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default = "default_lambda")]
    pub lambda: f64,
    /// Kernel dimensionality override (only coplanar squares accept 2).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub disc_sampling: DiscSampling,
}

impl GeometrySpec {
    pub fn new(shape: ShapeKind, a: f64) -> Self {
        Self {
            shape,
            a,
            d: 0.0,
            h: 0.0,
            phi: 0.0,
            delta: default_delta(),
            lambda: default_lambda(),
            dim: None,
            disc_sampling: DiscSampling::Rings,
        }
    }

    pub fn discs(a: f64, d: f64) -> Self {
        Self { d, ..Self::new(ShapeKind::ParallelDiscs, a) }
    }

    pub fn plates(a: f64, d: f64, h: f64) -> Self {
        Self { d, h, ..Self::new(ShapeKind::ParallelPlates, a) }
    }

    pub fn slanted(a: f64, d: f64, phi: f64) -> Self {
        Self { d, phi, ..Self::new(ShapeKind::SlantedPlates, a) }
    }

    pub fn coplanar(a: f64) -> Self {
        Self::new(ShapeKind::CoplanarSquares, a)
    }

    pub fn lines(a: f64, d: f64, h: f64) -> Self {
        Self { d, h, ..Self::new(ShapeKind::ParallelLines, a) }
    }

    pub fn plate_and_frame(a: f64, h: f64) -> Self {
        Self { h, ..Self::new(ShapeKind::PlateAndFrame, a) }
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn with_dim(mut self, dim: usize) -> Self {
        self.dim = Some(dim);
        self
    }

    pub fn with_disc_sampling(mut self, s: DiscSampling) -> Self {
        self.disc_sampling = s;
        self
    }

    /// Ambient dimension of the scene this spec builds.
    pub fn dim(&self) -> usize {
        match self.shape {
            ShapeKind::ParallelLines => 2,
            ShapeKind::CoplanarSquares => self.dim.unwrap_or(3),
            _ => 3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.a, self.d, self.h, self.phi, self.delta, self.lambda].iter().all(|v| v.is_finite());
        if !finite {
            return Err(param("geometry parameters must be finite"));
        }
        if !(self.a > 0.0) {
            return Err(param(format!("size a must be positive, got {}", self.a)));
        }
        if self.d < 0.0 {
            return Err(param(format!("separation d must be nonnegative, got {}", self.d)));
        }
        if !(self.delta >= 2.0) {
            return Err(param(format!("sampling density delta must be at least 2, got {}", self.delta)));
        }
        if !(self.lambda > 0.0) {
            return Err(param(format!("wavelength must be positive, got {}", self.lambda)));
        }
        match (self.shape, self.dim) {
            (_, None) => {}
            (ShapeKind::CoplanarSquares, Some(2 | 3)) => {}
            (ShapeKind::ParallelLines, Some(2)) => {}
            (s, Some(3)) if s != ShapeKind::ParallelLines => {}
            (s, Some(d)) => return Err(param(format!("shape {s} does not support dim {d}"))),
        }
        if self.shape == ShapeKind::PlateAndFrame && self.h < 0.0 {
            return Err(param("plate height h must be nonnegative"));
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(s)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_with_documented_keys() {
        let s = r#"{"shape": "slanted-plates", "a": 8, "d": 8, "h": 0, "phi": 0.785, "delta": 4, "lambda": 1}"#;
        let spec = GeometrySpec::from_json(s).unwrap();
        assert_eq!(spec.shape, ShapeKind::SlantedPlates);
        let back = GeometrySpec::from_json(&spec.to_json()).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn unknown_shape_is_rejected() {
        assert!(GeometrySpec::from_json(r#"{"shape": "torus", "a": 1}"#).is_err());
        assert!("torus".parse::<ShapeKind>().is_err());
        assert_eq!("plate-and-frame".parse::<ShapeKind>().unwrap(), ShapeKind::PlateAndFrame);
    }

    #[test]
    fn invariants_enforced() {
        assert!(GeometrySpec::discs(0.0, 1.0).validate().is_err());
        assert!(GeometrySpec::discs(1.0, -1.0).validate().is_err());
        assert!(GeometrySpec::discs(1.0, 1.0).with_delta(1.5).validate().is_err());
        assert!(GeometrySpec::discs(1.0, 1.0).with_dim(2).validate().is_err());
        assert!(GeometrySpec::coplanar(1.0).with_dim(2).validate().is_ok());
    }
}
