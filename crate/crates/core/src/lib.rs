//! Numerical laboratory for minimal surfaces built from Weierstrass data.
//!
//! * [`holo`]: polynomials and rational functions of one complex variable.
//! * [`weierstrass`]: immersion, conformal factor, Gauss map and curvature.
//! * [`projgeom`]: projective points, hyperplanes, general position, omission.
//! * [`metricgeo`]: sampled conformal metrics, graph geodesics, hyperbolic
//!   comparison checks.
//! * [`catalog`]: built-in surfaces.
//! * [`experiment`]: the curvature-distance harness and its reports.

pub mod catalog;
pub mod error;
pub mod experiment;
pub mod holo;
pub mod metricgeo;
pub mod output;
pub mod projgeom;
pub mod quadrature;
pub mod weierstrass;

pub use error::{Error, Result};
pub use holo::{ComplexRational, ComplexScalar, Polynomial};
pub use metricgeo::{DistanceField, GridMetric};
pub use projgeom::{Hyperplane, HyperplaneSet, ProjPoint};
pub use weierstrass::{DiskDomain, WeierstrassData};
