//! Layered ideal triangulations of once-punctured-torus bundles,
//! 4-punctured-sphere bundles, and two-bridge link complements, together
//! with their complete hyperbolic structures found by maximizing the
//! Lobachevsky volume functional over the polytope of angle structures.
//!
//! The pipeline is: parse or derive an RL-word ([`farey`]), build the
//! layered triangulation and its cusp tessellation ([`triangulation`]),
//! parameterize angle structures by pleating parameters ([`angles`]),
//! maximize hyperbolic volume ([`volume`]), then realize the cusp
//! tessellation in the Euclidean plane and verify completeness
//! ([`geometry`]).

pub mod angles;
pub mod error;
pub mod farey;
pub mod geometry;
pub mod scalar;
pub mod triangulation;
pub mod volume;

pub use error::Error;
pub use scalar::Real;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

// Concrete double-precision aliases for the scalar-generic types.
pub type AngleStructure64 = angles::AngleStructure<f64>;
pub type VolumeReport64 = volume::VolumeReport<f64>;
pub type CuspDevelopment64 = geometry::CuspDevelopment<f64>;
pub type FanDiagnostics64 = geometry::FanDiagnostics<f64>;
pub type GeodesicLength64 = geometry::GeodesicLength<f64>;
pub type RnlmSolution64 = geometry::RnlmSolution<f64>;
