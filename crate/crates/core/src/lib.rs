//! Harmonicity of left-invariant vector fields on metric Lie groups.
//!
//! Everything is derived from structure constants and a metric: the
//! Levi-Civita connection, curvature, the rough Laplacian, the energy
//! density and the geometric tests built on them. A catalog of the
//! four-dimensional Lorentzian Einstein cases and a verifier for the
//! published claims about them sit on top.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod expr;
pub mod format;
pub mod harmonicity;
pub mod linalg;
pub mod scalar;
pub mod verifier;

pub use algebra::{BasisChange, ConnectionCoefficients, InvariantVector, MetricLieAlgebra};
pub use error::{Error, Result};
pub use scalar::{Mode, Scalar, Tolerance};
