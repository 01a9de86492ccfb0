//! Line-geometry kernel for ruled surfaces represented as curves on the dual
//! unit sphere.
//!
//! A ruled surface `k(t) + v·q(t)` maps to the dual curve
//! `q̃ = q + ε(k × q)`. From it the crate computes striction curves,
//! distribution parameters, moving frames, the real and dual integral
//! invariants of closed surfaces, and Mannheim offsets obtained by rotating
//! the ruling through a dual angle.

pub mod dual;
pub mod error;
pub mod io;
pub mod line;
pub mod mannheim;
pub mod numerics;
pub mod surface;
pub mod tolerance;

pub use dual::{dual_acos, Analytic, DualAngle, DualNumber, DualVector3, Vec3};
pub use error::{GeomError, Result};
pub use line::Line;
pub use numerics::{CurveSampler, QuadratureSpec};
pub use surface::RuledSurfaceDef;
pub use tolerance::Tolerances;
