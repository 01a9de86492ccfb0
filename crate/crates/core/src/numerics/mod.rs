//! Differentiation, quadrature, interpolation and reparametrization of
//! real- and dual-valued curves.

pub mod curves;
pub mod quadrature;
pub mod sampler;
pub mod spline;
pub mod taylor;

pub use curves::{arclength_reparam, frenet, frenet_from_jet, Frenet};
pub use quadrature::{
    closed_integral, cumulative_integral, integrate, QuadratureRule, QuadratureSpec,
};
pub use sampler::{CurveSampler, DEFAULT_SAMPLES};
pub use spline::{interpolate_open, interpolate_periodic};
pub use taylor::{Coeff, Ring, Taylor, VectorCoeff};
