//! Closed-form offsets of the cone `(0, 1, 0) + v (cos u, sin u, 1)`, used as
//! oracles for the dual rotation.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::dual::{DualVector3, Vec3};
use crate::line::Line;

fn line(p: Vec3, d: Vec3) -> Line {
    Line::from_point_dir(p, d).expect("reference directions are nonzero")
}

/// The cone's ruling at `u` as a dual unit vector.
pub fn cone_dual_curve(u: f64) -> DualVector3 {
    let (s, c) = u.sin_cos();
    DualVector3::new(
        Vec3::new(c, s, 1.0) * FRAC_1_SQRT_2,
        Vec3::new(1.0, 0.0, -c) * FRAC_1_SQRT_2,
    )
}

/// Offset through `θ̄ = 0 + ε√2`: again a cone, with apex `(0, 1, 2)`.
pub fn oriented_cone_offset(u: f64) -> Line {
    let (s, c) = u.sin_cos();
    line(Vec3::new(-c, 1.0 - s, 1.0), Vec3::new(c, s, 1.0))
}

/// Offset through `θ̄ = π/2 + ε√2u`: a helicoid.
pub fn right_cone_offset(u: f64) -> Line {
    let (s, c) = u.sin_cos();
    line(Vec3::new(-u * c, 1.0 - u * s, u), Vec3::new(-s, c, 0.0))
}

/// Offset through `θ̄ = π/3 + ε√2`: a hyperboloid of one sheet.
pub fn hyperboloid_cone_offset(u: f64) -> Line {
    let (s, c) = u.sin_cos();
    let k = 0.5 * FRAC_1_SQRT_2;
    let r = 0.75f64.sqrt();
    line(
        Vec3::new(-c, 1.0 - s, 1.0),
        Vec3::new(k * c - r * s, k * s + r * c, k),
    )
}

/// The hyperboloid offset with `sin u` in both terms of the second direction
/// component. It is not a rotation of the cone's ruling and is kept only to
/// show the mismatch.
pub fn hyperboloid_cone_offset_misprinted(u: f64) -> Line {
    let (s, c) = u.sin_cos();
    let k = 0.5 * FRAC_1_SQRT_2;
    let r = 0.75f64.sqrt();
    line(
        Vec3::new(-c, 1.0 - s, 1.0),
        Vec3::new(k * c - r * s, k * s + r * s, k),
    )
}
