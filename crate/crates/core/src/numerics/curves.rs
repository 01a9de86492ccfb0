//! Arclength reparametrization and Frenet frames of space curves.

use std::sync::Arc;

use serde::Serialize;

use super::quadrature::{cumulative_integral, QuadratureSpec};
use super::sampler::CurveSampler;
use super::taylor::Taylor;
use crate::dual::Vec3;
use crate::error::{GeomError, Result};
use crate::tolerance::Tolerances;

/// Speed `|c'|` as a jet.
fn speed_jet(c: &CurveSampler<Vec3>, t: f64) -> Taylor<f64> {
    c.taylor(t).diff().norm()
}

/// Returns the unit-speed reparametrization of `c` and its length.
pub fn arclength_reparam(
    c: &CurveSampler<Vec3>,
    spec: &QuadratureSpec,
    tol: &Tolerances,
) -> Result<(CurveSampler<Vec3>, f64)> {
    let n = spec.sample_count();
    let period = c.period();
    for i in 0..=n {
        let t = period * i as f64 / n as f64;
        let v = c.differentiate(t, 1).norm();
        if !(v >= tol.degenerate_speed) {
            return Err(GeomError::DegenerateCurve { t, speed: v });
        }
    }
    let cc = c.clone();
    let speed = CurveSampler::from_jet(period, c.is_periodic(), move |t| speed_jet(&cc, t));
    let s_of_t = cumulative_integral(&speed, spec);
    let length = s_of_t.evaluate(period);

    let table: Arc<Vec<f64>> = Arc::new(
        (0..=n)
            .map(|i| s_of_t.evaluate(period * i as f64 / n as f64))
            .collect(),
    );
    let s_map = s_of_t.clone();
    let invert = move |s: f64| -> f64 {
        let j = table.partition_point(|&x| x <= s).clamp(1, n) - 1;
        let (s0, s1) = (table[j], table[j + 1]);
        let h = period / n as f64;
        let mut t = h * j as f64 + h * (s - s0) / (s1 - s0);
        for _ in 0..20 {
            let jet = s_map.taylor(t);
            let step = (jet.c[0] - s) / jet.c[1];
            t -= step;
            if step.abs() < 1e-15 * period.max(1.0) {
                break;
            }
        }
        t
    };
    let curve = c.clone();
    let s_map = s_of_t;
    let periodic = c.is_periodic();
    let reparam = CurveSampler::from_jet(length, periodic, move |s: f64| {
        let s = if periodic { s.rem_euclid(length) } else { s };
        let t = invert(s);
        let inner = s_map.taylor(t).inverse_series();
        curve.taylor(t).compose(&inner)
    });
    Ok((reparam, length))
}

/// Frenet apparatus at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Frenet {
    pub tangent: Vec3,
    pub normal: Vec3,
    pub binormal: Vec3,
    pub curvature: f64,
    pub torsion: f64,
    pub speed: f64,
}

/// Frenet frame from a jet of the curve (any regular parametrization).
pub fn frenet_from_jet(c: &Taylor<Vec3>, t: f64, tol: &Tolerances) -> Result<Frenet> {
    let d1 = c.derivative(1);
    let d2 = c.derivative(2);
    let d3 = c.derivative(3);
    let speed = d1.norm();
    if !(speed >= tol.degenerate_speed) {
        return Err(GeomError::DegenerateCurve { t, speed });
    }
    let b = d1.cross(&d2);
    let bn = b.norm();
    let curvature = bn / speed.powi(3);
    if !(curvature >= tol.geometric) {
        return Err(GeomError::FrenetDegenerate { t, curvature });
    }
    let tangent = d1 / speed;
    let binormal = b / bn;
    Ok(Frenet {
        tangent,
        normal: binormal.cross(&tangent),
        binormal,
        curvature,
        torsion: b.dot(&d3) / (bn * bn),
        speed,
    })
}

pub fn frenet(c: &CurveSampler<Vec3>, t: f64, tol: &Tolerances) -> Result<Frenet> {
    frenet_from_jet(&c.taylor(t), t, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{PI, TAU};

    fn circle(r: f64) -> CurveSampler<Vec3> {
        CurveSampler::from_jet(TAU, true, move |t| {
            let (s, c) = Taylor::variable(t).sin_cos();
            c.zip(&s, |a, b| Vec3::new(r * a, r * b, 0.0))
        })
    }

    #[test]
    fn circle_length_and_midpoint() {
        let spec = QuadratureSpec::default();
        let (c, l) = arclength_reparam(&circle(2.0), &spec, &Tolerances::default()).unwrap();
        assert_abs_diff_eq!(l, 4.0 * PI, epsilon = 1e-12);
        assert_abs_diff_eq!(
            c.evaluate(2.0 * PI),
            Vec3::new(-2.0, 0.0, 0.0),
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(c.differentiate(1.3, 1).norm(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn unit_speed_is_identity() {
        let spec = QuadratureSpec::default();
        let c = circle(1.0);
        let (r, l) = arclength_reparam(&c, &spec, &Tolerances::default()).unwrap();
        assert_abs_diff_eq!(l, TAU, epsilon = 1e-12);
        for &s in &[0.1, 2.0, 4.4] {
            assert_abs_diff_eq!(r.evaluate(s), c.evaluate(s), epsilon = 1e-12);
        }
    }

    #[test]
    fn point_curve_is_degenerate() {
        let p = CurveSampler::from_fn(TAU, true, |_| Vec3::y());
        let err = arclength_reparam(&p, &QuadratureSpec::default(), &Tolerances::default());
        assert!(matches!(err, Err(GeomError::DegenerateCurve { .. })));
    }

    #[test]
    fn helix_curvature_and_torsion() {
        let (r, b) = (1.5, 0.7);
        let helix = CurveSampler::from_jet(TAU, false, move |t| {
            let x = Taylor::variable(t);
            let (s, c) = x.sin_cos();
            let z = x * b;
            c.zip(&s, |a, bb| Vec3::new(r * a, r * bb, 0.0)) + z.map(|w| Vec3::new(0.0, 0.0, w))
        });
        let f = frenet(&helix, 0.8, &Tolerances::default()).unwrap();
        assert_abs_diff_eq!(f.curvature, r / (r * r + b * b), epsilon = 1e-14);
        assert_abs_diff_eq!(f.torsion, b / (r * r + b * b), epsilon = 1e-14);
    }
}
