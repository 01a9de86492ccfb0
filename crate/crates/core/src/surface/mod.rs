//! Ruled surfaces `φ(t, v) = k(t) + v·q(t)`: striction curve, distribution
//! parameter, moving frames and integral invariants.

mod frame;
mod invariants;

pub(crate) use frame::dual_frame_unchecked;
pub use frame::{DualFrameJet, FrameField, FrameSample};

pub use invariants::{
    area_vector, projected_area, DirectorInvariants, InvariantReport, RouteComparison,
};

use serde::Serialize;

use crate::dual::{DualVector3, Vec3};
use crate::error::{GeomError, Result};
use crate::line::Line;
use crate::numerics::taylor::{join_dual, split_dual, Taylor};
use crate::numerics::{CurveSampler, QuadratureSpec};
use crate::tolerance::Tolerances;

/// A ruled surface given by a base curve `k` and a director curve `q`
/// over a common parameter interval `[0, T]`.
///
/// The director is normalized on ingest. The surface counts as closed when
/// both curves return to their starting values at `t = T`.
#[derive(Debug, Clone)]
pub struct RuledSurfaceDef {
    base: CurveSampler<Vec3>,
    director: CurveSampler<Vec3>,
    closed: bool,
    tol: Tolerances,
}

/// Striction curve together with the point-degeneracy marker.
#[derive(Debug, Clone)]
pub struct StrictionCurve {
    pub curve: CurveSampler<Vec3>,
    /// The striction "curve" is a single point (cones).
    pub point_degenerate: bool,
    pub max_speed: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DrallSummary {
    pub max_abs: f64,
    pub min: f64,
    pub max: f64,
}

impl RuledSurfaceDef {
    pub fn new(base: CurveSampler<Vec3>, director: CurveSampler<Vec3>) -> Result<Self> {
        Self::with_tolerances(base, director, Tolerances::default())
    }

    pub fn with_tolerances(
        base: CurveSampler<Vec3>,
        director: CurveSampler<Vec3>,
        tol: Tolerances,
    ) -> Result<Self> {
        let period = base.period();
        if !(period > 0.0) || (director.period() - period).abs() > tol.geometric * period.max(1.0) {
            return Err(GeomError::Config(format!(
                "base and director parameter intervals differ ({} vs {})",
                period,
                director.period()
            )));
        }
        for i in 0..=64 {
            let t = period * i as f64 / 64.0;
            let d = director.evaluate(t);
            let k = base.evaluate(t);
            if !d.iter().chain(k.iter()).all(|x| x.is_finite()) {
                return Err(GeomError::NonFinite { t });
            }
            if d.norm() < tol.degenerate_speed {
                return Err(GeomError::ZeroDirection);
            }
        }
        let q0 = director.evaluate(0.0).normalize();
        let q1 = director.evaluate(period).normalize();
        let k_gap = (base.evaluate(0.0) - base.evaluate(period)).norm();
        let closed = k_gap < tol.geometric && (q0 - q1).norm() < tol.geometric;
        if k_gap < tol.geometric && (q0 + q1).norm() < tol.geometric {
            return Err(GeomError::NonOrientable);
        }
        Ok(RuledSurfaceDef {
            base,
            director,
            closed,
            tol,
        })
    }

    /// Reconstructs a surface from a dual curve; each ruling's base point is
    /// its foot point `q × q*`.
    pub fn from_dual_curve(curve: &CurveSampler<DualVector3>) -> Result<Self> {
        Self::from_dual_curve_with(curve, Tolerances::default())
    }

    pub fn from_dual_curve_with(
        curve: &CurveSampler<DualVector3>,
        tol: Tolerances,
    ) -> Result<Self> {
        let period = curve.period();
        for i in 0..=16 {
            let t = period * i as f64 / 16.0;
            Line::from_dual_with(&curve.evaluate(t), &tol)?;
        }
        let c = curve.clone();
        let base = CurveSampler::from_jet(period, curve.is_periodic(), move |t| {
            let (re, du) = split_dual(&c.taylor(t));
            re.cross(&du)
        });
        let c = curve.clone();
        let director = CurveSampler::from_jet(period, curve.is_periodic(), move |t| {
            c.taylor(t).map(|v| v.real)
        });
        Self::with_tolerances(base, director, tol)
    }

    pub fn period(&self) -> f64 {
        self.base.period()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    pub fn base(&self) -> &CurveSampler<Vec3> {
        &self.base
    }

    pub fn director(&self) -> &CurveSampler<Vec3> {
        &self.director
    }

    /// Sample parameters: `n` points of `[0, T)` when closed, `n` points of
    /// `[0, T]` otherwise.
    pub fn sample_params(&self, n: usize) -> Vec<f64> {
        let t = self.period();
        if self.closed {
            (0..n).map(|i| t * i as f64 / n as f64).collect()
        } else {
            (0..n)
                .map(|i| t * i as f64 / (n - 1).max(1) as f64)
                .collect()
        }
    }

    pub fn base_jet(&self, t: f64) -> Taylor<Vec3> {
        self.base.taylor(t)
    }

    /// Jet of the unit director.
    pub fn director_jet(&self, t: f64) -> Taylor<Vec3> {
        self.director.taylor(t).normalize()
    }

    pub fn point(&self, t: f64, v: f64) -> Vec3 {
        self.base.evaluate(t) + self.director.evaluate(t).normalize() * v
    }

    pub fn ruling(&self, t: f64) -> Result<Line> {
        Line::from_point_dir(self.base.evaluate(t), self.director.evaluate(t))
    }

    /// Jet of the dual curve `q̃ = q + ε(k × q)`.
    pub fn dual_jet(&self, t: f64) -> Taylor<DualVector3> {
        let q = self.director_jet(t);
        let k = self.base_jet(t);
        join_dual(&q, &k.cross(&q))
    }

    pub fn to_dual_curve(&self) -> CurveSampler<DualVector3> {
        let s = self.clone();
        CurveSampler::from_jet(self.period(), self.closed, move |t| s.dual_jet(t))
    }

    fn cylindrical_check(&self, t: f64, dq: &Vec3) -> Result<()> {
        let speed = dq.norm();
        if !(speed >= self.tol.degenerate_speed) {
            return Err(GeomError::Cylindrical { t, speed });
        }
        Ok(())
    }

    /// Refuses surfaces whose director is stationary at any sample.
    pub fn check_non_cylindrical(&self, spec: &QuadratureSpec) -> Result<()> {
        for t in self.sample_params(spec.sample_count()) {
            let dq = self.director_jet(t).derivative(1);
            self.cylindrical_check(t, &dq)?;
        }
        Ok(())
    }

    /// Jet of `c = k − (⟨q',k'⟩/⟨q',q'⟩) q`.
    pub fn striction_jet(&self, t: f64) -> Result<Taylor<Vec3>> {
        let q = self.director_jet(t);
        let k = self.base_jet(t);
        let dq = q.diff();
        self.cylindrical_check(t, &dq.value())?;
        Ok(striction_from(&k, &q))
    }

    pub fn striction_point(&self, t: f64) -> Result<Vec3> {
        Ok(self.striction_jet(t)?.value())
    }

    pub fn striction_curve(&self, spec: &QuadratureSpec) -> Result<StrictionCurve> {
        self.check_non_cylindrical(spec)?;
        let mut max_speed: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for t in self.sample_params(spec.sample_count()) {
            let j = self.striction_jet(t)?;
            max_speed = max_speed.max(j.derivative(1).norm());
            scale = scale.max(self.base_jet(t).derivative(1).norm());
        }
        let s = self.clone();
        let curve = CurveSampler::from_jet(self.period(), self.closed, move |t| {
            striction_from(&s.base_jet(t), &s.director_jet(t))
        });
        Ok(StrictionCurve {
            curve,
            point_degenerate: max_speed < self.tol.geometric * scale.max(1.0),
            max_speed,
        })
    }

    /// `δ = ⟨k', q × q'⟩ / ⟨q', q'⟩`.
    pub fn distribution_parameter(&self, t: f64) -> Result<f64> {
        let q = self.director_jet(t);
        let dq = q.derivative(1);
        self.cylindrical_check(t, &dq)?;
        let dk = self.base_jet(t).derivative(1);
        Ok(dk.dot(&q.value().cross(&dq)) / dq.norm_squared())
    }

    pub fn drall_summary(&self, spec: &QuadratureSpec) -> Result<DrallSummary> {
        let mut out = DrallSummary {
            max_abs: 0.0,
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
        };
        for t in self.sample_params(spec.sample_count()) {
            let d = self.distribution_parameter(t)?;
            out.max_abs = out.max_abs.max(d.abs());
            out.min = out.min.min(d);
            out.max = out.max.max(d);
        }
        Ok(out)
    }

    /// Developable when `|δ| < tol` at every sample; cylinders (and planes)
    /// count as developable.
    pub fn is_developable(&self, spec: &QuadratureSpec, tol: f64) -> Result<bool> {
        match self.drall_summary(spec) {
            Ok(s) => Ok(s.max_abs < tol),
            Err(GeomError::Cylindrical { .. }) => Ok(true),
            Err(e) => Err(e),
        }
    }
}

fn striction_from(k: &Taylor<Vec3>, q: &Taylor<Vec3>) -> Taylor<Vec3> {
    let dq = q.diff();
    let dk = k.diff();
    let r = dq.dot(&dk) * dq.dot(&dq).recip();
    *k - q.scale(&r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, TAU};

    fn var(t: f64) -> Taylor<f64> {
        Taylor::variable(t)
    }

    fn vec3(x: Taylor<f64>, y: Taylor<f64>, z: Taylor<f64>) -> Taylor<Vec3> {
        let xy = x.zip(&y, |a, b| Vec3::new(a, b, 0.0));
        xy.zip(&z, |v, c| Vec3::new(v.x, v.y, c))
    }

    pub(crate) fn cone() -> RuledSurfaceDef {
        let base = CurveSampler::from_jet(TAU, true, |_| Taylor::constant(Vec3::y()));
        let dir = CurveSampler::from_jet(TAU, true, |t| {
            let (s, c) = var(t).sin_cos();
            vec3(c, s, Taylor::constant(1.0))
        });
        RuledSurfaceDef::new(base, dir).unwrap()
    }

    pub(crate) fn helicoid() -> RuledSurfaceDef {
        let base = CurveSampler::from_jet(TAU, false, |t| {
            let u = var(t);
            let (s, c) = u.sin_cos();
            vec3(-(u * c), Taylor::constant(1.0) - u * s, u)
        });
        let dir = CurveSampler::from_jet(TAU, false, |t| {
            let (s, c) = var(t).sin_cos();
            vec3(-s, c, Taylor::constant(0.0))
        });
        RuledSurfaceDef::new(base, dir).unwrap()
    }

    fn helix_tangent(r: f64, b: f64) -> RuledSurfaceDef {
        let base = CurveSampler::from_jet(TAU, false, move |t| {
            let u = var(t);
            let (s, c) = u.sin_cos();
            vec3(c * r, s * r, u * b)
        });
        let dir = CurveSampler::from_jet(TAU, false, move |t| {
            let (s, c) = var(t).sin_cos();
            vec3(-(s * r), c * r, Taylor::constant(b))
        });
        RuledSurfaceDef::new(base, dir).unwrap()
    }

    #[test]
    fn closedness_detection() {
        assert!(cone().is_closed());
        assert!(!helicoid().is_closed());
        let base = CurveSampler::from_fn(TAU, true, |t: f64| Vec3::new(t.cos(), t.sin(), 0.0));
        let mobius = CurveSampler::from_fn(TAU, false, |t: f64| {
            Vec3::new((t / 2.0).cos(), 0.0, (t / 2.0).sin())
        });
        assert_eq!(
            RuledSurfaceDef::new(base, mobius).unwrap_err(),
            GeomError::NonOrientable
        );
    }

    #[test]
    fn striction_examples() {
        let spec = QuadratureSpec::default();
        let s = cone().striction_curve(&spec).unwrap();
        assert!(s.point_degenerate);
        assert_abs_diff_eq!(s.curve.evaluate(1.3), Vec3::y(), epsilon = 1e-15);

        let h = helicoid();
        let s = h.striction_curve(&spec).unwrap();
        assert!(!s.point_degenerate);
        // ⟨q', k'⟩ = ⟨q', q'⟩ = 1 along this helicoid, so c = k − q
        for &t in &[0.2, 1.0, 4.0] {
            let expect = h.base().evaluate(t) - h.director().evaluate(t);
            assert_abs_diff_eq!(s.curve.evaluate(t), expect, epsilon = 1e-14);
        }

        let cyl = RuledSurfaceDef::new(
            CurveSampler::from_fn(TAU, true, |t: f64| Vec3::new(t.cos(), t.sin(), 0.0)),
            CurveSampler::from_fn(TAU, true, |_| Vec3::z()),
        )
        .unwrap();
        assert!(matches!(
            cyl.striction_curve(&spec),
            Err(GeomError::Cylindrical { .. })
        ));
        assert!(cyl.is_developable(&spec, 1e-9).unwrap());
    }

    #[test]
    fn striction_is_orthogonal_to_director_motion() {
        let base = CurveSampler::from_jet(TAU, true, |t| {
            let u = var(t);
            let (s, c) = u.sin_cos();
            let (s3, c3) = (u * 3.0).sin_cos();
            vec3(c * 2.0, s + c3 * 0.2, s * 0.4 + s3 * 0.0)
        });
        let dir = CurveSampler::from_jet(TAU, true, |t| {
            let u = var(t);
            let (s, c) = u.sin_cos();
            vec3(c, s, Taylor::constant(0.5) + (u * 2.0).sin() * 0.3)
        });
        let s = RuledSurfaceDef::new(base, dir).unwrap();
        for t in s.sample_params(32) {
            let c = s.striction_jet(t).unwrap().derivative(1);
            let dq = s.director_jet(t).derivative(1);
            assert!(c.dot(&dq).abs() < 1e-12);
        }
    }

    #[test]
    fn drall_examples() {
        let spec = QuadratureSpec::with_samples(16).unwrap();
        let d = cone().drall_summary(&spec).unwrap();
        assert_eq!(d.max_abs, 0.0);
        let h = helicoid();
        for t in h.sample_params(16) {
            assert_abs_diff_eq!(h.distribution_parameter(t).unwrap(), 1.0, epsilon = 1e-12);
        }
        assert!(!h.is_developable(&spec, 1e-6).unwrap());
        let ht = helix_tangent(1.0, 0.5);
        assert!(ht.drall_summary(&spec).unwrap().max_abs < 1e-12);
        assert!(cone().is_developable(&spec, 1e-9).unwrap());
    }

    #[test]
    fn drall_ignores_base_choice() {
        let h = helicoid();
        let shifted_base = {
            let h2 = h.clone();
            CurveSampler::from_jet(TAU, false, move |t| {
                let f = var(t).sin() * 0.7 + Taylor::constant(0.3);
                h2.base_jet(t) + h2.director_jet(t).scale(&f)
            })
        };
        let g = RuledSurfaceDef::new(shifted_base, h.director().clone()).unwrap();
        for t in h.sample_params(16) {
            let a = h.distribution_parameter(t).unwrap();
            let b = g.distribution_parameter(t).unwrap();
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn dual_curve_of_cone() {
        let q = cone().to_dual_curve();
        let r = FRAC_1_SQRT_2;
        for i in 0..256 {
            let u = TAU * i as f64 / 256.0;
            let v = q.evaluate(u);
            let re = Vec3::new(u.cos(), u.sin(), 1.0) * r;
            let du = Vec3::new(1.0, 0.0, -u.cos()) * r;
            assert!((v.real - re).amax() < 1e-12 && (v.dual - du).amax() < 1e-12);
        }
        let back = RuledSurfaceDef::from_dual_curve(&q).unwrap();
        for &t in &[0.0, 1.0, 3.0] {
            let a = cone().ruling(t).unwrap();
            let b = back.ruling(t).unwrap();
            assert!(a.plucker_distance(&b) < 1e-12);
        }
    }

    #[test]
    fn dual_curve_of_helicoid() {
        let q = helicoid().to_dual_curve();
        for &u in &[0.3f64, 1.7, 5.0] {
            let v = q.evaluate(u);
            let du = Vec3::new(-u * u.cos(), -u * u.sin(), u.sin() - u);
            assert_abs_diff_eq!(v.real, Vec3::new(-u.sin(), u.cos(), 0.0), epsilon = 1e-14);
            assert_abs_diff_eq!(v.dual, du, epsilon = 1e-13);
        }
    }
}
