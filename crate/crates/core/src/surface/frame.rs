//! Real and dual moving trihedra `{q, h, a}` along a ruled surface.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use super::RuledSurfaceDef;
use crate::dual::{DualNumber, DualVector3, Vec3};
use crate::error::{GeomError, Result};
use crate::numerics::taylor::Taylor;
use crate::numerics::{cumulative_integral, CurveSampler, QuadratureSpec};

/// Frame and differential forms at one parameter value.
///
/// `k1_dt` and `k2_dt` are densities with respect to the surface parameter;
/// `k1`, `k2` are the same forms per unit striction arclength and are absent
/// where the striction line is stationary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameSample {
    pub t: f64,
    pub q: Vec3,
    pub h: Vec3,
    pub a: Vec3,
    pub striction: Vec3,
    pub k1_dt: f64,
    pub k2_dt: f64,
    pub striction_speed: f64,
    pub k1: Option<f64>,
    pub k2: Option<f64>,
    pub sigma: Option<f64>,
    pub arclength: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FrameField {
    pub samples: Vec<FrameSample>,
    pub point_degenerate: bool,
    pub striction_length: Option<f64>,
    /// Largest deviation of `{q,h,a}` from a right-handed orthonormal basis.
    pub orthonormality_residual: f64,
    /// Largest residual of `dq = k1 h`, `dh = −k1 q + k2 a`, `da = −k2 h`
    /// with the derivatives taken by central differences.
    pub structural_residual: f64,
}

impl FrameField {
    /// Fails when the striction angle leaves `(−π/2, π/2)` anywhere.
    pub fn check_striction_orientation(&self) -> Result<()> {
        for s in &self.samples {
            if let Some(sigma) = s.sigma {
                if sigma.abs() >= FRAC_PI_2 {
                    return Err(GeomError::StrictionOrientation { t: s.t, sigma });
                }
            }
        }
        Ok(())
    }
}

/// Jets of the dual frame and dual forms (densities in the parameter).
#[derive(Debug, Clone, Copy)]
pub struct DualFrameJet {
    pub q: Taylor<DualVector3>,
    pub h: Taylor<DualVector3>,
    pub a: Taylor<DualVector3>,
    pub k1: Taylor<DualNumber>,
    pub k2: Taylor<DualNumber>,
}

impl DualFrameJet {
    /// Instantaneous Pfaffian vector `½(q̃×q̃' + h̃×h̃' + ã×ã')`.
    pub fn darboux(&self) -> DualVector3 {
        let term = |x: &Taylor<DualVector3>| x.value().cross(&x.derivative(1));
        (term(&self.q) + term(&self.h) + term(&self.a)) * 0.5
    }

    /// Components of `v` in the moving frame.
    pub fn body(&self, v: &DualVector3) -> [DualNumber; 3] {
        [
            v.dot(&self.q.value()),
            v.dot(&self.h.value()),
            v.dot(&self.a.value()),
        ]
    }
}

/// Real frame jets at `t`: `(q, h, a)`.
fn real_frame_jet(
    s: &RuledSurfaceDef,
    t: f64,
) -> Result<(Taylor<Vec3>, Taylor<Vec3>, Taylor<Vec3>)> {
    let q = s.director_jet(t);
    let dq = q.diff();
    s.cylindrical_check(t, &dq.value())?;
    let h = dq.normalize();
    let a = q.cross(&h);
    Ok((q, h, a))
}

impl RuledSurfaceDef {
    /// Frame values `(q, h, a)` at `t`.
    pub fn frame_at(&self, t: f64) -> Result<(Vec3, Vec3, Vec3)> {
        let (q, h, a) = real_frame_jet(self, t)?;
        Ok((q.value(), h.value(), a.value()))
    }

    /// `(k1, k2)` per unit parameter at `t`.
    pub fn forms_dt(&self, t: f64) -> Result<(f64, f64)> {
        let (q, h, a) = real_frame_jet(self, t)?;
        Ok((q.derivative(1).norm(), h.derivative(1).dot(&a.value())))
    }

    pub fn moving_frame(&self, spec: &QuadratureSpec) -> Result<FrameField> {
        let striction = self.striction_curve(spec)?;
        let point_degenerate = striction.point_degenerate;
        let arclength = if point_degenerate {
            None
        } else {
            let c = striction.curve.clone();
            let speed = CurveSampler::from_jet(self.period(), self.is_closed(), move |t| {
                c.taylor(t).diff().norm()
            });
            Some(cumulative_integral(&speed, spec))
        };
        let fd_h = self.period() / (64.0 * spec.sample_count() as f64);
        let mut samples = Vec::with_capacity(spec.sample_count());
        let mut ortho: f64 = 0.0;
        let mut structural: f64 = 0.0;
        for t in self.sample_params(spec.sample_count()) {
            let (qj, hj, aj) = real_frame_jet(self, t)?;
            let (q, h, a) = (qj.value(), hj.value(), aj.value());
            let k1_dt = qj.derivative(1).norm();
            let k2_dt = hj.derivative(1).dot(&a);
            let dc = striction.curve.taylor(t).derivative(1);
            let speed = dc.norm();
            let regular = !point_degenerate && speed > self.tol.geometric;
            let sigma = regular.then(|| dc.dot(&a).atan2(dc.dot(&q)));
            samples.push(FrameSample {
                t,
                q,
                h,
                a,
                striction: striction.curve.evaluate(t),
                k1_dt,
                k2_dt,
                striction_speed: speed,
                k1: regular.then(|| k1_dt / speed),
                k2: regular.then(|| k2_dt / speed),
                sigma,
                arclength: arclength.as_ref().map(|s| s.evaluate(t)),
            });

            ortho = ortho
                .max((q.norm() - 1.0).abs())
                .max((h.norm() - 1.0).abs())
                .max(q.dot(&h).abs())
                .max((q.cross(&h) - a).norm());

            let (qp, hp, ap) = self.frame_at(t + fd_h)?;
            let (qm, hm, am) = self.frame_at(t - fd_h)?;
            let d = |p: Vec3, m: Vec3| (p - m) / (2.0 * fd_h);
            structural = structural
                .max((d(qp, qm) - h * k1_dt).norm())
                .max((d(hp, hm) + q * k1_dt - a * k2_dt).norm())
                .max((d(ap, am) + h * k2_dt).norm());
        }
        Ok(FrameField {
            samples,
            point_degenerate,
            striction_length: arclength.map(|s| s.evaluate(self.period())),
            orthonormality_residual: ortho,
            structural_residual: structural,
        })
    }

    /// Dual frame jets at `t`, built from the dual curve `q̃`.
    pub fn dual_frame_jet(&self, t: f64) -> Result<DualFrameJet> {
        dual_frame_from_curve(&self.dual_jet(t), t, self.tol.degenerate_speed)
    }
}

/// Dual frame of an arbitrary dual unit curve given as a jet.
pub(crate) fn dual_frame_from_curve(
    q: &Taylor<DualVector3>,
    t: f64,
    min_speed: f64,
) -> Result<DualFrameJet> {
    let speed = q.derivative(1).real.norm();
    if !(speed >= min_speed) {
        return Err(GeomError::Cylindrical { t, speed });
    }
    Ok(dual_frame_unchecked(q))
}

/// As [`dual_frame_from_curve`] without the speed check; stationary points
/// produce non-finite entries.
pub(crate) fn dual_frame_unchecked(q: &Taylor<DualVector3>) -> DualFrameJet {
    let dq = q.diff();
    let k1 = dq.norm();
    let h = dq.scale(&k1.recip());
    let a = q.cross(&h);
    let k2 = h.diff().dot(&a);
    DualFrameJet {
        q: *q,
        h,
        a,
        k1,
        k2,
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{cone, helicoid};
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn cone_frame_at_zero() {
        let (q, h, a) = cone().frame_at(0.0).unwrap();
        let r = FRAC_1_SQRT_2;
        assert_abs_diff_eq!(q, Vec3::new(r, 0.0, r), epsilon = 1e-15);
        assert_abs_diff_eq!(h, Vec3::y(), epsilon = 1e-15);
        assert_abs_diff_eq!(a, Vec3::new(-r, 0.0, r), epsilon = 1e-15);
    }

    #[test]
    fn helicoid_frame_and_orientation() {
        let spec = QuadratureSpec::default();
        let f = helicoid().moving_frame(&spec).unwrap();
        for s in &f.samples {
            assert_abs_diff_eq!(s.a, Vec3::z(), epsilon = 1e-14);
        }
        assert!(f.orthonormality_residual < 1e-12);
        assert!(f.structural_residual < 1e-6, "{}", f.structural_residual);
        // the helicoid's striction line leaves the ruling plane at a steep angle
        assert!(f.samples.iter().all(|s| s.sigma.is_some()));
        assert!(matches!(
            f.check_striction_orientation(),
            Err(GeomError::StrictionOrientation { .. })
        ));
    }

    #[test]
    fn cone_frame_field() {
        let spec = QuadratureSpec::default();
        let f = cone().moving_frame(&spec).unwrap();
        assert!(f.point_degenerate);
        assert!(f
            .samples
            .iter()
            .all(|s| s.sigma.is_none() && s.arclength.is_none()));
        assert!(f.structural_residual < 1e-6);
        for s in &f.samples {
            assert_abs_diff_eq!(s.k1_dt, FRAC_1_SQRT_2, epsilon = 1e-14);
            assert_abs_diff_eq!(s.k2_dt, FRAC_1_SQRT_2, epsilon = 1e-14);
        }
        f.check_striction_orientation().unwrap();
    }

    #[test]
    fn cone_dual_frame() {
        let r = FRAC_1_SQRT_2;
        let j = cone().dual_frame_jet(0.0).unwrap();
        let a = j.a.value();
        assert_abs_diff_eq!(a.real, Vec3::new(-r, 0.0, r), epsilon = 1e-15);
        let q = j.q.value();
        let h = j.h.value();
        let cross = q.cross(&h);
        assert_abs_diff_eq!(cross.real, a.real, epsilon = 1e-15);
        assert_abs_diff_eq!(cross.dual, a.dual, epsilon = 1e-15);
        assert_abs_diff_eq!(j.k1.value().real, r, epsilon = 1e-15);
        assert_abs_diff_eq!(j.k1.value().dual, 0.0, epsilon = 1e-15);
        // Pfaffian vector of the cone motion is the fixed z-axis in real part
        let psi = j.darboux();
        assert_abs_diff_eq!(psi.real, Vec3::z(), epsilon = 1e-14);
    }

    #[test]
    fn cone_dual_curve_derivative() {
        let q = cone().to_dual_curve();
        let d = q.differentiate(std::f64::consts::FRAC_PI_2, 1);
        let r = FRAC_1_SQRT_2;
        assert_abs_diff_eq!(d.real, Vec3::new(-r, 0.0, 0.0), epsilon = 1e-15);
        assert_abs_diff_eq!(d.dual, Vec3::new(0.0, 0.0, r), epsilon = 1e-15);
        let fd = q
            .without_jets()
            .differentiate(std::f64::consts::FRAC_PI_2, 1);
        assert!((fd - d).abs_max() < 1e-7);
    }
}
