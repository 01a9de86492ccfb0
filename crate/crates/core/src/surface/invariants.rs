//! Integral invariants of closed ruled surfaces: pitch, angle of pitch,
//! Steiner vector and area vectors.

use std::f64::consts::TAU;

use serde::Serialize;

use super::frame::DualFrameJet;
use super::RuledSurfaceDef;
use crate::dual::{DualNumber, DualVector3, Vec3};
use crate::error::{GeomError, Result};
use crate::numerics::{CurveSampler, QuadratureSpec};

/// Two independent evaluations of the same quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RouteComparison {
    /// `−∮⟨dh, a⟩` in real arithmetic.
    pub frame_route: f64,
    /// Real part of `−⟨q̃, d̃⟩` from the dual Steiner vector.
    pub steiner_route: f64,
    pub discrepancy: f64,
}

/// Dual angle of pitch and pitch of the surface generated by one axis of the
/// moving frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DirectorInvariants {
    pub axis: &'static str,
    /// `λ̄_x = −⟨x̃, d̃⟩`.
    pub dual_angle_of_pitch: DualNumber,
    /// `ℓ_x = ∮⟨dc, x⟩` with `c` the striction curve.
    pub pitch: f64,
    /// `|dual part of λ̄_x + ℓ_x|`.
    pub pitch_discrepancy: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantReport {
    pub sample_count: usize,
    pub period: f64,
    /// `ℓ = ∮⟨dk, q⟩`.
    pub pitch: f64,
    pub angle_of_pitch: RouteComparison,
    /// `λ̄ = −⟨q̃, d̃⟩`; its dual part equals `−ℓ`.
    pub dual_angle_of_pitch: DualNumber,
    pub dual_pitch_discrepancy: f64,
    /// Dual Steiner vector in moving-frame components `(d̃_q, d̃_h, d̃_a)`.
    pub steiner: DualVector3,
    /// `∮ψ̃` in fixed coordinates.
    pub steiner_fixed: DualVector3,
    /// `ā_q = 2π − λ̄_q`.
    pub spherical_area: DualNumber,
    pub directors: [DirectorInvariants; 3],
    /// `w̃_q = ∮ q̃ × dq̃` in moving-frame components.
    pub area_vector: DualVector3,
    pub developable: bool,
    pub max_abs_drall: f64,
}

impl InvariantReport {
    pub fn director(&self, axis: &str) -> Option<&DirectorInvariants> {
        self.directors.iter().find(|d| d.axis == axis)
    }
}

struct SampleTerms {
    k2_dt: f64,
    psi_body: [DualNumber; 3],
    psi_fixed: DualVector3,
    dk_q: f64,
    dc: [f64; 3],
    area_body: [DualNumber; 3],
}

impl RuledSurfaceDef {
    fn require_closed(&self) -> Result<()> {
        if !self.closed {
            return Err(GeomError::NotClosed(
                "base or director does not return to its start after one period".into(),
            ));
        }
        Ok(())
    }

    /// `ℓ = ∮⟨dk, q⟩`.
    pub fn pitch(&self, spec: &QuadratureSpec) -> Result<f64> {
        self.require_closed()?;
        let n = spec.sample_count();
        let mut acc = 0.0;
        for t in self.sample_params(n) {
            acc += self
                .base_jet(t)
                .derivative(1)
                .dot(&self.director_jet(t).value());
        }
        Ok(acc * self.period() / n as f64)
    }

    fn sample_terms(&self, t: f64) -> Result<SampleTerms> {
        let (_, k2_dt) = self.forms_dt(t)?;
        let (q, h, a) = self.frame_at(t)?;
        let dual: DualFrameJet = self.dual_frame_jet(t)?;
        let psi = dual.darboux();
        let qv = dual.q.value();
        let area = qv.cross(&dual.q.derivative(1));
        let dc = self.striction_jet(t)?.derivative(1);
        Ok(SampleTerms {
            k2_dt,
            psi_body: dual.body(&psi),
            psi_fixed: psi,
            dk_q: self.base_jet(t).derivative(1).dot(&q),
            dc: [dc.dot(&q), dc.dot(&h), dc.dot(&a)],
            area_body: dual.body(&area),
        })
    }

    /// Pole vector `ψ̃/‖ψ̃‖` at `t` (fixed coordinates).
    pub fn pole_vector(&self, t: f64) -> Result<DualVector3> {
        self.dual_frame_jet(t)?.darboux().normalize_with(&self.tol)
    }

    pub fn invariants(&self, spec: &QuadratureSpec) -> Result<InvariantReport> {
        self.require_closed()?;
        let n = spec.sample_count();
        let w = self.period() / n as f64;
        let mut k2 = 0.0;
        let mut psi_body = [DualNumber::ZERO; 3];
        let mut psi_fixed = DualVector3::ZERO;
        let mut dk_q = 0.0;
        let mut dc = [0.0; 3];
        let mut area = [DualNumber::ZERO; 3];
        for t in self.sample_params(n) {
            let s = self.sample_terms(t)?;
            k2 += s.k2_dt;
            psi_fixed = psi_fixed + s.psi_fixed;
            dk_q += s.dk_q;
            for i in 0..3 {
                psi_body[i] += s.psi_body[i];
                dc[i] += s.dc[i];
                area[i] += s.area_body[i];
            }
        }
        let steiner = DualVector3::from_components(psi_body.map(|x| x * w));
        let pitch = dk_q * w;
        let frame_route = -k2 * w;
        let lambda = -steiner.component(0);
        let axes = ["q", "h", "a"];
        let directors = [0, 1, 2].map(|i| {
            let l = -steiner.component(i);
            let p = dc[i] * w;
            DirectorInvariants {
                axis: axes[i],
                dual_angle_of_pitch: l,
                pitch: p,
                pitch_discrepancy: (l.dual + p).abs(),
            }
        });
        let drall = self.drall_summary(spec)?;
        Ok(InvariantReport {
            sample_count: n,
            period: self.period(),
            pitch,
            angle_of_pitch: RouteComparison {
                frame_route,
                steiner_route: lambda.real,
                discrepancy: (frame_route - lambda.real).abs(),
            },
            dual_angle_of_pitch: lambda,
            dual_pitch_discrepancy: (lambda.dual + pitch).abs(),
            steiner,
            steiner_fixed: psi_fixed * w,
            spherical_area: DualNumber::real(TAU) - lambda,
            directors,
            area_vector: DualVector3::from_components(area.map(|x| x * w)),
            developable: drall.max_abs < self.tol.geometric * 1e3,
            max_abs_drall: drall.max_abs,
        })
    }
}

/// `v = ∮ x × dx` of a closed curve.
pub fn area_vector(x: &CurveSampler<Vec3>, spec: &QuadratureSpec) -> Result<Vec3> {
    let period = x.period();
    let gap = (x.evaluate(0.0) - x.evaluate(period)).norm();
    if !x.is_periodic() && gap > 1e-9 {
        return Err(GeomError::NotClosed(format!(
            "curve endpoints differ by {gap:e}"
        )));
    }
    let n = spec.sample_count();
    let mut acc = Vec3::zeros();
    for i in 0..n {
        let t = period * i as f64 / n as f64;
        let j = x.taylor(t);
        acc += j.value().cross(&j.derivative(1));
    }
    Ok(acc * (period / n as f64))
}

/// `f_{x,y} = ⟨v_x, y⟩ / 2`.
pub fn projected_area(v: &Vec3, y: &Vec3) -> f64 {
    0.5 * v.dot(y)
}
