//! Offsets of developable surfaces: when the offset is developable again,
//! how the striction lines relate, and the offset's pitch.
//!
//! On a developable source with regular striction line `α` the frame
//! `{q, h, a}` is the Frenet frame of `α`, `k1 = κ` and `k2 = τ` per unit
//! arclength, and the offset ruling passes through `β = α + θ* a`.

use serde::Serialize;

use super::{rotate_offset, OffsetAngle, OffsetResult};
use crate::dual::Vec3;
use crate::error::{GeomError, Result};
use crate::numerics::{frenet_from_jet, QuadratureSpec};
use crate::surface::{RuledSurfaceDef, StrictionCurve};

fn developable_source(
    s: &RuledSurfaceDef,
    spec: &QuadratureSpec,
    tol: f64,
) -> Result<StrictionCurve> {
    let drall = s.drall_summary(spec)?;
    if drall.max_abs >= tol {
        return Err(GeomError::Precondition(format!(
            "source surface is not developable (max |drall| = {:e})",
            drall.max_abs
        )));
    }
    let striction = s.striction_curve(spec)?;
    if striction.point_degenerate {
        return Err(GeomError::DegenerateStriction(
            "the developability relations need a regular striction line".into(),
        ));
    }
    s.moving_frame(spec)?.check_striction_orientation()?;
    Ok(striction)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DevelopabilitySample {
    pub t: f64,
    pub curvature: f64,
    pub torsion: f64,
    pub theta: f64,
    pub theta_star: f64,
    /// `sin θ + θ* τ cos θ`.
    pub torsion_residual: f64,
    /// `(sin θ + θ* τ cos θ) / (τ sin θ)`; absent where `τ sin θ` vanishes.
    pub closed_form_drall: Option<f64>,
    /// Drall of the offset from the frame equations for an arbitrary
    /// `θ̄(s)`:
    /// `(A θ*' + τ sin θ (sin θ + θ* τ cos θ)) / (A² + τ² sin² θ)` with
    /// `A = θ' + κ`. Reduces to the closed form when `A = 0`.
    pub frame_drall: f64,
    /// Drall of the constructed offset surface.
    pub direct_drall: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DevelopabilityReport {
    pub samples: Vec<DevelopabilitySample>,
    pub max_torsion_residual: f64,
    pub max_direct_drall: f64,
    /// `max |frame_drall − direct_drall|`.
    pub max_frame_gap: f64,
    /// `max |closed_form_drall − direct_drall|` where both exist.
    pub max_closed_form_gap: Option<f64>,
    /// Samples where the offset has no drall (stationary director).
    pub singular_samples: usize,
    /// Samples where `|δ_q1| < tol` and `|sin θ + θ* τ cos θ| < tol·|τ sin θ|`
    /// disagree.
    pub equivalence_mismatches: usize,
    pub offset_developable: bool,
    /// `sin θ = 0` throughout: the condition forces `θ* τ = 0` and the
    /// offset coincides with the source when `θ* = 0`.
    pub coincident_branch: bool,
}

/// Developability of the offset of a developable surface.
pub fn developability_condition(
    source: &RuledSurfaceDef,
    angle: &OffsetAngle,
    spec: &QuadratureSpec,
    tol: f64,
) -> Result<DevelopabilityReport> {
    let striction = developable_source(source, spec, tol)?;
    let result = rotate_offset(source, angle)?;
    let tols = source.tolerances();
    let mut samples = Vec::new();
    let mut report = DevelopabilityReport {
        samples: Vec::new(),
        max_torsion_residual: 0.0,
        max_direct_drall: 0.0,
        max_frame_gap: 0.0,
        max_closed_form_gap: None,
        singular_samples: 0,
        equivalence_mismatches: 0,
        offset_developable: true,
        coincident_branch: true,
    };
    for t in source.sample_params(spec.sample_count()) {
        let fr = frenet_from_jet(&striction.curve.taylor(t), t, tols)?;
        let (kappa, tau) = (fr.curvature, fr.torsion);
        let jet = angle.jet(t);
        let th = jet.value();
        let d = jet.derivative(1);
        let (theta, ts) = (th.real, th.dual);
        let (dtheta, dts) = (d.real / fr.speed, d.dual / fr.speed);
        let (s, c) = theta.sin_cos();
        let residual = s + ts * tau * c;
        let big_a = dtheta + kappa;
        let b = tau * s;
        let frame_drall = (big_a * dts + b * residual) / (big_a * big_a + b * b);
        let closed_form = (b.abs() > tols.geometric).then(|| residual / b);
        let direct = match result.surface.distribution_parameter(t) {
            Ok(v) => Some(v),
            Err(GeomError::Cylindrical { .. }) => None,
            Err(e) => return Err(e),
        };
        if s.abs() > tols.geometric {
            report.coincident_branch = false;
        }
        report.max_torsion_residual = report.max_torsion_residual.max(residual.abs());
        match direct {
            Some(v) => {
                report.max_direct_drall = report.max_direct_drall.max(v.abs());
                report.max_frame_gap = report.max_frame_gap.max((frame_drall - v).abs());
                if let Some(cf) = closed_form {
                    let g = (cf - v).abs();
                    report.max_closed_form_gap =
                        Some(report.max_closed_form_gap.map_or(g, |m: f64| m.max(g)));
                }
                if (v.abs() < tol) != (residual.abs() < tol * b.abs()) {
                    report.equivalence_mismatches += 1;
                }
                if v.abs() >= tol {
                    report.offset_developable = false;
                }
            }
            None => report.singular_samples += 1,
        }
        samples.push(DevelopabilitySample {
            t,
            curvature: kappa,
            torsion: tau,
            theta,
            theta_star: ts,
            torsion_residual: residual,
            closed_form_drall: closed_form,
            frame_drall,
            direct_drall: direct,
        });
    }
    report.samples = samples;
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PartnerReport {
    pub samples: usize,
    /// Largest angle between the binormal of `α` and the principal normal
    /// of `β` (unoriented, radians).
    pub max_angle: f64,
    /// Largest angle between the binormal of `α` and the binormal of `β`.
    pub max_binormal_angle: f64,
    /// `max |β − (α + θ* a)|` with `β` the offset's own striction line.
    pub max_striction_gap: f64,
    /// The two striction lines coincide (`θ̄ = 0`); the check holds
    /// trivially.
    pub coincident: bool,
    pub pass: bool,
}

fn line_angle(u: &Vec3, v: &Vec3) -> f64 {
    u.cross(v).norm().atan2(u.dot(v).abs())
}

/// Mannheim-partner test on the striction lines of a developable surface
/// and its developable offset: the binormal of `α` should be the principal
/// normal of `β`.
pub fn mannheim_partner_check(
    result: &OffsetResult,
    spec: &QuadratureSpec,
    tol: f64,
) -> Result<PartnerReport> {
    let source = &result.source;
    let alpha = developable_source(source, spec, tol)?;
    let offset_drall = result.surface.drall_summary(spec)?;
    if offset_drall.max_abs >= tol {
        return Err(GeomError::Precondition(format!(
            "offset surface is not developable (max |drall| = {:e})",
            offset_drall.max_abs
        )));
    }
    let beta = result.surface.striction_curve(spec)?;
    let tols = source.tolerances();
    let mut report = PartnerReport {
        samples: 0,
        max_angle: 0.0,
        max_binormal_angle: 0.0,
        max_striction_gap: 0.0,
        coincident: false,
        pass: false,
    };
    let mut max_separation: f64 = 0.0;
    let params = source.sample_params(spec.sample_count());
    for &t in &params {
        let a = alpha.curve.evaluate(t);
        let b = beta.curve.evaluate(t);
        let expected = a + source.frame_at(t)?.2 * result.angle.at(t).theta_star;
        report.max_striction_gap = report.max_striction_gap.max((b - expected).norm());
        let line_gap = source
            .ruling(t)?
            .plucker_distance(&result.surface.ruling(t)?);
        max_separation = max_separation.max((b - a).norm()).max(line_gap);
    }
    if max_separation < tol {
        report.coincident = true;
        report.pass = true;
        report.samples = params.len();
        return Ok(report);
    }
    if beta.point_degenerate {
        return Err(GeomError::DegenerateStriction(
            "offset striction line is a point".into(),
        ));
    }
    for &t in &params {
        let fa = frenet_from_jet(&alpha.curve.taylor(t), t, tols)?;
        let fb = frenet_from_jet(&beta.curve.taylor(t), t, tols)?;
        report.samples += 1;
        report.max_angle = report.max_angle.max(line_angle(&fa.binormal, &fb.normal));
        report.max_binormal_angle = report
            .max_binormal_angle
            .max(line_angle(&fa.binormal, &fb.binormal));
    }
    report.pass = report.max_angle < tol;
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OffsetPitchReport {
    /// `∮(cos θ − θ* τ sin θ) ds`, from `dβ/ds = q − θ* τ h`.
    pub frame_route: f64,
    /// `∮(cos θ − θ* τ cos θ) ds`.
    pub cosine_route: f64,
    /// Pitch of the constructed offset surface.
    pub direct: f64,
    pub frame_gap: f64,
    pub cosine_gap: f64,
    pub striction_length: f64,
}

/// Pitch of the offset of a closed developable surface, by the torsion of
/// the striction line and directly.
pub fn developable_offset_pitch(
    source: &RuledSurfaceDef,
    angle: &OffsetAngle,
    spec: &QuadratureSpec,
    tol: f64,
) -> Result<OffsetPitchReport> {
    if !source.is_closed() {
        return Err(GeomError::NotClosed(
            "the offset pitch needs a closed source".into(),
        ));
    }
    let striction = developable_source(source, spec, tol)?;
    let result = rotate_offset(source, angle)?;
    let direct = result.surface.pitch(spec)?;
    let n = spec.sample_count();
    let w = source.period() / n as f64;
    let (mut frame, mut cosine, mut length) = (0.0, 0.0, 0.0);
    for t in source.sample_params(n) {
        let fr = frenet_from_jet(&striction.curve.taylor(t), t, source.tolerances())?;
        let th = angle.at(t);
        let (s, c) = th.theta.sin_cos();
        frame += (c - th.theta_star * fr.torsion * s) * fr.speed;
        cosine += (c - th.theta_star * fr.torsion * c) * fr.speed;
        length += fr.speed;
    }
    let (frame, cosine) = (frame * w, cosine * w);
    Ok(OffsetPitchReport {
        frame_route: frame,
        cosine_route: cosine,
        direct,
        frame_gap: (frame - direct).abs(),
        cosine_gap: (cosine - direct).abs(),
        striction_length: length * w,
    })
}
