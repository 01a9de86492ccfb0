//! Mannheim offsets: the dual rotation of the ruling in the `{q̃, h̃}` plane,
//! the offset-angle equation and the relations between the integral
//! invariants of a surface and its offset.

mod condition;
mod developable;
pub mod reference;
mod relations;

pub use condition::{
    is_mannheim_pair, mannheim_condition_residual, Deviation, MannheimResidual, PairAlignment,
    PairReport,
};
pub use developable::{
    developability_condition, developable_offset_pitch, mannheim_partner_check,
    DevelopabilityReport, DevelopabilitySample, OffsetPitchReport, PartnerReport,
};
pub use relations::{
    dual_pitch_relation, projected_area_relations, DualPitchReport, ProjectedAreaReport,
    RelationEntry,
};

use serde::Serialize;

use crate::dual::{DualAngle, DualNumber, DualVector3};
use crate::error::{GeomError, Result};
use crate::line::Line;
use crate::numerics::taylor::Taylor;
use crate::numerics::{cumulative_integral, CurveSampler, QuadratureSpec};
use crate::surface::{dual_frame_unchecked, RuledSurfaceDef};

/// How an offset angle came about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AngleOrigin {
    Constant,
    Prescribed,
    /// Integrated from `dθ̄ + k̄1 = 0`.
    Mannheim,
}

#[derive(Debug, Clone)]
enum Repr {
    Constant(DualAngle),
    Curve(CurveSampler<DualNumber>),
}

/// Dual offset angle `θ̄(t) = θ(t) + εθ*(t)`.
#[derive(Debug, Clone)]
pub struct OffsetAngle {
    repr: Repr,
    origin: AngleOrigin,
}

impl OffsetAngle {
    pub fn constant(theta: DualAngle) -> Self {
        OffsetAngle {
            repr: Repr::Constant(theta),
            origin: AngleOrigin::Constant,
        }
    }

    /// A prescribed angle given by its jets.
    pub fn from_jets(
        period: f64,
        periodic: bool,
        f: impl Fn(f64) -> Taylor<DualNumber> + Send + Sync + 'static,
    ) -> Self {
        OffsetAngle {
            repr: Repr::Curve(CurveSampler::from_jet(period, periodic, f)),
            origin: AngleOrigin::Prescribed,
        }
    }

    /// A prescribed angle from plain functions; derivatives fall back to
    /// finite differences.
    pub fn from_fns(
        period: f64,
        periodic: bool,
        theta: impl Fn(f64) -> f64 + Send + Sync + 'static,
        theta_star: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        OffsetAngle {
            repr: Repr::Curve(CurveSampler::from_fn(period, periodic, move |t| {
                DualNumber::new(theta(t), theta_star(t))
            })),
            origin: AngleOrigin::Prescribed,
        }
    }

    pub fn origin(&self) -> AngleOrigin {
        self.origin
    }

    pub fn constant_value(&self) -> Option<DualAngle> {
        match self.repr {
            Repr::Constant(a) => Some(a),
            Repr::Curve(_) => None,
        }
    }

    /// Parameter interval of a non-constant angle.
    pub fn period(&self) -> Option<f64> {
        match &self.repr {
            Repr::Constant(_) => None,
            Repr::Curve(c) => Some(c.period()),
        }
    }

    pub fn is_periodic(&self) -> bool {
        match &self.repr {
            Repr::Constant(_) => true,
            Repr::Curve(c) => c.is_periodic(),
        }
    }

    pub fn at(&self, t: f64) -> DualAngle {
        match &self.repr {
            Repr::Constant(a) => *a,
            Repr::Curve(c) => c.evaluate(t).into(),
        }
    }

    pub fn jet(&self, t: f64) -> Taylor<DualNumber> {
        match &self.repr {
            Repr::Constant(a) => Taylor::constant(a.as_dual()),
            Repr::Curve(c) => c.taylor(t),
        }
    }
}

/// `θ̄(t) = θ̄0 − ∫₀ᵗ k̄1`, the offset angle that makes the rotated ruling a
/// Mannheim offset.
pub fn mannheim_angle(
    s: &RuledSurfaceDef,
    theta0: DualAngle,
    spec: &QuadratureSpec,
) -> Result<OffsetAngle> {
    s.check_non_cylindrical(spec)?;
    let src = s.clone();
    let k1 = CurveSampler::from_jet(s.period(), s.is_closed(), move |t| {
        src.dual_jet(t).diff().norm()
    });
    let running = cumulative_integral(&k1, spec);
    let start = theta0.as_dual();
    Ok(OffsetAngle {
        repr: Repr::Curve(CurveSampler::from_jet(s.period(), false, move |t| {
            Taylor::constant(start) - running.taylor(t)
        })),
        origin: AngleOrigin::Mannheim,
    })
}

/// Offset trihedron `{q̃1, h̃1, ã1}` at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OffsetFrame {
    pub q1: DualVector3,
    pub h1: DualVector3,
    pub a1: DualVector3,
}

#[derive(Debug, Clone, Copy)]
pub struct OffsetFrameJet {
    pub q1: Taylor<DualVector3>,
    pub h1: Taylor<DualVector3>,
    pub a1: Taylor<DualVector3>,
    pub theta: Taylor<DualNumber>,
}

/// A surface together with its rotated offset.
#[derive(Debug, Clone)]
pub struct OffsetResult {
    pub source: RuledSurfaceDef,
    pub angle: OffsetAngle,
    /// The dual curve `q̃1`.
    pub curve: CurveSampler<DualVector3>,
    /// Offset surface rebuilt from `q̃1` (base = foot points).
    pub surface: RuledSurfaceDef,
}

impl OffsetResult {
    pub fn frame_jet(&self, t: f64) -> Result<OffsetFrameJet> {
        let f = self.source.dual_frame_jet(t)?;
        let theta = self.angle.jet(t);
        let (s, c) = theta.sin_cos();
        Ok(OffsetFrameJet {
            q1: f.q.scale(&c) + f.h.scale(&s),
            h1: f.a,
            a1: f.q.scale(&s) - f.h.scale(&c),
            theta,
        })
    }

    pub fn frame_at(&self, t: f64) -> Result<OffsetFrame> {
        let j = self.frame_jet(t)?;
        Ok(OffsetFrame {
            q1: j.q1.value(),
            h1: j.h1.value(),
            a1: j.a1.value(),
        })
    }

    pub fn line_at(&self, t: f64) -> Result<Line> {
        Line::from_dual_with(&self.curve.evaluate(t), self.source.tolerances())
    }
}

/// Rotates the ruling of `s` through `θ̄`:
/// `q̃1 = cos θ̄ q̃ + sin θ̄ h̃`, `h̃1 = ã`, `ã1 = sin θ̄ q̃ − cos θ̄ h̃`.
pub fn rotate_offset(s: &RuledSurfaceDef, angle: &OffsetAngle) -> Result<OffsetResult> {
    let period = s.period();
    if let Some(p) = angle.period() {
        if (p - period).abs() > s.tolerances().geometric * period.max(1.0) {
            return Err(GeomError::Config(format!(
                "offset angle is defined on [0, {p}] but the surface on [0, {period}]"
            )));
        }
    }
    s.check_non_cylindrical(&QuadratureSpec::default())?;
    let src = s.clone();
    let ang = angle.clone();
    let curve = CurveSampler::from_jet(period, s.is_closed() && angle.is_periodic(), move |t| {
        let f = dual_frame_unchecked(&src.dual_jet(t));
        let (sn, cs) = ang.jet(t).sin_cos();
        f.q.scale(&cs) + f.h.scale(&sn)
    });
    let surface = RuledSurfaceDef::from_dual_curve_with(&curve, *s.tolerances())?;
    Ok(OffsetResult {
        source: s.clone(),
        angle: angle.clone(),
        curve,
        surface,
    })
}

/// `θ` within `tol` of `target` modulo `2π`.
pub(crate) fn angle_near(theta: f64, target: f64, tol: f64) -> bool {
    let d = (theta - target).rem_euclid(std::f64::consts::TAU);
    d < tol || std::f64::consts::TAU - d < tol
}
