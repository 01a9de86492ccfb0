//! The Mannheim condition `ã = h̃1` and its differential form
//! `dq̃1 ∥ ã`.

use serde::Serialize;

use super::OffsetResult;
use crate::dual::DualNumber;
use crate::error::{GeomError, Result};
use crate::line::Line;
use crate::numerics::QuadratureSpec;
use crate::surface::RuledSurfaceDef;

/// How `dq̃1` lines up with the source's central tangent `ã`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MannheimResidual {
    pub samples: usize,
    /// Largest sine of the angle between `dq1` and `a` (real parts).
    pub max_sine_deviation: f64,
    /// Largest `|dθ̄ + k̄1| / k1`, real and dual parts separately.
    pub max_ode_residual: DualNumber,
    /// Samples where `dq1` vanishes and the direction is undefined.
    pub singular_samples: usize,
}

/// Evaluates the offset-angle equation on an offset.
///
/// `⟨dq̃1, ã1⟩ = −(dθ̄ + k̄1)` and the remaining part of `dq̃1` lies along
/// `ã`, so both measures vanish exactly for Mannheim offsets.
pub fn mannheim_condition_residual(
    result: &OffsetResult,
    spec: &QuadratureSpec,
) -> Result<MannheimResidual> {
    let tol = result.source.tolerances();
    let mut out = MannheimResidual {
        samples: 0,
        max_sine_deviation: 0.0,
        max_ode_residual: DualNumber::ZERO,
        singular_samples: 0,
    };
    for t in result.source.sample_params(spec.sample_count()) {
        let f = result.frame_jet(t)?;
        let k1 = result.source.dual_frame_jet(t)?.k1.value();
        let dq1 = f.q1.derivative(1);
        let a = f.h1.value();
        let coeff = dq1.dot(&f.a1.value());
        out.samples += 1;
        out.max_ode_residual.real = out.max_ode_residual.real.max((coeff.real / k1.real).abs());
        out.max_ode_residual.dual = out.max_ode_residual.dual.max((coeff.dual / k1.real).abs());
        let speed = dq1.real.norm();
        if speed < tol.geometric {
            out.singular_samples += 1;
            continue;
        }
        let sine = dq1.real.cross(&a.real).norm() / speed;
        out.max_sine_deviation = out.max_sine_deviation.max(sine);
    }
    Ok(out)
}

/// How rulings of two surfaces are put in correspondence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairAlignment {
    /// Same parameter value on both surfaces (offsets built from a source).
    SharedParameter,
    /// Each ruling of the second surface is matched to the closest ruling
    /// of the first in the dual-angle sense. Heuristic.
    NearestRuling,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Deviation {
    pub real: f64,
    pub dual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairReport {
    pub alignment: PairAlignment,
    pub compared: usize,
    /// Rulings of the second surface without a central normal.
    pub singular: usize,
    /// Samples where `h̃1` points against `ã`.
    pub reversed: usize,
    /// `max ‖ã − h̃1‖`.
    pub oriented: Deviation,
    /// `max min(‖ã − h̃1‖, ‖ã + h̃1‖)`.
    pub unoriented: Deviation,
    /// Largest `√(θ² + θ*²)` between matched rulings (nearest-ruling mode).
    pub max_match_distance: f64,
    pub tolerance: f64,
    /// Unoriented deviation below tolerance in both parts.
    pub is_pair: bool,
}

fn ruling_gap(a: &Line, b: &Line) -> f64 {
    let d = a.dual_angle_to(b);
    d.theta.hypot(d.theta_star)
}

fn nearest_parameter(
    s1: &RuledSurfaceDef,
    grid: &[(f64, Line)],
    target: &Line,
) -> Result<(f64, f64)> {
    let (mut best, mut best_gap) = (0usize, f64::INFINITY);
    for (i, (_, l)) in grid.iter().enumerate() {
        let g = ruling_gap(l, target);
        if g < best_gap {
            best = i;
            best_gap = g;
        }
    }
    if !best_gap.is_finite() {
        return Err(GeomError::Alignment("no finite ruling distance".into()));
    }
    let step = s1.period() / grid.len() as f64;
    let (mut lo, mut hi) = (grid[best].0 - step, grid[best].0 + step);
    if !s1.is_closed() {
        lo = lo.max(0.0);
        hi = hi.min(s1.period());
    }
    let gap = |t: f64| -> Result<f64> {
        let t = if s1.is_closed() {
            t.rem_euclid(s1.period())
        } else {
            t
        };
        Ok(ruling_gap(&s1.ruling(t)?, target))
    };
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    let (mut x1, mut x2) = (hi - phi * (hi - lo), lo + phi * (hi - lo));
    let (mut f1, mut f2) = (gap(x1)?, gap(x2)?);
    for _ in 0..60 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = gap(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = gap(x2)?;
        }
    }
    let (t, g) = if f1 < f2 { (x1, f1) } else { (x2, f2) };
    let (t, g) = if g <= best_gap {
        (t, g)
    } else {
        (grid[best].0, best_gap)
    };
    let t = if s1.is_closed() {
        t.rem_euclid(s1.period())
    } else {
        t
    };
    Ok((t, g))
}

/// Tests `ã(t1) = h̃1(t2)` over corresponding rulings, with `h̃1` taken from
/// the second surface's own frame.
pub fn is_mannheim_pair(
    s1: &RuledSurfaceDef,
    s2: &RuledSurfaceDef,
    alignment: PairAlignment,
    spec: &QuadratureSpec,
    tol: f64,
) -> Result<PairReport> {
    let n = spec.sample_count();
    if alignment == PairAlignment::SharedParameter
        && (s1.period() - s2.period()).abs() > s1.tolerances().geometric * s1.period().max(1.0)
    {
        return Err(GeomError::Alignment(format!(
            "parameter intervals differ ({} vs {}); use nearest-ruling alignment",
            s1.period(),
            s2.period()
        )));
    }
    let grid = match alignment {
        PairAlignment::SharedParameter => Vec::new(),
        PairAlignment::NearestRuling => s1
            .sample_params(n)
            .into_iter()
            .map(|t| Ok((t, s1.ruling(t)?)))
            .collect::<Result<Vec<_>>>()?,
    };
    let mut report = PairReport {
        alignment,
        compared: 0,
        singular: 0,
        reversed: 0,
        oriented: Deviation {
            real: 0.0,
            dual: 0.0,
        },
        unoriented: Deviation {
            real: 0.0,
            dual: 0.0,
        },
        max_match_distance: 0.0,
        tolerance: tol,
        is_pair: false,
    };
    for t2 in s2.sample_params(n) {
        let h1 = match s2.dual_frame_jet(t2) {
            Ok(f) => f.h.value(),
            Err(GeomError::Cylindrical { .. }) => {
                report.singular += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let t1 = match alignment {
            PairAlignment::SharedParameter => t2,
            PairAlignment::NearestRuling => {
                let (t1, gap) = nearest_parameter(s1, &grid, &s2.ruling(t2)?)?;
                report.max_match_distance = report.max_match_distance.max(gap);
                t1
            }
        };
        let a = s1.dual_frame_jet(t1)?.a.value();
        let same = a - h1;
        let flip = a + h1;
        let reversed = a.real.dot(&h1.real) < 0.0;
        if reversed {
            report.reversed += 1;
        }
        let un = if reversed { flip } else { same };
        report.compared += 1;
        report.oriented.real = report.oriented.real.max(same.real.norm());
        report.oriented.dual = report.oriented.dual.max(same.dual.norm());
        report.unoriented.real = report.unoriented.real.max(un.real.norm());
        report.unoriented.dual = report.unoriented.dual.max(un.dual.norm());
    }
    if report.compared == 0 {
        return Err(GeomError::Alignment(
            "the second surface has no ruling with a central normal".into(),
        ));
    }
    report.is_pair = report.unoriented.real < tol && report.unoriented.dual < tol;
    Ok(report)
}
