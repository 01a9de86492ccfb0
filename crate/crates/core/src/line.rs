//! Oriented lines in normalized Plücker coordinates and the Study map onto
//! dual unit vectors.

use serde::{Deserialize, Serialize};

use crate::dual::{DualAngle, DualVector3, Vec3};
use crate::error::{GeomError, Result};
use crate::tolerance::Tolerances;

/// Oriented line with unit `direction` and `moment = p × direction` for any
/// point `p` on it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    direction: Vec3,
    moment: Vec3,
}

impl Line {
    pub fn from_point_dir(p: Vec3, d: Vec3) -> Result<Line> {
        let n = d.norm();
        if !(n > 0.0) || !n.is_finite() {
            return Err(GeomError::ZeroDirection);
        }
        let dir = d / n;
        Ok(Line::orthogonalized(dir, p.cross(&dir)))
    }

    /// Accepts any nonzero direction; the moment is rescaled with it and its
    /// component along the direction is removed.
    pub fn from_plucker(d: Vec3, m: Vec3) -> Result<Line> {
        let n = d.norm();
        if !(n > 0.0) || !n.is_finite() {
            return Err(GeomError::ZeroDirection);
        }
        Ok(Line::orthogonalized(d / n, m / n))
    }

    fn orthogonalized(dir: Vec3, m: Vec3) -> Line {
        Line {
            direction: dir,
            moment: m - dir * dir.dot(&m),
        }
    }

    pub fn direction(&self) -> Vec3 {
        self.direction
    }

    pub fn moment(&self) -> Vec3 {
        self.moment
    }

    pub fn to_dual(&self) -> DualVector3 {
        DualVector3::new(self.direction, self.moment)
    }

    pub fn from_dual(q: &DualVector3) -> Result<Line> {
        Line::from_dual_with(q, &Tolerances::default())
    }

    pub fn from_dual_with(q: &DualVector3, tol: &Tolerances) -> Result<Line> {
        let n = q.real.norm();
        if (n - 1.0).abs() > tol.geometric {
            return Err(GeomError::NotALine(format!(
                "direction has length {n}, expected 1"
            )));
        }
        let incidence = q.real.dot(&q.dual);
        if incidence.abs() > tol.geometric {
            return Err(GeomError::NotALine(format!(
                "direction and moment are not orthogonal (dot = {incidence:e})"
            )));
        }
        Ok(Line::orthogonalized(q.real / n, q.dual / n))
    }

    /// Closest point of the line to the origin.
    pub fn foot_point(&self) -> Vec3 {
        self.direction.cross(&self.moment)
    }

    pub fn point_at(&self, v: f64) -> Vec3 {
        self.foot_point() + self.direction * v
    }

    /// Angle between the directions in `[0, π]` and the shortest distance.
    ///
    /// For skew or intersecting lines the distance is signed by the screw
    /// sense `⟨d1 × d2, p2 − p1⟩`; for parallel lines it is the unsigned
    /// Euclidean distance.
    pub fn dual_angle_to(&self, other: &Line) -> DualAngle {
        let a = self.to_dual();
        let b = other.to_dual();
        let dot = a.dot(&b);
        let cross = a.cross(&b);
        let s = cross.real.norm();
        let theta = s.atan2(dot.real);
        if s <= Tolerances::default().geometric {
            return DualAngle::new(theta, cross.dual.norm());
        }
        // cos θ̄ = c − εθ*s and |a × b| = s + εθ*c; combine both dual parts.
        let n = cross.real / s;
        let c = theta.cos();
        let sn = theta.sin();
        let theta_star = -dot.dual * sn + cross.dual.dot(&n) * c;
        DualAngle::new(theta, theta_star)
    }

    /// Largest coordinate difference of directions and moments.
    pub fn plucker_distance(&self, other: &Line) -> f64 {
        (self.direction - other.direction)
            .amax()
            .max((self.moment - other.moment).amax())
    }
}
