//! Dual numbers `a + εa*` (with `ε² = 0`), dual 3-vectors and dual angles.
//!
//! Under the Study correspondence an oriented line with unit direction `d`
//! and moment `m` is the dual unit vector `d + εm`; the dual angle between
//! two such vectors packs the angle between the lines together with their
//! shortest distance.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::tolerance::Tolerances;

pub type Vec3 = Vector3<f64>;

/// A dual number `real + ε·dual`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DualNumber {
    pub real: f64,
    pub dual: f64,
}

impl DualNumber {
    pub const ZERO: DualNumber = DualNumber {
        real: 0.0,
        dual: 0.0,
    };
    pub const ONE: DualNumber = DualNumber {
        real: 1.0,
        dual: 0.0,
    };

    pub const fn new(real: f64, dual: f64) -> Self {
        Self { real, dual }
    }

    pub const fn real(real: f64) -> Self {
        Self { real, dual: 0.0 }
    }

    /// `ε·dual`, a zero divisor.
    pub const fn pure_dual(dual: f64) -> Self {
        Self { real: 0.0, dual }
    }

    /// Division `(a + εa*)/(b + εb*) = a/b + ε(a*b − ab*)/b²`, refused when
    /// the divisor's real part is below `tol.division`.
    pub fn checked_div(self, rhs: DualNumber, tol: &Tolerances) -> Result<DualNumber> {
        if rhs.real.abs() < tol.division {
            return Err(GeomError::DivisionByPureDual(rhs.real));
        }
        Ok(self / rhs)
    }

    pub fn recip(self) -> DualNumber {
        DualNumber::new(1.0 / self.real, -self.dual / (self.real * self.real))
    }

    /// Extends `f` to dual arguments: `f(x + εx*) = f(x) + εx*f'(x)`.
    pub fn apply(self, f: Analytic) -> Result<DualNumber> {
        f.apply(self)
    }

    pub fn sin(self) -> DualNumber {
        DualNumber::new(self.real.sin(), self.dual * self.real.cos())
    }

    pub fn cos(self) -> DualNumber {
        DualNumber::new(self.real.cos(), -self.dual * self.real.sin())
    }

    pub fn exp(self) -> DualNumber {
        let e = self.real.exp();
        DualNumber::new(e, self.dual * e)
    }

    pub fn sqrt(self) -> Result<DualNumber> {
        Analytic::Sqrt.apply(self)
    }

    pub fn abs_max(self) -> f64 {
        self.real.abs().max(self.dual.abs())
    }

    pub fn is_finite(self) -> bool {
        self.real.is_finite() && self.dual.is_finite()
    }
}

impl fmt::Display for DualNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dual < 0.0 {
            write!(f, "{} - ε{}", self.real, -self.dual)
        } else {
            write!(f, "{} + ε{}", self.real, self.dual)
        }
    }
}

impl Add for DualNumber {
    type Output = DualNumber;
    fn add(self, rhs: DualNumber) -> DualNumber {
        DualNumber::new(self.real + rhs.real, self.dual + rhs.dual)
    }
}

impl Sub for DualNumber {
    type Output = DualNumber;
    fn sub(self, rhs: DualNumber) -> DualNumber {
        DualNumber::new(self.real - rhs.real, self.dual - rhs.dual)
    }
}

impl Neg for DualNumber {
    type Output = DualNumber;
    fn neg(self) -> DualNumber {
        DualNumber::new(-self.real, -self.dual)
    }
}

impl Mul for DualNumber {
    type Output = DualNumber;
    fn mul(self, rhs: DualNumber) -> DualNumber {
        DualNumber::new(
            self.real * rhs.real,
            self.real * rhs.dual + self.dual * rhs.real,
        )
    }
}

impl Mul<f64> for DualNumber {
    type Output = DualNumber;
    fn mul(self, rhs: f64) -> DualNumber {
        DualNumber::new(self.real * rhs, self.dual * rhs)
    }
}

/// Unchecked division; see [`DualNumber::checked_div`] for the guarded form.
impl Div for DualNumber {
    type Output = DualNumber;
    fn div(self, rhs: DualNumber) -> DualNumber {
        let b = rhs.real;
        DualNumber::new(
            self.real / b,
            (self.dual * b - self.real * rhs.dual) / (b * b),
        )
    }
}

impl AddAssign for DualNumber {
    fn add_assign(&mut self, rhs: DualNumber) {
        *self = *self + rhs;
    }
}

impl SubAssign for DualNumber {
    fn sub_assign(&mut self, rhs: DualNumber) {
        *self = *self - rhs;
    }
}

/// Real analytic functions that can be lifted to dual arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Analytic {
    Sin,
    Cos,
    Tan,
    Sqrt,
    Exp,
    Ln,
    Acos,
    Asin,
    Atan,
}

impl Analytic {
    pub fn name(self) -> &'static str {
        match self {
            Analytic::Sin => "sin",
            Analytic::Cos => "cos",
            Analytic::Tan => "tan",
            Analytic::Sqrt => "sqrt",
            Analytic::Exp => "exp",
            Analytic::Ln => "ln",
            Analytic::Acos => "acos",
            Analytic::Asin => "asin",
            Analytic::Atan => "atan",
        }
    }

    /// `(f(x), f'(x))`, or a domain error where either is undefined.
    pub fn value_and_derivative(self, x: f64) -> Result<(f64, f64)> {
        let domain = || GeomError::Domain {
            function: self.name(),
            x,
        };
        let out = match self {
            Analytic::Sin => (x.sin(), x.cos()),
            Analytic::Cos => (x.cos(), -x.sin()),
            Analytic::Tan => {
                let c = x.cos();
                if c.abs() < 1e-15 {
                    return Err(domain());
                }
                (x.tan(), 1.0 / (c * c))
            }
            Analytic::Sqrt => {
                if x <= 0.0 {
                    return Err(domain());
                }
                let s = x.sqrt();
                (s, 0.5 / s)
            }
            Analytic::Exp => (x.exp(), x.exp()),
            Analytic::Ln => {
                if x <= 0.0 {
                    return Err(domain());
                }
                (x.ln(), 1.0 / x)
            }
            Analytic::Acos | Analytic::Asin => {
                if x.abs() >= 1.0 {
                    return Err(domain());
                }
                let d = 1.0 / (1.0 - x * x).sqrt();
                if self == Analytic::Acos {
                    (x.acos(), -d)
                } else {
                    (x.asin(), d)
                }
            }
            Analytic::Atan => (x.atan(), 1.0 / (1.0 + x * x)),
        };
        if !(out.0.is_finite() && out.1.is_finite()) {
            return Err(domain());
        }
        Ok(out)
    }

    pub fn apply(self, x: DualNumber) -> Result<DualNumber> {
        let (v, d) = self.value_and_derivative(x.real)?;
        Ok(DualNumber::new(v, x.dual * d))
    }
}

/// A dual 3-vector `real + ε·dual` (three dual numbers, stored as two real
/// vectors).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualVector3 {
    pub real: Vec3,
    pub dual: Vec3,
}

impl Default for DualVector3 {
    fn default() -> Self {
        Self::ZERO
    }
}

impl DualVector3 {
    pub const ZERO: DualVector3 = DualVector3 {
        real: Vector3::new(0.0, 0.0, 0.0),
        dual: Vector3::new(0.0, 0.0, 0.0),
    };

    pub fn new(real: Vec3, dual: Vec3) -> Self {
        Self { real, dual }
    }

    pub fn from_components(c: [DualNumber; 3]) -> Self {
        Self::new(
            Vec3::new(c[0].real, c[1].real, c[2].real),
            Vec3::new(c[0].dual, c[1].dual, c[2].dual),
        )
    }

    pub fn component(&self, i: usize) -> DualNumber {
        DualNumber::new(self.real[i], self.dual[i])
    }

    pub fn components(&self) -> [DualNumber; 3] {
        [self.component(0), self.component(1), self.component(2)]
    }

    /// `⟨a, b⟩ + ε(⟨a, b*⟩ + ⟨a*, b⟩)`.
    pub fn dot(&self, other: &DualVector3) -> DualNumber {
        DualNumber::new(
            self.real.dot(&other.real),
            self.real.dot(&other.dual) + self.dual.dot(&other.real),
        )
    }

    /// `a × b + ε(a × b* + a* × b)`.
    pub fn cross(&self, other: &DualVector3) -> DualVector3 {
        DualVector3::new(
            self.real.cross(&other.real),
            self.real.cross(&other.dual) + self.dual.cross(&other.real),
        )
    }

    /// `‖a‖ + ε⟨a, a*⟩/‖a‖`.
    pub fn norm(&self) -> Result<DualNumber> {
        self.norm_with(&Tolerances::default())
    }

    pub fn norm_with(&self, tol: &Tolerances) -> Result<DualNumber> {
        let n = self.real.norm();
        if n < tol.division {
            return Err(GeomError::Degenerate);
        }
        Ok(DualNumber::new(n, self.real.dot(&self.dual) / n))
    }

    pub fn normalize(&self) -> Result<DualVector3> {
        self.normalize_with(&Tolerances::default())
    }

    pub fn normalize_with(&self, tol: &Tolerances) -> Result<DualVector3> {
        let n = self.norm_with(tol)?;
        Ok(self.scale(n.recip()))
    }

    /// Multiplication by a dual scalar.
    pub fn scale(&self, s: DualNumber) -> DualVector3 {
        DualVector3::new(self.real * s.real, self.dual * s.real + self.real * s.dual)
    }

    /// Largest absolute component over both parts.
    pub fn abs_max(&self) -> f64 {
        self.real.amax().max(self.dual.amax())
    }

    pub fn is_finite(&self) -> bool {
        self.real
            .iter()
            .chain(self.dual.iter())
            .all(|x| x.is_finite())
    }
}

impl Add for DualVector3 {
    type Output = DualVector3;
    fn add(self, rhs: DualVector3) -> DualVector3 {
        DualVector3::new(self.real + rhs.real, self.dual + rhs.dual)
    }
}

impl Sub for DualVector3 {
    type Output = DualVector3;
    fn sub(self, rhs: DualVector3) -> DualVector3 {
        DualVector3::new(self.real - rhs.real, self.dual - rhs.dual)
    }
}

impl Neg for DualVector3 {
    type Output = DualVector3;
    fn neg(self) -> DualVector3 {
        DualVector3::new(-self.real, -self.dual)
    }
}

impl Mul<f64> for DualVector3 {
    type Output = DualVector3;
    fn mul(self, rhs: f64) -> DualVector3 {
        DualVector3::new(self.real * rhs, self.dual * rhs)
    }
}

impl Mul<DualNumber> for DualVector3 {
    type Output = DualVector3;
    fn mul(self, rhs: DualNumber) -> DualVector3 {
        self.scale(rhs)
    }
}

/// Dual angle `θ + εθ*`: the angle between two lines and their signed
/// shortest distance.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DualAngle {
    pub theta: f64,
    pub theta_star: f64,
}

impl DualAngle {
    pub const fn new(theta: f64, theta_star: f64) -> Self {
        Self { theta, theta_star }
    }

    pub fn as_dual(&self) -> DualNumber {
        DualNumber::new(self.theta, self.theta_star)
    }

    /// `cos θ − εθ* sin θ`
    pub fn cos(&self) -> DualNumber {
        self.as_dual().cos()
    }

    /// `sin θ + εθ* cos θ`
    pub fn sin(&self) -> DualNumber {
        self.as_dual().sin()
    }
}

impl From<DualNumber> for DualAngle {
    fn from(d: DualNumber) -> Self {
        DualAngle::new(d.real, d.dual)
    }
}

/// Recovers the dual angle from its cosine. The dual part is `−c*/sin θ`, so
/// nearly parallel configurations are refused.
pub fn dual_acos(c: DualNumber) -> Result<DualAngle> {
    dual_acos_with(c, &Tolerances::default())
}

pub fn dual_acos_with(c: DualNumber, tol: &Tolerances) -> Result<DualAngle> {
    if c.real.abs() > 1.0 + tol.geometric || !c.is_finite() {
        return Err(GeomError::Domain {
            function: "acos",
            x: c.real,
        });
    }
    let theta = c.real.clamp(-1.0, 1.0).acos();
    let s = theta.sin();
    if s < tol.geometric {
        return Err(GeomError::ParallelDegenerate(s));
    }
    Ok(DualAngle::new(theta, -c.dual / s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_3, SQRT_2};

    #[test]
    fn product_of_pure_duals_vanishes() {
        let e = DualNumber::pure_dual(1.0);
        assert_eq!(e * e, DualNumber::ZERO);
    }

    #[test]
    fn product_expands() {
        assert_eq!(
            DualNumber::new(2.0, 3.0) * DualNumber::new(4.0, 5.0),
            DualNumber::new(8.0, 22.0)
        );
        let b = DualNumber::new(-1.5, 0.25);
        assert_eq!(DualNumber::ONE * b, b);
    }

    #[test]
    fn division_inverts_product() {
        let tol = Tolerances::default();
        let a = DualNumber::new(1.25, -0.5);
        let b = DualNumber::new(-3.0, 2.0);
        let q = (a * b).checked_div(b, &tol).unwrap();
        assert_abs_diff_eq!(q.real, a.real, epsilon = 1e-15);
        assert_abs_diff_eq!(q.dual, a.dual, epsilon = 1e-15);
        assert!(matches!(
            a.checked_div(DualNumber::pure_dual(1.0), &tol),
            Err(GeomError::DivisionByPureDual(_))
        ));
    }

    #[test]
    fn analytic_lift() {
        let th = DualNumber::new(0.7, 1.3);
        let c = th.apply(Analytic::Cos).unwrap();
        assert_abs_diff_eq!(c.real, 0.7f64.cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(c.dual, -1.3 * 0.7f64.sin(), epsilon = 1e-15);

        let r = DualNumber::new(4.0, 4.0).apply(Analytic::Sqrt).unwrap();
        assert_eq!(r, DualNumber::new(2.0, 1.0));

        let s = DualNumber::pure_dual(0.3).apply(Analytic::Sin).unwrap();
        assert_eq!(s, DualNumber::pure_dual(0.3));

        assert!(matches!(
            DualNumber::new(-1.0, 0.0).apply(Analytic::Sqrt),
            Err(GeomError::Domain { .. })
        ));
        assert!(DualNumber::new(1.0, 0.0).apply(Analytic::Acos).is_err());
    }

    #[test]
    fn dot_examples() {
        let r = FRAC_1_SQRT_2;
        let q = DualVector3::new(Vec3::new(r, 0.0, r), Vec3::new(r, 0.0, -r));
        let d = q.dot(&q);
        assert_abs_diff_eq!(d.real, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.dual, 0.0, epsilon = 1e-15);

        let a = Vec3::new(0.0, 0.6, 0.8);
        let ta = DualVector3::new(a, Vec3::new(1.0, 2.0, 3.0));
        let ea = DualVector3::new(Vec3::zeros(), a);
        assert_abs_diff_eq!(ta.dot(&ea).dual, 1.0, epsilon = 1e-15);
        assert_eq!(ta.dot(&ea).real, 0.0);

        // parallel lines at unit distance
        let l1 = DualVector3::new(Vec3::z(), Vec3::new(0.0, -1.0, 0.0));
        let l2 = DualVector3::new(Vec3::z(), Vec3::zeros());
        assert_eq!(l1.dot(&l2), DualNumber::ONE);
    }

    #[test]
    fn cross_examples() {
        let x = DualVector3::new(Vec3::x(), Vec3::zeros());
        let y = DualVector3::new(Vec3::y(), Vec3::zeros());
        assert_eq!(x.cross(&y), DualVector3::new(Vec3::z(), Vec3::zeros()));
        let a = DualVector3::new(Vec3::new(1.0, 2.0, 3.0), Vec3::new(-1.0, 0.5, 2.0));
        assert_eq!(a.cross(&a).abs_max(), 0.0);
    }

    #[test]
    fn norm_and_normalize() {
        let a = DualVector3::new(Vec3::new(3.0, 0.0, 0.0), Vec3::new(1.0, 0.0, 0.0));
        assert_eq!(a.norm().unwrap(), DualNumber::new(3.0, 1.0));
        assert_eq!(
            DualVector3::new(Vec3::zeros(), Vec3::x()).norm(),
            Err(GeomError::Degenerate)
        );
        let b = DualVector3::new(Vec3::new(2.0, 0.0, 0.0), Vec3::new(0.0, 2.0, 0.0));
        assert_eq!(
            b.normalize().unwrap(),
            DualVector3::new(Vec3::x(), Vec3::y())
        );

        // raw cone ruling at u = 0 through (0,1,0) with direction (1,0,1)
        let d = Vec3::new(1.0, 0.0, 1.0);
        let raw = DualVector3::new(d, Vec3::y().cross(&d));
        let n = raw.normalize().unwrap();
        let r = FRAC_1_SQRT_2;
        assert_abs_diff_eq!(n.real, Vec3::new(r, 0.0, r), epsilon = 1e-15);
        assert_abs_diff_eq!(n.dual, Vec3::new(r, 0.0, -r), epsilon = 1e-15);
        let again = n.normalize().unwrap();
        assert_abs_diff_eq!(again.real, n.real, epsilon = 1e-15);
        assert_abs_diff_eq!(again.dual, n.dual, epsilon = 1e-15);
    }

    #[test]
    fn dual_acos_examples() {
        let a = dual_acos(DualNumber::new(0.0, -2.5)).unwrap();
        assert_abs_diff_eq!(a.theta, FRAC_PI_2, epsilon = 1e-15);
        assert_abs_diff_eq!(a.theta_star, 2.5, epsilon = 1e-15);

        assert!(matches!(
            dual_acos(DualNumber::ONE),
            Err(GeomError::ParallelDegenerate(_))
        ));

        let c = DualNumber::new(FRAC_PI_3.cos(), -SQRT_2 * FRAC_PI_3.sin());
        let a = dual_acos(c).unwrap();
        assert_abs_diff_eq!(a.theta, FRAC_PI_3, epsilon = 1e-14);
        assert_abs_diff_eq!(a.theta_star, SQRT_2, epsilon = 1e-14);
    }

    #[test]
    fn dual_angle_trig_matches_lift() {
        let a = DualAngle::new(1.1, -0.4);
        assert_eq!(a.cos(), a.as_dual().apply(Analytic::Cos).unwrap());
        assert_eq!(a.sin(), a.as_dual().apply(Analytic::Sin).unwrap());
        let one = a.cos() * a.cos() + a.sin() * a.sin();
        assert_abs_diff_eq!(one.real, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(one.dual, 0.0, epsilon = 1e-15);
    }
}
