//! Truncated Taylor series ("jets") with normalized coefficients
//! `c[k] = f⁽ᵏ⁾(t₀)/k!`, used to differentiate curve expressions exactly.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::dual::{DualNumber, DualVector3, Vec3};

/// Number of stored coefficients; derivatives up to order `LEN − 1`.
pub const LEN: usize = 8;

/// Values that can serve as Taylor coefficients.
pub trait Coeff:
    Copy
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Mul<f64, Output = Self>
{
    fn zero() -> Self;
}

impl Coeff for f64 {
    fn zero() -> Self {
        0.0
    }
}

impl Coeff for Vec3 {
    fn zero() -> Self {
        Vec3::zeros()
    }
}

impl Coeff for DualNumber {
    fn zero() -> Self {
        DualNumber::ZERO
    }
}

impl Coeff for DualVector3 {
    fn zero() -> Self {
        DualVector3::ZERO
    }
}

/// Scalar coefficient rings with the elementary functions needed by jets.
pub trait Ring: Coeff + Mul<Output = Self> + Div<Output = Self> {
    fn one() -> Self;
    fn from_f64(x: f64) -> Self;
    fn sqrt_r(self) -> Self;
    fn sin_r(self) -> Self;
    fn cos_r(self) -> Self;
    fn exp_r(self) -> Self;
    fn ln_r(self) -> Self;
}

impl Ring for f64 {
    fn one() -> Self {
        1.0
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn sqrt_r(self) -> Self {
        self.sqrt()
    }
    fn sin_r(self) -> Self {
        self.sin()
    }
    fn cos_r(self) -> Self {
        self.cos()
    }
    fn exp_r(self) -> Self {
        self.exp()
    }
    fn ln_r(self) -> Self {
        self.ln()
    }
}

/// Domain violations propagate as NaN here; callers validate inputs.
impl Ring for DualNumber {
    fn one() -> Self {
        DualNumber::ONE
    }
    fn from_f64(x: f64) -> Self {
        DualNumber::real(x)
    }
    fn sqrt_r(self) -> Self {
        let s = self.real.sqrt();
        DualNumber::new(s, 0.5 * self.dual / s)
    }
    fn sin_r(self) -> Self {
        self.sin()
    }
    fn cos_r(self) -> Self {
        self.cos()
    }
    fn exp_r(self) -> Self {
        self.exp()
    }
    fn ln_r(self) -> Self {
        DualNumber::new(self.real.ln(), self.dual / self.real)
    }
}

/// Three-vectors over a scalar ring.
pub trait VectorCoeff: Coeff {
    type Scalar: Ring;
    fn dot(&self, other: &Self) -> Self::Scalar;
    fn cross(&self, other: &Self) -> Self;
    fn scale(&self, s: Self::Scalar) -> Self;
}

impl VectorCoeff for Vec3 {
    type Scalar = f64;
    fn dot(&self, other: &Self) -> f64 {
        self.dot(other)
    }
    fn cross(&self, other: &Self) -> Self {
        self.cross(other)
    }
    fn scale(&self, s: f64) -> Self {
        self * s
    }
}

impl VectorCoeff for DualVector3 {
    type Scalar = DualNumber;
    fn dot(&self, other: &Self) -> DualNumber {
        DualVector3::dot(self, other)
    }
    fn cross(&self, other: &Self) -> Self {
        DualVector3::cross(self, other)
    }
    fn scale(&self, s: DualNumber) -> Self {
        DualVector3::scale(self, s)
    }
}

/// Truncated Taylor expansion about some parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Taylor<C> {
    pub c: [C; LEN],
}

const FACTORIAL: [f64; LEN] = [1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0, 5040.0];

impl<C: Coeff> Taylor<C> {
    pub fn constant(v: C) -> Self {
        let mut c = [C::zero(); LEN];
        c[0] = v;
        Taylor { c }
    }

    pub fn zero() -> Self {
        Taylor {
            c: [C::zero(); LEN],
        }
    }

    /// Builds a jet from derivatives `f, f', f'', ...` (missing ones are zero).
    pub fn from_derivatives(d: &[C]) -> Self {
        let mut out = Self::zero();
        for (k, v) in d.iter().enumerate().take(LEN) {
            out.c[k] = *v * (1.0 / FACTORIAL[k]);
        }
        out
    }

    pub fn value(&self) -> C {
        self.c[0]
    }

    /// The `k`-th derivative at the expansion point.
    pub fn derivative(&self, k: usize) -> C {
        self.c[k] * FACTORIAL[k]
    }

    /// Jet of the derivative; its top coefficient is unknown and set to zero.
    pub fn diff(&self) -> Self {
        let mut out = Self::zero();
        for k in 0..LEN - 1 {
            out.c[k] = self.c[k + 1] * (k + 1) as f64;
        }
        out
    }

    /// Jet of the antiderivative with constant term `c0`.
    pub fn integrate(&self, c0: C) -> Self {
        let mut out = Self::zero();
        out.c[0] = c0;
        for k in 1..LEN {
            out.c[k] = self.c[k - 1] * (1.0 / k as f64);
        }
        out
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(C) -> D) -> Taylor<D> {
        let mut out = Taylor::<D>::zero();
        for k in 0..LEN {
            out.c[k] = f(self.c[k]);
        }
        out
    }

    pub fn zip<B: Coeff, D: Coeff>(&self, other: &Taylor<B>, f: impl Fn(C, B) -> D) -> Taylor<D> {
        let mut out = Taylor::<D>::zero();
        for k in 0..LEN {
            out.c[k] = f(self.c[k], other.c[k]);
        }
        out
    }

    /// Cauchy product under a bilinear map.
    pub fn product<B: Coeff, D: Coeff>(
        &self,
        other: &Taylor<B>,
        f: impl Fn(C, B) -> D,
    ) -> Taylor<D> {
        let mut out = Taylor::<D>::zero();
        for k in 0..LEN {
            let mut acc = D::zero();
            for j in 0..=k {
                acc = acc + f(self.c[j], other.c[k - j]);
            }
            out.c[k] = acc;
        }
        out
    }

    /// Evaluates the truncated series at offset `dt`.
    pub fn eval_offset(&self, dt: f64) -> C {
        let mut acc = self.c[LEN - 1];
        for k in (0..LEN - 1).rev() {
            acc = acc * dt + self.c[k];
        }
        acc
    }

    /// `self(t₀ + inner(Δ))` where `inner` has zero constant term.
    pub fn compose(&self, inner: &Taylor<f64>) -> Self {
        let mut g = *inner;
        g.c[0] = 0.0;
        let mut out = Self::constant(self.c[0]);
        let mut power = Taylor::<f64>::constant(1.0);
        for k in 1..LEN {
            power = power * g;
            for j in 0..LEN {
                out.c[j] = out.c[j] + self.c[k] * power.c[j];
            }
        }
        out
    }

    pub fn is_finite_by(&self, finite: impl Fn(&C) -> bool) -> bool {
        self.c.iter().all(finite)
    }
}

impl<C: Coeff> Add for Taylor<C> {
    type Output = Taylor<C>;
    fn add(self, rhs: Self) -> Self {
        self.zip(&rhs, |a, b| a + b)
    }
}

impl<C: Coeff> Sub for Taylor<C> {
    type Output = Taylor<C>;
    fn sub(self, rhs: Self) -> Self {
        self.zip(&rhs, |a, b| a - b)
    }
}

impl<C: Coeff> Neg for Taylor<C> {
    type Output = Taylor<C>;
    fn neg(self) -> Self {
        self.map(|a| -a)
    }
}

impl<C: Coeff> Mul<f64> for Taylor<C> {
    type Output = Taylor<C>;
    fn mul(self, rhs: f64) -> Self {
        self.map(|a| a * rhs)
    }
}

impl<R: Ring> Mul for Taylor<R> {
    type Output = Taylor<R>;
    fn mul(self, rhs: Self) -> Self {
        self.product(&rhs, |a, b| a * b)
    }
}

impl<R: Ring> Div for Taylor<R> {
    type Output = Taylor<R>;
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

impl<R: Ring> Taylor<R> {
    /// Jet of the independent variable at `t0`.
    pub fn variable(t0: R) -> Self {
        let mut out = Self::constant(t0);
        out.c[1] = R::one();
        out
    }

    pub fn recip(&self) -> Self {
        let a0 = self.c[0];
        let inv = R::one() / a0;
        let mut r = Self::zero();
        r.c[0] = inv;
        for k in 1..LEN {
            let mut acc = R::zero();
            for j in 1..=k {
                acc = acc + self.c[j] * r.c[k - j];
            }
            r.c[k] = -(acc * inv);
        }
        r
    }

    pub fn sqrt(&self) -> Self {
        let mut s = Self::zero();
        s.c[0] = self.c[0].sqrt_r();
        let inv2 = R::one() / (s.c[0] * 2.0);
        for k in 1..LEN {
            let mut acc = self.c[k];
            for j in 1..k {
                acc = acc - s.c[j] * s.c[k - j];
            }
            s.c[k] = acc * inv2;
        }
        s
    }

    pub fn sin_cos(&self) -> (Self, Self) {
        let mut s = Self::zero();
        let mut c = Self::zero();
        s.c[0] = self.c[0].sin_r();
        c.c[0] = self.c[0].cos_r();
        for k in 1..LEN {
            let mut sa = R::zero();
            let mut ca = R::zero();
            for j in 1..=k {
                let ja = self.c[j] * j as f64;
                sa = sa + ja * c.c[k - j];
                ca = ca + ja * s.c[k - j];
            }
            s.c[k] = sa * (1.0 / k as f64);
            c.c[k] = -(ca * (1.0 / k as f64));
        }
        (s, c)
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    pub fn exp(&self) -> Self {
        let mut e = Self::zero();
        e.c[0] = self.c[0].exp_r();
        for k in 1..LEN {
            let mut acc = R::zero();
            for j in 1..=k {
                acc = acc + self.c[j] * e.c[k - j] * j as f64;
            }
            e.c[k] = acc * (1.0 / k as f64);
        }
        e
    }

    pub fn ln(&self) -> Self {
        let a0 = self.c[0];
        let inv = R::one() / a0;
        let mut l = Self::zero();
        l.c[0] = a0.ln_r();
        for k in 1..LEN {
            let mut acc = R::zero();
            for j in 1..k {
                acc = acc + l.c[j] * self.c[k - j] * j as f64;
            }
            l.c[k] = (self.c[k] - acc * (1.0 / k as f64)) * inv;
        }
        l
    }
}

impl Taylor<f64> {
    /// Series reversion: for `self = s₀ + a₁Δ + ...` with `a₁ ≠ 0`, returns
    /// `Δ(σ)` (zero constant term) such that `self(Δ(σ)) − s₀ = σ`.
    pub fn inverse_series(&self) -> Taylor<f64> {
        let a1 = self.c[1];
        let mut g = Taylor::<f64>::zero();
        g.c[1] = 1.0 / a1;
        let mut higher = *self;
        higher.c[0] = 0.0;
        higher.c[1] = 0.0;
        for _ in 0..LEN {
            let h = higher.compose(&g);
            let mut next = Taylor::<f64>::zero();
            next.c[1] = 1.0;
            let next = (next - h) * (1.0 / a1);
            g = next;
        }
        g
    }
}

impl<V: VectorCoeff> Taylor<V> {
    pub fn dot(&self, other: &Self) -> Taylor<V::Scalar> {
        self.product(other, |a, b| a.dot(&b))
    }

    pub fn cross(&self, other: &Self) -> Self {
        self.product(other, |a, b| a.cross(&b))
    }

    pub fn scale(&self, s: &Taylor<V::Scalar>) -> Self {
        self.product(s, |v, x| v.scale(x))
    }

    pub fn norm(&self) -> Taylor<V::Scalar> {
        self.dot(self).sqrt()
    }

    pub fn normalize(&self) -> Self {
        self.scale(&self.norm().recip())
    }
}

/// Splits a dual-vector jet into its real and dual parts.
pub fn split_dual(q: &Taylor<DualVector3>) -> (Taylor<Vec3>, Taylor<Vec3>) {
    (q.map(|v| v.real), q.map(|v| v.dual))
}

/// Joins real and dual parts into a dual-vector jet.
pub fn join_dual(real: &Taylor<Vec3>, dual: &Taylor<Vec3>) -> Taylor<DualVector3> {
    real.zip(dual, DualVector3::new)
}

pub fn join_dual_scalar(real: &Taylor<f64>, dual: &Taylor<f64>) -> Taylor<DualNumber> {
    real.zip(dual, DualNumber::new)
}
