//! Quadrature over closed and open parameter intervals, and running
//! integrals.

use std::sync::Arc;

use serde::Serialize;

use super::sampler::{CurveSampler, DEFAULT_SAMPLES};
use super::taylor::{Coeff, Taylor};
use crate::error::{GeomError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureRule {
    /// Composite trapezoid on a periodic grid; spectrally accurate for
    /// smooth periodic integrands.
    PeriodicTrapezoid,
    CompositeSimpson,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSpec {
    sample_count: usize,
    rule: QuadratureRule,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            sample_count: DEFAULT_SAMPLES,
            rule: QuadratureRule::PeriodicTrapezoid,
        }
    }
}

impl QuadratureSpec {
    pub const MIN_SAMPLES: usize = 8;

    pub fn new(sample_count: usize, rule: QuadratureRule) -> Result<Self> {
        if sample_count < Self::MIN_SAMPLES {
            return Err(GeomError::Config(format!(
                "sample count {sample_count} is below the minimum of {}",
                Self::MIN_SAMPLES
            )));
        }
        Ok(QuadratureSpec { sample_count, rule })
    }

    pub fn with_samples(sample_count: usize) -> Result<Self> {
        Self::new(sample_count, QuadratureRule::PeriodicTrapezoid)
    }

    pub fn sample_count(&self) -> usize {
        self.sample_count
    }

    pub fn rule(&self) -> QuadratureRule {
        self.rule
    }

    /// Nodes `T·i/N` for `i = 0..N`.
    pub fn periodic_nodes(&self, period: f64) -> Vec<f64> {
        let n = self.sample_count;
        (0..n).map(|i| period * i as f64 / n as f64).collect()
    }
}

/// `∮ f dt` over one period with the periodic trapezoid rule.
pub fn closed_integral<C: Coeff>(f: impl Fn(f64) -> C, period: f64, spec: &QuadratureSpec) -> C {
    let n = spec.sample_count;
    let h = period / n as f64;
    let mut acc = C::zero();
    for i in 0..n {
        acc = acc + f(h * i as f64);
    }
    acc * h
}

/// `∫_a^b f dt` with the rule in `spec`; the periodic rule degrades to the
/// ordinary composite trapezoid on open intervals.
pub fn integrate<C: Coeff>(f: impl Fn(f64) -> C, a: f64, b: f64, spec: &QuadratureSpec) -> C {
    let mut n = spec.sample_count;
    let rule = spec.rule;
    if rule == QuadratureRule::CompositeSimpson && n % 2 == 1 {
        n += 1;
    }
    let h = (b - a) / n as f64;
    let mut acc = C::zero();
    for i in 0..=n {
        let w = match rule {
            QuadratureRule::PeriodicTrapezoid => {
                if i == 0 || i == n {
                    0.5
                } else {
                    1.0
                }
            }
            QuadratureRule::CompositeSimpson => {
                if i == 0 || i == n {
                    1.0 / 3.0
                } else if i % 2 == 1 {
                    4.0 / 3.0
                } else {
                    2.0 / 3.0
                }
            }
        };
        acc = acc + f(a + h * i as f64) * w;
    }
    acc * h
}

const GL_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683,
    0.0,
    0.538_469_310_105_683,
    0.906_179_845_938_664,
];
const GL_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

/// Five-point Gauss–Legendre on `[a, b]`.
pub fn gauss_legendre<C: Coeff>(f: &impl Fn(f64) -> C, a: f64, b: f64) -> C {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = C::zero();
    for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS.iter()) {
        acc = acc + f(mid + half * x) * *w;
    }
    acc * half
}

/// Running integral `F(t) = ∫_0^t f` of the integrand curve, as a sampler
/// with exact jets `F_k = f_{k−1}/k`.
///
/// Values come from a node table over one period (Gauss–Legendre per panel)
/// plus a partial panel, so `F(0) = 0`; the integral is not wrapped, so for
/// periodic integrands `F(T)` is the full circuit integral.
pub fn cumulative_integral<C>(integrand: &CurveSampler<C>, spec: &QuadratureSpec) -> CurveSampler<C>
where
    C: Coeff + Send + Sync + 'static,
{
    let period = integrand.period();
    let n = spec.sample_count();
    let h = period / n as f64;
    let f = integrand.clone();
    let value = |t: f64| f.evaluate(t);
    let mut table = Vec::with_capacity(n + 1);
    let mut acc = C::zero();
    table.push(acc);
    for i in 0..n {
        acc = acc + gauss_legendre(&value, h * i as f64, h * (i + 1) as f64);
        table.push(acc);
    }
    let table = Arc::new(table);
    let f = integrand.clone();
    let running = move |t: f64| -> C {
        let j = ((t / h).floor() as isize).clamp(0, n as isize - 1) as usize;
        let t0 = h * j as f64;
        table[j] + gauss_legendre(&|x| f.evaluate(x), t0, t)
    };
    let g = integrand.clone();
    CurveSampler::from_jet(period, false, move |t: f64| {
        let d: Taylor<C> = g.taylor(t);
        d.integrate(running(t))
    })
}
