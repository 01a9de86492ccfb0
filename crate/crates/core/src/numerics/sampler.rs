//! Parametrized curves with optional exact jets and finite-difference
//! fallback.

use std::fmt;
use std::sync::Arc;

use super::taylor::{Coeff, Taylor};

pub type EvalFn<V> = Arc<dyn Fn(f64) -> V + Send + Sync>;
pub type JetFn<V> = Arc<dyn Fn(f64) -> Taylor<V> + Send + Sync>;

/// Default number of samples per period.
pub const DEFAULT_SAMPLES: usize = 256;

/// A curve over `[0, period)`.
///
/// When a jet function is available derivatives are exact; otherwise they
/// come from central differences with step `period / (64 · fd_samples)`.
#[derive(Clone)]
pub struct CurveSampler<V: Coeff> {
    period: f64,
    periodic: bool,
    eval: EvalFn<V>,
    jet: Option<JetFn<V>>,
    fd_samples: usize,
}

impl<V: Coeff> fmt::Debug for CurveSampler<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CurveSampler")
            .field("period", &self.period)
            .field("periodic", &self.periodic)
            .field("exact_jets", &self.jet.is_some())
            .finish()
    }
}

impl<V: Coeff + Send + Sync + 'static> CurveSampler<V> {
    pub fn from_fn(
        period: f64,
        periodic: bool,
        f: impl Fn(f64) -> V + Send + Sync + 'static,
    ) -> Self {
        CurveSampler {
            period,
            periodic,
            eval: Arc::new(f),
            jet: None,
            fd_samples: DEFAULT_SAMPLES,
        }
    }

    pub fn from_jet(
        period: f64,
        periodic: bool,
        jet: impl Fn(f64) -> Taylor<V> + Send + Sync + 'static,
    ) -> Self {
        let jet: JetFn<V> = Arc::new(jet);
        let j = jet.clone();
        CurveSampler {
            period,
            periodic,
            eval: Arc::new(move |t| j(t).value()),
            jet: Some(jet),
            fd_samples: DEFAULT_SAMPLES,
        }
    }

    pub fn with_fd_samples(mut self, n: usize) -> Self {
        self.fd_samples = n.max(1);
        self
    }

    /// Drops the exact jets so every derivative goes through finite
    /// differences.
    pub fn without_jets(&self) -> Self {
        CurveSampler {
            jet: None,
            ..self.clone()
        }
    }

    /// Applies a linear map pointwise (jets are mapped coefficient by
    /// coefficient, which is only valid for linear `f`).
    pub fn map_linear<W: Coeff + Send + Sync + 'static>(
        &self,
        f: impl Fn(V) -> W + Send + Sync + 'static + Clone,
    ) -> CurveSampler<W> {
        let eval = self.eval.clone();
        let g = f.clone();
        let jet: Option<JetFn<W>> = self
            .jet
            .clone()
            .map(|j| Arc::new(move |t: f64| j(t).map(&g)) as JetFn<W>);
        CurveSampler {
            period: self.period,
            periodic: self.periodic,
            eval: Arc::new(move |t| f(eval(t))),
            jet,
            fd_samples: self.fd_samples,
        }
    }
}

impl<V: Coeff> CurveSampler<V> {
    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    pub fn has_jets(&self) -> bool {
        self.jet.is_some()
    }

    pub fn fd_step(&self) -> f64 {
        self.period / (64.0 * self.fd_samples as f64)
    }

    fn wrap(&self, t: f64) -> f64 {
        if self.periodic {
            t.rem_euclid(self.period)
        } else {
            t
        }
    }

    pub fn evaluate(&self, t: f64) -> V {
        (self.eval)(self.wrap(t))
    }

    /// Derivative of the given order. Exact when jets exist (orders below
    /// the jet length); otherwise central differences for orders 1 to 3.
    pub fn differentiate(&self, t: f64, order: usize) -> V {
        match &self.jet {
            Some(j) if order < super::taylor::LEN => j(self.wrap(t)).derivative(order),
            _ => self.fd_derivative_with_step(t, order, self.fd_step()),
        }
    }

    /// Central-difference derivative: 3-point stencils for orders 1 and 2,
    /// the 5-point stencil for order 3.
    pub fn fd_derivative_with_step(&self, t: f64, order: usize, h: f64) -> V {
        let f = |k: f64| self.evaluate(t + k * h);
        match order {
            0 => f(0.0),
            1 => (f(1.0) - f(-1.0)) * (0.5 / h),
            2 => (f(1.0) - f(0.0) * 2.0 + f(-1.0)) * (1.0 / (h * h)),
            3 => (f(2.0) - f(1.0) * 2.0 + f(-1.0) * 2.0 - f(-2.0)) * (0.5 / (h * h * h)),
            _ => panic!("finite differences are provided up to order 3"),
        }
    }

    /// Jet at `t`. Without exact jets only orders up to 3 are filled in.
    pub fn taylor(&self, t: f64) -> Taylor<V> {
        match &self.jet {
            Some(j) => j(self.wrap(t)),
            None => {
                let h = self.fd_step();
                let d: Vec<V> = (0..4)
                    .map(|k| self.fd_derivative_with_step(t, k, h))
                    .collect();
                Taylor::from_derivatives(&d)
            }
        }
    }

    /// `n` uniformly spaced parameters covering one period (the endpoint is
    /// included for open curves).
    pub fn grid(&self, n: usize) -> Vec<f64> {
        if self.periodic {
            (0..n).map(|i| self.period * i as f64 / n as f64).collect()
        } else {
            (0..n)
                .map(|i| self.period * i as f64 / (n.max(2) - 1) as f64)
                .collect()
        }
    }
}
