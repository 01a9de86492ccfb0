//! Cubic spline interpolation of uniformly spaced samples.

use std::sync::Arc;

use super::sampler::CurveSampler;
use super::taylor::{Coeff, Taylor};
use crate::error::{GeomError, Result};

/// Thomas algorithm for unit off-diagonals and the given diagonal.
fn solve_with_diag<C: Coeff>(diag: &[f64], r: &[C]) -> Vec<C> {
    let n = r.len();
    let mut cp = vec![0.0; n];
    let mut x = r.to_vec();
    cp[0] = 1.0 / diag[0];
    x[0] = x[0] * cp[0];
    for i in 1..n {
        let den = diag[i] - cp[i - 1];
        cp[i] = 1.0 / den;
        x[i] = (x[i] - x[i - 1]) * (1.0 / den);
    }
    for i in (0..n - 1).rev() {
        x[i] = x[i] - x[i + 1] * cp[i];
    }
    x
}

/// Cyclic variant (corner entries 1) via Sherman–Morrison.
fn solve_cyclic<C: Coeff>(d: f64, rhs: &[C]) -> Vec<C> {
    let n = rhs.len();
    let gamma = -d;
    // A = T + u vᵀ with u = (γ, 0, …, 1), v = (1, 0, …, 1/γ)
    let mut diag = vec![d; n];
    diag[0] -= gamma;
    diag[n - 1] -= 1.0 / gamma;
    let y = solve_with_diag(&diag, rhs);
    let mut u = vec![0.0f64; n];
    u[0] = gamma;
    u[n - 1] = 1.0;
    let z = solve_with_diag(&diag, &u);
    let vz = z[0] + z[n - 1] / gamma;
    let vy = y[0] + y[n - 1] * (1.0 / gamma);
    let factor = 1.0 / (1.0 + vz);
    y.iter()
        .zip(z.iter())
        .map(|(yi, zi)| *yi - vy * (zi * factor))
        .collect()
}

/// Piecewise cubic with knots `i·h`; `m` holds second derivatives.
struct Cubic<C> {
    h: f64,
    values: Vec<C>,
    m: Vec<C>,
    periodic: bool,
}

impl<C: Coeff> Cubic<C> {
    fn jet(&self, t: f64) -> Taylor<C> {
        let n = self.values.len();
        let segments = if self.periodic { n } else { n - 1 };
        let j = ((t / self.h).floor() as isize).clamp(0, segments as isize - 1) as usize;
        let j1 = (j + 1) % n;
        let (y0, y1, m0, m1) = (self.values[j], self.values[j1], self.m[j], self.m[j1]);
        let h = self.h;
        // p(x) = y0 + b x + m0/2 x² + (m1 − m0)/(6h) x³ on x = t − jh
        let b = (y1 - y0) * (1.0 / h) - (m0 * 2.0 + m1) * (h / 6.0);
        let c2 = m0 * 0.5;
        let c3 = (m1 - m0) * (1.0 / (6.0 * h));
        let x = t - h * j as f64;
        let mut out = Taylor::<C>::zero();
        out.c[0] = y0 + (b + (c2 + c3 * x) * x) * x;
        out.c[1] = b + (c2 * 2.0 + c3 * (3.0 * x)) * x;
        out.c[2] = c2 + c3 * (3.0 * x);
        out.c[3] = c3;
        out
    }
}

/// Periodic cubic spline through `samples[i]` at `t = period·i/n`.
pub fn interpolate_periodic<C>(samples: &[C], period: f64) -> Result<CurveSampler<C>>
where
    C: Coeff + Send + Sync + 'static,
{
    let n = samples.len();
    if n < 4 {
        return Err(GeomError::Config(format!(
            "periodic interpolation needs at least 4 samples, got {n}"
        )));
    }
    let h = period / n as f64;
    let rhs: Vec<C> = (0..n)
        .map(|i| {
            let prev = samples[(i + n - 1) % n];
            let next = samples[(i + 1) % n];
            (next - samples[i] * 2.0 + prev) * (6.0 / (h * h))
        })
        .collect();
    let m = solve_cyclic(4.0, &rhs);
    let cubic = Arc::new(Cubic {
        h,
        values: samples.to_vec(),
        m,
        periodic: true,
    });
    Ok(CurveSampler::from_jet(period, true, move |t: f64| {
        cubic.jet(t)
    }))
}

/// Natural cubic spline through `samples[i]` at `t = length·i/(n−1)`.
pub fn interpolate_open<C>(samples: &[C], length: f64) -> Result<CurveSampler<C>>
where
    C: Coeff + Send + Sync + 'static,
{
    let n = samples.len();
    if n < 3 {
        return Err(GeomError::Config(format!(
            "interpolation needs at least 3 samples, got {n}"
        )));
    }
    let h = length / (n - 1) as f64;
    let rhs: Vec<C> = (1..n - 1)
        .map(|i| (samples[i + 1] - samples[i] * 2.0 + samples[i - 1]) * (6.0 / (h * h)))
        .collect();
    let inner = solve_with_diag(&vec![4.0; n - 2], &rhs);
    let mut m = vec![C::zero(); n];
    m[1..n - 1].copy_from_slice(&inner);
    let cubic = Arc::new(Cubic {
        h,
        values: samples.to_vec(),
        m,
        periodic: false,
    });
    Ok(CurveSampler::from_jet(length, false, move |t: f64| {
        cubic.jet(t)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::TAU;

    #[test]
    fn periodic_spline_of_cosine() {
        let n = 64;
        let samples: Vec<f64> = (0..n).map(|i| (TAU * i as f64 / n as f64).cos()).collect();
        let s = interpolate_periodic(&samples, TAU).unwrap();
        let mut worst: f64 = 0.0;
        for k in 0..997 {
            let t = TAU * (k as f64 + 0.37) / 997.0;
            worst = worst.max((s.evaluate(t) - t.cos()).abs());
        }
        assert!(worst < 1e-6, "{worst}");
        for i in 0..n {
            let t = TAU * i as f64 / n as f64;
            assert_abs_diff_eq!(s.evaluate(t), samples[i], epsilon = 1e-14);
        }
        assert_abs_diff_eq!(s.differentiate(1.0, 1), -(1.0f64.sin()), epsilon = 1e-4);
    }

    #[test]
    fn open_spline_reproduces_lines() {
        let samples: Vec<f64> = (0..10).map(|i| 2.0 * i as f64 + 1.0).collect();
        let s = interpolate_open(&samples, 9.0).unwrap();
        assert_abs_diff_eq!(s.evaluate(4.5), 10.0, epsilon = 1e-13);
        assert_abs_diff_eq!(s.differentiate(4.5, 1), 2.0, epsilon = 1e-13);
    }
}
