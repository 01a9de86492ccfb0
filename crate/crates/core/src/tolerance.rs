use serde::Serialize;

/// Every numeric threshold used by the kernel, in one place.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Exact algebraic identities (dual arithmetic, round trips).
    pub algebraic: f64,
    /// Geometric comparisons: unit lengths, incidence, closure.
    pub geometric: f64,
    /// Smallest real part accepted as a divisor.
    pub division: f64,
    /// Speed below which a curve (or director) counts as stationary.
    pub degenerate_speed: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            algebraic: 1e-12,
            geometric: 1e-9,
            division: 1e-12,
            degenerate_speed: 1e-9,
        }
    }
}
