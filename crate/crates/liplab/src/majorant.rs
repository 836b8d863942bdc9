//! Majorants: the moduli governing Lipschitz-type classes.
//!
//! A majorant is continuous on [0, inf) with phi(0) = 0, positive and
//! increasing on (0, inf), and with a decreasing derivative there. The
//! standard family is phi_alpha(t) = t^alpha; it satisfies the definition for
//! alpha in (0, 1], while for alpha > 1 the derivative increases and the
//! diagnostics flag the function as inadmissible.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone)]
pub enum Majorant {
    /// phi_alpha(t) = t^alpha.
    StandardAlpha { alpha: f64 },
    Custom {
        label: String,
        value: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        derivative: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
}

impl fmt::Debug for Majorant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Majorant::StandardAlpha { alpha } => write!(f, "phi_{alpha}"),
            Majorant::Custom { label, .. } => write!(f, "custom({label})"),
        }
    }
}

impl Majorant {
    pub fn standard(alpha: f64) -> Self {
        Majorant::StandardAlpha { alpha }
    }

    pub fn label(&self) -> String {
        format!("{self:?}")
    }

    pub fn value(&self, t: f64) -> f64 {
        match self {
            Majorant::StandardAlpha { alpha } => t.powf(*alpha),
            Majorant::Custom { value, .. } => value(t),
        }
    }

    pub fn derivative(&self, t: f64) -> f64 {
        match self {
            Majorant::StandardAlpha { alpha } => alpha * t.powf(alpha - 1.0),
            Majorant::Custom { derivative, .. } => derivative(t),
        }
    }

    /// For phi_alpha the ratio phi(t) / (t phi'(t)) is 1/alpha at every t, so
    /// the best constant in `phi(t)/t < A phi'(t)` is 1/alpha.
    pub fn alpha(&self) -> Option<f64> {
        match self {
            Majorant::StandardAlpha { alpha } => Some(*alpha),
            Majorant::Custom { .. } => None,
        }
    }
}

/// Diagnostics of [`majorant_validate`]: monotonicity on the grid, the value
/// at zero, and the best grid constant for the ratio condition
/// `phi(t)/t < A phi'(t)`.
#[derive(Debug, Clone)]
pub struct MajorantDiagnostics {
    pub value_at_zero: f64,
    pub value_nondecreasing: bool,
    pub value_positive: bool,
    pub derivative_nonincreasing: bool,
    /// max over the grid of phi(t) / (t phi'(t)).
    pub best_ratio_constant: f64,
    /// All of the above hold, so the function is a majorant in the working
    /// sense.
    pub valid: bool,
}

/// Checks the majorant axioms on a validation grid of positive abscissae.
pub fn majorant_validate(phi: &Majorant, grid: &[f64]) -> Result<MajorantDiagnostics> {
    if grid.len() < 2 {
        return Err(Error::InvalidInput(
            "validation grid needs at least 2 points".into(),
        ));
    }
    for w in grid.windows(2) {
        if !(w[0] > 0.0 && w[1] > w[0]) {
            return Err(Error::InvalidInput(
                "validation grid must be strictly increasing and positive".into(),
            ));
        }
    }
    let value_at_zero = phi.value(0.0);
    if !value_at_zero.is_finite() {
        return Err(Error::Evaluation("phi(0) is not finite".into()));
    }
    // Float powf gives exactly 0 at 0 for alpha > 0; treat |phi(0)| below
    // strict rounding as zero.
    let zero_ok = value_at_zero.abs() <= 1e-300;

    let mut value_nondecreasing = true;
    let mut value_positive = true;
    let mut derivative_nonincreasing = true;
    let mut best_ratio = 0.0f64;
    let mut prev_v = f64::NEG_INFINITY;
    let mut prev_d = f64::INFINITY;
    for &t in grid {
        let v = phi.value(t);
        let d = phi.derivative(t);
        if !v.is_finite() || !d.is_finite() {
            return Err(Error::Evaluation(format!("phi or phi' not finite at t={t}")));
        }
        if v <= 0.0 {
            value_positive = false;
        }
        if v < prev_v {
            value_nondecreasing = false;
        }
        // Strictness in floating point is meaningless; allow a relative slack.
        if d > prev_d * (1.0 + 1e-9) {
            derivative_nonincreasing = false;
        }
        if d > 0.0 {
            best_ratio = best_ratio.max(v / (t * d));
        } else {
            best_ratio = f64::INFINITY;
        }
        prev_v = v;
        prev_d = d;
    }
    Ok(MajorantDiagnostics {
        value_at_zero,
        value_nondecreasing,
        value_positive,
        derivative_nonincreasing,
        best_ratio_constant: best_ratio,
        valid: zero_ok && value_nondecreasing && value_positive && derivative_nonincreasing,
    })
}

/// Default validation grid: geometric from 1e-6 to 10.
pub fn default_validation_grid() -> Vec<f64> {
    let mut g = Vec::with_capacity(141);
    let mut t: f64 = 1e-6;
    while t <= 10.0 {
        g.push(t);
        t *= 1.1220184543019633; // 10^(1/20)
    }
    g
}
