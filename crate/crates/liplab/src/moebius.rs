//! Möbius transforms of the unit ball of a complex inner-product space.
//!
//! For a center a with |a| < 1,
//!
//! ```text
//! phi_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z, a>),    s_a = sqrt(1 - |a|^2),
//! ```
//!
//! where P_a projects onto the line through a (P_0 = 0) and Q_a = Id - P_a.
//! phi_a is an involutive self-map of the ball with phi_a(0) = a, and its
//! differential at the origin is the explicit operator -s_a^2 P_a - s_a Q_a,
//! whose norm is 1 - |a|^2 in dimension 1 and sqrt(1 - |a|^2) otherwise.

use crate::error::{Error, Result};
use crate::linalg::{cnorm, inner, operator_norm, LinearOperator, PowerIterationOptions, C64};

#[derive(Debug, Clone)]
pub struct MoebiusTransform {
    center: Vec<C64>,
    s: f64,
}

impl MoebiusTransform {
    pub fn new(center: Vec<C64>) -> Result<Self> {
        if center.is_empty() {
            return Err(Error::InvalidInput("Möbius center of dimension 0".into()));
        }
        let norm = cnorm(&center);
        if !(norm < 1.0) {
            return Err(Error::InvalidInput(format!(
                "Möbius center must lie in the open ball, |a| = {norm}"
            )));
        }
        let s = (1.0 - norm * norm).sqrt();
        Ok(MoebiusTransform { center, s })
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn center(&self) -> &[C64] {
        &self.center
    }

    /// s_a = sqrt(1 - |a|^2), in (0, 1].
    pub fn s(&self) -> f64 {
        self.s
    }

    /// P_a z: the projection onto span{a}; zero when a = 0.
    pub fn project(&self, z: &[C64]) -> Vec<C64> {
        let aa = inner(&self.center, &self.center);
        if aa.norm() == 0.0 {
            return vec![C64::new(0.0, 0.0); self.dim()];
        }
        let coeff = inner(z, &self.center) / aa;
        self.center.iter().map(|ai| coeff * ai).collect()
    }

    /// Q_a z = z - P_a z.
    pub fn project_complement(&self, z: &[C64]) -> Vec<C64> {
        let p = self.project(z);
        z.iter().zip(&p).map(|(zi, pi)| zi - pi).collect()
    }

    /// phi_a(z). Requires |z| < 1; maps back into the open ball.
    pub fn apply(&self, z: &[C64]) -> Result<Vec<C64>> {
        if z.len() != self.dim() {
            return Err(Error::InvalidInput("dimension mismatch".into()));
        }
        let zn = cnorm(z);
        if !(zn < 1.0) {
            return Err(Error::InvalidInput(format!(
                "Möbius transforms act on the open ball, |z| = {zn}"
            )));
        }
        let denom = C64::new(1.0, 0.0) - inner(z, &self.center);
        let p = self.project(z);
        let q = self.project_complement(z);
        Ok((0..self.dim())
            .map(|i| (self.center[i] - p[i] - self.s * q[i]) / denom)
            .collect())
    }

    /// The differential at the origin, -s_a^2 P_a - s_a Q_a, as an explicit
    /// matrix.
    pub fn differential_at_zero(&self) -> LinearOperator {
        let m = self.dim();
        let mut op = LinearOperator::zeros(m, m);
        let s = C64::new(self.s, 0.0);
        let s2 = C64::new(self.s * self.s, 0.0);
        for j in 0..m {
            let mut e = vec![C64::new(0.0, 0.0); m];
            e[j] = C64::new(1.0, 0.0);
            let p = self.project(&e);
            for i in 0..m {
                let q_i = e[i] - p[i];
                op.set(i, j, -(s2 * p[i]) - s * q_i);
            }
        }
        op
    }

    /// Inverse of the differential at zero: -s^-2 P_a - s^-1 Q_a (the
    /// operator is a scaled projector sum, so the inverse is closed-form).
    pub fn differential_at_zero_inverse(&self) -> LinearOperator {
        let m = self.dim();
        let mut op = LinearOperator::zeros(m, m);
        let si = C64::new(1.0 / self.s, 0.0);
        let s2i = C64::new(1.0 / (self.s * self.s), 0.0);
        for j in 0..m {
            let mut e = vec![C64::new(0.0, 0.0); m];
            e[j] = C64::new(1.0, 0.0);
            let p = self.project(&e);
            for i in 0..m {
                let q_i = e[i] - p[i];
                op.set(i, j, -(s2i * p[i]) - si * q_i);
            }
        }
        op
    }

    /// Closed form for |d phi_a(0)|: 1 - |a|^2 when dim = 1, else
    /// sqrt(1 - |a|^2).
    pub fn differential_norm_closed_form(&self) -> f64 {
        let a2 = 1.0 - self.s * self.s;
        if self.dim() == 1 {
            1.0 - a2
        } else {
            (1.0 - a2).sqrt()
        }
    }
}

/// Closed form usable without building the transform.
pub fn differential_norm_split(dim: usize, center_norm: f64) -> f64 {
    if dim == 1 {
        1.0 - center_norm * center_norm
    } else {
        (1.0 - center_norm * center_norm).sqrt()
    }
}
