//! Weight functions: everywhere-positive fields on a domain that generate
//! weighted distances and bound the radii of local Lipschitz classes.

use std::fmt;
use std::sync::Arc;

use crate::domain::DiscretizedDomain;
use crate::error::{Error, Result};
use crate::majorant::Majorant;
use crate::space::Point;

/// A weight on a domain. The built-in kinds are all of the form
/// `scale * d(x, bd)^exponent`, which covers the boundary distance, its half,
/// its powers, and constants; anything else goes through `Custom`.
#[derive(Clone)]
pub enum WeightField {
    Power { scale: f64, exponent: f64 },
    Custom {
        label: String,
        value: Arc<dyn Fn(&DiscretizedDomain, &Point) -> f64 + Send + Sync>,
    },
}

impl fmt::Debug for WeightField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightField::Power { scale, exponent } => {
                if *exponent == 0.0 {
                    write!(f, "constant({scale})")
                } else if *scale == 1.0 && *exponent == 1.0 {
                    write!(f, "boundary_distance")
                } else if *scale == 0.5 && *exponent == 1.0 {
                    write!(f, "half_boundary_distance")
                } else if *scale == 1.0 {
                    write!(f, "boundary_distance^{exponent}")
                } else {
                    write!(f, "{scale}*boundary_distance^{exponent}")
                }
            }
            WeightField::Custom { label, .. } => write!(f, "custom({label})"),
        }
    }
}

impl WeightField {
    /// w(x) = d(x, bd).
    pub fn boundary_distance() -> Self {
        WeightField::Power {
            scale: 1.0,
            exponent: 1.0,
        }
    }

    /// w(x) = d(x, bd) / 2, the weight of the local Lipschitz class on a
    /// domain.
    pub fn half_boundary_distance() -> Self {
        WeightField::Power {
            scale: 0.5,
            exponent: 1.0,
        }
    }

    /// w(x) = d(x, bd)^exponent.
    pub fn boundary_power(exponent: f64) -> Self {
        WeightField::Power {
            scale: 1.0,
            exponent,
        }
    }

    /// w(x) = 1 / d(x, bd), the quasi-hyperbolic weight.
    pub fn quasi_hyperbolic() -> Self {
        Self::boundary_power(-1.0)
    }

    pub fn constant(c: f64) -> Self {
        WeightField::Power {
            scale: c,
            exponent: 0.0,
        }
    }

    pub fn label(&self) -> String {
        format!("{self:?}")
    }

    pub fn value(&self, domain: &DiscretizedDomain, x: &Point) -> Result<f64> {
        let v = match self {
            WeightField::Power { scale, exponent } => {
                if *exponent == 0.0 {
                    *scale
                } else {
                    let d = domain.boundary_distance(x)?;
                    scale * d.powf(*exponent)
                }
            }
            WeightField::Custom { value, .. } => value(domain, x),
        };
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::Evaluation(format!(
                "weight {self:?} not positive/finite at {:?} (value {v})",
                x.coords
            )));
        }
        Ok(v)
    }

    /// Pointwise power `w^e`. Closed under the power family.
    pub fn pow(&self, e: f64) -> WeightField {
        match self {
            WeightField::Power { scale, exponent } => WeightField::Power {
                scale: scale.powf(e),
                exponent: exponent * e,
            },
            WeightField::Custom { label, value } => {
                let value = value.clone();
                WeightField::Custom {
                    label: format!("({label})^{e}"),
                    value: Arc::new(move |d, x| value(d, x).powf(e)),
                }
            }
        }
    }
}

/// The composed weight `phi' o w`, the Bloch weight appearing in the converse
/// Hardy-Littlewood direction. For phi_alpha and a power weight this stays in
/// the closed power family: phi_alpha'(w) = alpha * w^(alpha-1).
pub fn majorant_derivative_of_weight(phi: &Majorant, w: &WeightField) -> WeightField {
    match (phi, w) {
        (Majorant::StandardAlpha { alpha }, WeightField::Power { scale, exponent }) => {
            WeightField::Power {
                scale: alpha * scale.powf(alpha - 1.0),
                exponent: exponent * (alpha - 1.0),
            }
        }
        _ => {
            let phi = phi.clone();
            let w = w.clone();
            WeightField::Custom {
                label: format!("{}'({})", phi.label(), w.label()),
                value: Arc::new(move |d, x| {
                    let wv = match w.value(d, x) {
                        Ok(v) => v,
                        Err(_) => return f64::NAN,
                    };
                    phi.derivative(wv)
                }),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::point2;

    #[test]
    fn power_weights_evaluate() {
        let d = DiscretizedDomain::unit_disk(0.01);
        let x = point2(0.5, 0.0);
        let w = WeightField::quasi_hyperbolic();
        assert!((w.value(&d, &x).unwrap() - 2.0).abs() < 1e-12);
        let h = WeightField::half_boundary_distance();
        assert!((h.value(&d, &x).unwrap() - 0.25).abs() < 1e-12);
        assert_eq!(WeightField::constant(3.0).value(&d, &x).unwrap(), 3.0);
    }

    #[test]
    fn pow_composes_in_the_family() {
        let d = DiscretizedDomain::unit_disk(0.01);
        let x = point2(0.5, 0.0);
        let w = WeightField::half_boundary_distance().pow(-0.5);
        // (0.25)^(-1/2) = 2.
        assert!((w.value(&d, &x).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn bloch_weight_of_standard_majorant() {
        let d = DiscretizedDomain::unit_disk(0.01);
        let x = point2(0.5, 0.0);
        let w = WeightField::boundary_distance();
        let phi = Majorant::standard(0.5);
        let bw = majorant_derivative_of_weight(&phi, &w);
        // phi'(d) = 0.5 * d^(-1/2) = 0.5 / sqrt(0.5).
        let expect = 0.5 / 0.5f64.sqrt();
        assert!((bw.value(&d, &x).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn nonpositive_weight_is_an_error() {
        let d = DiscretizedDomain::unit_disk(0.01);
        let w = WeightField::constant(0.0);
        assert!(w.value(&d, &point2(0.0, 0.0)).is_err());
    }
}
