//! Checks tying analytic structure to the metric estimators: the
//! Schwarz-Pick differential bound at the origin, the agreement of exact
//! differential norms with sampled dilatations, and the regularity constants
//! of bounded analytic maps.

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::domain::DiscretizedDomain;
use crate::error::{Error, Result};
use crate::estimators::{p_regular_constant, upper_dilatation, RegularityEstimate};
use crate::linalg::{cnorm, operator_norm, PowerIterationOptions};
use crate::maps::SetDescriptor;
use crate::poly::PolynomialMap;
use crate::search::SearchBudget;
use crate::space::Point;
use crate::weight::WeightField;

/// Slack of the Schwarz-Pick inequality for one normalized map:
/// bound - |df(0)| (nonnegative when the lemma holds).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SchwarzPickReport {
    pub differential_norm: f64,
    pub value_at_zero_norm: f64,
    pub bound: f64,
    pub slack: f64,
}

/// Checks `|df(0)| <= 1 - |f(0)|^2` (scalar range) or `<= sqrt(1 - |f(0)|^2)`
/// (higher range) for an analytic map bounded by 1 on the ball. The caller
/// must have normalized the map by its measured ball sup times (1 + 1e-9);
/// the precondition is re-verified here.
pub fn schwarz_pick_check(
    f: &PolynomialMap,
    budget: SearchBudget,
    rng: &mut ChaCha8Rng,
) -> Result<SchwarzPickReport> {
    let sup = f.sup_norm_on_ball(budget, rng);
    if sup > 1.0 {
        return Err(Error::Precondition(format!(
            "map is not bounded by 1 on the ball (measured sup {sup}); normalize first"
        )));
    }
    let f0 = f.constant_term();
    let v = cnorm(&f0);
    if v >= 1.0 {
        return Err(Error::Precondition(format!(
            "|f(0)| = {v} >= 1 for a map bounded by 1"
        )));
    }
    let j0 = f.jacobian(&vec![crate::linalg::C64::new(0.0, 0.0); f.source_dim()]);
    let differential_norm = operator_norm(&j0, PowerIterationOptions::default())?;
    let bound = if f.target_dim() == 1 {
        1.0 - v * v
    } else {
        (1.0 - v * v).sqrt()
    };
    Ok(SchwarzPickReport {
        differential_norm,
        value_at_zero_norm: v,
        bound,
        slack: bound - differential_norm,
    })
}

/// Agreement of the exact differential norm with the sampled dilatation at a
/// point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BridgeReport {
    pub exact: f64,
    pub sampled: f64,
    pub gap: f64,
}

/// Compares `|df(z)|` (exact Jacobian + operator norm) against the sampled
/// difference-quotient dilatation with the given radii.
pub fn differential_norm_dilatation_bridge(
    f: &PolynomialMap,
    domain: &DiscretizedDomain,
    z: &Point,
    radii: &[f64],
    budget: SearchBudget,
    rng: &mut ChaCha8Rng,
) -> Result<BridgeReport> {
    let exact = {
        let j = f.jacobian(&crate::linalg::point_to_complex(z));
        operator_norm(&j, PowerIterationOptions::default())?
    };
    // Strip the oracle: the whole point is to sample the quotient.
    let sampled_map = {
        let me = f.clone();
        crate::maps::SampledMap::from_fn("bridge-subject", 2 * f.target_dim(), move |p: &Point| {
            crate::linalg::complex_to_point(&me.eval(&crate::linalg::point_to_complex(p)))
        })
    };
    let est = upper_dilatation(&sampled_map, domain, z, radii, budget, rng)?;
    Ok(BridgeReport {
        exact,
        sampled: est.value,
        gap: (exact - est.value).abs(),
    })
}

/// Measured regularity constant of a bounded analytic map: p = 1 for scalar
/// range, p = 2 otherwise, with A = {0} and the boundary distance as weight.
/// The constant is 1 for such maps, so the measured value must stay within
/// numerical slack of it.
pub fn bounded_regularity_check(
    f: &PolynomialMap,
    domain: &DiscretizedDomain,
    centers: &[Point],
    radii_per_center: usize,
    budget: SearchBudget,
    rng: &mut ChaCha8Rng,
) -> Result<(RegularityEstimate, f64)> {
    let p = if f.target_dim() == 1 { 1.0 } else { 2.0 };
    let sampled = f.as_sampled_map("regularity-subject");
    let est = p_regular_constant(
        &sampled,
        &WeightField::boundary_distance(),
        &SetDescriptor::Origin,
        p,
        domain,
        centers,
        radii_per_center,
        budget,
        rng,
    )?;
    Ok((est, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::DomainShape;
    use crate::estimators::default_radii;
    use crate::linalg::C64;
    use crate::search::rng_for;
    use crate::space::point2;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn disk() -> DiscretizedDomain {
        DiscretizedDomain::with_margin(DomainShape::UnitDisk, 1.0 / 64.0, 1e-6).unwrap()
    }

    #[test]
    fn identity_is_the_equality_case() {
        let f = PolynomialMap::scalar_from_coeffs(&[c(0.0, 0.0), c(1.0, 0.0)]);
        let mut rng = rng_for(1, "sp-id");
        let r = schwarz_pick_check(&f, SearchBudget::default(), &mut rng).unwrap();
        assert!((r.differential_norm - 1.0).abs() < 1e-10);
        assert!(r.slack.abs() < 1e-9);
    }

    #[test]
    fn constant_map_has_trivial_slack() {
        let f = PolynomialMap::scalar_from_coeffs(&[c(0.4, 0.3)]);
        let mut rng = rng_for(2, "sp-const");
        let r = schwarz_pick_check(&f, SearchBudget::default(), &mut rng).unwrap();
        assert_eq!(r.differential_norm, 0.0);
        assert!(r.slack > 0.0);
    }

    #[test]
    fn unnormalized_map_is_rejected() {
        let f = PolynomialMap::scalar_from_coeffs(&[c(0.0, 0.0), c(3.0, 0.0)]);
        let mut rng = rng_for(3, "sp-reject");
        assert!(matches!(
            schwarz_pick_check(&f, SearchBudget::default(), &mut rng),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn random_normalized_quadratics_have_nonnegative_slack() {
        let mut rng = rng_for(4, "sp-battery");
        for _ in 0..25 {
            let raw = PolynomialMap::random(2, 2, 2, &mut rng);
            let (f, _) = raw
                .normalized_to_unit_ball(SearchBudget::default(), &mut rng)
                .unwrap();
            let r = schwarz_pick_check(&f, SearchBudget::default(), &mut rng).unwrap();
            assert!(r.slack >= -1e-9, "slack {}", r.slack);
        }
    }

    #[test]
    fn bridge_for_identity_and_square() {
        let d = disk();
        let mut rng = rng_for(5, "bridge");
        let id = PolynomialMap::scalar_from_coeffs(&[c(0.0, 0.0), c(1.0, 0.0)]);
        let r = differential_norm_dilatation_bridge(
            &id,
            &d,
            &point2(0.25, 0.1),
            &default_radii(),
            SearchBudget::light(),
            &mut rng,
        )
        .unwrap();
        assert!(r.gap < 1e-9, "identity gap {}", r.gap);

        let sq = PolynomialMap::scalar_from_coeffs(&[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let r0 = differential_norm_dilatation_bridge(
            &sq,
            &d,
            &point2(0.0, 0.0),
            &default_radii(),
            SearchBudget::light(),
            &mut rng,
        )
        .unwrap();
        assert!(r0.exact < 1e-15);
        assert!(r0.sampled < 1e-3);
    }

    #[test]
    fn bridge_for_random_cubic_between_spaces() {
        let ball = DiscretizedDomain::with_margin(
            DomainShape::UnitBall { dim: 4 },
            1.0 / 16.0,
            1e-6,
        )
        .unwrap();
        let mut rng = rng_for(6, "bridge-cubic");
        let raw = PolynomialMap::random(2, 3, 3, &mut rng);
        let (f, _) = raw
            .normalized_to_unit_ball(SearchBudget::default(), &mut rng)
            .unwrap();
        for _ in 0..5 {
            let z = ball.sample_interior(&mut rng, 0.2);
            let z = Point::new(z.coords.iter().map(|v| v * 0.5).collect());
            let r = differential_norm_dilatation_bridge(
                &f,
                &ball,
                &z,
                &default_radii(),
                SearchBudget::default(),
                &mut rng,
            )
            .unwrap();
            assert!(r.gap <= 1e-3, "gap {}", r.gap);
        }
    }

    #[test]
    fn constant_map_regularity_is_zero() {
        let d = disk();
        let mut rng = rng_for(7, "reg-const");
        let f = PolynomialMap::scalar_from_coeffs(&[c(0.3, 0.1)]);
        let centers = vec![point2(0.0, 0.0), point2(0.4, -0.2)];
        let (est, p) =
            bounded_regularity_check(&f, &d, &centers, 3, SearchBudget::light(), &mut rng)
                .unwrap();
        assert_eq!(p, 1.0);
        assert_eq!(est.k, 0.0);
    }

    #[test]
    fn normalized_quartic_scalar_regularity_is_at_most_one() {
        let d = disk();
        let mut rng = rng_for(8, "reg-quartic");
        let raw = PolynomialMap::random(1, 1, 4, &mut rng);
        let (f, _) = raw
            .normalized_to_unit_ball(SearchBudget::default(), &mut rng)
            .unwrap();
        let centers: Vec<Point> = (0..12).map(|_| d.sample_interior(&mut rng, 0.05)).collect();
        let (est, p) =
            bounded_regularity_check(&f, &d, &centers, 4, SearchBudget::default(), &mut rng)
                .unwrap();
        assert_eq!(p, 1.0);
        assert!(est.k <= 1.0 + 1e-3, "K = {}", est.k);
    }

    #[test]
    fn normalized_quadratic_vector_regularity_is_at_most_one() {
        let d = disk();
        let mut rng = rng_for(9, "reg-vector");
        let raw = PolynomialMap::random(1, 2, 2, &mut rng);
        let (f, _) = raw
            .normalized_to_unit_ball(SearchBudget::default(), &mut rng)
            .unwrap();
        let centers: Vec<Point> = (0..12).map(|_| d.sample_interior(&mut rng, 0.05)).collect();
        let (est, p) =
            bounded_regularity_check(&f, &d, &centers, 4, SearchBudget::default(), &mut rng)
                .unwrap();
        assert_eq!(p, 2.0);
        assert!(est.k <= 1.0 + 1e-3, "K = {}", est.k);
    }
}
