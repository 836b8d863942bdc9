//! Weighted distances and the quasi-hyperbolic distance.
//!
//! The infimum over all rectifiable curves is not computable, so every value
//! returned here is labeled an upper-bound estimate: either the best curve of
//! a finite family, or a shortest grid path (which converges to the true
//! weighted distance as the spacing shrinks).

use serde::{Deserialize, Serialize};

use crate::curve::{curve_integral, CurveFamily, IntegrationOptions};
use crate::domain::DiscretizedDomain;
use crate::error::{Error, Result};
use crate::grid::GridDistances;
use crate::space::Point;
use crate::uniform::generate_family_curves;
use crate::weight::WeightField;

/// How to estimate the weighted distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceStrategy {
    /// Minimum weighted length over the curves of a family: an upper bound.
    CurveFamily(CurveFamily),
    /// Shortest path on the interior grid graph.
    GridGraph,
}

/// A weighted-distance value. `upper_bound` is always true: neither strategy
/// can certify the infimum from below.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedDistanceEstimate {
    pub value: f64,
    pub upper_bound: bool,
    pub strategy: &'static str,
}

/// Weighted distance between two interior points.
pub fn weighted_distance(
    domain: &DiscretizedDomain,
    weight: &WeightField,
    x: &Point,
    y: &Point,
    strategy: DistanceStrategy,
) -> Result<WeightedDistanceEstimate> {
    if !domain.contains(x) {
        return Err(Error::InvalidInput(format!(
            "point {:?} is not interior to the domain",
            x.coords
        )));
    }
    if !domain.contains(y) {
        return Err(Error::InvalidInput(format!(
            "point {:?} is not interior to the domain",
            y.coords
        )));
    }
    if x.distance(y) == 0.0 {
        return Ok(WeightedDistanceEstimate {
            value: 0.0,
            upper_bound: true,
            strategy: strategy_name(strategy),
        });
    }
    match strategy {
        DistanceStrategy::CurveFamily(family) => {
            let curves = generate_family_curves(domain, family, x, y)?;
            let mut best = f64::INFINITY;
            for curve in &curves {
                let v = curve_integral(
                    |p| weight.value(domain, p).unwrap_or(f64::NAN),
                    curve,
                    IntegrationOptions::default(),
                )?;
                best = best.min(v);
            }
            Ok(WeightedDistanceEstimate {
                value: best,
                upper_bound: true,
                strategy: "curve_family",
            })
        }
        DistanceStrategy::GridGraph => {
            let solver = GridDistances::new(domain, weight)?;
            let a = solver.grid().snap(x)?;
            let b = solver.grid().snap(y)?;
            let value = solver.shortest_path_cost(a, b)?;
            Ok(WeightedDistanceEstimate {
                value,
                upper_bound: true,
                strategy: "grid_graph",
            })
        }
    }
}

fn strategy_name(s: DistanceStrategy) -> &'static str {
    match s {
        DistanceStrategy::CurveFamily(_) => "curve_family",
        DistanceStrategy::GridGraph => "grid_graph",
    }
}

/// Quasi-hyperbolic distance: the weighted distance with weight 1/d(., bd).
/// Points within one grid cell of the boundary are rejected; the weight blows
/// up there faster than the grid can resolve.
pub fn quasi_hyperbolic_distance(
    domain: &DiscretizedDomain,
    x: &Point,
    y: &Point,
    strategy: DistanceStrategy,
) -> Result<WeightedDistanceEstimate> {
    for p in [x, y] {
        let d = domain.boundary_distance(p)?;
        if d < domain.grid_spacing {
            return Err(Error::NearBoundary {
                point: format!("{:?}", p.coords),
                distance: d,
            });
        }
    }
    weighted_distance(domain, &WeightField::quasi_hyperbolic(), x, y, strategy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::point2;

    #[test]
    fn zero_distance_for_identical_points() {
        let domain = DiscretizedDomain::unit_disk(1.0 / 32.0);
        let x = point2(0.25, 0.0);
        let v = quasi_hyperbolic_distance(&domain, &x, &x, DistanceStrategy::GridGraph).unwrap();
        assert_eq!(v.value, 0.0);
        assert!(v.upper_bound);
    }

    #[test]
    fn disk_quasi_hyperbolic_matches_radial_oracle() {
        // From the center the radial segment is the quasi-hyperbolic geodesic
        // and the closed form is log(1/(1-r)).
        let domain = DiscretizedDomain::unit_disk(1.0 / 128.0);
        let grid = domain.interior_grid().unwrap();
        let r = 0.5;
        let snapped = grid.position(grid.snap(&point2(r, 0.0)).unwrap());
        let oracle = (1.0 / (1.0 - snapped.norm())).ln();
        let v = quasi_hyperbolic_distance(
            &domain,
            &point2(0.0, 0.0),
            &point2(r, 0.0),
            DistanceStrategy::GridGraph,
        )
        .unwrap();
        assert!(
            (v.value - oracle).abs() / oracle < 0.02,
            "grid {} vs oracle {oracle}",
            v.value
        );
    }

    #[test]
    fn grid_symmetry_is_exact() {
        let domain = DiscretizedDomain::unit_disk(1.0 / 32.0);
        let (x, y) = (point2(0.1, -0.3), point2(-0.4, 0.2));
        let a = quasi_hyperbolic_distance(&domain, &x, &y, DistanceStrategy::GridGraph).unwrap();
        let b = quasi_hyperbolic_distance(&domain, &y, &x, DistanceStrategy::GridGraph).unwrap();
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn near_boundary_points_are_rejected() {
        let domain = DiscretizedDomain::unit_disk(1.0 / 32.0);
        let r = quasi_hyperbolic_distance(
            &domain,
            &point2(0.9999, 0.0),
            &point2(0.0, 0.0),
            DistanceStrategy::GridGraph,
        );
        assert!(matches!(r, Err(Error::NearBoundary { .. })));
    }

    #[test]
    fn constant_weight_equals_euclidean_within_anisotropy() {
        let domain = DiscretizedDomain::unit_disk(1.0 / 64.0);
        let grid = domain.interior_grid().unwrap();
        let (x, y) = (point2(-0.4, -0.1), point2(0.3, 0.45));
        let xs = grid.position(grid.snap(&x).unwrap());
        let ys = grid.position(grid.snap(&y).unwrap());
        let est = weighted_distance(
            &domain,
            &WeightField::constant(1.0),
            &x,
            &y,
            DistanceStrategy::GridGraph,
        )
        .unwrap();
        let exact = xs.distance(&ys);
        assert!(est.value >= exact - 1e-12 && est.value <= 1.09 * exact);
    }

    #[test]
    fn curve_family_strategy_beats_nothing_smaller_than_segment() {
        // With weight 1 the straight segment is optimal; the family value is
        // exactly the Euclidean distance.
        let domain = DiscretizedDomain::unit_disk(1.0 / 32.0);
        let (x, y) = (point2(-0.2, 0.0), point2(0.4, 0.1));
        let est = weighted_distance(
            &domain,
            &WeightField::constant(1.0),
            &x,
            &y,
            DistanceStrategy::CurveFamily(CurveFamily::segment()),
        )
        .unwrap();
        assert!((est.value - x.distance(&y)).abs() < 1e-7);
    }

    #[test]
    fn grid_refinement_trends_toward_family_value() {
        // Convex case, weight 1: refining the grid can only shave detour.
        let (x, y) = (point2(-0.35, -0.15), point2(0.4, 0.3));
        let exact = x.distance(&y);
        let mut prev = f64::INFINITY;
        for spacing in [1.0 / 16.0, 1.0 / 32.0, 1.0 / 64.0] {
            let domain = DiscretizedDomain::unit_disk(spacing);
            let est = weighted_distance(
                &domain,
                &WeightField::constant(1.0),
                &x,
                &y,
                DistanceStrategy::GridGraph,
            )
            .unwrap();
            // Snapping moves endpoints by O(spacing); allow that much.
            assert!(est.value <= prev + 2.0 * spacing);
            prev = est.value;
        }
        assert!(prev <= 1.09 * exact && prev >= exact - 2.0 / 64.0);
    }
}
