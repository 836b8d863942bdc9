//! Seminorm and regularity-constant estimators.
//!
//! Everything here samples: the returned values are lower bounds of the
//! corresponding suprema, and are labeled as such. Theorem checks that need a
//! quantity on the other side of an inequality either use exact structural
//! data (differential oracles, closed-form constants) or apply a documented
//! slack; see the harness.

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::domain::DiscretizedDomain;
use crate::error::{Error, Result};
use crate::majorant::Majorant;
use crate::maps::{distance_to_set, SampledMap, SetDescriptor};
use crate::search::{maximize_over_ball, maximize_on_sphere, sample_in_ball, SearchBudget};
use crate::space::Point;
use crate::weight::WeightField;

/// A sampled lower bound of a seminorm, with the witness configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeminormEstimate {
    pub value: f64,
    /// Sampling can only miss the supremum from below.
    pub lower_bound: bool,
    pub samples: usize,
    pub witness: Option<(Point, Point)>,
}

/// Global Hölder seminorm from explicit pairs:
/// max of d_Y(f(x), f(y)) / phi(d_X(x, y)).
pub fn holder_seminorm(
    f: &SampledMap,
    pairs: &[(Point, Point)],
    phi: &Majorant,
) -> Result<SeminormEstimate> {
    let mut best = 0.0f64;
    let mut witness = None;
    for (x, y) in pairs {
        let d = x.distance(y);
        if d == 0.0 {
            return Err(Error::InvalidInput(
                "pair with identical points in a seminorm sample".into(),
            ));
        }
        let denom = phi.value(d);
        if denom == 0.0 {
            return Err(Error::MajorantDegeneracy { argument: d });
        }
        let fx = f.eval_checked(x)?;
        let fy = f.eval_checked(y)?;
        let q = fx.distance(&fy) / denom;
        if q > best {
            best = q;
            witness = Some((x.clone(), y.clone()));
        }
    }
    Ok(SeminormEstimate {
        value: best,
        lower_bound: true,
        samples: pairs.len(),
        witness,
    })
}

/// Local Hölder seminorm: the same quotient with y restricted to the ball
/// B(x, w(x)) around each center. Random ball samples are topped up with a
/// near-rim batch and a quotient maximization over the ball, since for smooth
/// maps the local quotient peaks at separations comparable to w(x).
pub fn local_holder_seminorm(
    f: &SampledMap,
    weight: &WeightField,
    domain: &DiscretizedDomain,
    centers: &[Point],
    per_center: usize,
    phi: &Majorant,
    rng: &mut ChaCha8Rng,
) -> Result<SeminormEstimate> {
    let mut best = 0.0f64;
    let mut witness = None;
    let mut samples = 0usize;
    for x in centers {
        let w = weight.value(domain, x)?;
        let fx = f.eval_checked(x)?;
        let quotient = |y: &Point| -> f64 {
            let d = x.distance(y);
            if d < 1e-13 {
                return 0.0;
            }
            if !domain.contains(y) {
                return 0.0;
            }
            let denom = phi.value(d);
            if denom <= 0.0 {
                return 0.0;
            }
            f.eval(y).distance(&fx) / denom
        };
        // Random interior of the ball plus points near its rim.
        for k in 0..per_center {
            let y = if k % 3 == 0 {
                let dir = crate::search::random_unit_vector(x.dim(), rng);
                x.add_scaled(&dir, w * (1.0 - 1e-9))
            } else {
                sample_in_ball(x, w * (1.0 - 1e-9), rng)
            };
            samples += 1;
            let q = quotient(&y);
            if q > best {
                best = q;
                witness = Some((x.clone(), y.clone()));
            }
        }
        let (y, q) = maximize_over_ball(
            x,
            w * (1.0 - 1e-9),
            quotient,
            SearchBudget::light(),
            rng,
        );
        if q > best {
            best = q;
            witness = Some((x.clone(), y));
        }
    }
    Ok(SeminormEstimate {
        value: best,
        lower_bound: true,
        samples,
        witness,
    })
}

/// Default radius schedule for dilatation estimates: 10^(-1 - k/2) for
/// k = 0..=6, so the smallest is 1e-4.
pub fn default_radii() -> Vec<f64> {
    (0..=6).map(|k| 10f64.powf(-1.0 - 0.5 * k as f64)).collect()
}

/// Difference-quotient profile around a point: per radius, the maximum of
/// d_Y(f(x), f(y)) / d_X(x, y) over the sphere of that radius. The dilatation
/// estimate is the maximum of the profile over the two smallest radii.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DilatationEstimate {
    pub value: f64,
    /// (radius, quotient sup) pairs, in the order given.
    pub profile: Vec<(f64, f64)>,
    /// No admissible radius produced any sample: the point is isolated in the
    /// sampled sense, and the dilatation is 0 by convention.
    pub isolated: bool,
}

/// Sampled upper dilatation at `x`: difference quotients over spheres of the
/// given radii (those that fit inside the domain).
pub fn upper_dilatation(
    f: &SampledMap,
    domain: &DiscretizedDomain,
    x: &Point,
    radii: &[f64],
    budget: SearchBudget,
    rng: &mut ChaCha8Rng,
) -> Result<DilatationEstimate> {
    let bd = domain.boundary_distance(x)?;
    let admissible: Vec<f64> = radii.iter().copied().filter(|r| *r > 0.0 && *r < bd).collect();
    if admissible.is_empty() {
        return Err(Error::InvalidInput(format!(
            "no radius fits inside the domain around {:?} (boundary distance {bd})",
            x.coords
        )));
    }
    let fx = f.eval_checked(x)?;
    let dim = x.dim();
    let mut profile = Vec::with_capacity(admissible.len());
    for &r in &admissible {
        let (_, q) = maximize_on_sphere(
            dim,
            |u| {
                let y = x.add_scaled(u, r);
                f.eval(&y).distance(&fx) / r
            },
            budget,
            rng,
        );
        if !q.is_finite() {
            return Err(Error::Evaluation(format!(
                "non-finite quotient at radius {r} around {:?}",
                x.coords
            )));
        }
        profile.push((r, q));
    }
    // limsup proxy: the two smallest radii.
    let mut sorted = profile.clone();
    sorted.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let value = sorted
        .iter()
        .take(2)
        .map(|&(_, q)| q)
        .fold(0.0f64, f64::max);
    Ok(DilatationEstimate {
        value,
        profile,
        isolated: false,
    })
}

/// The dilatation for an isolated point is 0 by convention. Grids and balls
/// have no isolated points, so this is only called directly.
pub fn upper_dilatation_isolated() -> DilatationEstimate {
    DilatationEstimate {
        value: 0.0,
        profile: Vec::new(),
        isolated: true,
    }
}

/// d*f at `x`: the exact differential-norm oracle when the map carries one,
/// otherwise the sampled estimate.
pub fn dilatation_at(
    f: &SampledMap,
    domain: &DiscretizedDomain,
    x: &Point,
    radii: &[f64],
    budget: SearchBudget,
    rng: &mut ChaCha8Rng,
) -> Result<f64> {
    if let Some(v) = f.exact_dilatation_at(x) {
        if !v.is_finite() {
            return Err(Error::Evaluation(format!(
                "exact dilatation of {} not finite at {:?}",
                f.label, x.coords
            )));
        }
        return Ok(v);
    }
    Ok(upper_dilatation(f, domain, x, radii, budget, rng)?.value)
}

/// Bloch-seminorm estimate: max over sample points of d*f(x) / w(x).
pub fn bloch_norm(
    f: &SampledMap,
    weight: &WeightField,
    domain: &DiscretizedDomain,
    points: &[Point],
    radii: &[f64],
    budget: SearchBudget,
    rng: &mut ChaCha8Rng,
) -> Result<SeminormEstimate> {
    let mut best = 0.0f64;
    let mut witness = None;
    for x in points {
        let w = weight.value(domain, x)?;
        let d = dilatation_at(f, domain, x, radii, budget, rng)?;
        let q = d / w;
        if q > best {
            best = q;
            witness = Some((x.clone(), x.clone()));
        }
    }
    Ok(SeminormEstimate {
        value: best,
        lower_bound: true,
        samples: points.len(),
        witness,
    })
}

/// A measured regularity constant K, with an infinity flag for degenerate
/// denominators.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegularityEstimate {
    pub k: f64,
    pub infinite: bool,
    pub samples: usize,
    /// Worst (center, radius).
    pub witness: Option<(Point, f64)>,
}

/// Fractions of w(x) at which the regularity ratio is probed.
fn radius_fractions(count: usize) -> Vec<f64> {
    let base = [0.95, 0.7, 0.45, 0.2, 0.1, 0.05];
    base.iter().copied().take(count.max(1).min(base.len())).collect()
}

/// Minimal K over the sample such that
/// d*f(x) <= (K/r) sup_{y in B(x,r)} d_Y(f(x), f(y)), probing radii below
/// w(x); returned as the max over samples of d*f(x) r / oscillation.
pub fn regular_oscillation_constant(
    f: &SampledMap,
    weight: &WeightField,
    domain: &DiscretizedDomain,
    centers: &[Point],
    radii_per_center: usize,
    budget: SearchBudget,
    rng: &mut ChaCha8Rng,
) -> Result<RegularityEstimate> {
    measure_regularity(f, weight, domain, centers, radii_per_center, budget, rng, |f, x, fx, y| {
        Ok(f.eval(y).distance(fx))
    })
}

/// Minimal K with the set-distance oscillation:
/// d*f(x) <= (K/r) sup_y |d(f(x),A)^p - d(f(y),A)^p|^(1/p).
pub fn p_regular_constant(
    f: &SampledMap,
    weight: &WeightField,
    a: &SetDescriptor,
    p: f64,
    domain: &DiscretizedDomain,
    centers: &[Point],
    radii_per_center: usize,
    budget: SearchBudget,
    rng: &mut ChaCha8Rng,
) -> Result<RegularityEstimate> {
    if p < 1.0 {
        return Err(Error::InvalidInput("p-regularity needs p >= 1".into()));
    }
    let set = a.clone();
    measure_regularity(f, weight, domain, centers, radii_per_center, budget, rng, move |f, x, fx, y| {
        let _ = x;
        let gx = distance_to_set(fx, &set)?.powf(p);
        let gy = distance_to_set(&f.eval(y), &set)?.powf(p);
        Ok((gy - gx).abs().powf(1.0 / p))
    })
}

#[allow(clippy::too_many_arguments)]
fn measure_regularity<O>(
    f: &SampledMap,
    weight: &WeightField,
    domain: &DiscretizedDomain,
    centers: &[Point],
    radii_per_center: usize,
    budget: SearchBudget,
    rng: &mut ChaCha8Rng,
    oscillation: O,
) -> Result<RegularityEstimate>
where
    O: Fn(&SampledMap, &Point, &Point, &Point) -> Result<f64>,
{
    let radii = default_radii();
    let mut worst = 0.0f64;
    let mut witness = None;
    let mut infinite = false;
    let mut samples = 0usize;
    for x in centers {
        let wx = weight.value(domain, x)?;
        let bd = domain.boundary_distance(x)?;
        let dstar = dilatation_at(f, domain, x, &radii, budget, rng)?;
        let fx = f.eval_checked(x)?;
        for frac in radius_fractions(radii_per_center) {
            // Radii must stay below the weight and inside the domain.
            let r = (frac * wx).min(0.999 * bd);
            if r <= 0.0 {
                continue;
            }
            samples += 1;
            // Oscillation sup over the closed ball: random probes plus a
            // ball search (the extremum may sit strictly inside, e.g. the
            // minimum modulus at an interior zero).
            let mut osc = 0.0f64;
            for _ in 0..32 {
                let y = sample_in_ball(x, r, rng);
                osc = osc.max(oscillation(f, x, &fx, &y)?);
            }
            let (_, refined) = maximize_over_ball(
                x,
                r,
                |y| oscillation(f, x, &fx, y).unwrap_or(0.0),
                budget,
                rng,
            );
            osc = osc.max(refined);
            if osc == 0.0 {
                if dstar > 0.0 {
                    infinite = true;
                    witness = Some((x.clone(), r));
                }
                continue;
            }
            let ratio = dstar * r / osc;
            if ratio > worst {
                worst = ratio;
                witness = Some((x.clone(), r));
            }
        }
    }
    Ok(RegularityEstimate {
        k: if infinite { f64::INFINITY } else { worst },
        infinite,
        samples,
        witness,
    })
}
