//! Uniform-domain machinery: connecting arcs, the two uniformity conditions,
//! and the integral inequalities tying boundary-distance weights to
//! majorants.
//!
//! A domain is c-uniform when every pair x, y is joined by an arc gamma with
//!   (i)  len(gamma) <= c |x - y|, and
//!   (ii) min(len(gamma[x,z]), len(gamma[z,y])) <= c d(z, bd) for z on gamma.
//! The unit ball is 2-uniform; [`cone_arc`] constructs arcs witnessing that
//! by pulling the midpoint toward the center proportionally to the
//! separation.

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::curve::{
    curve_integral, dedup_consecutive, segment_curve, CurveFamily, IntegrationOptions,
    PolylineCurve,
};
use crate::domain::{DiscretizedDomain, DomainShape};
use crate::error::{Error, Result};
use crate::majorant::Majorant;
use crate::space::Point;

/// Outcome of checking the two uniformity conditions, possibly aggregated
/// over many pairs. Slack >= 0 in both margins means the conditions hold.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UniformityCertificate {
    pub c: f64,
    pub pair_count: usize,
    /// min over pairs of `c |x-y| - len(gamma)`.
    pub worst_margin_i: f64,
    /// min over pairs and curve samples of `c d(z, bd) - min(len to ends)`.
    pub worst_margin_ii: f64,
    /// The pair attaining the worst margin.
    pub witness: Option<(Point, Point)>,
    pub pass: bool,
}

impl UniformityCertificate {
    fn merge(&mut self, other: &UniformityCertificate) {
        self.pair_count += other.pair_count;
        let other_worst = other.worst_margin_i.min(other.worst_margin_ii);
        let self_worst = self.worst_margin_i.min(self.worst_margin_ii);
        if other_worst < self_worst {
            self.witness = other.witness.clone();
        }
        self.worst_margin_i = self.worst_margin_i.min(other.worst_margin_i);
        self.worst_margin_ii = self.worst_margin_ii.min(other.worst_margin_ii);
        self.pass = self.worst_margin_i >= 0.0 && self.worst_margin_ii >= 0.0;
    }
}

/// Two-leg arc x -> m -> y with the midpoint pulled toward the center:
/// m = (1 - |x-y|/(2R)) (x+y)/2. Defined on balls (R = 1 here). For x = y
/// the trivial curve is returned.
pub fn cone_arc(
    domain: &DiscretizedDomain,
    x: &Point,
    y: &Point,
    subdivisions_per_leg: usize,
) -> Result<PolylineCurve> {
    let radius = match domain.shape {
        DomainShape::UnitDisk | DomainShape::UnitBall { .. } => 1.0,
        _ => {
            return Err(Error::InvalidInput(
                "cone arcs are defined on balls only".into(),
            ))
        }
    };
    if x.distance(y) == 0.0 {
        return Ok(PolylineCurve::trivial(x.clone()));
    }
    let pull = 1.0 - x.distance(y) / (2.0 * radius);
    let mid = x.lerp(y, 0.5);
    let m = Point::new(mid.coords.iter().map(|v| pull * v).collect());

    let n = subdivisions_per_leg.max(1);
    let mut verts = Vec::with_capacity(2 * n + 1);
    for i in 0..=n {
        verts.push(x.lerp(&m, i as f64 / n as f64));
    }
    for i in 1..=n {
        verts.push(m.lerp(y, i as f64 / n as f64));
    }
    dedup_consecutive(&mut verts);
    if verts.len() < 2 {
        return Ok(PolylineCurve::trivial(x.clone()));
    }
    Ok(PolylineCurve::new(verts).expect("cone arc vertices are distinct"))
}

/// Produces the connecting curves of a family for one pair.
pub fn generate_family_curves(
    domain: &DiscretizedDomain,
    family: CurveFamily,
    x: &Point,
    y: &Point,
) -> Result<Vec<PolylineCurve>> {
    match family {
        CurveFamily::Segment { subdivisions } => Ok(vec![segment_curve(x, y, subdivisions)]),
        CurveFamily::ConeArc {
            subdivisions_per_leg,
        } => Ok(vec![cone_arc(domain, x, y, subdivisions_per_leg)?]),
    }
}

/// Evaluates conditions (i) and (ii) for one arc connecting x and y.
pub fn uniform_arc_check(
    domain: &DiscretizedDomain,
    curve: &PolylineCurve,
    x: &Point,
    y: &Point,
    c: f64,
) -> Result<UniformityCertificate> {
    let sep = x.distance(y);
    if curve.is_trivial() {
        if sep > 0.0 {
            return Err(Error::InvalidInput(
                "trivial curve cannot connect distinct points".into(),
            ));
        }
        return Ok(UniformityCertificate {
            c,
            pair_count: 1,
            worst_margin_i: 0.0,
            worst_margin_ii: 0.0,
            witness: None,
            pass: true,
        });
    }
    let tol = 1e-9 * (1.0 + curve.length());
    if curve.start().distance(x) > tol || curve.end().distance(y) > tol {
        return Err(Error::InvalidInput(
            "curve endpoints do not match the pair".into(),
        ));
    }
    for (k, v) in curve.vertices().iter().enumerate() {
        if !domain.contains(v) {
            return Err(Error::InvalidInput(format!(
                "curve exits the domain at vertex {k}: {:?}",
                v.coords
            )));
        }
    }
    let len = curve.length();
    let margin_i = c * sep - len;
    let mut margin_ii = f64::INFINITY;
    for (k, z) in curve.vertices().iter().enumerate() {
        let to_ends = curve.cumulative_lengths()[k].min(len - curve.cumulative_lengths()[k]);
        let d = domain.boundary_distance(z)?;
        margin_ii = margin_ii.min(c * d - to_ends);
    }
    let pass = margin_i >= 0.0 && margin_ii >= 0.0;
    Ok(UniformityCertificate {
        c,
        pair_count: 1,
        worst_margin_i: margin_i,
        worst_margin_ii: margin_ii,
        witness: Some((x.clone(), y.clone())),
        pass,
    })
}

/// Checks both uniformity conditions over `pairs` random pairs with the
/// family's arcs, and returns the aggregated certificate.
pub fn certify_uniformity(
    domain: &DiscretizedDomain,
    family: CurveFamily,
    c: f64,
    pairs: usize,
    margin: f64,
    rng: &mut ChaCha8Rng,
) -> Result<UniformityCertificate> {
    let mut cert = UniformityCertificate {
        c,
        pair_count: 0,
        worst_margin_i: f64::INFINITY,
        worst_margin_ii: f64::INFINITY,
        witness: None,
        pass: true,
    };
    for _ in 0..pairs {
        let x = domain.sample_interior(rng, margin);
        let y = domain.sample_interior(rng, margin);
        for curve in generate_family_curves(domain, family, &x, &y)? {
            let one = uniform_arc_check(domain, &curve, &x, &y, c)?;
            cert.merge(&one);
        }
    }
    Ok(cert)
}

/// Report of an integral inequality checked over sampled pairs: worst ratio
/// of measured integral to its theoretical bound (must stay <= 1).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IntegralConditionReport {
    /// The constant M of the bound `integral <= M * phi(|x-y|)`.
    pub bound_constant: f64,
    pub pair_count: usize,
    pub worst_ratio: f64,
    pub worst_pair: Option<(Point, Point)>,
    pub pass: bool,
}

/// Options shared by the integral checks.
#[derive(Debug, Clone, Copy)]
pub struct IntegralCheckOptions {
    pub integration: IntegrationOptions,
    /// Curves dipping below this boundary distance are rejected as divergent.
    pub boundary_shell: f64,
}

impl Default for IntegralCheckOptions {
    fn default() -> Self {
        IntegralCheckOptions {
            integration: IntegrationOptions::default(),
            boundary_shell: 1e-9,
        }
    }
}

/// Checks `int_gamma d(z,bd)^(alpha-1) <= (2c/alpha) |x-y|^alpha` over
/// sampled pairs joined by the family's arcs.
pub fn uniform_integral_check(
    domain: &DiscretizedDomain,
    family: CurveFamily,
    alpha: f64,
    c: f64,
    pair_samples: usize,
    margin: f64,
    opts: IntegralCheckOptions,
    rng: &mut ChaCha8Rng,
) -> Result<IntegralConditionReport> {
    if !(0.0 < alpha && alpha < 1.0) {
        return Err(Error::InvalidInput("alpha must lie in (0, 1)".into()));
    }
    let phi = Majorant::standard(alpha);
    let m = 2.0 * c / alpha;
    let weight = move |d: f64| d.powf(alpha - 1.0);
    integral_condition_over_pairs(domain, family, &phi, m, weight, pair_samples, margin, opts, rng)
}

/// Checks the raw weighted-length condition `int_gamma w <= M phi(|x-y|)`
/// over sampled pairs, for an arbitrary weight field. This is the hypothesis
/// of the weighted-to-Hölder proposition.
#[allow(clippy::too_many_arguments)]
pub fn weight_integral_condition_check(
    domain: &DiscretizedDomain,
    weight: &crate::weight::WeightField,
    phi: &Majorant,
    family: CurveFamily,
    m: f64,
    pair_samples: usize,
    margin: f64,
    opts: IntegralCheckOptions,
    rng: &mut ChaCha8Rng,
) -> Result<IntegralConditionReport> {
    if m <= 0.0 {
        return Err(Error::InvalidInput("bound constant must be positive".into()));
    }
    let mut worst_ratio = 0.0f64;
    let mut worst_pair = None;
    for _ in 0..pair_samples {
        let x = domain.sample_interior(rng, margin);
        let y = domain.sample_interior(rng, margin);
        let sep = x.distance(&y);
        if sep == 0.0 {
            continue;
        }
        for curve in generate_family_curves(domain, family, &x, &y)? {
            let mut min_bd = f64::INFINITY;
            for v in curve.vertices() {
                min_bd = min_bd.min(domain.boundary_distance(v)?);
            }
            if min_bd < opts.boundary_shell {
                return Err(Error::BoundaryShell {
                    min_distance: min_bd,
                    shell: opts.boundary_shell,
                });
            }
            let integral = curve_integral(
                |p| weight.value(domain, p).unwrap_or(f64::NAN),
                &curve,
                opts.integration,
            )?;
            let ratio = integral / (m * phi.value(sep));
            if ratio > worst_ratio {
                worst_ratio = ratio;
                worst_pair = Some((x.clone(), y.clone()));
            }
        }
    }
    Ok(IntegralConditionReport {
        bound_constant: m,
        pair_count: pair_samples,
        worst_ratio,
        worst_pair,
        pass: worst_ratio <= 1.0 + INTEGRAL_PASS_TOLERANCE,
    })
}

/// Floating-point allowance on the `ratio <= 1` verdict: equality cases
/// (e.g. weight 1 with the identity majorant on segments) land exactly on 1
/// up to integration rounding.
pub const INTEGRAL_PASS_TOLERANCE: f64 = 1e-6;

/// Checks the majorant-weight condition
/// `int_gamma phi(d(z,bd))/d(z,bd) <= M phi(|x-y|)` over sampled pairs.
pub fn lappalainen_condition_check(
    domain: &DiscretizedDomain,
    phi: &Majorant,
    family: CurveFamily,
    m: f64,
    pair_samples: usize,
    margin: f64,
    opts: IntegralCheckOptions,
    rng: &mut ChaCha8Rng,
) -> Result<IntegralConditionReport> {
    let phi_for_weight = phi.clone();
    let weight = move |d: f64| phi_for_weight.value(d) / d;
    integral_condition_over_pairs(domain, family, phi, m, weight, pair_samples, margin, opts, rng)
}

#[allow(clippy::too_many_arguments)]
fn integral_condition_over_pairs<W>(
    domain: &DiscretizedDomain,
    family: CurveFamily,
    phi: &Majorant,
    m: f64,
    weight_of_distance: W,
    pair_samples: usize,
    margin: f64,
    opts: IntegralCheckOptions,
    rng: &mut ChaCha8Rng,
) -> Result<IntegralConditionReport>
where
    W: Fn(f64) -> f64,
{
    if m <= 0.0 {
        return Err(Error::InvalidInput("bound constant must be positive".into()));
    }
    let mut worst_ratio = 0.0f64;
    let mut worst_pair = None;
    for _ in 0..pair_samples {
        let x = domain.sample_interior(rng, margin);
        let y = domain.sample_interior(rng, margin);
        let sep = x.distance(&y);
        if sep == 0.0 {
            // Degenerate pair: integral 0 <= 0.
            continue;
        }
        for curve in generate_family_curves(domain, family, &x, &y)? {
            let mut min_bd = f64::INFINITY;
            for v in curve.vertices() {
                min_bd = min_bd.min(domain.boundary_distance(v)?);
            }
            if min_bd < opts.boundary_shell {
                return Err(Error::BoundaryShell {
                    min_distance: min_bd,
                    shell: opts.boundary_shell,
                });
            }
            let integral = curve_integral(
                |p| {
                    domain
                        .boundary_distance(p)
                        .map(&weight_of_distance)
                        .unwrap_or(f64::NAN)
                },
                &curve,
                opts.integration,
            )?;
            let bound = m * phi.value(sep);
            let ratio = integral / bound;
            if ratio > worst_ratio {
                worst_ratio = ratio;
                worst_pair = Some((x.clone(), y.clone()));
            }
        }
    }
    Ok(IntegralConditionReport {
        bound_constant: m,
        pair_count: pair_samples,
        worst_ratio,
        worst_pair,
        pass: worst_ratio <= 1.0 + INTEGRAL_PASS_TOLERANCE,
    })
}
