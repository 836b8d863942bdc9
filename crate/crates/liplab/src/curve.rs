//! Rectifiable curves as polylines.
//!
//! A polyline's length is the sum of its segment lengths, which equals the
//! supremum over partitions exactly, so no approximation enters at the curve
//! level. Smooth curves are represented by fine polylines.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{Norm, Point};

/// Relative tolerance for deciding whether a point lies on a curve.
pub const POINT_ON_CURVE_REL_TOL: f64 = 1e-9;

/// A curve stored as an ordered vertex list with cumulative arc lengths.
///
/// A curve with a single vertex is the *trivial* curve (length zero); it is
/// only produced deliberately, via [`PolylineCurve::trivial`], for degenerate
/// endpoints `x = y`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolylineCurve {
    vertices: Vec<Point>,
    cumulative: Vec<f64>,
    norm: Norm,
}

impl PolylineCurve {
    /// Builds a curve from at least two vertices. Consecutive duplicates are
    /// rejected rather than silently dropped.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        Self::with_norm(vertices, Norm::Euclidean)
    }

    pub fn with_norm(vertices: Vec<Point>, norm: Norm) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "a polyline needs at least 2 vertices, got {}",
                vertices.len()
            )));
        }
        let dim = vertices[0].dim();
        let mut cumulative = Vec::with_capacity(vertices.len());
        cumulative.push(0.0);
        for i in 1..vertices.len() {
            if vertices[i].dim() != dim {
                return Err(Error::InvalidInput(
                    "polyline vertices of mixed dimension".into(),
                ));
            }
            let step = norm.distance(&vertices[i - 1], &vertices[i]);
            if step == 0.0 {
                return Err(Error::InvalidInput(format!(
                    "consecutive duplicate vertex at index {i}"
                )));
            }
            if !step.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "non-finite segment at index {i}"
                )));
            }
            cumulative.push(cumulative[i - 1] + step);
        }
        Ok(PolylineCurve {
            vertices,
            cumulative,
            norm,
        })
    }

    /// The degenerate single-point curve for coincident endpoints.
    pub fn trivial(p: Point) -> Self {
        PolylineCurve {
            vertices: vec![p],
            cumulative: vec![0.0],
            norm: Norm::Euclidean,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn cumulative_lengths(&self) -> &[f64] {
        &self.cumulative
    }

    pub fn norm(&self) -> Norm {
        self.norm
    }

    pub fn start(&self) -> &Point {
        &self.vertices[0]
    }

    pub fn end(&self) -> &Point {
        self.vertices.last().unwrap()
    }

    /// Total length; exact for polylines (equals the sup over partitions).
    pub fn length(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    /// Point at arc-length position `s in [0, length]`, clamped at the ends.
    pub fn point_at(&self, s: f64) -> Point {
        if self.is_trivial() || s <= 0.0 {
            return self.vertices[0].clone();
        }
        let total = self.length();
        if s >= total {
            return self.end().clone();
        }
        // Index of the segment containing s.
        let idx = match self
            .cumulative
            .binary_search_by(|c| c.partial_cmp(&s).unwrap())
        {
            Ok(i) => return self.vertices[i].clone(),
            Err(i) => i - 1,
        };
        let seg_len = self.cumulative[idx + 1] - self.cumulative[idx];
        let t = (s - self.cumulative[idx]) / seg_len;
        self.vertices[idx].lerp(&self.vertices[idx + 1], t)
    }

    /// Arc-length position of `p` if it lies on the curve (first occurrence
    /// along the orientation), within `POINT_ON_CURVE_REL_TOL * length`.
    pub fn locate(&self, p: &Point) -> Option<f64> {
        let tol = POINT_ON_CURVE_REL_TOL * self.length().max(f64::MIN_POSITIVE);
        if self.is_trivial() {
            return (self.vertices[0].distance(p) <= tol).then_some(0.0);
        }
        for i in 0..self.vertices.len() - 1 {
            let a = &self.vertices[i];
            let b = &self.vertices[i + 1];
            let seg_len = self.cumulative[i + 1] - self.cumulative[i];
            // Project p onto segment [a, b].
            let mut t = 0.0;
            let mut dot_pd = 0.0;
            let mut dot_dd = 0.0;
            for k in 0..a.dim() {
                let d = b.coords[k] - a.coords[k];
                dot_pd += (p.coords[k] - a.coords[k]) * d;
                dot_dd += d * d;
            }
            if dot_dd > 0.0 {
                t = (dot_pd / dot_dd).clamp(0.0, 1.0);
            }
            let proj = a.lerp(b, t);
            if proj.distance(p) <= tol {
                return Some(self.cumulative[i] + t * seg_len);
            }
        }
        None
    }

    /// The sub-polyline between arc positions `s0 <= s1`.
    fn slice(&self, s0: f64, s1: f64) -> PolylineCurve {
        debug_assert!(s0 <= s1);
        if s1 - s0 <= 0.0 {
            return PolylineCurve::trivial(self.point_at(s0));
        }
        let mut verts = vec![self.point_at(s0)];
        for (i, &c) in self.cumulative.iter().enumerate() {
            if c > s0 && c < s1 {
                let v = self.vertices[i].clone();
                if v.distance(verts.last().unwrap()) > 0.0 {
                    verts.push(v);
                }
            }
        }
        let endpoint = self.point_at(s1);
        if endpoint.distance(verts.last().unwrap()) > 0.0 {
            verts.push(endpoint);
        }
        if verts.len() < 2 {
            return PolylineCurve::trivial(verts.pop().unwrap());
        }
        PolylineCurve::with_norm(verts, self.norm).expect("sliced vertices are distinct")
    }

    /// Inserts a vertex at arc position `s`; the geometry (and length) is
    /// unchanged up to rounding.
    pub fn with_vertex_at(&self, s: f64) -> PolylineCurve {
        let first = self.slice(0.0, s);
        let second = self.slice(s, self.length());
        let mut verts = first.vertices;
        for v in second.vertices {
            if v.distance(verts.last().unwrap()) > 0.0 {
                verts.push(v);
            }
        }
        if verts.len() < 2 {
            return PolylineCurve::trivial(verts.pop().unwrap());
        }
        PolylineCurve::with_norm(verts, self.norm).expect("vertex insertion keeps vertices distinct")
    }
}

/// Total curve length. Errors on structurally malformed curves (fewer than
/// two vertices, unless the curve is the deliberate trivial one).
pub fn curve_length(curve: &PolylineCurve) -> Result<f64> {
    if curve.vertices.is_empty() {
        return Err(Error::InvalidInput("curve with no vertices".into()));
    }
    Ok(curve.length())
}

/// The portion of `curve` between two on-curve points, oriented from `z` to
/// `w` (reversed relative to the parent if `w` precedes `z`).
pub fn subcurve(curve: &PolylineCurve, z: &Point, w: &Point) -> Result<PolylineCurve> {
    let sz = curve.locate(z).ok_or_else(|| {
        Error::InvalidInput(format!("point {:?} does not lie on the curve", z.coords))
    })?;
    let sw = curve.locate(w).ok_or_else(|| {
        Error::InvalidInput(format!("point {:?} does not lie on the curve", w.coords))
    })?;
    if sz <= sw {
        Ok(curve.slice(sz, sw))
    } else {
        let mut part = curve.slice(sw, sz);
        part.vertices.reverse();
        let total = part.length();
        let mut cumulative: Vec<f64> = part
            .cumulative
            .iter()
            .rev()
            .map(|&c| total - c)
            .collect();
        // Guard against negative rounding dust at the origin.
        if let Some(first) = cumulative.first_mut() {
            *first = 0.0;
        }
        part.cumulative = cumulative;
        Ok(part)
    }
}

/// Options for the adaptive trapezoid rule in [`curve_integral`].
#[derive(Debug, Clone, Copy)]
pub struct IntegrationOptions {
    /// Stop when successive estimates differ by less than this, relatively.
    pub rel_tol: f64,
    /// Maximum number of step halvings before giving up.
    pub max_doublings: u32,
    /// Subdivision count for the first trapezoid pass.
    pub base_intervals: usize,
}

impl Default for IntegrationOptions {
    fn default() -> Self {
        IntegrationOptions {
            rel_tol: 1e-8,
            max_doublings: 20,
            base_intervals: 64,
        }
    }
}

/// Integral of `f` along the curve with respect to arc length: the composite
/// trapezoid rule over the arc-length parameterization, halving the step
/// until two successive estimates agree to `rel_tol`.
pub fn curve_integral<F>(f: F, curve: &PolylineCurve, opts: IntegrationOptions) -> Result<f64>
where
    F: Fn(&Point) -> f64,
{
    if curve.is_trivial() || curve.length() == 0.0 {
        return Ok(0.0);
    }
    let total = curve.length();
    let eval = |s: f64| -> Result<f64> {
        let p = curve.point_at(s);
        let v = f(&p);
        if !v.is_finite() {
            return Err(Error::Evaluation(format!(
                "integrand not finite at arc position {s} (point {:?})",
                p.coords
            )));
        }
        Ok(v)
    };

    let mut n = curve.vertices.len().max(opts.base_intervals).max(2);
    let mut h = total / n as f64;
    let mut sum = (eval(0.0)? + eval(total)?) / 2.0;
    for i in 1..n {
        sum += eval(i as f64 * h)?;
    }
    let mut estimate = sum * h;
    let mut previous = f64::NAN;

    for _ in 0..opts.max_doublings {
        // Add midpoints of the current subdivision.
        for i in 0..n {
            sum += eval((i as f64 + 0.5) * h)?;
        }
        n *= 2;
        h /= 2.0;
        let refined = sum * h;
        let scale = refined.abs().max(estimate.abs()).max(f64::MIN_POSITIVE);
        if (refined - estimate).abs() <= opts.rel_tol * scale {
            return Ok(refined);
        }
        previous = estimate;
        estimate = refined;
    }
    Err(Error::Convergence {
        context: "curve integral".into(),
        last: estimate,
        previous,
    })
}

/// Rules producing connecting curves for a pair of points inside a domain, a
/// finitely sampled stand-in for the full family of rectifiable curves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CurveFamily {
    /// The straight segment, subdivided.
    Segment { subdivisions: usize },
    /// The two-leg arc through a pulled-in midpoint; see
    /// [`crate::uniform::cone_arc`].
    ConeArc { subdivisions_per_leg: usize },
}

impl CurveFamily {
    pub fn segment() -> Self {
        CurveFamily::Segment { subdivisions: 64 }
    }

    pub fn cone_arc() -> Self {
        CurveFamily::ConeArc {
            subdivisions_per_leg: 192,
        }
    }
}

/// Straight segment from `x` to `y` as a polyline with `subdivisions` pieces.
pub fn segment_curve(x: &Point, y: &Point, subdivisions: usize) -> PolylineCurve {
    if x.distance(y) == 0.0 {
        return PolylineCurve::trivial(x.clone());
    }
    let n = subdivisions.max(1);
    let mut verts = Vec::with_capacity(n + 1);
    for i in 0..=n {
        verts.push(x.lerp(y, i as f64 / n as f64));
    }
    dedup_consecutive(&mut verts);
    if verts.len() < 2 {
        return PolylineCurve::trivial(x.clone());
    }
    PolylineCurve::new(verts).expect("segment vertices are distinct")
}

pub(crate) fn dedup_consecutive(verts: &mut Vec<Point>) {
    let mut i = 1;
    while i < verts.len() {
        if verts[i].distance(&verts[i - 1]) == 0.0 {
            verts.remove(i);
        } else {
            i += 1;
        }
    }
}

/// JSON form of a curve: just the vertex array; cumulative lengths are
/// recomputed on load.
#[derive(Serialize, Deserialize)]
struct CurveSchema {
    vertices: Vec<Vec<f64>>,
}

impl Serialize for PolylineCurve {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CurveSchema {
            vertices: self.vertices.iter().map(|p| p.coords.clone()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PolylineCurve {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let schema = CurveSchema::deserialize(deserializer)?;
        let verts: Vec<Point> = schema.vertices.into_iter().map(Point::new).collect();
        if verts.len() == 1 {
            return Ok(PolylineCurve::trivial(verts.into_iter().next().unwrap()));
        }
        PolylineCurve::new(verts).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::point2;
    use proptest::prelude::*;

    fn unit_square_path() -> PolylineCurve {
        PolylineCurve::new(vec![point2(0.0, 0.0), point2(1.0, 0.0), point2(1.0, 1.0)]).unwrap()
    }

    #[test]
    fn single_segment_length() {
        let c = PolylineCurve::new(vec![point2(0.0, 0.0), point2(3.0, 4.0)]).unwrap();
        assert_eq!(curve_length(&c).unwrap(), 5.0);
    }

    #[test]
    fn two_segment_length() {
        assert_eq!(curve_length(&unit_square_path()).unwrap(), 2.0);
    }

    #[test]
    fn polygon_perimeter_matches_formula() {
        // Regular 1024-gon inscribed in the unit circle; perimeter oracle is
        // 2 n sin(pi/n).
        let n = 1024;
        let mut verts: Vec<Point> = (0..=n)
            .map(|i| {
                let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                point2(t.cos(), t.sin())
            })
            .collect();
        // Close the loop exactly.
        verts[n] = verts[0].clone();
        verts.pop();
        verts.push(point2(1.0, 0.0));
        let c = PolylineCurve::new(verts).unwrap();
        let oracle = 2.0 * n as f64 * (std::f64::consts::PI / n as f64).sin();
        assert!((c.length() - oracle).abs() < 1e-12);
        assert!((c.length() - 2.0 * std::f64::consts::PI).abs() < 1e-4);
    }

    #[test]
    fn too_few_vertices_rejected() {
        assert!(PolylineCurve::new(vec![point2(0.0, 0.0)]).is_err());
        assert!(PolylineCurve::new(vec![]).is_err());
    }

    #[test]
    fn duplicate_vertices_rejected() {
        let r = PolylineCurve::new(vec![point2(0.0, 0.0), point2(0.0, 0.0), point2(1.0, 0.0)]);
        assert!(r.is_err());
    }

    #[test]
    fn vertex_insertion_preserves_length() {
        let c = unit_square_path();
        let refined = c.with_vertex_at(0.37).with_vertex_at(1.2);
        assert!((refined.length() - c.length()).abs() < 1e-14);
        assert_eq!(refined.vertices().len(), 5);
    }

    #[test]
    fn subcurve_midpoint_split() {
        let c = PolylineCurve::new(vec![point2(0.0, 0.0), point2(2.0, 0.0)]).unwrap();
        let half = subcurve(&c, &point2(0.0, 0.0), &point2(1.0, 0.0)).unwrap();
        assert!((half.length() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn subcurve_identity_case() {
        let c = unit_square_path();
        let whole = subcurve(&c, c.start(), c.end()).unwrap();
        assert!((whole.length() - c.length()).abs() < 1e-12);
        assert_eq!(whole.vertices().len(), c.vertices().len());
    }

    #[test]
    fn subcurve_reversed_orientation() {
        let c = unit_square_path();
        let rev = subcurve(&c, c.end(), c.start()).unwrap();
        assert_eq!(rev.start(), c.end());
        assert_eq!(rev.end(), c.start());
        assert!((rev.length() - c.length()).abs() < 1e-12);
    }

    #[test]
    fn subcurve_off_curve_point_rejected() {
        let c = unit_square_path();
        assert!(subcurve(&c, &point2(0.5, 0.5), c.end()).is_err());
    }

    proptest! {
        // Additivity: splitting at any on-curve point preserves total length.
        #[test]
        fn subcurve_lengths_add_up(t in 0.0f64..1.0) {
            let c = unit_square_path();
            let z = c.point_at(t * c.length());
            let first = subcurve(&c, c.start(), &z).unwrap();
            let second = subcurve(&c, &z, c.end()).unwrap();
            prop_assert!((first.length() + second.length() - c.length()).abs() < 1e-9);
        }

        // Constant integrand integrates to c * length.
        #[test]
        fn constant_integrand(k in -3.0f64..3.0) {
            let c = unit_square_path();
            let v = curve_integral(|_| k, &c, IntegrationOptions::default()).unwrap();
            prop_assert!((v - k * c.length()).abs() <= 1e-8 * (1.0 + k.abs() * c.length()));
        }
    }

    #[test]
    fn linear_integrand_over_unit_segment() {
        let c = PolylineCurve::new(vec![point2(0.0, 0.0), point2(1.0, 0.0)]).unwrap();
        let v = curve_integral(|p| p.coords[0], &c, IntegrationOptions::default()).unwrap();
        assert!((v - 0.5).abs() < 1e-10);
    }

    #[test]
    fn hyperbolic_weight_over_radius() {
        // Integral of 1/(1-|z|) along the radius 0 -> (r, 0) is log(1/(1-r)).
        let r = 0.5;
        let c = segment_curve(&point2(0.0, 0.0), &point2(r, 0.0), 32);
        let v = curve_integral(|p| 1.0 / (1.0 - p.norm()), &c, IntegrationOptions::default())
            .unwrap();
        assert!((v - (1.0 / (1.0 - r)).ln()).abs() < 1e-6);
    }

    #[test]
    fn non_finite_integrand_reports_evaluation_error() {
        let c = unit_square_path();
        let r = curve_integral(
            |p| if p.coords[0] > 0.9 { f64::NAN } else { 1.0 },
            &c,
            IntegrationOptions::default(),
        );
        assert!(matches!(r, Err(Error::Evaluation(_))));
    }

    #[test]
    fn refinement_budget_exhaustion_reports_last_two_estimates() {
        let c = PolylineCurve::new(vec![point2(0.0, 0.0), point2(1.0, 0.0)]).unwrap();
        let opts = IntegrationOptions {
            rel_tol: 1e-8,
            max_doublings: 3,
            base_intervals: 2,
        };
        let r = curve_integral(|p| (1e4 * p.coords[0]).sin().abs(), &c, opts);
        match r {
            Err(Error::Convergence { last, previous, .. }) => {
                assert!(last.is_finite() && previous.is_finite());
            }
            other => panic!("expected convergence failure, got {other:?}"),
        }
    }

    #[test]
    fn curve_json_round_trip() {
        let c = unit_square_path();
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, r#"{"vertices":[[0.0,0.0],[1.0,0.0],[1.0,1.0]]}"#);
        let back: PolylineCurve = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }
}
