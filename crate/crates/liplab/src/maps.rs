//! Maps between coordinate spaces as black-box evaluators, plus distance
//! functions to range sets.
//!
//! A [`SampledMap`] wraps an evaluator from domain points to range points
//! (both flattened to real coordinates; the range metric is the Euclidean /
//! inner-product norm). Maps built from analytic data may carry an exact
//! dilatation oracle — the operator norm of the differential — which the
//! estimators prefer over the sampled difference-quotient limit. The
//! agreement of the two routes is itself a checked lemma (the differential
//! bridge), so the oracle is not a shortcut past verification.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::space::Point;

type EvalFn = Arc<dyn Fn(&Point) -> Point + Send + Sync>;
type DilFn = Arc<dyn Fn(&Point) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct SampledMap {
    pub label: String,
    pub range_dim: usize,
    eval: EvalFn,
    exact_dilatation: Option<DilFn>,
}

impl fmt::Debug for SampledMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SampledMap({})", self.label)
    }
}

impl SampledMap {
    pub fn from_fn<F>(label: impl Into<String>, range_dim: usize, eval: F) -> Self
    where
        F: Fn(&Point) -> Point + Send + Sync + 'static,
    {
        SampledMap {
            label: label.into(),
            range_dim,
            eval: Arc::new(eval),
            exact_dilatation: None,
        }
    }

    /// Attaches the exact differential-norm oracle.
    pub fn with_exact_dilatation<F>(mut self, dil: F) -> Self
    where
        F: Fn(&Point) -> f64 + Send + Sync + 'static,
    {
        self.exact_dilatation = Some(Arc::new(dil));
        self
    }

    pub fn has_exact_dilatation(&self) -> bool {
        self.exact_dilatation.is_some()
    }

    pub fn exact_dilatation_at(&self, x: &Point) -> Option<f64> {
        self.exact_dilatation.as_ref().map(|f| f(x))
    }

    pub fn eval(&self, x: &Point) -> Point {
        (self.eval)(x)
    }

    pub fn eval_checked(&self, x: &Point) -> Result<Point> {
        let y = self.eval(x);
        if !y.is_finite() {
            return Err(Error::Evaluation(format!(
                "map {} not finite at {:?}",
                self.label, x.coords
            )));
        }
        Ok(y)
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn("identity", dim, |x: &Point| x.clone())
            .with_exact_dilatation(|_| 1.0)
    }

    pub fn scaled_identity(dim: usize, lambda: f64) -> Self {
        Self::from_fn(format!("{lambda}*identity"), dim, move |x: &Point| {
            Point::new(x.coords.iter().map(|v| lambda * v).collect())
        })
        .with_exact_dilatation(move |_| lambda.abs())
    }

    pub fn constant(value: Point) -> Self {
        let dim = value.dim();
        Self::from_fn("constant", dim, move |_| value.clone()).with_exact_dilatation(|_| 0.0)
    }

    /// Deterministic discontinuous map: the value attached to the nearest
    /// table key. Used to exercise checks that hold for arbitrary maps.
    pub fn tabulated(label: impl Into<String>, table: Vec<(Point, Point)>) -> Result<Self> {
        if table.is_empty() {
            return Err(Error::InvalidInput("empty lookup table".into()));
        }
        let range_dim = table[0].1.dim();
        Ok(Self::from_fn(label, range_dim, move |x: &Point| {
            let mut best = 0;
            let mut best_d = f64::INFINITY;
            for (k, (key, _)) in table.iter().enumerate() {
                let d = key.distance(x);
                if d < best_d {
                    best_d = d;
                    best = k;
                }
            }
            table[best].1.clone()
        }))
    }
}

/// Range subsets with exact distance formulas, plus finite point lists.
#[derive(Debug, Clone, PartialEq)]
pub enum SetDescriptor {
    /// The singleton {0}: distance is the norm.
    Origin,
    /// The sphere of radius r around 0: distance is | |y| - r |.
    Sphere(f64),
    Finite(Vec<Point>),
}

impl SetDescriptor {
    pub fn label(&self) -> String {
        match self {
            SetDescriptor::Origin => "{0}".into(),
            SetDescriptor::Sphere(r) => format!("sphere({r})"),
            SetDescriptor::Finite(pts) => format!("finite({} points)", pts.len()),
        }
    }
}

/// Distance from a range point to a set: exact for descriptor sets, the
/// minimum for finite lists.
pub fn distance_to_set(y: &Point, a: &SetDescriptor) -> Result<f64> {
    match a {
        SetDescriptor::Origin => Ok(y.norm()),
        SetDescriptor::Sphere(r) => Ok((y.norm() - r).abs()),
        SetDescriptor::Finite(points) => {
            if points.is_empty() {
                return Err(Error::InvalidInput("distance to an empty set".into()));
            }
            Ok(points
                .iter()
                .map(|p| p.distance(y))
                .fold(f64::INFINITY, f64::min))
        }
    }
}

/// The composed real-valued map `g(z) = d(f(z), A)^p`.
pub fn modulus_power_function(f: &SampledMap, a: &SetDescriptor, p: f64) -> SampledMap {
    let inner = f.clone();
    let set = a.clone();
    SampledMap::from_fn(
        format!("d({}, {})^{p}", f.label, a.label()),
        1,
        move |x: &Point| {
            let y = inner.eval(x);
            let d = distance_to_set(&y, &set).unwrap_or(f64::NAN);
            Point::new(vec![d.powf(p)])
        },
    )
}
