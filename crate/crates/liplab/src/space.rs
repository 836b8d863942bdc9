//! Points of a finite-dimensional coordinate space and the norms we measure
//! distances with.
//!
//! Complex coordinate spaces are handled by flattening: a point of C^n is
//! stored as the 2n real coordinates (re_0, im_0, re_1, im_1, ...). All
//! metric-geometry operations (curve lengths, boundary distances, seminorm
//! quotients) act on the flattened representation, where the Euclidean norm
//! of R^{2n} agrees with the inner-product norm of C^n.

use serde::{Deserialize, Serialize};

/// Norm used to measure distances between [`Point`]s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Norm {
    /// Euclidean / inner-product norm. The default everywhere.
    #[default]
    Euclidean,
    /// Maximum (sup) norm. Exists so the metric axioms are exercised on more
    /// than one norm; the theorem checks all run on the Euclidean one.
    Max,
}

impl Norm {
    pub fn norm(&self, v: &[f64]) -> f64 {
        match self {
            Norm::Euclidean => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
            Norm::Max => v.iter().fold(0.0, |m, x| m.max(x.abs())),
        }
    }

    pub fn distance(&self, a: &Point, b: &Point) -> f64 {
        debug_assert_eq!(a.dim(), b.dim(), "points from different spaces");
        match self {
            Norm::Euclidean => a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt(),
            Norm::Max => a
                .coords
                .iter()
                .zip(&b.coords)
                .fold(0.0, |m, (x, y)| m.max((x - y).abs())),
        }
    }
}

/// A point with a fixed number of real coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point {
    pub coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Point { coords }
    }

    pub fn zeros(dim: usize) -> Self {
        Point {
            coords: vec![0.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn norm(&self) -> f64 {
        Norm::Euclidean.norm(&self.coords)
    }

    /// Euclidean distance; the default metric of every domain in this crate.
    pub fn distance(&self, other: &Point) -> f64 {
        Norm::Euclidean.distance(self, other)
    }

    pub fn add_scaled(&self, dir: &[f64], t: f64) -> Point {
        Point::new(
            self.coords
                .iter()
                .zip(dir)
                .map(|(x, d)| x + t * d)
                .collect(),
        )
    }

    /// Linear interpolation `(1-t)*self + t*other`.
    pub fn lerp(&self, other: &Point, t: f64) -> Point {
        Point::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| (1.0 - t) * a + t * b)
                .collect(),
        )
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|x| x.is_finite())
    }
}

impl From<Vec<f64>> for Point {
    fn from(coords: Vec<f64>) -> Self {
        Point { coords }
    }
}

impl From<&[f64]> for Point {
    fn from(coords: &[f64]) -> Self {
        Point {
            coords: coords.to_vec(),
        }
    }
}

pub fn point2(x: f64, y: f64) -> Point {
    Point::new(vec![x, y])
}
