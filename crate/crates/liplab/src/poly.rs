//! Multivariate complex polynomial maps with exact differentials, and the
//! closed-form analytic test subjects.
//!
//! Coefficients live in per-component tables indexed by multi-degree, so the
//! Jacobian comes from coefficient differentiation, never from numerical
//! differencing. Random maps are normalized by their measured supremum on the
//! closed unit ball (attained on the sphere, by the maximum principle) so
//! boundedness hypotheses hold by construction.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{cnorm, complex_to_point, operator_norm, point_to_complex, LinearOperator, PowerIterationOptions, C64};
use crate::maps::SampledMap;
use crate::search::{maximize_on_sphere, SearchBudget};
use crate::space::Point;

pub type MultiIndex = Vec<u32>;

/// Caps for randomly generated maps; dense grids stay desk-scale below them.
pub const MAX_RANDOM_DEGREE: u32 = 6;
pub const MAX_RANDOM_DIM: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialMap {
    source_dim: usize,
    target_dim: usize,
    /// One coefficient table per component.
    components: Vec<BTreeMap<MultiIndex, C64>>,
}

impl PolynomialMap {
    pub fn new(
        source_dim: usize,
        target_dim: usize,
        components: Vec<BTreeMap<MultiIndex, C64>>,
    ) -> Result<Self> {
        if source_dim == 0 || target_dim == 0 {
            return Err(Error::InvalidInput("zero-dimensional map".into()));
        }
        if components.len() != target_dim {
            return Err(Error::InvalidInput(format!(
                "expected {target_dim} component tables, got {}",
                components.len()
            )));
        }
        for table in &components {
            for (idx, coeff) in table {
                if idx.len() != source_dim {
                    return Err(Error::InvalidInput(format!(
                        "multi-index {idx:?} does not match source dimension {source_dim}"
                    )));
                }
                if !coeff.re.is_finite() || !coeff.im.is_finite() {
                    return Err(Error::InvalidInput("non-finite coefficient".into()));
                }
            }
        }
        Ok(PolynomialMap {
            source_dim,
            target_dim,
            components,
        })
    }

    /// Scalar polynomial of one complex variable from the coefficient list
    /// (constant first).
    pub fn scalar_from_coeffs(coeffs: &[C64]) -> Self {
        let mut table = BTreeMap::new();
        for (k, &c) in coeffs.iter().enumerate() {
            if c.norm() != 0.0 {
                table.insert(vec![k as u32], c);
            }
        }
        PolynomialMap {
            source_dim: 1,
            target_dim: 1,
            components: vec![table],
        }
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn max_total_degree(&self) -> u32 {
        self.components
            .iter()
            .flat_map(|t| t.keys())
            .map(|idx| idx.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Value at the origin: the constant coefficients.
    pub fn constant_term(&self) -> Vec<C64> {
        let zero = vec![0u32; self.source_dim];
        self.components
            .iter()
            .map(|t| t.get(&zero).copied().unwrap_or(C64::new(0.0, 0.0)))
            .collect()
    }

    pub fn eval(&self, z: &[C64]) -> Vec<C64> {
        debug_assert_eq!(z.len(), self.source_dim);
        // Per-variable power tables up to the largest exponent used.
        let mut max_pow = vec![0u32; self.source_dim];
        for table in &self.components {
            for idx in table.keys() {
                for (k, &p) in idx.iter().enumerate() {
                    max_pow[k] = max_pow[k].max(p);
                }
            }
        }
        let powers: Vec<Vec<C64>> = (0..self.source_dim)
            .map(|k| {
                let mut col = Vec::with_capacity(max_pow[k] as usize + 1);
                let mut acc = C64::new(1.0, 0.0);
                col.push(acc);
                for _ in 0..max_pow[k] {
                    acc *= z[k];
                    col.push(acc);
                }
                col
            })
            .collect();
        self.components
            .iter()
            .map(|table| {
                table
                    .iter()
                    .map(|(idx, coeff)| {
                        let mono: C64 = idx
                            .iter()
                            .enumerate()
                            .map(|(k, &p)| powers[k][p as usize])
                            .product();
                        coeff * mono
                    })
                    .sum()
            })
            .collect()
    }

    /// Exact Jacobian (target_dim x source_dim) from coefficient
    /// differentiation.
    pub fn jacobian(&self, z: &[C64]) -> LinearOperator {
        let mut rows = Vec::with_capacity(self.target_dim);
        for table in &self.components {
            let mut row = vec![C64::new(0.0, 0.0); self.source_dim];
            for (idx, coeff) in table {
                for (var, &p) in idx.iter().enumerate() {
                    if p == 0 {
                        continue;
                    }
                    let mut mono = C64::new(p as f64, 0.0) * coeff;
                    for (k, &q) in idx.iter().enumerate() {
                        let exp = if k == var { q - 1 } else { q };
                        for _ in 0..exp {
                            mono *= z[k];
                        }
                    }
                    row[var] += mono;
                }
            }
            rows.push(row);
        }
        LinearOperator::from_rows(rows).expect("jacobian rows are rectangular")
    }

    pub fn scaled(&self, factor: f64) -> PolynomialMap {
        let components = self
            .components
            .iter()
            .map(|t| t.iter().map(|(k, v)| (k.clone(), v * factor)).collect())
            .collect();
        PolynomialMap {
            source_dim: self.source_dim,
            target_dim: self.target_dim,
            components,
        }
    }

    /// Random map with every total degree <= `degree`, coefficients uniform
    /// in the complex unit box.
    pub fn random(
        source_dim: usize,
        target_dim: usize,
        degree: u32,
        rng: &mut ChaCha8Rng,
    ) -> PolynomialMap {
        assert!(source_dim >= 1 && source_dim <= MAX_RANDOM_DIM);
        assert!(target_dim >= 1 && target_dim <= MAX_RANDOM_DIM);
        assert!(degree <= MAX_RANDOM_DEGREE);
        let indices = multi_indices(source_dim, degree);
        let components = (0..target_dim)
            .map(|_| {
                indices
                    .iter()
                    .map(|idx| {
                        (
                            idx.clone(),
                            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                        )
                    })
                    .collect()
            })
            .collect();
        PolynomialMap {
            source_dim,
            target_dim,
            components,
        }
    }

    /// Supremum of |f| over the closed unit ball. By the maximum principle
    /// this is the supremum over the unit sphere, which is searched with
    /// coarse probes plus local refinement.
    pub fn sup_norm_on_ball(&self, budget: SearchBudget, rng: &mut ChaCha8Rng) -> f64 {
        let real_dim = 2 * self.source_dim;
        let (_, sup) = maximize_on_sphere(
            real_dim,
            |u| {
                let z = point_to_complex(&Point::new(u.to_vec()));
                cnorm(&self.eval(&z))
            },
            budget,
            rng,
        );
        sup
    }

    /// Scales the map by 1 / (sup * (1 + 1e-9)) so it is bounded by 1 on the
    /// ball. Returns the normalized map and the measured sup.
    pub fn normalized_to_unit_ball(
        &self,
        budget: SearchBudget,
        rng: &mut ChaCha8Rng,
    ) -> Result<(PolynomialMap, f64)> {
        let sup = self.sup_norm_on_ball(budget, rng);
        if sup <= 0.0 || !sup.is_finite() {
            return Err(Error::Evaluation(format!(
                "sup norm on the ball is degenerate: {sup}"
            )));
        }
        Ok((self.scaled(1.0 / (sup * (1.0 + 1e-9))), sup))
    }

    /// Black-box view on flattened real coordinates, carrying the exact
    /// differential-norm oracle.
    pub fn as_sampled_map(&self, label: impl Into<String>) -> SampledMap {
        let me = self.clone();
        let oracle = self.clone();
        SampledMap::from_fn(label, 2 * self.target_dim, move |p: &Point| {
            complex_to_point(&me.eval(&point_to_complex(p)))
        })
        .with_exact_dilatation(move |p: &Point| {
            let j = oracle.jacobian(&point_to_complex(p));
            operator_norm(&j, PowerIterationOptions::default()).unwrap_or(f64::NAN)
        })
    }
}

/// All multi-indices of `dim` variables with total degree <= `degree`, in
/// deterministic lexicographic order.
pub fn multi_indices(dim: usize, degree: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut current = vec![0u32; dim];
    fill_indices(dim, degree, 0, &mut current, &mut out);
    out
}

fn fill_indices(dim: usize, budget: u32, pos: usize, current: &mut MultiIndex, out: &mut Vec<MultiIndex>) {
    if pos == dim {
        out.push(current.clone());
        return;
    }
    for p in 0..=budget {
        current[pos] = p;
        fill_indices(dim, budget - p, pos + 1, current, out);
    }
    current[pos] = 0;
}

/// JSON schema for polynomial corpora.
#[derive(Serialize, Deserialize)]
struct PolySchema {
    source_dim: usize,
    target_dim: usize,
    components: Vec<Vec<TermSchema>>,
}

#[derive(Serialize, Deserialize)]
struct TermSchema {
    powers: Vec<u32>,
    re: f64,
    im: f64,
}

impl Serialize for PolynomialMap {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolySchema {
            source_dim: self.source_dim,
            target_dim: self.target_dim,
            components: self
                .components
                .iter()
                .map(|t| {
                    t.iter()
                        .map(|(idx, c)| TermSchema {
                            powers: idx.clone(),
                            re: c.re,
                            im: c.im,
                        })
                        .collect()
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PolynomialMap {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let schema = PolySchema::deserialize(deserializer)?;
        let components = schema
            .components
            .into_iter()
            .map(|terms| {
                terms
                    .into_iter()
                    .map(|t| (t.powers, C64::new(t.re, t.im)))
                    .collect()
            })
            .collect();
        PolynomialMap::new(schema.source_dim, schema.target_dim, components)
            .map_err(serde::de::Error::custom)
    }
}

/// Closed-form analytic maps on the unit disk with stored derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedFormMap {
    /// z -> (1 - z)^alpha via the principal branch; analytic on the disk
    /// since Re(1 - z) > 0 there, with |f'(z)| = alpha |1 - z|^(alpha - 1).
    PowerBranch { alpha: f64 },
}

impl ClosedFormMap {
    pub fn power_branch(alpha: f64) -> Self {
        ClosedFormMap::PowerBranch { alpha }
    }

    pub fn eval_c(&self, z: C64) -> C64 {
        match self {
            ClosedFormMap::PowerBranch { alpha } => (C64::new(1.0, 0.0) - z).powf(*alpha),
        }
    }

    /// Modulus of the derivative from the stored formula.
    pub fn derivative_modulus(&self, z: C64) -> f64 {
        match self {
            ClosedFormMap::PowerBranch { alpha } => {
                alpha * (C64::new(1.0, 0.0) - z).norm().powf(alpha - 1.0)
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            ClosedFormMap::PowerBranch { alpha } => format!("(1-z)^{alpha}"),
        }
    }

    pub fn as_sampled_map(&self) -> SampledMap {
        let me = *self;
        let oracle = *self;
        SampledMap::from_fn(self.label(), 2, move |p: &Point| {
            let z = C64::new(p.coords[0], p.coords[1]);
            let w = me.eval_c(z);
            Point::new(vec![w.re, w.im])
        })
        .with_exact_dilatation(move |p: &Point| {
            oracle.derivative_modulus(C64::new(p.coords[0], p.coords[1]))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::rng_for;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn square_map_evaluates() {
        let f = PolynomialMap::scalar_from_coeffs(&[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let v = f.eval(&[c(0.5, 0.0)]);
        assert!((v[0] - c(0.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn constant_map_evaluates_to_its_constant() {
        let f = PolynomialMap::scalar_from_coeffs(&[c(0.7, -0.2)]);
        assert!((f.eval(&[c(0.3, 0.9)])[0] - c(0.7, -0.2)).norm() < 1e-15);
        assert_eq!(f.constant_term(), vec![c(0.7, -0.2)]);
    }

    #[test]
    fn square_map_derivative_at_half() {
        let f = PolynomialMap::scalar_from_coeffs(&[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let j = f.jacobian(&[c(0.5, 0.0)]);
        assert!((j.get(0, 0) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn linear_map_has_constant_jacobian() {
        // f(z1, z2) = (2 z1 + i z2, z2).
        let mut c0 = BTreeMap::new();
        c0.insert(vec![1, 0], c(2.0, 0.0));
        c0.insert(vec![0, 1], c(0.0, 1.0));
        let mut c1 = BTreeMap::new();
        c1.insert(vec![0, 1], c(1.0, 0.0));
        let f = PolynomialMap::new(2, 2, vec![c0, c1]).unwrap();
        for z in [[c(0.0, 0.0), c(0.0, 0.0)], [c(0.3, 0.1), c(-0.2, 0.4)]] {
            let j = f.jacobian(&z);
            assert!((j.get(0, 0) - c(2.0, 0.0)).norm() < 1e-15);
            assert!((j.get(0, 1) - c(0.0, 1.0)).norm() < 1e-15);
            assert!((j.get(1, 0)).norm() < 1e-15);
            assert!((j.get(1, 1) - c(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn mixed_partials_example() {
        // f(z1, z2) = (z1 z2, z1^2) at (1, 1): rows (1, 1) and (2, 0).
        let mut c0 = BTreeMap::new();
        c0.insert(vec![1, 1], c(1.0, 0.0));
        let mut c1 = BTreeMap::new();
        c1.insert(vec![2, 0], c(1.0, 0.0));
        let f = PolynomialMap::new(2, 2, vec![c0, c1]).unwrap();
        let j = f.jacobian(&[c(1.0, 0.0), c(1.0, 0.0)]);
        assert!((j.get(0, 0) - c(1.0, 0.0)).norm() < 1e-14);
        assert!((j.get(0, 1) - c(1.0, 0.0)).norm() < 1e-14);
        assert!((j.get(1, 0) - c(2.0, 0.0)).norm() < 1e-14);
        assert!((j.get(1, 1)).norm() < 1e-14);
    }

    #[test]
    fn taylor_remainder_shrinks_first_order() {
        let mut rng = rng_for(17, "taylor");
        let f = PolynomialMap::random(2, 3, 4, &mut rng);
        let z = [c(0.2, -0.1), c(0.05, 0.15)];
        let j = f.jacobian(&z);
        let fz = f.eval(&z);
        let dir = [c(0.6, 0.3), c(-0.2, 0.7)];
        let mut prev_ratio = f64::INFINITY;
        for h in [1e-2, 1e-3, 1e-4] {
            let displaced: Vec<C64> = z.iter().zip(&dir).map(|(a, d)| a + d * h).collect();
            let lhs = f.eval(&displaced);
            let lin = j.apply(&dir.iter().map(|d| d * h).collect::<Vec<_>>());
            let rem: f64 = lhs
                .iter()
                .zip(&fz)
                .zip(&lin)
                .map(|((a, b), l)| (a - b - l).norm_sqr())
                .sum::<f64>()
                .sqrt();
            let hnorm = h * cnorm(&dir);
            let ratio = rem / hnorm;
            assert!(ratio < prev_ratio);
            prev_ratio = ratio;
        }
        assert!(prev_ratio < 1e-3);
    }

    #[test]
    fn sup_norm_of_identity_is_one() {
        let f = PolynomialMap::scalar_from_coeffs(&[c(0.0, 0.0), c(1.0, 0.0)]);
        let mut rng = rng_for(1, "sup");
        let sup = f.sup_norm_on_ball(SearchBudget::default(), &mut rng);
        assert!((sup - 1.0).abs() < 1e-9, "got {sup}");
    }

    #[test]
    fn normalization_bounds_the_map_by_one() {
        let mut rng = rng_for(23, "normalize");
        let f = PolynomialMap::random(2, 2, 3, &mut rng);
        let (g, sup) = f.normalized_to_unit_ball(SearchBudget::default(), &mut rng).unwrap();
        assert!(sup > 0.0);
        let re_sup = g.sup_norm_on_ball(SearchBudget::default(), &mut rng);
        assert!(re_sup <= 1.0 + 1e-12, "renormalized sup {re_sup}");
    }

    #[test]
    fn corpus_json_round_trip() {
        let mut rng = rng_for(29, "roundtrip");
        let f = PolynomialMap::random(2, 1, 3, &mut rng);
        let json = serde_json::to_string(&f).unwrap();
        let back: PolynomialMap = serde_json::from_str(&json).unwrap();
        assert_eq!(f, back);
    }

    #[test]
    fn power_branch_values() {
        let f = ClosedFormMap::power_branch(0.5);
        assert!((f.eval_c(c(0.0, 0.0)) - c(1.0, 0.0)).norm() < 1e-15);
        // Derivative formula against finite differences at an interior point.
        let z = c(0.3, 0.2);
        let h = 1e-7;
        let num = (f.eval_c(z + c(h, 0.0)) - f.eval_c(z - c(h, 0.0))) / c(2.0 * h, 0.0);
        assert!((num.norm() - f.derivative_modulus(z)).abs() < 1e-6);
    }

    #[test]
    fn power_branch_derivative_identity_on_grid() {
        let f = ClosedFormMap::power_branch(0.75);
        for &re in &[-0.8, -0.3, 0.0, 0.4, 0.9] {
            for &im in &[-0.4, 0.0, 0.3] {
                let z = c(re, im);
                if z.norm() < 1.0 {
                    let d = f.derivative_modulus(z);
                    let expect = 0.75 * (c(1.0, 0.0) - z).norm().powf(-0.25);
                    assert!((d - expect).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn multi_index_count() {
        // dim 2, degree 2: (d+2 choose 2) = 6 indices.
        assert_eq!(multi_indices(2, 2).len(), 6);
        assert_eq!(multi_indices(1, 6).len(), 7);
    }
}
