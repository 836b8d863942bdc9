//! Complex vectors, small dense operators, and operator norms.
//!
//! Matrices here are tiny (dimension <= ~16), so the spectral norm is
//! computed by power iteration on A*A with a deterministic seeded start,
//! random restarts guarding against an orthogonal initial vector, and a
//! Rayleigh-quotient stopping rule.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::search::rng_for;
use crate::space::Point;

pub type C64 = Complex64;

/// Hermitian inner product, conjugate-linear in the second slot:
/// <a, b> = sum a_i conj(b_i).
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

pub fn cnorm(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Flattened real coordinates (re, im interleaved) -> complex vector.
pub fn point_to_complex(p: &Point) -> Vec<C64> {
    debug_assert!(p.dim() % 2 == 0, "complex points need even real dimension");
    p.coords
        .chunks_exact(2)
        .map(|c| C64::new(c[0], c[1]))
        .collect()
}

pub fn complex_to_point(z: &[C64]) -> Point {
    let mut coords = Vec::with_capacity(2 * z.len());
    for w in z {
        coords.push(w.re);
        coords.push(w.im);
    }
    Point::new(coords)
}

/// Dense complex matrix, row-major: a continuous linear map C^cols -> C^rows.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearOperator {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl LinearOperator {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LinearOperator {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::InvalidInput("empty operator".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput("ragged operator rows".into()));
        }
        let r = rows.len();
        let data: Vec<C64> = rows.into_iter().flatten().collect();
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite operator entry".into()));
        }
        Ok(LinearOperator {
            rows: r,
            cols,
            data,
        })
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * v[j])
                    .sum::<C64>()
            })
            .collect()
    }

    /// Applies the Hermitian adjoint A*.
    pub fn adjoint_apply(&self, v: &[C64]) -> Vec<C64> {
        debug_assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .map(|i| self.get(i, j).conj() * v[i])
                    .sum::<C64>()
            })
            .collect()
    }

    /// Operator composition `self o other`.
    pub fn compose(&self, other: &LinearOperator) -> Result<LinearOperator> {
        if self.cols != other.rows {
            return Err(Error::InvalidInput(format!(
                "composition shape mismatch: {}x{} o {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = LinearOperator::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LinearOperator) -> Result<LinearOperator> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::InvalidInput("subtraction shape mismatch".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(LinearOperator {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, k: C64) -> LinearOperator {
        LinearOperator {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * k).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PowerIterationOptions {
    /// Relative Rayleigh-quotient stabilization threshold.
    pub tol: f64,
    pub max_iterations: usize,
    /// Extra seeded restarts; the best value over all runs is returned.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for PowerIterationOptions {
    fn default() -> Self {
        PowerIterationOptions {
            tol: 1e-12,
            max_iterations: 10_000,
            restarts: 2,
            seed: 0x4f70_4e6f_726d,
        }
    }
}

/// Largest singular value by power iteration on A*A.
pub fn operator_norm(op: &LinearOperator, opts: PowerIterationOptions) -> Result<f64> {
    if op.frobenius_norm() == 0.0 {
        return Ok(0.0);
    }
    let mut best: Option<f64> = None;
    for restart in 0..=opts.restarts {
        let mut rng = rng_for(opts.seed, &format!("power-iteration-{restart}"));
        let sigma = power_iterate(op, opts, &mut rng)?;
        best = Some(best.map_or(sigma, |b: f64| b.max(sigma)));
    }
    Ok(best.unwrap())
}

fn power_iterate(
    op: &LinearOperator,
    opts: PowerIterationOptions,
    rng: &mut ChaCha8Rng,
) -> Result<f64> {
    let n = op.cols();
    let mut v: Vec<C64> = (0..n)
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let nv = cnorm(&v);
    if nv == 0.0 {
        v[0] = C64::new(1.0, 0.0);
    } else {
        v.iter_mut().for_each(|z| *z /= nv);
    }
    let mut rayleigh = f64::NAN;
    for _ in 0..opts.max_iterations {
        let av = op.apply(&v);
        let lambda = av.iter().map(|z| z.norm_sqr()).sum::<f64>(); // v unit
        if lambda == 0.0 {
            // Start vector in the kernel: restart handles it; report 0 here.
            return Ok(0.0);
        }
        let mut next = op.adjoint_apply(&av);
        let nn = cnorm(&next);
        if nn == 0.0 {
            return Ok(lambda.sqrt());
        }
        next.iter_mut().for_each(|z| *z /= nn);
        if rayleigh.is_finite() && (lambda - rayleigh).abs() <= opts.tol * lambda.max(1e-300) {
            return Ok(lambda.sqrt());
        }
        rayleigh = lambda;
        v = next;
    }
    Err(Error::Convergence {
        context: "operator norm power iteration".into(),
        last: rayleigh.sqrt(),
        previous: f64::NAN,
    })
}
