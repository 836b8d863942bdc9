//! Seeded sampling and derivative-free maximization on spheres and balls.
//!
//! The seminorm and dilatation estimators all reduce to maximizing a smooth
//! function over a sphere or a closed ball. Coarse random sampling finds the
//! right basin; a shrinking-step pattern search then polishes the maximizer.
//! Everything is driven by explicitly seeded generators so estimates are
//! reproducible bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::space::Point;

/// Derives an independent stream seed from a master seed and a label
/// (FNV-1a over the label, mixed with the master via splitmix64).
pub fn subseed(master: u64, label: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in label.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    splitmix64(master ^ h)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

pub fn rng_for(master: u64, label: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(subseed(master, label))
}

/// Uniform direction on the unit sphere of R^dim.
pub fn random_unit_vector(dim: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| standard_normal(rng)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller; one value per call is plenty here.
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Uniform point in the closed ball `B(center, radius)`.
pub fn sample_in_ball(center: &Point, radius: f64, rng: &mut ChaCha8Rng) -> Point {
    let dim = center.dim();
    let dir = random_unit_vector(dim, rng);
    let r = radius * rng.gen_range(0.0f64..1.0).powf(1.0 / dim as f64);
    center.add_scaled(&dir, r)
}

/// Budget knobs for the sphere/ball searches.
#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    /// Number of coarse random probes.
    pub coarse: usize,
    /// How many of the best probes get a pattern-search polish.
    pub refine_starts: usize,
    /// Maximum pattern-search rounds per start.
    pub refine_rounds: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            coarse: 512,
            refine_starts: 6,
            refine_rounds: 120,
        }
    }
}

impl SearchBudget {
    pub fn light() -> Self {
        SearchBudget {
            coarse: 128,
            refine_starts: 3,
            refine_rounds: 60,
        }
    }
}

/// Maximizes `objective` over the unit sphere of R^dim. Returns the best
/// direction and its value.
pub fn maximize_on_sphere<F>(
    dim: usize,
    objective: F,
    budget: SearchBudget,
    rng: &mut ChaCha8Rng,
) -> (Vec<f64>, f64)
where
    F: Fn(&[f64]) -> f64,
{
    let mut probes: Vec<(Vec<f64>, f64)> = Vec::with_capacity(budget.coarse + 2 * dim);
    // Coordinate directions first: exact extremes for axis-aligned objectives.
    for k in 0..dim {
        for sign in [1.0, -1.0] {
            let mut u = vec![0.0; dim];
            u[k] = sign;
            let v = objective(&u);
            probes.push((u, v));
        }
    }
    for _ in 0..budget.coarse {
        let u = random_unit_vector(dim, rng);
        let v = objective(&u);
        probes.push((u, v));
    }
    probes.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(std::cmp::Ordering::Equal));
    probes.truncate(budget.refine_starts.max(1));

    let mut best = probes[0].clone();
    for (start, start_val) in probes {
        let (u, v) = refine_on_sphere(&objective, start, start_val, budget.refine_rounds, rng);
        if v > best.1 {
            best = (u, v);
        }
    }
    best
}

fn refine_on_sphere<F>(
    objective: &F,
    mut u: Vec<f64>,
    mut value: f64,
    rounds: usize,
    rng: &mut ChaCha8Rng,
) -> (Vec<f64>, f64)
where
    F: Fn(&[f64]) -> f64,
{
    let dim = u.len();
    let mut step = 0.4;
    for _ in 0..rounds {
        if step < 1e-9 {
            break;
        }
        let mut improved = false;
        let mut candidates: Vec<Vec<f64>> = Vec::with_capacity(2 * dim + 4);
        for k in 0..dim {
            for sign in [1.0, -1.0] {
                let mut c = u.clone();
                c[k] += sign * step;
                candidates.push(c);
            }
        }
        for _ in 0..4 {
            let d = random_unit_vector(dim, rng);
            candidates.push(u.iter().zip(&d).map(|(a, b)| a + step * b).collect());
        }
        for mut c in candidates {
            let n = c.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n < 1e-12 {
                continue;
            }
            c.iter_mut().for_each(|x| *x /= n);
            let v = objective(&c);
            if v > value {
                value = v;
                u = c;
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (u, value)
}

/// Maximizes `objective` over the closed ball `B(center, radius)`, probing
/// the sphere, the interior and the center, then pattern-searching with
/// projection back into the ball. Needed where an extremum may sit strictly
/// inside (e.g. the minimum modulus of an analytic map at an interior zero).
pub fn maximize_over_ball<F>(
    center: &Point,
    radius: f64,
    objective: F,
    budget: SearchBudget,
    rng: &mut ChaCha8Rng,
) -> (Point, f64)
where
    F: Fn(&Point) -> f64,
{
    let dim = center.dim();
    let mut probes: Vec<(Point, f64)> = Vec::with_capacity(budget.coarse + 1);
    probes.push((center.clone(), objective(center)));
    for i in 0..budget.coarse {
        // Alternate sphere and interior probes.
        let p = if i % 2 == 0 {
            let dir = random_unit_vector(dim, rng);
            center.add_scaled(&dir, radius)
        } else {
            sample_in_ball(center, radius, rng)
        };
        let v = objective(&p);
        probes.push((p, v));
    }
    probes.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(std::cmp::Ordering::Equal));
    probes.truncate(budget.refine_starts.max(1));

    let project = |p: &Point| -> Point {
        let d = p.distance(center);
        if d <= radius {
            p.clone()
        } else {
            center.lerp(p, radius / d)
        }
    };

    let mut best = probes[0].clone();
    for (mut p, mut value) in probes {
        let mut step = 0.4 * radius;
        for _ in 0..budget.refine_rounds {
            if step < 1e-10 * radius.max(1e-30) {
                break;
            }
            let mut improved = false;
            let mut candidates: Vec<Point> = Vec::with_capacity(2 * dim + 4);
            for k in 0..dim {
                for sign in [1.0, -1.0] {
                    let mut c = p.clone();
                    c.coords[k] += sign * step;
                    candidates.push(c);
                }
            }
            for _ in 0..4 {
                let d = random_unit_vector(dim, rng);
                candidates.push(p.add_scaled(&d, step));
            }
            for c in candidates {
                let c = project(&c);
                let v = objective(&c);
                if v > value {
                    value = v;
                    p = c;
                    improved = true;
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        if value > best.1 {
            best = (p, value);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::point2;

    #[test]
    fn subseed_streams_differ_and_reproduce() {
        assert_eq!(subseed(1, "a"), subseed(1, "a"));
        assert_ne!(subseed(1, "a"), subseed(1, "b"));
        assert_ne!(subseed(1, "a"), subseed(2, "a"));
    }

    #[test]
    fn sphere_max_of_linear_functional() {
        // max over the sphere of <u, w> is |w|, at u = w / |w|.
        let w = [3.0, -4.0];
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (_, v) = maximize_on_sphere(
            2,
            |u| u[0] * w[0] + u[1] * w[1],
            SearchBudget::default(),
            &mut rng,
        );
        assert!((v - 5.0).abs() < 1e-7, "got {v}");
    }

    #[test]
    fn ball_max_finds_interior_peak() {
        // Peaked bump strictly inside the ball.
        let center = point2(0.0, 0.0);
        let peak = point2(0.3, -0.2);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (_, v) = maximize_over_ball(
            &center,
            1.0,
            |p| -p.distance(&peak),
            SearchBudget::default(),
            &mut rng,
        );
        assert!(v > -1e-6, "got {v}");
    }

    #[test]
    fn ball_samples_stay_inside() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = Point::new(vec![0.5, 0.0, -0.25]);
        for _ in 0..200 {
            let p = sample_in_ball(&c, 0.7, &mut rng);
            assert!(p.distance(&c) <= 0.7 + 1e-12);
        }
    }
}
