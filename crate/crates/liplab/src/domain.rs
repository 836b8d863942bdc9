//! Bounded domains with boundary-distance oracles.
//!
//! The boundary distance is exact (closed form) for disks, balls and annuli,
//! and the distance to the nearest edge for polygons. Interior grids exclude
//! a margin next to the boundary so weights like d(., bd)^(alpha-1) stay
//! bounded on every evaluated point.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::space::Point;

/// Shape of a domain. Planar shapes carry an interior grid; balls of higher
/// dimension support sampling and boundary distances but no grid graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "shape")]
pub enum DomainShape {
    UnitDisk,
    UnitBall { dim: usize },
    Annulus { inner: f64, outer: f64 },
    Polygon { vertices: Vec<[f64; 2]> },
}

impl DomainShape {
    pub fn dim(&self) -> usize {
        match self {
            DomainShape::UnitDisk => 2,
            DomainShape::UnitBall { dim } => *dim,
            DomainShape::Annulus { .. } | DomainShape::Polygon { .. } => 2,
        }
    }
}

/// A domain together with its discretization parameters.
#[derive(Debug)]
pub struct DiscretizedDomain {
    pub shape: DomainShape,
    pub grid_spacing: f64,
    /// Points with boundary distance below this are excluded from grids and
    /// samplers. Defaults to 4 * grid_spacing.
    pub interior_margin: f64,
    /// 4- or 8-connected grid graph.
    pub connectivity: Connectivity,
    grid: OnceLock<InteriorGrid>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Connectivity {
    Four,
    Eight,
}

impl DiscretizedDomain {
    pub fn new(shape: DomainShape, grid_spacing: f64) -> Result<Self> {
        Self::with_margin(shape, grid_spacing, 4.0 * grid_spacing)
    }

    pub fn with_margin(shape: DomainShape, grid_spacing: f64, interior_margin: f64) -> Result<Self> {
        if grid_spacing <= 0.0 || !grid_spacing.is_finite() {
            return Err(Error::InvalidInput("grid spacing must be positive".into()));
        }
        if interior_margin <= 0.0 {
            return Err(Error::InvalidInput("interior margin must be positive".into()));
        }
        if let DomainShape::Annulus { inner, outer } = &shape {
            if !(0.0 < *inner && inner < outer) {
                return Err(Error::InvalidInput(
                    "annulus radii must satisfy 0 < inner < outer".into(),
                ));
            }
        }
        if let DomainShape::Polygon { vertices } = &shape {
            if vertices.len() < 3 {
                return Err(Error::InvalidInput("polygon needs at least 3 vertices".into()));
            }
        }
        if let DomainShape::UnitBall { dim } = &shape {
            if *dim == 0 {
                return Err(Error::InvalidInput("ball dimension must be positive".into()));
            }
        }
        Ok(DiscretizedDomain {
            shape,
            grid_spacing,
            interior_margin,
            connectivity: Connectivity::Eight,
            grid: OnceLock::new(),
        })
    }

    pub fn unit_disk(grid_spacing: f64) -> Self {
        Self::new(DomainShape::UnitDisk, grid_spacing).unwrap()
    }

    pub fn unit_ball(dim: usize, grid_spacing: f64) -> Result<Self> {
        Self::new(DomainShape::UnitBall { dim }, grid_spacing)
    }

    pub fn with_connectivity(mut self, connectivity: Connectivity) -> Self {
        self.connectivity = connectivity;
        self
    }

    pub fn dim(&self) -> usize {
        self.shape.dim()
    }

    /// Bounding box half-width per axis (domains here are centered except
    /// polygons, which report their actual extent).
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        match &self.shape {
            DomainShape::UnitDisk => (vec![-1.0, -1.0], vec![1.0, 1.0]),
            DomainShape::UnitBall { dim } => (vec![-1.0; *dim], vec![1.0; *dim]),
            DomainShape::Annulus { outer, .. } => {
                (vec![-outer, -outer], vec![*outer, *outer])
            }
            DomainShape::Polygon { vertices } => {
                let mut lo = [f64::INFINITY; 2];
                let mut hi = [f64::NEG_INFINITY; 2];
                for v in vertices {
                    for k in 0..2 {
                        lo[k] = lo[k].min(v[k]);
                        hi[k] = hi[k].max(v[k]);
                    }
                }
                (lo.to_vec(), hi.to_vec())
            }
        }
    }

    pub fn contains(&self, x: &Point) -> bool {
        match &self.shape {
            DomainShape::UnitDisk => x.dim() == 2 && x.norm() < 1.0,
            DomainShape::UnitBall { dim } => x.dim() == *dim && x.norm() < 1.0,
            DomainShape::Annulus { inner, outer } => {
                let r = x.norm();
                x.dim() == 2 && *inner < r && r < *outer
            }
            DomainShape::Polygon { vertices } => x.dim() == 2 && point_in_polygon(x, vertices),
        }
    }

    /// Distance from `x` to the boundary of the domain. `x` must lie in the
    /// closed domain.
    pub fn boundary_distance(&self, x: &Point) -> Result<f64> {
        let d = match &self.shape {
            DomainShape::UnitDisk => 1.0 - x.norm(),
            DomainShape::UnitBall { dim } => {
                if x.dim() != *dim {
                    return Err(Error::InvalidInput(format!(
                        "point of dimension {} in a {}-ball",
                        x.dim(),
                        dim
                    )));
                }
                1.0 - x.norm()
            }
            DomainShape::Annulus { inner, outer } => {
                let r = x.norm();
                if r < *inner - 1e-15 || r > *outer + 1e-15 {
                    return Err(Error::InvalidInput(format!(
                        "point at radius {r} outside annulus [{inner}, {outer}]"
                    )));
                }
                (r - inner).min(outer - r)
            }
            DomainShape::Polygon { vertices } => {
                if !point_in_polygon(x, vertices) && distance_to_polygon_edges(x, vertices) > 1e-12
                {
                    return Err(Error::InvalidInput(format!(
                        "point {:?} outside polygon",
                        x.coords
                    )));
                }
                distance_to_polygon_edges(x, vertices)
            }
        };
        if d < -1e-12 {
            return Err(Error::InvalidInput(format!(
                "point {:?} outside the closed domain",
                x.coords
            )));
        }
        Ok(d.max(0.0))
    }

    /// The lazily built interior grid (planar shapes only).
    pub fn interior_grid(&self) -> Result<&InteriorGrid> {
        if self.dim() != 2 {
            return Err(Error::InvalidInput(format!(
                "interior grids exist only for planar domains (dimension {})",
                self.dim()
            )));
        }
        Ok(self.grid.get_or_init(|| InteriorGrid::build(self)))
    }

    /// Uniform sample from the interior, at least `margin` from the boundary.
    /// Rejection sampling against the bounding box.
    pub fn sample_interior(&self, rng: &mut ChaCha8Rng, margin: f64) -> Point {
        let (lo, hi) = self.bounding_box();
        loop {
            let coords: Vec<f64> = lo
                .iter()
                .zip(&hi)
                .map(|(&a, &b)| rng.gen_range(a..b))
                .collect();
            let p = Point::new(coords);
            if self.contains(&p) {
                if let Ok(d) = self.boundary_distance(&p) {
                    if d >= margin {
                        return p;
                    }
                }
            }
        }
    }

    /// Mixed pair sample: half independent uniform pairs, half short-range
    /// pairs (separation below `short_range`), where Hölder quotients peak.
    pub fn sample_pairs(
        &self,
        rng: &mut ChaCha8Rng,
        count: usize,
        margin: f64,
        short_range: f64,
    ) -> Vec<(Point, Point)> {
        let mut pairs = Vec::with_capacity(count);
        while pairs.len() < count {
            let x = self.sample_interior(rng, margin);
            let y = if pairs.len() % 2 == 0 {
                self.sample_interior(rng, margin)
            } else {
                // Short-range partner: retry until it lands inside.
                let mut y;
                loop {
                    let dir = crate::search::random_unit_vector(self.dim(), rng);
                    let r = rng.gen_range(0.0..short_range);
                    y = x.add_scaled(&dir, r);
                    if self.contains(&y)
                        && self.boundary_distance(&y).map(|d| d >= margin).unwrap_or(false)
                    {
                        break;
                    }
                }
                y
            };
            if x.distance(&y) > 0.0 {
                pairs.push((x, y));
            }
        }
        pairs
    }
}

fn point_in_polygon(x: &Point, vertices: &[[f64; 2]]) -> bool {
    // Even-odd ray casting.
    let (px, py) = (x.coords[0], x.coords[1]);
    let mut inside = false;
    let n = vertices.len();
    let mut j = n - 1;
    for i in 0..n {
        let (xi, yi) = (vertices[i][0], vertices[i][1]);
        let (xj, yj) = (vertices[j][0], vertices[j][1]);
        if ((yi > py) != (yj > py)) && (px < (xj - xi) * (py - yi) / (yj - yi) + xi) {
            inside = !inside;
        }
        j = i;
    }
    inside
}

fn distance_to_polygon_edges(x: &Point, vertices: &[[f64; 2]]) -> f64 {
    let (px, py) = (x.coords[0], x.coords[1]);
    let n = vertices.len();
    let mut best = f64::INFINITY;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
        let len2 = dx * dx + dy * dy;
        let t = if len2 > 0.0 {
            (((px - a[0]) * dx + (py - a[1]) * dy) / len2).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let (cx, cy) = (a[0] + t * dx, a[1] + t * dy);
        best = best.min(((px - cx).powi(2) + (py - cy).powi(2)).sqrt());
    }
    best
}

/// Lattice of interior points of a planar domain, the carrier of the grid
/// graph used for weighted-distance upper bounds.
#[derive(Debug)]
pub struct InteriorGrid {
    pub spacing: f64,
    imin: i64,
    jmin: i64,
    width: usize,
    height: usize,
    /// Dense cell -> node index map over the bounding box.
    cell_to_node: Vec<u32>,
    /// Lattice coordinates of each node.
    pub nodes: Vec<(i64, i64)>,
}

const NO_NODE: u32 = u32::MAX;

impl InteriorGrid {
    fn build(domain: &DiscretizedDomain) -> InteriorGrid {
        let h = domain.grid_spacing;
        let (lo, hi) = domain.bounding_box();
        let imin = (lo[0] / h).floor() as i64 - 1;
        let imax = (hi[0] / h).ceil() as i64 + 1;
        let jmin = (lo[1] / h).floor() as i64 - 1;
        let jmax = (hi[1] / h).ceil() as i64 + 1;
        let width = (imax - imin + 1) as usize;
        let height = (jmax - jmin + 1) as usize;
        let mut cell_to_node = vec![NO_NODE; width * height];
        let mut nodes = Vec::new();
        for j in jmin..=jmax {
            for i in imin..=imax {
                let p = Point::new(vec![i as f64 * h, j as f64 * h]);
                if domain.contains(&p) {
                    if let Ok(d) = domain.boundary_distance(&p) {
                        if d >= domain.interior_margin {
                            let idx = ((j - jmin) as usize) * width + (i - imin) as usize;
                            cell_to_node[idx] = nodes.len() as u32;
                            nodes.push((i, j));
                        }
                    }
                }
            }
        }
        InteriorGrid {
            spacing: h,
            imin,
            jmin,
            width,
            height,
            cell_to_node,
            nodes,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node_at(&self, i: i64, j: i64) -> Option<u32> {
        if i < self.imin || j < self.jmin {
            return None;
        }
        let (ci, cj) = ((i - self.imin) as usize, (j - self.jmin) as usize);
        if ci >= self.width || cj >= self.height {
            return None;
        }
        let v = self.cell_to_node[cj * self.width + ci];
        (v != NO_NODE).then_some(v)
    }

    pub fn position(&self, node: u32) -> Point {
        let (i, j) = self.nodes[node as usize];
        Point::new(vec![i as f64 * self.spacing, j as f64 * self.spacing])
    }

    /// Nearest grid node to `x`, if the rounded lattice cell is in the grid.
    pub fn snap(&self, x: &Point) -> Result<u32> {
        let i = (x.coords[0] / self.spacing).round() as i64;
        let j = (x.coords[1] / self.spacing).round() as i64;
        self.node_at(i, j).ok_or_else(|| {
            Error::InvalidInput(format!(
                "point {:?} is outside the interior grid",
                x.coords
            ))
        })
    }
}
