//! Shortest paths on the interior grid graph.
//!
//! Nodes are interior lattice points; edges connect 4- or 8-neighbors, with
//! cost = edge length times the mean of the endpoint weights. Neighbors are
//! enumerated on the fly from lattice coordinates, so no adjacency list is
//! stored.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::domain::{Connectivity, DiscretizedDomain, InteriorGrid};
use crate::error::{Error, Result};
use crate::weight::WeightField;

#[derive(PartialEq)]
struct HeapItem {
    cost: f64,
    node: u32,
}

impl Eq for HeapItem {}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed: BinaryHeap is a max-heap, we need the cheapest first.
        other
            .cost
            .partial_cmp(&self.cost)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.node.cmp(&self.node))
    }
}

const ORTHO: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];
const DIAG: [(i64, i64); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

/// Grid-graph shortest-path solver for one weight field on one domain.
/// Node weights are evaluated once at construction.
pub struct GridDistances<'a> {
    grid: &'a InteriorGrid,
    connectivity: Connectivity,
    node_weights: Vec<f64>,
}

impl<'a> GridDistances<'a> {
    pub fn new(domain: &'a DiscretizedDomain, weight: &WeightField) -> Result<Self> {
        let grid = domain.interior_grid()?;
        let mut node_weights = Vec::with_capacity(grid.len());
        for node in 0..grid.len() as u32 {
            node_weights.push(weight.value(domain, &grid.position(node))?);
        }
        Ok(GridDistances {
            grid,
            connectivity: domain.connectivity,
            node_weights,
        })
    }

    pub fn grid(&self) -> &InteriorGrid {
        self.grid
    }

    /// Dijkstra from `source`, stopping early once `target` settles.
    pub fn shortest_path_cost(&self, source: u32, target: u32) -> Result<f64> {
        if source == target {
            return Ok(0.0);
        }
        let h = self.grid.spacing;
        let diag_len = h * std::f64::consts::SQRT_2;
        let mut dist = vec![f64::INFINITY; self.grid.len()];
        let mut settled = vec![false; self.grid.len()];
        let mut heap = BinaryHeap::new();
        dist[source as usize] = 0.0;
        heap.push(HeapItem {
            cost: 0.0,
            node: source,
        });

        while let Some(HeapItem { cost, node }) = heap.pop() {
            if settled[node as usize] {
                continue;
            }
            settled[node as usize] = true;
            if node == target {
                return Ok(cost);
            }
            let (i, j) = self.grid.nodes[node as usize];
            let w_here = self.node_weights[node as usize];
            let mut relax = |di: i64, dj: i64, len: f64, heap: &mut BinaryHeap<HeapItem>| {
                if let Some(nb) = self.grid.node_at(i + di, j + dj) {
                    if !settled[nb as usize] {
                        let edge = len * 0.5 * (w_here + self.node_weights[nb as usize]);
                        let next = cost + edge;
                        if next < dist[nb as usize] {
                            dist[nb as usize] = next;
                            heap.push(HeapItem {
                                cost: next,
                                node: nb,
                            });
                        }
                    }
                }
            };
            for (di, dj) in ORTHO {
                relax(di, dj, h, &mut heap);
            }
            if self.connectivity == Connectivity::Eight {
                for (di, dj) in DIAG {
                    relax(di, dj, diag_len, &mut heap);
                }
            }
        }
        Err(Error::NoPath {
            from: format!("{:?}", self.grid.position(source).coords),
            to: format!("{:?}", self.grid.position(target).coords),
        })
    }
}
