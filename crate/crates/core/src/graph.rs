//! Interference graph: an undirected edge joins every pair of nodes within
//! the neighborhood radius, weighted by the path gain between them.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::deployment::SpatialIndex;
use crate::model::{NodeSet, RadioConfig};
use crate::radio::path_gain;

/// One adjacency entry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub node: usize,
    /// Propagation distance, already clamped to `d_min`.
    pub distance: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterferenceGraph {
    neighbors: Vec<Vec<Edge>>,
}

impl InterferenceGraph {
    /// Graph of `n` isolated nodes.
    pub fn empty(n: usize) -> Self {
        Self {
            neighbors: vec![Vec::new(); n],
        }
    }

    pub fn node_count(&self) -> usize {
        self.neighbors.len()
    }

    /// Neighbors of `v`, ascending by id.
    pub fn neighbors(&self, v: usize) -> &[Edge] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.neighbors[v].is_empty()
    }

    /// Undirected edges `(v, v', edge)` with `v < v'`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, &Edge)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(v, es)| es.iter().filter(move |e| e.node > v).map(move |e| (v, e)))
    }

    /// Same topology with every weight multiplied by `factor`.
    pub fn with_scaled_weights(&self, factor: f64) -> Self {
        Self {
            neighbors: self
                .neighbors
                .iter()
                .map(|es| {
                    es.iter()
                        .map(|e| Edge {
                            weight: e.weight * factor,
                            ..*e
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Builds a graph from explicit undirected edges `(v, v', distance, weight)`.
    /// Each pair must appear once.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64, f64)>) -> Self {
        let mut neighbors = vec![Vec::new(); n];
        for (a, b, distance, weight) in edges {
            assert!(a != b && a < n && b < n, "invalid edge ({a}, {b})");
            neighbors[a].push(Edge {
                node: b,
                distance,
                weight,
            });
            neighbors[b].push(Edge {
                node: a,
                distance,
                weight,
            });
        }
        for es in &mut neighbors {
            es.sort_by_key(|e: &Edge| e.node);
        }
        Self { neighbors }
    }

    /// Writes the undirected edge list as CSV `(v, v_prime, d_m, w)`.
    pub fn write_edges_csv<W: Write>(&self, writer: W) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["v", "v_prime", "d_m", "w"])?;
        for (v, e) in self.edges() {
            w.write_record([
                v.to_string(),
                e.node.to_string(),
                e.distance.to_string(),
                e.weight.to_string(),
            ])?;
        }
        w.flush()
    }
}

/// Vote weight of a neighbor at distance `d`: the path gain
/// `max(d, d_min)^-alpha`.
pub fn edge_weight(d: f64, radio: &RadioConfig) -> f64 {
    path_gain(d, radio)
}

/// Connects every pair with distance `≤ neighborhood_radius`.
pub fn build_graph(
    nodes: &NodeSet,
    neighborhood_radius: f64,
    radio: &RadioConfig,
) -> InterferenceGraph {
    let n = nodes.len();
    let mut neighbors = vec![Vec::new(); n];
    if n < 2 {
        return InterferenceGraph { neighbors };
    }
    let r2 = neighborhood_radius * neighborhood_radius;
    let index = SpatialIndex::new(nodes, neighborhood_radius, 4096);
    let reach = (neighborhood_radius / index.cell()).ceil() as usize;
    let pts = nodes.nodes();

    for a in pts {
        let (cx, cy) = index.bucket(a.x, a.y);
        let list = &mut neighbors[a.id];
        index.for_each_within(cx, cy, reach, |j| {
            if j == a.id {
                return;
            }
            let (dx, dy) = (a.x - pts[j].x, a.y - pts[j].y);
            if dx * dx + dy * dy <= r2 {
                let d = dx.hypot(dy);
                list.push(Edge {
                    node: j,
                    distance: d.max(radio.d_min),
                    weight: edge_weight(d, radio),
                });
            }
        });
        list.sort_by_key(|e| e.node);
    }
    InterferenceGraph { neighbors }
}
