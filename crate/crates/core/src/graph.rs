//! Undirected multigraphs backing graphic and cographic matroids.

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::set::{Element, ElementSet};

/// An undirected multigraph on vertices `0..vertices`. Edge index is the
/// element id; self-loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

impl Graph {
    pub fn new(vertices: usize, edges: Vec<[usize; 2]>) -> Result<Self> {
        let g = Self { vertices, edges };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, &[u, v]) in self.edges.iter().enumerate() {
            if u >= self.vertices || v >= self.vertices {
                return input(format!(
                    "edge {i} = [{u},{v}] has an endpoint outside 0..{}",
                    self.vertices
                ));
            }
        }
        Ok(())
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Degree counting a self-loop twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&[a, b]| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    /// Edge ids incident to `v`, in increasing order.
    pub fn incident(&self, v: usize) -> Vec<Element> {
        (0..self.edges.len())
            .filter(|&i| self.edges[i].contains(&v))
            .collect()
    }

    /// Whether the edges in `set` form a forest (self-loops are cycles).
    pub fn is_forest(&self, set: &ElementSet) -> bool {
        let mut uf = UnionFind::<usize>::new(self.vertices);
        set.iter().all(|e| {
            let [u, v] = self.edges[e];
            uf.union(u, v)
        })
    }

    /// Number of connected components of the graph with the edges in
    /// `removed` deleted.
    pub fn components_without(&self, removed: &ElementSet) -> usize {
        let mut uf = UnionFind::<usize>::new(self.vertices);
        let mut components = self.vertices;
        for (i, &[u, v]) in self.edges.iter().enumerate() {
            if !removed.contains(i) && uf.union(u, v) {
                components -= 1;
            }
        }
        components
    }

    pub fn components(&self) -> usize {
        self.components_without(&ElementSet::new())
    }

    pub fn is_connected(&self) -> bool {
        self.vertices <= 1 || self.components() == 1
    }
}
