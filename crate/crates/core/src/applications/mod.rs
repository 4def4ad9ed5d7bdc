//! Problems that reduce to matroid intersection or matroid matching.

mod cvc;

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::graph::Graph;
use crate::matroid::Matroid;

pub use cvc::{build_cvc_instance, collect_min_cvc, enumerate_min_cvc, CvcInstance, PhiTarget};

/// Bipartite graph with sides `0..left` and `0..right`; edge `[x, y]`
/// joins left vertex `x` to right vertex `y`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BipartiteInstance {
    pub left: usize,
    pub right: usize,
    pub edges: Vec<[usize; 2]>,
    pub b_left: Vec<usize>,
    pub b_right: Vec<usize>,
}

impl BipartiteInstance {
    pub fn validate(&self) -> Result<()> {
        if self.b_left.len() != self.left || self.b_right.len() != self.right {
            return input("capacity vectors must have one entry per vertex");
        }
        if let Some([x, y]) = self.edges.iter().find(|[x, y]| *x >= self.left || *y >= self.right) {
            return input(format!("edge [{x}, {y}] leaves the bipartition"));
        }
        Ok(())
    }
}

/// Two partition matroids over the edges whose blocks are the stars of
/// each side, with the vertex capacities; common independent sets are the
/// b-matchings.
pub fn encode_b_matching(inst: &BipartiteInstance) -> Result<(Matroid, Matroid)> {
    inst.validate()?;
    let xs: Vec<usize> = inst.edges.iter().map(|e| e[0]).collect();
    let ys: Vec<usize> = inst.edges.iter().map(|e| e[1]).collect();
    Ok((
        Matroid::partition_by_label(&xs, &inst.b_left)?,
        Matroid::partition_by_label(&ys, &inst.b_right)?,
    ))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ColoredGraph {
    pub graph: Graph,
    /// Color of each edge.
    pub colors: Vec<usize>,
}

/// Graphic matroid and one-per-color partition matroid; common
/// independent sets are the colorful forests.
pub fn encode_colorful_forest(g: &ColoredGraph) -> Result<(Matroid, Matroid)> {
    if g.colors.len() != g.graph.edge_count() {
        return input("every edge needs exactly one color");
    }
    let palette = g.colors.iter().max().map_or(0, |c| c + 1);
    Ok((
        Matroid::graphic(g.graph.clone())?,
        Matroid::partition_by_label(&g.colors, &vec![1; palette])?,
    ))
}

/// Digraph with out- and in-degree bounds; arc `[u, v]` points from `u`
/// to `v`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DegreeConstrainedInstance {
    pub vertices: usize,
    pub arcs: Vec<[usize; 2]>,
    pub out_bound: Vec<usize>,
    pub in_bound: Vec<usize>,
}

/// Out-star and in-star partition matroids over the arcs.
pub fn encode_degree_constrained(inst: &DegreeConstrainedInstance) -> Result<(Matroid, Matroid)> {
    if inst.out_bound.len() != inst.vertices || inst.in_bound.len() != inst.vertices {
        return input("degree bounds must have one entry per vertex");
    }
    if let Some([u, v]) = inst.arcs.iter().find(|a| a.iter().any(|&v| v >= inst.vertices)) {
        return input(format!("arc [{u}, {v}] leaves the vertex set"));
    }
    let tails: Vec<usize> = inst.arcs.iter().map(|a| a[0]).collect();
    let heads: Vec<usize> = inst.arcs.iter().map(|a| a[1]).collect();
    Ok((
        Matroid::partition_by_label(&tails, &inst.out_bound)?,
        Matroid::partition_by_label(&heads, &inst.in_bound)?,
    ))
}
