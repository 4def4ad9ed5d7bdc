//! Matroid matchings of a matroid/graph pair: edge sets that are graph
//! matchings whose covered vertices are independent.

mod enumerate;
mod solvers;

use std::fmt;
use std::sync::Arc;

use crate::error::{input, Result};
use crate::matroid::Matroid;
use crate::set::{Element, ElementSet};

pub use enumerate::{
    enumerate_large_matchings, enumerate_maximum_matchings, matching_extension_feasible,
    matching_parent, matching_parent_trace, potential, LargeMatchingEnumerator,
    MatchingParentObserver, MatchingParentTrace, Potential,
};
pub use solvers::{BruteSolver, FreeSolver, IntersectionSolver, MatchingSolver, SolverKind};

/// A matroid on the vertex set together with a graph on the same vertices
/// and a maximum-matching procedure valid for its minors.
#[derive(Clone)]
pub struct TractablePair {
    matroid: Matroid,
    edges: Vec<[Element; 2]>,
    solver: Arc<dyn MatchingSolver>,
}

impl fmt::Debug for TractablePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TractablePair")
            .field("ground", self.matroid.ground())
            .field("edges", &self.edges)
            .field("solver", &self.solver.name())
            .finish()
    }
}

impl TractablePair {
    /// Validates that every edge joins two distinct ground elements.
    pub fn new(matroid: Matroid, edges: Vec<[Element; 2]>, solver: Arc<dyn MatchingSolver>) -> Result<Self> {
        for (k, &[u, v]) in edges.iter().enumerate() {
            if u == v {
                return input(format!("edge {k} is a self-loop at {u}"));
            }
            if !matroid.ground().contains(u) || !matroid.ground().contains(v) {
                return input(format!("edge {k} = {{{u}, {v}}} leaves the ground set"));
            }
        }
        solver.validate(&matroid, &edges)?;
        Ok(Self {
            matroid,
            edges,
            solver,
        })
    }

    pub fn with_solver(matroid: Matroid, edges: Vec<[Element; 2]>, kind: SolverKind) -> Result<Self> {
        Self::new(matroid, edges, kind.build())
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn edges(&self) -> &[[Element; 2]] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn solver(&self) -> &dyn MatchingSolver {
        &*self.solver
    }

    /// All edge indices.
    pub fn edge_set(&self) -> ElementSet {
        ElementSet::full(self.edges.len())
    }

    /// `V(M)`, the vertices covered by an edge set.
    pub fn vertices_of(&self, m: &ElementSet) -> ElementSet {
        m.iter().flat_map(|k| self.edges[k]).collect()
    }

    /// Pairwise vertex-disjoint.
    pub fn is_graph_matching(&self, m: &ElementSet) -> bool {
        let mut seen = ElementSet::new();
        m.iter()
            .all(|k| self.edges[k].iter().all(|&v| seen.insert(v)))
    }

    /// Graph matching whose covered vertex set is independent.
    pub fn is_matching(&self, m: &ElementSet) -> bool {
        m.iter().all(|k| k < self.edges.len())
            && self.is_graph_matching(m)
            && self.matroid.is_independent(&self.vertices_of(m))
    }

    /// Whether `m ∪ {k}` is a matching, given that `m` is one.
    fn extends(&self, m: &ElementSet, covered: &ElementSet, k: usize) -> bool {
        let [u, v] = self.edges[k];
        !m.contains(k)
            && !covered.contains(u)
            && !covered.contains(v)
            && self.matroid.is_independent(&covered.with(u).with(v))
    }

    pub fn is_maximal(&self, m: &ElementSet) -> bool {
        if !self.is_matching(m) {
            return false;
        }
        let covered = self.vertices_of(m);
        (0..self.edges.len()).all(|k| m.contains(k) || !self.extends(m, &covered, k))
    }

    /// `μ(M)`: greedy completion by increasing edge index.
    pub fn complete_to_maximal(&self, m: &ElementSet) -> ElementSet {
        let mut out = m.clone();
        let mut covered = self.vertices_of(m);
        for k in 0..self.edges.len() {
            if self.extends(&out, &covered, k) {
                out.insert(k);
                covered.extend(self.edges[k]);
            }
        }
        out
    }

    /// Edges (as `(index, endpoints)`) with both endpoints in `vertices`
    /// and index outside `excluded`.
    pub(crate) fn induced_edges(&self, vertices: &ElementSet, excluded: &ElementSet) -> Vec<(usize, [Element; 2])> {
        self.edges
            .iter()
            .enumerate()
            .filter(|&(k, &[u, v])| !excluded.contains(k) && vertices.contains(u) && vertices.contains(v))
            .map(|(k, &e)| (k, e))
            .collect()
    }

    /// A maximum matching, found by the pair's solver.
    pub fn maximum_matching(&self) -> Result<ElementSet> {
        let all = self.induced_edges(self.matroid.ground(), &ElementSet::new());
        self.solver.maximum(&self.matroid, &all)
    }
}

/// Encodes a matroid intersection instance: element `e` becomes the edge
/// `{e, n + e}` of a direct sum `M1 ⊕ M2`, so common independent sets
/// correspond to matchings.
pub fn encode_intersection(m1: &Matroid, m2: &Matroid) -> Result<TractablePair> {
    if m1.ground() != m2.ground() {
        return input("matroids live on different ground sets");
    }
    let sum = Matroid::direct_sum(m1.clone(), m2.clone());
    let offset = m1.universe();
    let edges = m1.ground().iter().map(|e| [e, offset + e]).collect();
    TractablePair::new(sum, edges, Arc::new(IntersectionSolver))
}

/// Edge set of the encoded pair corresponding to a subset of the ground
/// set. Edge indices follow ascending ground order.
pub fn encode_set(m1: &Matroid, x: &ElementSet) -> ElementSet {
    m1.ground()
        .iter()
        .enumerate()
        .filter(|&(_, e)| x.contains(e))
        .map(|(k, _)| k)
        .collect()
}

/// Inverse of [`encode_set`].
pub fn decode_set(m1: &Matroid, m: &ElementSet) -> ElementSet {
    let ground = m1.ground().to_vec();
    m.iter().map(|k| ground[k]).collect()
}
