//! Minimal connected vertex covers of subcubic graphs as maximal matchings
//! of a cographic matroid.
//!
//! A vertex set `X` is a minimal connected vertex cover exactly when
//! `V ∖ X` is a maximal non-separating independent set. Every vertex `v`
//! is split according to its degree and gets two extra edges `f1(v)`,
//! `f2(v)`; every original edge is subdivided into `e'` and `e''`. In the
//! cographic matroid of that graph, the pairs `{f1(v), f2(v)}` of a
//! matching are exactly the vertices of a non-separating independent set.

use std::ops::ControlFlow;

use crate::error::{input, Result};
use crate::graph::Graph;
use crate::intersection::Sink;
use crate::matching::{enumerate_large_matchings, SolverKind, TractablePair};
use crate::matroid::Matroid;
use crate::set::ElementSet;
use crate::stats::EnumerationStats;

/// What an edge of the matching graph `H` stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiTarget {
    Vertex(usize),
    Edge(usize),
}

/// The derived graph `G'`, the matching pair on its cographic matroid and
/// the bijection `φ` from edges of `H` to `V ∪ E`.
///
/// Ids: `f1(v) = 2v`, `f2(v) = 2v + 1`, `e' = 2|V| + 2e`,
/// `e'' = 2|V| + 2e + 1`. Edge `v` of `H` is `{f1(v), f2(v)}` and edge
/// `|V| + e` is `{e', e''}`.
#[derive(Debug, Clone)]
pub struct CvcInstance {
    pub graph: Graph,
    pub derived: Graph,
    pub pair: TractablePair,
    /// `V'(v)`: the vertices of `G'` that replace `v`.
    pub splits: Vec<Vec<usize>>,
    /// Subdivision vertex of each original edge.
    pub midpoints: Vec<usize>,
}

impl CvcInstance {
    pub fn phi(&self, h_edge: usize) -> PhiTarget {
        let n = self.graph.vertices;
        if h_edge < n {
            PhiTarget::Vertex(h_edge)
        } else {
            PhiTarget::Edge(h_edge - n)
        }
    }

    /// `φ(M)` split into its vertex and edge parts.
    pub fn phi_set(&self, m: &ElementSet) -> (ElementSet, ElementSet) {
        let mut vertices = ElementSet::new();
        let mut edges = ElementSet::new();
        for k in m {
            match self.phi(k) {
                PhiTarget::Vertex(v) => vertices.insert(v),
                PhiTarget::Edge(e) => edges.insert(e),
            };
        }
        (vertices, edges)
    }

    /// `φ⁻¹` of a vertex set.
    pub fn phi_inverse(&self, vertices: &ElementSet) -> ElementSet {
        vertices.clone()
    }

    /// The cover `V ∖ φ(M)` for a matching `M`.
    pub fn cover(&self, m: &ElementSet) -> ElementSet {
        ElementSet::full(self.graph.vertices).difference(&self.phi_set(m).0)
    }
}

fn check_input(g: &Graph) -> Result<()> {
    g.validate()?;
    if g.vertices == 0 {
        return input("the graph has no vertices");
    }
    let mut seen = std::collections::HashSet::new();
    for (k, &[u, v]) in g.edges.iter().enumerate() {
        if u == v {
            return input(format!("edge {k} is a self-loop"));
        }
        if !seen.insert([u.min(v), u.max(v)]) {
            return input(format!("edge {k} is a parallel edge"));
        }
    }
    if let Some(v) = (0..g.vertices).find(|&v| g.degree(v) > 3) {
        return input(format!("vertex {v} has degree {} > 3", g.degree(v)));
    }
    if !g.is_connected() {
        return input("the graph is disconnected");
    }
    Ok(())
}

/// Builds `G'`, `H` and the cographic pair for a connected simple graph
/// with maximum degree 3 and at least two vertices.
pub fn build_cvc_instance(g: &Graph) -> Result<CvcInstance> {
    check_input(g)?;
    let n = g.vertices;
    if n < 2 {
        return input("the reduction needs at least two vertices");
    }
    // Vertices of G': split copies first, then one midpoint per edge.
    let mut splits = Vec::with_capacity(n);
    let mut next = 0;
    for v in 0..n {
        let copies = g.degree(v).max(1);
        splits.push((next..next + copies).collect::<Vec<_>>());
        next += copies;
    }
    let midpoints: Vec<usize> = (next..next + g.edge_count()).collect();
    let total = next + g.edge_count();

    let mut edges = vec![[0, 0]; 2 * n + 2 * g.edge_count()];
    for (v, copies) in splits.iter().enumerate() {
        let (f1, f2) = match copies[..] {
            [a, b, c] => ([a, b], [b, c]),
            [a, b] => ([a, b], [a, b]),
            [a] => ([a, a], [a, a]),
            _ => unreachable!("subcubic vertices split into at most three copies"),
        };
        edges[2 * v] = f1;
        edges[2 * v + 1] = f2;
    }
    // The i-th incident edge of v attaches to the i-th copy of v.
    let mut used = vec![0usize; n];
    for (e, &[u, v]) in g.edges.iter().enumerate() {
        let cu = splits[u][used[u]];
        used[u] += 1;
        let cv = splits[v][used[v]];
        used[v] += 1;
        edges[2 * n + 2 * e] = [cu, midpoints[e]];
        edges[2 * n + 2 * e + 1] = [midpoints[e], cv];
    }
    let derived = Graph::new(total, edges)?;
    let matroid = Matroid::cographic(derived.clone())?;
    let h_edges = (0..n)
        .map(|v| [2 * v, 2 * v + 1])
        .chain((0..g.edge_count()).map(|e| [2 * n + 2 * e, 2 * n + 2 * e + 1]))
        .collect();
    let pair = TractablePair::with_solver(matroid, h_edges, SolverKind::Brute)?;
    Ok(CvcInstance {
        graph: g.clone(),
        derived,
        pair,
        splits,
        midpoints,
    })
}

/// Emits every minimal connected vertex cover with at most `tau` vertices
/// once, as sorted vertex sets.
///
/// Runs the large maximal matching enumeration with threshold
/// `|V| - tau`. A single vertex has the empty cover. A single edge is
/// answered directly: there both leaf pairs can be removed together
/// without disconnecting `G'`, so the reduction does not apply.
pub fn enumerate_min_cvc(g: &Graph, tau: usize, sink: &mut Sink<'_>) -> Result<EnumerationStats> {
    check_input(g)?;
    let n = g.vertices;
    if n <= 2 {
        let covers: Vec<ElementSet> = if n == 1 {
            vec![ElementSet::new()]
        } else {
            vec![ElementSet::from([0]), ElementSet::from([1])]
        };
        let mut stats = EnumerationStats::default();
        for cover in covers.iter().filter(|c| c.len() <= tau) {
            stats.outputs += 1;
            stats.gap_oracle_calls.push(0);
            stats.gap_nanos.push(0);
            if sink(cover).is_break() {
                break;
            }
        }
        return Ok(stats);
    }
    let inst = build_cvc_instance(g)?;
    let threshold = n.saturating_sub(tau);
    enumerate_large_matchings(&inst.pair, threshold, &mut |m| {
        let (_, edges) = inst.phi_set(m);
        debug_assert!(edges.is_empty(), "matching {m:?} uses a subdivided edge");
        sink(&inst.cover(m))
    })
}

/// Convenience for tests and the CLI: collected covers.
pub fn collect_min_cvc(g: &Graph, tau: usize) -> Result<Vec<ElementSet>> {
    let mut out = Vec::new();
    enumerate_min_cvc(g, tau, &mut |c| {
        out.push(c.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}
