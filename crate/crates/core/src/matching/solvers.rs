use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::exchange::maximum_common_independent_set;
use crate::matroid::Matroid;
use crate::set::{Element, ElementSet};

/// Maximum matroid matching on a minor of a pair's matroid and a subgraph
/// of its graph.
///
/// `edges` lists `(index, endpoints)` with both endpoints in `m.ground()`;
/// the answer is a set of those indices.
pub trait MatchingSolver: Send + Sync {
    fn name(&self) -> &'static str;

    /// Checks that the solver applies to the pair at all.
    fn validate(&self, _m: &Matroid, _edges: &[[Element; 2]]) -> Result<()> {
        Ok(())
    }

    fn maximum(&self, m: &Matroid, edges: &[(usize, [Element; 2])]) -> Result<ElementSet>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Brute,
    Intersection,
    Free,
}

impl SolverKind {
    pub fn build(self) -> Arc<dyn MatchingSolver> {
        match self {
            SolverKind::Brute => Arc::new(BruteSolver),
            SolverKind::Intersection => Arc::new(IntersectionSolver),
            SolverKind::Free => Arc::new(FreeSolver),
        }
    }
}

/// Branch and bound over edges for any matroid. Exponential in the worst
/// case; bounded by the rank of the still-reachable vertices.
#[derive(Debug, Clone, Copy, Default)]
pub struct BruteSolver;

/// Plain maximum graph matching. Only valid when the matroid is free.
#[derive(Debug, Clone, Copy, Default)]
pub struct FreeSolver;

/// For pairs built by [`super::encode_intersection`]: solves the matroid
/// intersection problem of the two sides by augmenting paths.
#[derive(Debug, Clone, Copy, Default)]
pub struct IntersectionSolver;

/// Indexed edges `(index, [u, v])`.
type IndexedEdges = [(usize, [Element; 2])];
/// Upper bound on the number of edges still addable given the covered
/// vertices and the remaining candidates.
type Room<'a> = dyn Fn(&ElementSet, &IndexedEdges) -> usize + 'a;

struct Search<'a> {
    edges: &'a [(usize, [Element; 2])],
    independent: &'a dyn Fn(&ElementSet) -> bool,
    room: &'a Room<'a>,
    cap: usize,
    current: Vec<usize>,
    covered: ElementSet,
    best: Vec<usize>,
}

impl Search<'_> {
    fn go(&mut self, at: usize) {
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        if self.best.len() >= self.cap || at == self.edges.len() {
            return;
        }
        let rest = &self.edges[at..];
        if self.current.len() + rest.len() <= self.best.len()
            || self.current.len() + (self.room)(&self.covered, rest) <= self.best.len()
        {
            return;
        }
        let (k, [u, v]) = self.edges[at];
        if !self.covered.contains(u) && !self.covered.contains(v) {
            let grown = self.covered.with(u).with(v);
            if (self.independent)(&grown) {
                let saved = std::mem::replace(&mut self.covered, grown);
                self.current.push(k);
                self.go(at + 1);
                self.current.pop();
                self.covered = saved;
            }
        }
        self.go(at + 1);
    }
}

fn free_vertices(covered: &ElementSet, rest: &[(usize, [Element; 2])]) -> ElementSet {
    rest.iter()
        .flat_map(|&(_, e)| e)
        .filter(|v| !covered.contains(*v))
        .collect()
}

fn branch_and_bound(
    edges: &[(usize, [Element; 2])],
    independent: &dyn Fn(&ElementSet) -> bool,
    room: &Room<'_>,
    cap: usize,
) -> ElementSet {
    let mut search = Search {
        edges,
        independent,
        room,
        cap,
        current: Vec::new(),
        covered: ElementSet::new(),
        best: Vec::new(),
    };
    search.go(0);
    search.best.into_iter().collect()
}

impl MatchingSolver for BruteSolver {
    fn name(&self) -> &'static str {
        "brute"
    }

    fn maximum(&self, m: &Matroid, edges: &[(usize, [Element; 2])]) -> Result<ElementSet> {
        let reachable = free_vertices(&ElementSet::new(), edges);
        let cap = m.rank(&reachable)? / 2;
        let room = |covered: &ElementSet, rest: &[(usize, [Element; 2])]| {
            let pool = covered.union(&free_vertices(covered, rest));
            m.rank(&pool).map_or(usize::MAX, |r| (r - covered.len()) / 2)
        };
        Ok(branch_and_bound(edges, &|x| m.is_independent(x), &room, cap))
    }
}

impl MatchingSolver for FreeSolver {
    fn name(&self) -> &'static str {
        "free"
    }

    fn validate(&self, m: &Matroid, _edges: &[[Element; 2]]) -> Result<()> {
        if m.is_independent(m.ground()) {
            Ok(())
        } else {
            input("the free solver needs a free matroid")
        }
    }

    fn maximum(&self, _m: &Matroid, edges: &[(usize, [Element; 2])]) -> Result<ElementSet> {
        let cap = free_vertices(&ElementSet::new(), edges).len() / 2;
        let room = |covered: &ElementSet, rest: &[(usize, [Element; 2])]| free_vertices(covered, rest).len() / 2;
        Ok(branch_and_bound(edges, &|_| true, &room, cap))
    }
}

impl MatchingSolver for IntersectionSolver {
    fn name(&self) -> &'static str {
        "intersection"
    }

    fn validate(&self, _m: &Matroid, edges: &[[Element; 2]]) -> Result<()> {
        let mut seen = ElementSet::new();
        if edges.iter().all(|e| e.iter().all(|&v| seen.insert(v))) {
            Ok(())
        } else {
            input("the intersection solver needs pairwise disjoint edges")
        }
    }

    fn maximum(&self, m: &Matroid, edges: &[(usize, [Element; 2])]) -> Result<ElementSet> {
        let domain: ElementSet = edges.iter().map(|&(k, _)| k).collect();
        let ends: HashMap<usize, [Element; 2]> = edges.iter().copied().collect();
        let left = Matroid::mapped(m, &domain, |k| ends[&k][0])?;
        let right = Matroid::mapped(m, &domain, |k| ends[&k][1])?;
        maximum_common_independent_set(&left, &right)
    }
}
