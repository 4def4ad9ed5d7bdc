//! The exchange digraph of a common independent set, augmenting paths and
//! Lawler-style maximum common independent set search.

use std::fmt;
use std::fmt::Write as _;

use crate::error::{contract, input, Result};
use crate::matroid::{is_common_independent, Matroid};
use crate::set::{Element, ElementSet};

/// A vertex of the exchange digraph: a ground element or one of the two
/// terminals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Source,
    Element(Element),
    Sink,
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Source => f.write_str("s"),
            Vertex::Sink => f.write_str("t"),
            Vertex::Element(e) => write!(f, "{e}"),
        }
    }
}

/// Arc classes. For a common independent set `I`, `e ∈ I` and `f ∉ I`:
///
/// * `A1`: `(e, f)` when `I + f` is dependent in `M1` but `I + f - e` is not;
/// * `A2`: `(f, e)` when `I + f` is dependent in `M2` but `I + f - e` is not;
/// * `A3`: `(s, f)` when `I + f` is independent in `M1`;
/// * `A4`: `(f, t)` when `I + f` is independent in `M2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArcClass {
    A1,
    A2,
    A3,
    A4,
}

impl fmt::Display for ArcClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub from: Vertex,
    pub to: Vertex,
    pub class: ArcClass,
}

/// Exchange digraph `D(I)` on `ground ∪ {s, t}`.
#[derive(Debug, Clone)]
pub struct ExchangeDigraph {
    ground: ElementSet,
    current: ElementSet,
    arcs: Vec<Arc>,
    /// Indexed by [`ExchangeDigraph::slot`]; each list sorted by target.
    out: Vec<Vec<Vertex>>,
    inc: Vec<Vec<Vertex>>,
}

impl ExchangeDigraph {
    fn slot(&self, v: Vertex) -> usize {
        let n = self.out.len() - 2;
        match v {
            Vertex::Element(e) => e,
            Vertex::Source => n,
            Vertex::Sink => n + 1,
        }
    }

    /// The common independent set the digraph was built for.
    pub fn current(&self) -> &ElementSet {
        &self.current
    }

    pub fn ground(&self) -> &ElementSet {
        &self.ground
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn has_arc(&self, from: Vertex, to: Vertex) -> bool {
        self.successors(from).binary_search(&to).is_ok()
    }

    /// Out-neighbours in increasing order (`t` last).
    pub fn successors(&self, v: Vertex) -> &[Vertex] {
        &self.out[self.slot(v)]
    }

    /// In-neighbours in increasing order (`s` first).
    pub fn predecessors(&self, v: Vertex) -> &[Vertex] {
        &self.inc[self.slot(v)]
    }

    /// Ground-element out-neighbours of `e`.
    pub fn out_elements(&self, e: Element) -> ElementSet {
        elements_of(self.successors(Vertex::Element(e)))
    }

    /// Ground-element in-neighbours of `e`.
    pub fn in_elements(&self, e: Element) -> ElementSet {
        elements_of(self.predecessors(Vertex::Element(e)))
    }

    /// Graphviz rendering with arc-class labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph exchange {\n  rankdir=LR;\n");
        let _ = writeln!(out, "  s [shape=box];\n  t [shape=box];");
        for e in &self.ground {
            let style = if self.current.contains(e) {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(out, "  {e} [shape={style}];");
        }
        for arc in &self.arcs {
            let _ = writeln!(
                out,
                "  {} -> {} [label=\"{}\"];",
                arc.from, arc.to, arc.class
            );
        }
        out.push_str("}\n");
        out
    }
}

fn elements_of(vs: &[Vertex]) -> ElementSet {
    vs.iter()
        .filter_map(|v| match v {
            Vertex::Element(e) => Some(*e),
            _ => None,
        })
        .collect()
}

fn same_ground(m1: &Matroid, m2: &Matroid) -> Result<()> {
    if m1.ground() != m2.ground() {
        return input(format!(
            "matroids live on different ground sets {:?} and {:?}",
            m1.ground(),
            m2.ground()
        ));
    }
    Ok(())
}

/// Builds `D(i)` for a common independent set `i` of `m1` and `m2`.
///
/// Issues at most `2n + 2n·|i|` oracle queries.
pub fn build_exchange_digraph(m1: &Matroid, m2: &Matroid, i: &ElementSet) -> Result<ExchangeDigraph> {
    same_ground(m1, m2)?;
    if !i.is_subset(m1.ground()) {
        return input(format!("{i:?} is not contained in the ground set"));
    }
    if !is_common_independent(m1, m2, i) {
        return contract(format!("{i:?} is not a common independent set"));
    }
    let ground = m1.ground().clone();
    let mut arcs = Vec::new();
    for f in ground.difference(i).iter() {
        let plus = i.with(f);
        if m1.is_independent(&plus) {
            arcs.push(Arc {
                from: Vertex::Source,
                to: Vertex::Element(f),
                class: ArcClass::A3,
            });
        } else {
            for e in i {
                if m1.is_independent(&plus.without(e)) {
                    arcs.push(Arc {
                        from: Vertex::Element(e),
                        to: Vertex::Element(f),
                        class: ArcClass::A1,
                    });
                }
            }
        }
        if m2.is_independent(&plus) {
            arcs.push(Arc {
                from: Vertex::Element(f),
                to: Vertex::Sink,
                class: ArcClass::A4,
            });
        } else {
            for e in i {
                if m2.is_independent(&plus.without(e)) {
                    arcs.push(Arc {
                        from: Vertex::Element(f),
                        to: Vertex::Element(e),
                        class: ArcClass::A2,
                    });
                }
            }
        }
    }
    arcs.sort();

    let slots = ground.max_element().map_or(0, |m| m + 1) + 2;
    let mut d = ExchangeDigraph {
        ground,
        current: i.clone(),
        arcs: Vec::new(),
        out: vec![Vec::new(); slots],
        inc: vec![Vec::new(); slots],
    };
    for arc in &arcs {
        let (a, b) = (d.slot(arc.from), d.slot(arc.to));
        d.out[a].push(arc.to);
        d.inc[b].push(arc.from);
    }
    for list in d.out.iter_mut().chain(d.inc.iter_mut()) {
        list.sort();
    }
    d.arcs = arcs;
    Ok(d)
}

/// An `s`–`t` path; stores the ground elements strictly between the
/// terminals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentingPath {
    interior: Vec<Element>,
}

impl AugmentingPath {
    pub fn interior(&self) -> &[Element] {
        &self.interior
    }

    /// Number of vertices including `s` and `t`.
    pub fn vertex_count(&self) -> usize {
        self.interior.len() + 2
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        std::iter::once(Vertex::Source)
            .chain(self.interior.iter().map(|&e| Vertex::Element(e)))
            .chain(std::iter::once(Vertex::Sink))
            .collect()
    }

    pub fn interior_set(&self) -> ElementSet {
        self.interior.iter().copied().collect()
    }
}

impl fmt::Display for AugmentingPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices().iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Canonical shortest `s`–`t` path, or `None` when `t` is unreachable.
///
/// Breadth-first search layer by layer; each layer is scanned in increasing
/// id order, so every vertex's predecessor is the smallest-id vertex of the
/// previous layer with an arc to it. A shortest path has no shortcuts.
pub fn shortest_augmenting_path(d: &ExchangeDigraph) -> Option<AugmentingPath> {
    let slots = d.out.len();
    let mut pred: Vec<Option<Vertex>> = vec![None; slots];
    let mut seen = vec![false; slots];
    seen[d.slot(Vertex::Source)] = true;
    let mut layer = vec![Vertex::Source];
    while !layer.is_empty() && !seen[d.slot(Vertex::Sink)] {
        let mut next = Vec::new();
        for &u in &layer {
            for &v in d.successors(u) {
                let k = d.slot(v);
                if !seen[k] {
                    seen[k] = true;
                    pred[k] = Some(u);
                    next.push(v);
                }
            }
        }
        next.sort();
        layer = next;
    }
    if !seen[d.slot(Vertex::Sink)] {
        return None;
    }
    let mut interior = Vec::new();
    let mut v = pred[d.slot(Vertex::Sink)].expect("sink has a predecessor");
    while let Vertex::Element(e) = v {
        interior.push(e);
        v = pred[d.slot(v)].expect("path leads back to the source");
    }
    interior.reverse();
    Some(AugmentingPath { interior })
}

/// `i △ V(p) ∖ {s, t}`.
pub fn augment(i: &ElementSet, p: &AugmentingPath) -> ElementSet {
    i.symmetric_difference(&p.interior_set())
}

/// A maximum common independent set, grown from `∅` by repeated shortest
/// augmenting paths. Deterministic.
pub fn maximum_common_independent_set(m1: &Matroid, m2: &Matroid) -> Result<ElementSet> {
    same_ground(m1, m2)?;
    augment_until(m1, m2, ElementSet::new(), usize::MAX)
}

/// Grows the common independent set `start` by shortest augmenting paths
/// until it has `target` elements or no augmenting path is left.
pub fn augment_until(m1: &Matroid, m2: &Matroid, start: ElementSet, target: usize) -> Result<ElementSet> {
    let mut current = start;
    while current.len() < target {
        let d = build_exchange_digraph(m1, m2, &current)?;
        match shortest_augmenting_path(&d) {
            Some(p) => current = augment(&current, &p),
            None => break,
        }
    }
    Ok(current)
}

/// Lowest-id greedy completion of a common independent set to a maximal
/// one.
pub fn complete_to_maximal(m1: &Matroid, m2: &Matroid, x: &ElementSet) -> Result<ElementSet> {
    same_ground(m1, m2)?;
    if !x.is_subset(m1.ground()) {
        return input(format!("{x:?} is not contained in the ground set"));
    }
    if !is_common_independent(m1, m2, x) {
        return contract(format!("{x:?} is not a common independent set"));
    }
    let mut out = x.clone();
    for e in m1.ground().difference(x).iter() {
        let candidate = out.with(e);
        if is_common_independent(m1, m2, &candidate) {
            out = candidate;
        }
    }
    Ok(out)
}

/// Whether a common independent set admits no single-element extension.
pub fn is_maximal_common_independent(m1: &Matroid, m2: &Matroid, x: &ElementSet) -> bool {
    is_common_independent(m1, m2, x)
        && m1
            .ground()
            .difference(x)
            .iter()
            .all(|e| !is_common_independent(m1, m2, &x.with(e)))
}
