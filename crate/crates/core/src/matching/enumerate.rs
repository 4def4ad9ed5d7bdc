use std::ops::ControlFlow;

use super::TractablePair;
use crate::error::{contract, Result};
use crate::intersection::Sink;
use crate::search::flashlight;
use crate::set::{Element, ElementSet};
use crate::stats::{DelayMeter, EnumerationStats};

/// `(|R| - |M|, |M △ R|)`, or `(0, 0)` for maximum matchings; parents are
/// strictly smaller in lexicographic order.
pub type Potential = (usize, usize);

pub fn potential(m: &ElementSet, root: &ElementSet) -> Potential {
    if m.len() >= root.len() {
        (0, 0)
    } else {
        (root.len() - m.len(), m.symmetric_difference(root).len())
    }
}

/// A maximum matching extending `include` and avoiding `exclude`, if any.
fn extension_witness(p: &TractablePair, include: &ElementSet, exclude: &ElementSet, opt: usize) -> Result<Option<ElementSet>> {
    let covered = p.vertices_of(include);
    let minor = p.matroid().contract(&covered)?;
    let edges = p.induced_edges(minor.ground(), exclude);
    let rest = p.solver().maximum(&minor, &edges)?;
    Ok((rest.len() + include.len() == opt).then(|| rest.union(include)))
}

/// Is there a maximum matching containing `include` and avoiding
/// `exclude`? Solved on the contraction by `V(include)` with the graph
/// induced on the remaining vertices, minus the `exclude` edges.
pub fn matching_extension_feasible(p: &TractablePair, include: &ElementSet, exclude: &ElementSet) -> Result<bool> {
    if !include.is_disjoint(exclude) {
        return contract("include and exclude overlap");
    }
    if !p.is_matching(include) {
        return contract(format!("{include:?} is not a matching"));
    }
    let opt = p.maximum_matching()?.len();
    Ok(extension_witness(p, include, exclude, opt)?.is_some())
}

fn for_each_maximum(
    p: &TractablePair,
    root: &ElementSet,
    emit: &mut dyn FnMut(&ElementSet) -> Result<ControlFlow<()>>,
) -> Result<()> {
    let edges: Vec<Element> = (0..p.edge_count()).collect();
    let opt = root.len();
    let mut feasible = |include: &ElementSet, exclude: &ElementSet, _: &ElementSet| {
        if !p.is_matching(include) {
            return Ok(None);
        }
        extension_witness(p, include, exclude, opt)
    };
    flashlight(&edges, root.clone(), &mut feasible, emit)
}

/// Emits every maximum matching exactly once, branching on the lowest
/// undecided edge index with the include branch first.
pub fn enumerate_maximum_matchings(p: &TractablePair, sink: &mut Sink<'_>) -> Result<EnumerationStats> {
    let mut meter = DelayMeter::new(&[p.matroid()]);
    let max = p.maximum_matching()?;
    for_each_maximum(p, &max, &mut |m| {
        meter.mark();
        Ok(sink(m))
    })?;
    Ok(meter.finish())
}

#[derive(Debug, Clone)]
pub struct MatchingParentTrace {
    /// Lowest vertex of `V(R) ∖ V(M)` that keeps `V(M)` independent.
    pub x: Element,
    pub removed: usize,
    pub added: usize,
    /// `(M ∖ {removed}) ∪ {added}`.
    pub swapped: ElementSet,
    pub parent: ElementSet,
}

/// Parent of a maximal matching `m` with `|m| < |root|`, following the
/// exchange argument: add the root edge `f` at `x`, drop one edge `e` of
/// `m ∖ root`, complete greedily.
///
/// If `M + f` is a graph matching, `V(M) + x + x'` is dependent and its
/// circuit is not contained in `V(R)`, so some edge of `M ∖ R` meets it;
/// the lowest such edge is removed. Reports a contract violation when any
/// of `|M| <= |parent| <= |M| + 2`, `|M △ parent| <= 4` or
/// `v(parent) < v(M)` fails.
pub fn matching_parent_trace(p: &TractablePair, m: &ElementSet, root: &ElementSet) -> Result<MatchingParentTrace> {
    if m.len() >= root.len() {
        return contract(format!(
            "matching parent needs |M| < |R|, got {} and {}",
            m.len(),
            root.len()
        ));
    }
    let covered = p.vertices_of(m);
    let Some(x) = p
        .vertices_of(root)
        .difference(&covered)
        .iter()
        .find(|&x| p.matroid().is_independent(&covered.with(x)))
    else {
        return contract(format!("no root vertex extends V(M) for M = {m:?}"));
    };
    let Some(added) = root.iter().find(|&k| p.edges()[k].contains(&x)) else {
        return contract(format!("root {root:?} does not cover {x}"));
    };
    let [a, b] = p.edges()[added];
    let other = if a == x { b } else { a };

    let removed = if covered.contains(other) {
        m.iter().find(|&k| p.edges()[k].contains(&other))
    } else {
        let circuit = p.matroid().fundamental_circuit(&covered.with(x), other)?;
        let rest = circuit.without(x).without(other);
        m.difference(root)
            .iter()
            .find(|&k| p.edges()[k].iter().any(|&v| rest.contains(v)))
    };
    let Some(removed) = removed else {
        return contract(format!("no exchange edge for M = {m:?}, R = {root:?}"));
    };
    let mut swapped = m.without(removed);
    swapped.insert(added);
    if !p.is_matching(&swapped) {
        return contract(format!("exchange {swapped:?} is not a matching"));
    }
    let parent = p.complete_to_maximal(&swapped);

    let violated = if parent.len() > m.len() + 2 {
        Some("|mu(M - e + f)| <= |M| + 2")
    } else if parent.len() < m.len() {
        Some("|M| <= |parent|")
    } else if m.symmetric_difference(&parent).len() > 4 {
        Some("|M ^ parent| <= 4")
    } else if potential(&parent, root) >= potential(m, root) {
        Some("v(parent) < v(M)")
    } else {
        None
    };
    if let Some(law) = violated {
        return contract(format!(
            "matching parent law {law} fails for M = {m:?}, R = {root:?}, parent = {parent:?}"
        ));
    }
    Ok(MatchingParentTrace {
        x,
        removed,
        added,
        swapped,
        parent,
    })
}

/// Parent of `m` under the maximum matching `root`.
pub fn matching_parent(p: &TractablePair, m: &ElementSet, root: &ElementSet) -> Result<ElementSet> {
    if !p.is_maximal(m) {
        return contract(format!("{m:?} is not a maximal matching"));
    }
    if !p.is_matching(root) {
        return contract(format!("{root:?} is not a matching"));
    }
    Ok(matching_parent_trace(p, m, root)?.parent)
}

fn subsets_up_to(items: &[usize], max: usize) -> Vec<ElementSet> {
    fn go(items: &[usize], max: usize, current: &mut ElementSet, out: &mut Vec<ElementSet>) {
        for (i, &e) in items.iter().enumerate() {
            current.insert(e);
            out.push(current.clone());
            if current.len() < max {
                go(&items[i + 1..], max, current, out);
            }
            current.remove(e);
        }
    }
    let mut out = Vec::new();
    go(items, max, &mut ElementSet::new(), &mut out);
    out
}

/// Candidate children `(M ∖ A) ∪ B` with `|A| + |B| <= 4`, in order of
/// `A` then `B`. Only perturbations that can invert a parent step are
/// produced: `A` holds the added root edge, so `A ∩ R ≠ ∅`; `B` holds the
/// removed edge of `M' ∖ R`, so `B ⊄ R`; and `1 <= |B| <= |A|` because a
/// parent is never smaller.
fn candidates(p: &TractablePair, m: &ElementSet, root: &ElementSet) -> Vec<ElementSet> {
    let mut out = Vec::new();
    let members = m.to_vec();
    for a in subsets_up_to(&members, 3) {
        if a.is_disjoint(root) {
            continue;
        }
        let kept = m.difference(&a);
        let free = p.vertices_of(&kept);
        let addable: Vec<usize> = (0..p.edge_count())
            .filter(|&k| !m.contains(k) && p.edges()[k].iter().all(|v| !free.contains(*v)))
            .collect();
        let limit = a.len().min(4 - a.len());
        for b in subsets_up_to(&addable, limit) {
            if b.is_subset(root) || !p.is_graph_matching(&b) {
                continue;
            }
            out.push(kept.union(&b));
        }
    }
    out
}

/// Callback invoked with `(child, trace)` for every parent computation.
pub type MatchingParentObserver<'a> = dyn FnMut(&ElementSet, &MatchingParentTrace) + 'a;

/// Reverse search for maximal matchings of size at least `tau`.
pub struct LargeMatchingEnumerator<'a> {
    pair: TractablePair,
    tau: usize,
    observer: Option<Box<MatchingParentObserver<'a>>>,
}

impl<'a> LargeMatchingEnumerator<'a> {
    pub fn new(pair: &TractablePair, tau: usize) -> Self {
        Self {
            pair: pair.clone(),
            tau,
            observer: None,
        }
    }

    pub fn observe_parents(mut self, observer: impl FnMut(&ElementSet, &MatchingParentTrace) + 'a) -> Self {
        self.observer = Some(Box::new(observer));
        self
    }

    pub fn run(mut self, sink: &mut Sink<'_>) -> Result<EnumerationStats> {
        let p = &self.pair;
        let mut meter = DelayMeter::new(&[p.matroid()]);
        let max = p.maximum_matching()?;
        if max.len() < self.tau {
            return Ok(meter.finish());
        }
        let tau = self.tau;
        let observer = &mut self.observer;
        let mut fixed_root: Option<ElementSet> = None;
        for_each_maximum(p, &max, &mut |start| {
            let root = fixed_root.get_or_insert_with(|| start.clone()).clone();
            meter.mark();
            if sink(start).is_break() {
                return Ok(ControlFlow::Break(()));
            }
            if tau >= root.len() {
                return Ok(ControlFlow::Continue(()));
            }
            let depth_bound = (root.len() + 1) * (p.edge_count() + 1);
            let mut stack = vec![(start.clone(), candidates(p, start, &root), 0usize)];
            while let Some((node, list, mut cursor)) = stack.pop() {
                let mut found = None;
                while cursor < list.len() {
                    let candidate = &list[cursor];
                    cursor += 1;
                    if candidate.len() < tau || candidate.len() >= root.len() || !p.is_maximal(candidate) {
                        continue;
                    }
                    meter.count_parent_call();
                    let trace = matching_parent_trace(p, candidate, &root)?;
                    if let Some(observe) = observer.as_mut() {
                        observe(candidate, &trace);
                    }
                    if trace.parent == node {
                        found = Some(candidate.clone());
                        break;
                    }
                }
                let Some(child) = found else { continue };
                stack.push((node, list, cursor));
                meter.mark();
                if sink(&child).is_break() {
                    return Ok(ControlFlow::Break(()));
                }
                let grandchildren = candidates(p, &child, &root);
                stack.push((child, grandchildren, 0));
                if stack.len() > depth_bound {
                    return contract("matching reverse search exceeded its depth bound");
                }
            }
            Ok(ControlFlow::Continue(()))
        })?;
        Ok(meter.finish())
    }
}

/// Emits every maximal matching with at least `tau` edges exactly once.
pub fn enumerate_large_matchings(p: &TractablePair, tau: usize, sink: &mut Sink<'_>) -> Result<EnumerationStats> {
    LargeMatchingEnumerator::new(p, tau).run(sink)
}
