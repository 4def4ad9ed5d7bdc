//! Enumeration of maximum common independent sets (flashlight search) and
//! of maximal common independent sets above a cardinality threshold
//! (reverse search over a parent forest rooted at the maximum sets).

use std::ops::ControlFlow;

use crate::error::{contract, Error, Result};
use crate::exchange::{
    build_exchange_digraph, complete_to_maximal, is_maximal_common_independent,
    augment_until, maximum_common_independent_set, shortest_augmenting_path, AugmentingPath,
};
use crate::matroid::{is_common_independent, Matroid};
use crate::search::flashlight;
use crate::set::{Element, ElementSet};
use crate::stats::{DelayMeter, EnumerationStats};

/// Solution consumer. Returning `Break` stops the enumeration.
pub type Sink<'a> = dyn FnMut(&ElementSet) -> ControlFlow<()> + 'a;

/// Callback invoked with `(child, trace)` for every parent computation.
pub type ParentObserver<'a> = dyn FnMut(&ElementSet, &ParentTrace) + 'a;

/// Is there a maximum common independent set containing `include` and
/// avoiding `exclude`?
#[derive(Debug, Clone)]
pub struct ExtensionInstance {
    m1: Matroid,
    m2: Matroid,
    include: ElementSet,
    exclude: ElementSet,
}

impl ExtensionInstance {
    pub fn new(m1: &Matroid, m2: &Matroid, include: ElementSet, exclude: ElementSet) -> Result<Self> {
        if !include.is_disjoint(&exclude) {
            return contract(format!(
                "include and exclude overlap in {:?}",
                include.intersection(&exclude)
            ));
        }
        let ground = m1.ground();
        if !include.is_subset(ground) || !exclude.is_subset(ground) {
            return Err(Error::Input("include/exclude outside the ground set".into()));
        }
        Ok(Self {
            m1: m1.clone(),
            m2: m2.clone(),
            include,
            exclude,
        })
    }

    pub fn feasible(&self) -> Result<bool> {
        let opt = maximum_common_independent_set(&self.m1, &self.m2)?.len();
        self.feasible_with_opt(opt)
    }

    /// Same as [`ExtensionInstance::feasible`] with the optimum supplied.
    ///
    /// Solves a maximum common independent set problem on
    /// `(M_i / include) ∖ exclude` and compares against `opt - |include|`.
    pub fn feasible_with_opt(&self, opt: usize) -> Result<bool> {
        Ok(self.witness(opt, None)?.is_some())
    }

    /// A maximum common independent set containing `include` and avoiding
    /// `exclude`, if one exists.
    ///
    /// Solves a maximum common independent set problem on
    /// `(M_i / include) ∖ exclude`. With a `hint` (any maximum common
    /// independent set), the search starts from the part of the hint that
    /// stays common independent next to `include` instead of from `∅`;
    /// when the hint differs from the branch in one element this start is
    /// at most two elements short of the target.
    fn witness(&self, opt: usize, hint: Option<&ElementSet>) -> Result<Option<ElementSet>> {
        if !is_common_independent(&self.m1, &self.m2, &self.include) {
            return Ok(None);
        }
        let Some(target) = opt.checked_sub(self.include.len()) else {
            return Ok(None);
        };
        let minor = |m: &Matroid| m.contract(&self.include)?.delete(&self.exclude);
        let (n1, n2) = (minor(&self.m1)?, minor(&self.m2)?);
        let mut start = ElementSet::new();
        if let Some(hint) = hint {
            let mut kept = self.include.clone();
            for x in hint.difference(&self.include).difference(&self.exclude).iter() {
                if is_common_independent(&self.m1, &self.m2, &kept.with(x)) {
                    kept.insert(x);
                    start.insert(x);
                }
            }
        }
        let rest = augment_until(&n1, &n2, start, target)?;
        Ok((rest.len() == target).then(|| rest.union(&self.include)))
    }
}
pub fn extension_feasible(x: &ExtensionInstance) -> Result<bool> {
    x.feasible()
}

fn for_each_maximum(
    m1: &Matroid,
    m2: &Matroid,
    root: &ElementSet,
    emit: &mut dyn FnMut(&ElementSet) -> Result<ControlFlow<()>>,
) -> Result<()> {
    let opt = root.len();
    let mut feasible = |include: &ElementSet, exclude: &ElementSet, hint: &ElementSet| {
        let x = ExtensionInstance {
            m1: m1.clone(),
            m2: m2.clone(),
            include: include.clone(),
            exclude: exclude.clone(),
        };
        x.witness(opt, Some(hint))
    };
    flashlight(&m1.ground().to_vec(), root.clone(), &mut feasible, emit)
}

/// Emits every maximum common independent set exactly once.
pub fn enumerate_maximum(m1: &Matroid, m2: &Matroid, sink: &mut Sink<'_>) -> Result<EnumerationStats> {
    let mut meter = DelayMeter::new(&[m1, m2]);
    let max = maximum_common_independent_set(m1, m2)?;
    for_each_maximum(m1, m2, &max, &mut |s| {
        meter.mark();
        Ok(sink(s))
    })?;
    Ok(meter.finish())
}

/// Everything computed on the way to a parent, for auditing.
#[derive(Debug, Clone)]
pub struct ParentTrace {
    /// Canonical path in `D(R, I)`.
    pub path: AugmentingPath,
    /// `I △ {v2, v3}`.
    pub swapped: ElementSet,
    pub parent: ElementSet,
}

/// Parent of a maximal common independent set `i` with `|i| < |root|`
/// under the fixed maximum set `root`, together with its derivation.
///
/// Checks the structural laws the parent must obey and reports a
/// contract violation if any fails: the path has at least four vertices,
/// `|μ(swapped)| <= |i| + 1`, `|i| <= |parent|`,
/// `|root △ parent| < |root △ i|` and `|i △ parent| <= 3`.
pub fn parent_trace(m1: &Matroid, m2: &Matroid, root: &ElementSet, i: &ElementSet) -> Result<ParentTrace> {
    if i.len() >= root.len() {
        return contract(format!(
            "parent needs |I| < |R|, got |I| = {} and |R| = {}",
            i.len(),
            root.len()
        ));
    }
    let union = root.union(i);
    let shared = root.intersection(i);
    let n1 = m1.restrict(&union)?.contract(&shared)?;
    let n2 = m2.restrict(&union)?.contract(&shared)?;
    let d = build_exchange_digraph(&n1, &n2, &i.difference(root))?;
    let Some(path) = shortest_augmenting_path(&d) else {
        return contract(format!("D(R, I) has no s-t path for I = {i:?}, R = {root:?}"));
    };
    if path.vertex_count() < 4 {
        return contract(format!("parent path {path} has fewer than four vertices"));
    }
    let (v2, v3) = (path.interior()[0], path.interior()[1]);
    let swapped = i.symmetric_difference(&ElementSet::from([v2, v3]));
    let parent = complete_to_maximal(m1, m2, &swapped)?;

    let violated = if parent.len() > i.len() + 1 {
        Some("|mu(I ^ {v2, v3})| <= |I| + 1")
    } else if parent.len() < i.len() {
        Some("|I| <= |parent|")
    } else if root.symmetric_difference(&parent).len() >= root.symmetric_difference(i).len() {
        Some("|R ^ parent| < |R ^ I|")
    } else if i.symmetric_difference(&parent).len() > 3 {
        Some("|I ^ parent| <= 3")
    } else {
        None
    };
    if let Some(law) = violated {
        return contract(format!(
            "parent law {law} fails for I = {i:?}, R = {root:?}, parent = {parent:?}"
        ));
    }
    Ok(ParentTrace {
        path,
        swapped,
        parent,
    })
}

/// Parent of `i` under `root`. Requires `i` maximal, `|i| < |root|` and
/// `root` maximum.
pub fn parent(m1: &Matroid, m2: &Matroid, i: &ElementSet, root: &ElementSet) -> Result<ElementSet> {
    if !is_maximal_common_independent(m1, m2, i) {
        return contract(format!("{i:?} is not a maximal common independent set"));
    }
    Ok(parent_trace(m1, m2, root, i)?.parent)
}

/// The 2- and 3-subsets of `elements`, in lexicographic order of their
/// ascending element sequences.
fn perturbations(elements: &[Element]) -> Vec<ElementSet> {
    let mut out = Vec::new();
    for a in 0..elements.len() {
        for b in a + 1..elements.len() {
            out.push(ElementSet::from([elements[a], elements[b]]));
            for c in b + 1..elements.len() {
                out.push(ElementSet::from([elements[a], elements[b], elements[c]]));
            }
        }
    }
    out
}

/// Reverse-search engine for maximal common independent sets of size at
/// least `tau`.
pub struct LargeEnumerator<'a> {
    m1: Matroid,
    m2: Matroid,
    tau: usize,
    observer: Option<Box<ParentObserver<'a>>>,
}

struct Traversal<'t, 'a> {
    m1: &'t Matroid,
    m2: &'t Matroid,
    tau: usize,
    root: &'t ElementSet,
    perturbations: &'t [ElementSet],
    meter: &'t mut DelayMeter,
    observer: &'t mut Option<Box<ParentObserver<'a>>>,
}

impl Traversal<'_, '_> {
    /// Potential that strictly increases from parent to child: 0 on
    /// maximum sets, `|I △ R|` otherwise.
    fn potential(&self, i: &ElementSet) -> usize {
        if i.len() == self.root.len() {
            0
        } else {
            i.symmetric_difference(self.root).len()
        }
    }

    fn is_child(&mut self, i: &ElementSet, candidate: &ElementSet) -> Result<bool> {
        // A parent is never smaller than its child.
        if candidate.len() < self.tau || candidate.len() > i.len() || candidate.len() >= self.root.len() {
            return Ok(false);
        }
        if !is_maximal_common_independent(self.m1, self.m2, candidate) {
            return Ok(false);
        }
        self.meter.count_parent_call();
        let trace = parent_trace(self.m1, self.m2, self.root, candidate)?;
        if let Some(observe) = self.observer.as_mut() {
            observe(candidate, &trace);
        }
        Ok(&trace.parent == i)
    }

    /// Next child of `i` whose perturbation index is at least `*cursor`;
    /// advances the cursor past it.
    fn next_child(&mut self, i: &ElementSet, cursor: &mut usize) -> Result<Option<ElementSet>> {
        while *cursor < self.perturbations.len() {
            let candidate = i.symmetric_difference(&self.perturbations[*cursor]);
            *cursor += 1;
            if self.is_child(i, &candidate)? {
                if self.potential(&candidate) <= self.potential(i) {
                    return contract(format!(
                        "child {candidate:?} does not increase the potential of {i:?}"
                    ));
                }
                return Ok(Some(candidate));
            }
        }
        Ok(None)
    }

    /// Pre-order traversal of the subtree below `start` with an explicit
    /// stack.
    fn run(&mut self, start: &ElementSet, sink: &mut Sink<'_>) -> Result<ControlFlow<()>> {
        self.meter.mark();
        if sink(start).is_break() {
            return Ok(ControlFlow::Break(()));
        }
        if self.tau >= self.root.len() {
            return Ok(ControlFlow::Continue(()));
        }
        let depth_bound = self.m1.ground().len() + 1;
        let mut stack: Vec<(ElementSet, usize)> = vec![(start.clone(), 0)];
        while let Some((node, mut cursor)) = stack.pop() {
            if let Some(child) = self.next_child(&node, &mut cursor)? {
                stack.push((node, cursor));
                self.meter.mark();
                if sink(&child).is_break() {
                    return Ok(ControlFlow::Break(()));
                }
                stack.push((child, 0));
                if stack.len() > depth_bound {
                    return contract("reverse-search stack exceeded the ground-set size");
                }
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

impl<'a> LargeEnumerator<'a> {
    pub fn new(m1: &Matroid, m2: &Matroid, tau: usize) -> Self {
        Self {
            m1: m1.clone(),
            m2: m2.clone(),
            tau,
            observer: None,
        }
    }

    /// Installs a callback that sees every parent computation.
    pub fn observe_parents(mut self, observer: impl FnMut(&ElementSet, &ParentTrace) + 'a) -> Self {
        self.observer = Some(Box::new(observer));
        self
    }

    pub fn run(mut self, sink: &mut Sink<'_>) -> Result<EnumerationStats> {
        let (m1, m2) = (&self.m1, &self.m2);
        if m1.ground() != m2.ground() {
            return Err(Error::Input("matroids live on different ground sets".into()));
        }
        let mut meter = DelayMeter::new(&[m1, m2]);
        let max = maximum_common_independent_set(m1, m2)?;
        let opt = max.len();
        if opt < self.tau {
            return Ok(meter.finish());
        }
        let elements = m1.ground().to_vec();
        let perturbations = perturbations(&elements);
        let mut fixed_root: Option<ElementSet> = None;
        let observer = &mut self.observer;
        for_each_maximum(m1, m2, &max, &mut |max_set| {
            let root = fixed_root.get_or_insert_with(|| max_set.clone()).clone();
            Traversal {
                m1,
                m2,
                tau: self.tau,
                root: &root,
                perturbations: &perturbations,
                meter: &mut meter,
                observer,
            }
            .run(max_set, sink)
        })?;
        Ok(meter.finish())
    }
}

/// Emits every maximal common independent set of cardinality at least
/// `tau` exactly once.
pub fn enumerate_large(m1: &Matroid, m2: &Matroid, tau: usize, sink: &mut Sink<'_>) -> Result<EnumerationStats> {
    LargeEnumerator::new(m1, m2, tau).run(sink)
}

/// Children of `i` under `root` in perturbation order, collected eagerly.
pub fn children(
    m1: &Matroid,
    m2: &Matroid,
    i: &ElementSet,
    root: &ElementSet,
    tau: usize,
) -> Result<Vec<ElementSet>> {
    if i.len() < tau || !is_maximal_common_independent(m1, m2, i) {
        return contract(format!("{i:?} is not a maximal solution of size >= {tau}"));
    }
    let elements = m1.ground().to_vec();
    let perturbations = perturbations(&elements);
    let mut meter = DelayMeter::new(&[m1, m2]);
    let mut observer = None;
    let mut t = Traversal {
        m1,
        m2,
        tau,
        root,
        perturbations: &perturbations,
        meter: &mut meter,
        observer: &mut observer,
    };
    let mut out = Vec::new();
    let mut cursor = 0;
    while let Some(child) = t.next_child(i, &mut cursor)? {
        out.push(child);
    }
    Ok(out)
}
