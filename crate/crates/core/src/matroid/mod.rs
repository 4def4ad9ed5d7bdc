//! Independence oracles, minors and the concrete matroid families.
//!
//! A [`Matroid`] is a cheap, cloneable handle. Root families answer queries
//! directly and own a query counter; wrappers (minors, relabelings, direct
//! sums) forward to the roots they were built from, so every query is
//! charged to a root counter.

mod axioms;
mod families;

use std::collections::HashSet;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

pub use axioms::{check_axioms, AxiomReport, AxiomViolation, DEFAULT_AXIOM_LIMIT};

use crate::error::{contract, input, Result};
use crate::graph::Graph;
use crate::set::{Element, ElementSet};
use families::Gf2Columns;

#[derive(Debug, Default)]
struct QueryCounter(AtomicU64);

impl QueryCounter {
    fn bump(&self) {
        self.0.fetch_add(1, Ordering::Relaxed);
    }

    fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }
}

enum Kind {
    Free,
    Uniform {
        rank: usize,
    },
    Partition {
        block_of: Vec<usize>,
        capacities: Vec<usize>,
    },
    Graphic(Graph),
    Cographic {
        graph: Graph,
        components: usize,
    },
    LinearGf2(Gf2Columns),
    Bases(Vec<ElementSet>),
    Family(HashSet<ElementSet>),
    /// Restriction to `Matroid::ground` followed by contraction of a set
    /// whose cached greedy base is `contracted_base`.
    Minor {
        base: Matroid,
        contracted_base: ElementSet,
    },
    /// Element `i` of this matroid is element `map[i]` of `base`.
    Mapped {
        base: Matroid,
        map: Vec<Element>,
    },
    /// Elements below `offset` belong to `left`; the rest, shifted down by
    /// `offset`, to `right`.
    DirectSum {
        left: Matroid,
        right: Matroid,
        offset: usize,
    },
}

/// A matroid given by an independence oracle.
#[derive(Clone)]
pub struct Matroid {
    ground: ElementSet,
    kind: Arc<Kind>,
    counter: Arc<QueryCounter>,
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match &*self.kind {
            Kind::Free => "free",
            Kind::Uniform { .. } => "uniform",
            Kind::Partition { .. } => "partition",
            Kind::Graphic(_) => "graphic",
            Kind::Cographic { .. } => "cographic",
            Kind::LinearGf2(_) => "linear_gf2",
            Kind::Bases(_) => "bases",
            Kind::Family(_) => "family",
            Kind::Minor { .. } => "minor",
            Kind::Mapped { .. } => "mapped",
            Kind::DirectSum { .. } => "direct_sum",
        };
        f.debug_struct("Matroid")
            .field("kind", &name)
            .field("ground", &self.ground)
            .finish()
    }
}

impl Matroid {
    fn root(n: usize, kind: Kind) -> Self {
        Self {
            ground: ElementSet::full(n),
            kind: Arc::new(kind),
            counter: Arc::default(),
        }
    }

    fn wrapper(ground: ElementSet, kind: Kind) -> Self {
        Self {
            ground,
            kind: Arc::new(kind),
            counter: Arc::default(),
        }
    }

    /// Every subset of `0..n` is independent.
    pub fn free(n: usize) -> Self {
        Self::root(n, Kind::Free)
    }

    /// U(n, r): independent iff at most `rank` elements.
    pub fn uniform(n: usize, rank: usize) -> Self {
        Self::root(n, Kind::Uniform { rank })
    }

    /// Partition matroid. `blocks` must partition `0..n` where `n` is the
    /// total number of listed ids; at most `capacities[i]` elements may be
    /// taken from block `i`.
    pub fn partition(blocks: &[Vec<Element>], capacities: &[usize]) -> Result<Self> {
        if blocks.len() != capacities.len() {
            return input(format!(
                "partition has {} blocks but {} capacities",
                blocks.len(),
                capacities.len()
            ));
        }
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut block_of = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &e in block {
                if e >= n {
                    return input(format!("partition element {e} outside 0..{n}"));
                }
                if block_of[e] != usize::MAX {
                    return input(format!("partition element {e} listed twice"));
                }
                block_of[e] = b;
            }
        }
        Ok(Self::root(
            n,
            Kind::Partition {
                block_of,
                capacities: capacities.to_vec(),
            },
        ))
    }

    /// Partition matroid from a block label per element.
    pub fn partition_by_label(labels: &[usize], capacities: &[usize]) -> Result<Self> {
        if let Some(&bad) = labels.iter().find(|&&l| l >= capacities.len()) {
            return input(format!("block label {bad} has no capacity"));
        }
        Ok(Self::root(
            labels.len(),
            Kind::Partition {
                block_of: labels.to_vec(),
                capacities: capacities.to_vec(),
            },
        ))
    }

    /// Forests of `graph`; element `i` is edge `i`.
    pub fn graphic(graph: Graph) -> Result<Self> {
        graph.validate()?;
        Ok(Self::root(graph.edge_count(), Kind::Graphic(graph)))
    }

    /// Edge sets whose removal does not increase the number of connected
    /// components (for a connected graph: `G - F` stays connected).
    pub fn cographic(graph: Graph) -> Result<Self> {
        graph.validate()?;
        let components = graph.components();
        Ok(Self::root(
            graph.edge_count(),
            Kind::Cographic { graph, components },
        ))
    }

    /// Column matroid of a GF(2) matrix given as equal-length rows of
    /// `'0'`/`'1'` characters. Column `j` is element `j`.
    pub fn linear_gf2<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let columns = Gf2Columns::from_rows(rows)?;
        Ok(Self::root(columns.len(), Kind::LinearGf2(columns)))
    }

    /// Matroid on `0..n` given by its bases; a set is independent iff it is
    /// contained in some base. The caller is responsible for the base
    /// exchange property (see [`check_axioms`]).
    pub fn from_bases(n: usize, bases: Vec<ElementSet>) -> Result<Self> {
        let full = ElementSet::full(n);
        if let Some(b) = bases.iter().find(|b| !b.is_subset(&full)) {
            return input(format!("base {b:?} not contained in 0..{n}"));
        }
        Ok(Self::root(n, Kind::Bases(bases)))
    }

    /// Set system given by an explicit list of independent sets. Not
    /// necessarily a matroid; used to exercise [`check_axioms`].
    pub fn from_family(n: usize, sets: impl IntoIterator<Item = ElementSet>) -> Result<Self> {
        let full = ElementSet::full(n);
        let family: HashSet<_> = sets.into_iter().collect();
        if let Some(s) = family.iter().find(|s| !s.is_subset(&full)) {
            return input(format!("set {s:?} not contained in 0..{n}"));
        }
        Ok(Self::root(n, Kind::Family(family)))
    }

    /// Direct sum: elements `0..a` are `left`'s ground, `a..a+b` are
    /// `right`'s, where `a` and `b` are the respective universe sizes.
    pub fn direct_sum(left: Matroid, right: Matroid) -> Self {
        let offset = left.universe();
        let ground = left
            .ground
            .iter()
            .chain(right.ground.iter().map(|e| e + offset))
            .collect();
        Self::wrapper(
            ground,
            Kind::DirectSum {
                left,
                right,
                offset,
            },
        )
    }

    /// Relabeling: the returned matroid has ground `{i : i in domain}` and
    /// treats `i` as `map(i)` of `base`. `map` must be injective on
    /// `domain`.
    pub fn mapped(
        base: &Matroid,
        domain: &ElementSet,
        map: impl Fn(Element) -> Element,
    ) -> Result<Self> {
        let size = domain.max_element().map_or(0, |m| m + 1);
        let mut table = vec![usize::MAX; size];
        let mut image = ElementSet::new();
        for i in domain {
            let target = map(i);
            if !base.ground.contains(target) {
                return input(format!("relabeled element {target} outside base ground"));
            }
            if !image.insert(target) {
                return input(format!("relabeling is not injective at {target}"));
            }
            table[i] = target;
        }
        Ok(Self::wrapper(
            domain.clone(),
            Kind::Mapped {
                base: base.clone(),
                map: table,
            },
        ))
    }

    pub fn ground(&self) -> &ElementSet {
        &self.ground
    }

    /// One past the largest element id of the ground set.
    pub fn universe(&self) -> usize {
        self.ground.max_element().map_or(0, |m| m + 1)
    }

    /// Number of independence queries charged to the underlying root
    /// oracles so far.
    pub fn query_count(&self) -> u64 {
        match &*self.kind {
            Kind::Minor { base, .. } | Kind::Mapped { base, .. } => base.query_count(),
            Kind::DirectSum { left, right, .. } => left.query_count() + right.query_count(),
            _ => self.counter.get(),
        }
    }

    fn check_subset(&self, x: &ElementSet) -> Result<()> {
        if x.is_subset(&self.ground) {
            Ok(())
        } else {
            input(format!(
                "set {:?} is not contained in the ground set",
                x.difference(&self.ground)
            ))
        }
    }

    /// Independence query with input validation.
    pub fn try_is_independent(&self, x: &ElementSet) -> Result<bool> {
        self.check_subset(x)?;
        Ok(self.query(x))
    }

    /// Independence query.
    ///
    /// Panics if `x` is not a subset of the ground set; use
    /// [`Matroid::try_is_independent`] for untrusted input.
    pub fn is_independent(&self, x: &ElementSet) -> bool {
        assert!(
            x.is_subset(&self.ground),
            "query {x:?} outside ground {:?}",
            self.ground
        );
        self.query(x)
    }

    fn query(&self, x: &ElementSet) -> bool {
        match &*self.kind {
            Kind::Minor {
                base,
                contracted_base,
            } => base.query(&x.union(contracted_base)),
            Kind::Mapped { base, map } => base.query(&x.iter().map(|i| map[i]).collect()),
            Kind::DirectSum {
                left,
                right,
                offset,
            } => {
                let l: ElementSet = x.iter().filter(|&e| e < *offset).collect();
                let r: ElementSet = x
                    .iter()
                    .filter(|&e| e >= *offset)
                    .map(|e| e - offset)
                    .collect();
                // Both sides are always charged.
                let a = left.query(&l);
                let b = right.query(&r);
                a && b
            }
            root => {
                self.counter.bump();
                root_independent(root, x)
            }
        }
    }

    /// Lowest-id greedy base of the restriction to `x`.
    pub fn greedy_base(&self, x: &ElementSet) -> Result<ElementSet> {
        self.check_subset(x)?;
        let mut base = ElementSet::new();
        for e in x {
            base.insert(e);
            if !self.query(&base) {
                base.remove(e);
            }
        }
        Ok(base)
    }

    pub fn rank(&self, x: &ElementSet) -> Result<usize> {
        Ok(self.greedy_base(x)?.len())
    }

    /// The unique circuit of `i ∪ {f}` for independent `i` with `i ∪ {f}`
    /// dependent: `{f} ∪ {e ∈ i : (i ∪ {f}) ∖ {e} independent}`.
    pub fn fundamental_circuit(&self, i: &ElementSet, f: Element) -> Result<ElementSet> {
        let with_f = i.with(f);
        self.check_subset(&with_f)?;
        if i.contains(f) {
            return contract(format!("element {f} already in {i:?}"));
        }
        if !self.query(i) {
            return contract(format!("{i:?} is not independent"));
        }
        if self.query(&with_f) {
            return contract(format!("{i:?} + {f} is independent; no circuit"));
        }
        let mut circuit = ElementSet::singleton(f);
        for e in i {
            if self.query(&with_f.without(e)) {
                circuit.insert(e);
            }
        }
        Ok(circuit)
    }

    /// `M | x`.
    pub fn restrict(&self, x: &ElementSet) -> Result<Matroid> {
        self.check_subset(x)?;
        Ok(Self::wrapper(
            x.clone(),
            Kind::Minor {
                base: self.clone(),
                contracted_base: ElementSet::new(),
            },
        ))
    }

    /// `M ∖ x`.
    pub fn delete(&self, x: &ElementSet) -> Result<Matroid> {
        self.check_subset(x)?;
        self.restrict(&self.ground.difference(x))
    }

    /// `M / x`. A greedy base of `M | x` is computed once and cached.
    pub fn contract(&self, x: &ElementSet) -> Result<Matroid> {
        let contracted_base = self.greedy_base(x)?;
        Ok(Self::wrapper(
            self.ground.difference(x),
            Kind::Minor {
                base: self.clone(),
                contracted_base,
            },
        ))
    }
}

fn root_independent(kind: &Kind, x: &ElementSet) -> bool {
    match kind {
        Kind::Free => true,
        Kind::Uniform { rank } => x.len() <= *rank,
        Kind::Partition {
            block_of,
            capacities,
        } => {
            let mut used = vec![0usize; capacities.len()];
            x.iter().all(|e| {
                let b = block_of[e];
                used[b] += 1;
                used[b] <= capacities[b]
            })
        }
        Kind::Graphic(graph) => graph.is_forest(x),
        Kind::Cographic { graph, components } => graph.components_without(x) == *components,
        Kind::LinearGf2(columns) => columns.independent(x),
        Kind::Bases(bases) => bases.iter().any(|b| x.is_subset(b)),
        Kind::Family(family) => family.contains(x),
        Kind::Minor { .. } | Kind::Mapped { .. } | Kind::DirectSum { .. } => {
            unreachable!("wrappers are resolved by Matroid::query")
        }
    }
}

/// Whether `x` is independent in both matroids.
pub fn is_common_independent(m1: &Matroid, m2: &Matroid, x: &ElementSet) -> bool {
    m1.is_independent(x) && m2.is_independent(x)
}
