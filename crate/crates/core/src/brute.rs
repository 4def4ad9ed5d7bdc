//! Exhaustive reference oracles. They share no search code with the
//! enumerators and only talk to matroids through independence queries.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::TractablePair;
use crate::matroid::Matroid;
use crate::set::ElementSet;

/// Largest ground set (or edge set) the subset scans accept.
pub const BRUTE_LIMIT: usize = 20;
/// Largest vertex count [`brute_min_cvc`] accepts.
pub const CVC_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    All,
    Maximal,
    Maximum,
}

fn guard(what: &str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::Guard(format!(
            "{what} of size {size} exceeds the brute-force limit {limit}"
        )))
    } else {
        Ok(())
    }
}

/// Filters a table of feasible masks over `items` positions by mode and
/// threshold.
fn select(feasible: &[bool], items: usize, mode: Mode, tau: usize) -> Vec<u32> {
    let best = (0..feasible.len())
        .filter(|&m| feasible[m])
        .map(|m| m.count_ones())
        .max()
        .unwrap_or(0);
    (0..feasible.len() as u32)
        .filter(|&m| feasible[m as usize] && m.count_ones() as usize >= tau)
        .filter(|&m| match mode {
            Mode::All => true,
            Mode::Maximum => m.count_ones() == best,
            Mode::Maximal => (0..items).all(|i| m >> i & 1 == 1 || !feasible[(m | 1 << i) as usize]),
        })
        .collect()
}

fn sorted(mut sets: Vec<ElementSet>) -> Vec<ElementSet> {
    sets.sort();
    sets
}

/// Common independent sets of `m1` and `m2` with at least `tau`
/// elements, restricted by `mode`, sorted.
pub fn brute_common_independent(m1: &Matroid, m2: &Matroid, mode: Mode, tau: usize) -> Result<Vec<ElementSet>> {
    if m1.ground() != m2.ground() {
        return Err(Error::Input("matroids live on different ground sets".into()));
    }
    let elems = m1.ground().to_vec();
    guard("ground set", elems.len(), BRUTE_LIMIT)?;
    let to_set = |mask: u32| -> ElementSet {
        (0..elems.len()).filter(|i| mask >> i & 1 == 1).map(|i| elems[i]).collect()
    };
    let feasible: Vec<bool> = (0..1u32 << elems.len())
        .map(|mask| {
            let x = to_set(mask);
            m1.is_independent(&x) && m2.is_independent(&x)
        })
        .collect();
    Ok(sorted(
        select(&feasible, elems.len(), mode, tau)
            .into_iter()
            .map(to_set)
            .collect(),
    ))
}

/// Matroid matchings of the pair (as edge-index sets), by mode and
/// threshold, sorted.
pub fn brute_matchings(p: &TractablePair, mode: Mode, tau: usize) -> Result<Vec<ElementSet>> {
    let edges = p.edges();
    guard("edge set", edges.len(), BRUTE_LIMIT)?;
    let feasible: Vec<bool> = (0..1u32 << edges.len())
        .map(|mask| {
            let mut covered = ElementSet::new();
            for (k, e) in edges.iter().enumerate() {
                if mask >> k & 1 == 1 && !(covered.insert(e[0]) && covered.insert(e[1])) {
                    return false;
                }
            }
            p.matroid().is_independent(&covered)
        })
        .collect();
    Ok(sorted(
        select(&feasible, edges.len(), mode, tau)
            .into_iter()
            .map(|m| ElementSet::from_mask(m as u64))
            .collect(),
    ))
}

fn induced_connected(g: &Graph, mask: u32) -> bool {
    let Some(start) = (0..g.vertices).find(|v| mask >> v & 1 == 1) else {
        return true;
    };
    let mut seen = 1u32 << start;
    let mut frontier = vec![start];
    while let Some(v) = frontier.pop() {
        for &[a, b] in &g.edges {
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if mask >> w & 1 == 1 && seen >> w & 1 == 0 {
                seen |= 1 << w;
                frontier.push(w);
            }
        }
    }
    seen == mask
}

/// Minimal connected vertex covers with at most `tau` vertices, sorted.
/// The empty set counts as connected, so an edgeless graph has the single
/// cover `∅`.
pub fn brute_min_cvc(g: &Graph, tau: usize) -> Result<Vec<ElementSet>> {
    g.validate()?;
    guard("vertex set", g.vertices, CVC_LIMIT)?;
    let is_cvc = |mask: u32| {
        g.edges.iter().all(|&[a, b]| mask >> a & 1 == 1 || mask >> b & 1 == 1) && induced_connected(g, mask)
    };
    let table: Vec<bool> = (0..1u32 << g.vertices).map(is_cvc).collect();
    let out = (0..table.len() as u32)
        .filter(|&m| table[m as usize] && m.count_ones() as usize <= tau)
        .filter(|&m| (0..g.vertices).all(|v| m >> v & 1 == 0 || !table[(m & !(1 << v)) as usize]))
        .map(|m| ElementSet::from_mask(m as u64))
        .collect();
    Ok(sorted(out))
}

/// Hex SHA-256 of an instance's canonical bytes.
pub fn instance_digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Match,
    Mismatch {
        missing: Vec<ElementSet>,
        unexpected: Vec<ElementSet>,
        duplicates: Vec<ElementSet>,
    },
}

/// Ground truth for one instance and, after [`BruteForceReport::compare`],
/// the verdict against a streamed enumeration.
#[derive(Debug, Clone, Serialize)]
pub struct BruteForceReport {
    pub digest: String,
    pub solutions: Vec<ElementSet>,
    /// Number of solutions per cardinality.
    pub counts: BTreeMap<usize, usize>,
    pub verdict: Option<Verdict>,
}

impl BruteForceReport {
    pub fn new(digest: String, mut solutions: Vec<ElementSet>) -> Self {
        solutions.sort();
        solutions.dedup();
        let mut counts = BTreeMap::new();
        for s in &solutions {
            *counts.entry(s.len()).or_insert(0) += 1;
        }
        Self {
            digest,
            solutions,
            counts,
            verdict: None,
        }
    }

    pub fn compare(&mut self, streamed: &[ElementSet]) -> &Verdict {
        let mut got = streamed.to_vec();
        got.sort();
        let duplicates: Vec<ElementSet> = got
            .windows(2)
            .filter(|w| w[0] == w[1])
            .map(|w| w[0].clone())
            .collect();
        got.dedup();
        let missing: Vec<ElementSet> = self
            .solutions
            .iter()
            .filter(|s| got.binary_search(s).is_err())
            .cloned()
            .collect();
        let unexpected: Vec<ElementSet> = got
            .iter()
            .filter(|s| self.solutions.binary_search(s).is_err())
            .cloned()
            .collect();
        let verdict = if missing.is_empty() && unexpected.is_empty() && duplicates.is_empty() {
            Verdict::Match
        } else {
            Verdict::Mismatch {
                missing,
                unexpected,
                duplicates,
            }
        };
        self.verdict.insert(verdict)
    }
}
