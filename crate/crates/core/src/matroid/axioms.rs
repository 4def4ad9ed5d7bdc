use serde::Serialize;

use super::Matroid;
use crate::error::{Error, Result};
use crate::set::ElementSet;

/// Largest ground set [`check_axioms`] accepts unless told otherwise.
pub const DEFAULT_AXIOM_LIMIT: usize = 12;

const KEEP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum AxiomViolation {
    EmptySetDependent,
    /// `set` is independent but its subset `subset` is not.
    Hereditary { set: ElementSet, subset: ElementSet },
    /// `|smaller| < |larger|`, both independent, and no element of
    /// `larger ∖ smaller` extends `smaller`.
    Exchange {
        smaller: ElementSet,
        larger: ElementSet,
    },
    /// Distinct circuits sharing `element` whose union minus it is
    /// independent.
    CircuitElimination {
        first: ElementSet,
        second: ElementSet,
        element: usize,
    },
}

/// Outcome of an exhaustive axiom check. At most 64 violations are kept;
/// `total` counts all of them.
#[derive(Debug, Clone, Default, Serialize)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
    pub total: usize,
    pub circuits: usize,
}

impl AxiomReport {
    pub fn is_matroid(&self) -> bool {
        self.total == 0
    }

    fn push(&mut self, v: AxiomViolation) {
        self.total += 1;
        if self.violations.len() < KEEP {
            self.violations.push(v);
        }
    }

    pub fn has_exchange_violation(&self) -> bool {
        self.violations
            .iter()
            .any(|v| matches!(v, AxiomViolation::Exchange { .. }))
    }
}

/// Exhaustively checks the empty-set, hereditary and exchange axioms and
/// weak circuit elimination. Refuses ground sets larger than `limit`.
pub fn check_axioms(m: &Matroid, limit: usize) -> Result<AxiomReport> {
    let elems = m.ground().to_vec();
    let k = elems.len();
    if k > limit || k > 24 {
        return Err(Error::Guard(format!(
            "ground set of {k} elements exceeds the axiom-check limit {limit}"
        )));
    }
    let to_set = |mask: usize| -> ElementSet {
        (0..k).filter(|i| mask >> i & 1 == 1).map(|i| elems[i]).collect()
    };
    let indep: Vec<bool> = (0..1usize << k)
        .map(|mask| m.is_independent(&to_set(mask)))
        .collect();

    let mut report = AxiomReport::default();
    if !indep[0] {
        report.push(AxiomViolation::EmptySetDependent);
    }

    for mask in 0..indep.len() {
        if !indep[mask] {
            continue;
        }
        for i in 0..k {
            let sub = mask & !(1 << i);
            if sub != mask && !indep[sub] {
                report.push(AxiomViolation::Hereditary {
                    set: to_set(mask),
                    subset: to_set(sub),
                });
            }
        }
    }

    let independent: Vec<usize> = (0..indep.len()).filter(|&m| indep[m]).collect();
    for &small in &independent {
        let small_len = small.count_ones();
        for &large in &independent {
            if large.count_ones() <= small_len {
                continue;
            }
            let extendable = (0..k)
                .filter(|i| large >> i & 1 == 1 && small >> i & 1 == 0)
                .any(|i| indep[small | 1 << i]);
            if !extendable {
                report.push(AxiomViolation::Exchange {
                    smaller: to_set(small),
                    larger: to_set(large),
                });
            }
        }
    }

    let circuits: Vec<usize> = (0..indep.len())
        .filter(|&c| !indep[c] && (0..k).all(|i| c >> i & 1 == 0 || indep[c & !(1 << i)]))
        .collect();
    report.circuits = circuits.len();
    for (a, &c1) in circuits.iter().enumerate() {
        for &c2 in &circuits[a + 1..] {
            let shared = c1 & c2;
            for i in (0..k).filter(|i| shared >> i & 1 == 1) {
                if indep[(c1 | c2) & !(1 << i)] {
                    report.push(AxiomViolation::CircuitElimination {
                        first: to_set(c1),
                        second: to_set(c2),
                        element: elems[i],
                    });
                }
            }
        }
    }
    Ok(report)
}
