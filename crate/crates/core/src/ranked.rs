//! Ranked enumeration from a threshold enumerator: run `A(k)` for
//! decreasing `k` and keep only the solutions of size exactly `k`.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::Result;
use crate::exchange::maximum_common_independent_set;
use crate::intersection::{enumerate_large, Sink};
use crate::matching::{enumerate_large_matchings, TractablePair};
use crate::matroid::Matroid;
use crate::set::ElementSet;
use crate::stats::{DelayMeter, EnumerationStats};

/// An enumerator `A(k)` of all family members with at least `k` elements.
pub trait ThresholdAlgorithm {
    /// Largest member size; stages above it are empty.
    fn k_max(&self) -> Result<usize>;

    fn run(&self, k: usize, sink: &mut Sink<'_>) -> Result<EnumerationStats>;

    /// Oracles whose queries count towards the delay.
    fn oracles(&self) -> Vec<&Matroid>;
}

/// Maximal common independent sets of two matroids.
pub struct IntersectionThreshold {
    pub m1: Matroid,
    pub m2: Matroid,
}

impl ThresholdAlgorithm for IntersectionThreshold {
    fn k_max(&self) -> Result<usize> {
        Ok(maximum_common_independent_set(&self.m1, &self.m2)?.len())
    }

    fn run(&self, k: usize, sink: &mut Sink<'_>) -> Result<EnumerationStats> {
        enumerate_large(&self.m1, &self.m2, k, sink)
    }

    fn oracles(&self) -> Vec<&Matroid> {
        vec![&self.m1, &self.m2]
    }
}

/// Maximal matroid matchings of a tractable pair.
pub struct MatchingThreshold {
    pub pair: TractablePair,
}

impl ThresholdAlgorithm for MatchingThreshold {
    fn k_max(&self) -> Result<usize> {
        Ok(self.pair.maximum_matching()?.len())
    }

    fn run(&self, k: usize, sink: &mut Sink<'_>) -> Result<EnumerationStats> {
        enumerate_large_matchings(&self.pair, k, sink)
    }

    fn oracles(&self) -> Vec<&Matroid> {
        vec![self.pair.matroid()]
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct RankedStats {
    /// Delays between ranked outputs.
    pub stats: EnumerationStats,
    /// Solutions produced by the wrapped enumerator over all stages,
    /// including the ignored larger ones.
    pub wrapped_outputs: u64,
    pub stages: usize,
}

/// Emits every member of size at least `k_min` exactly once, in
/// non-increasing order of size.
pub fn ranked_enumerate(a: &dyn ThresholdAlgorithm, k_min: usize, sink: &mut Sink<'_>) -> Result<RankedStats> {
    let mut meter = DelayMeter::new(&a.oracles());
    let k_max = a.k_max()?;
    let mut wrapped = 0u64;
    let mut stages = 0;
    let mut stopped = false;
    for k in (k_min..=k_max).rev() {
        stages += 1;
        a.run(k, &mut |s: &ElementSet| {
            wrapped += 1;
            if s.len() != k {
                return ControlFlow::Continue(());
            }
            meter.mark();
            let flow = sink(s);
            stopped = flow.is_break();
            flow
        })?;
        if stopped {
            break;
        }
    }
    Ok(RankedStats {
        stats: meter.finish(),
        wrapped_outputs: wrapped,
        stages,
    })
}
