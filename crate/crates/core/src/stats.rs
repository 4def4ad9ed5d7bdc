//! Delay instrumentation: oracle calls and wall time between outputs.

use std::time::Instant;

use serde::Serialize;

use crate::matroid::Matroid;

/// Per-output delay measurements of one enumeration run.
///
/// `gap_oracle_calls[k]` is the number of oracle queries issued between
/// output `k - 1` (or the start of the run) and output `k`, so the first
/// gap includes all preprocessing. Work after the last output is reported
/// separately as the tail.
#[derive(Debug, Clone, Default, Serialize)]
pub struct EnumerationStats {
    pub outputs: u64,
    pub gap_oracle_calls: Vec<u64>,
    pub gap_nanos: Vec<u64>,
    pub max_delay_oracle_calls: u64,
    pub mean_delay_oracle_calls: f64,
    pub median_delay_oracle_calls: u64,
    pub max_delay_nanos: u64,
    pub mean_delay_nanos: f64,
    pub preprocessing_oracle_calls: u64,
    pub tail_oracle_calls: u64,
    pub total_oracle_calls: u64,
    pub parent_calls: u64,
}

impl EnumerationStats {
    fn finalize(&mut self) {
        self.outputs = self.gap_oracle_calls.len() as u64;
        self.max_delay_oracle_calls = self.gap_oracle_calls.iter().copied().max().unwrap_or(0);
        self.max_delay_nanos = self.gap_nanos.iter().copied().max().unwrap_or(0);
        self.mean_delay_oracle_calls = mean(&self.gap_oracle_calls);
        self.mean_delay_nanos = mean(&self.gap_nanos);
        let mut sorted = self.gap_oracle_calls.clone();
        sorted.sort_unstable();
        self.median_delay_oracle_calls = sorted.get(sorted.len() / 2).copied().unwrap_or(0);
        self.preprocessing_oracle_calls = self.gap_oracle_calls.first().copied().unwrap_or(0);
    }
}

impl EnumerationStats {
    /// JSON record; without `timings` the wall-clock fields are dropped so
    /// that the record is reproducible.
    pub fn to_json(&self, timings: bool) -> serde_json::Value {
        let mut value = serde_json::to_value(self).expect("stats serialize");
        if !timings {
            if let Some(map) = value.as_object_mut() {
                map.retain(|k, _| !k.ends_with("_nanos"));
            }
        }
        value
    }
}

fn mean(xs: &[u64]) -> f64 {
    if xs.is_empty() {
        0.0
    } else {
        xs.iter().sum::<u64>() as f64 / xs.len() as f64
    }
}

/// Records gaps against the query counters of a set of oracles.
pub struct DelayMeter {
    oracles: Vec<Matroid>,
    start_calls: u64,
    last_calls: u64,
    last_time: Instant,
    stats: EnumerationStats,
}

impl DelayMeter {
    pub fn new(oracles: &[&Matroid]) -> Self {
        let oracles: Vec<Matroid> = oracles.iter().map(|&m| m.clone()).collect();
        let calls = oracles.iter().map(Matroid::query_count).sum();
        Self {
            oracles,
            start_calls: calls,
            last_calls: calls,
            last_time: Instant::now(),
            stats: EnumerationStats::default(),
        }
    }

    fn calls(&self) -> u64 {
        self.oracles.iter().map(Matroid::query_count).sum()
    }

    /// Closes the current gap; call once per emitted solution.
    pub fn mark(&mut self) {
        let calls = self.calls();
        let now = Instant::now();
        self.stats.gap_oracle_calls.push(calls - self.last_calls);
        self.stats
            .gap_nanos
            .push(now.duration_since(self.last_time).as_nanos() as u64);
        self.last_calls = calls;
        self.last_time = now;
    }

    pub fn count_parent_call(&mut self) {
        self.stats.parent_calls += 1;
    }

    pub fn finish(mut self) -> EnumerationStats {
        let calls = self.calls();
        self.stats.tail_oracle_calls = calls - self.last_calls;
        self.stats.total_oracle_calls = calls - self.start_calls;
        self.stats.finalize();
        self.stats
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::ElementSet;

    #[test]
    fn gaps_follow_oracle_calls() {
        let m = Matroid::free(3);
        let mut meter = DelayMeter::new(&[&m]);
        m.is_independent(&ElementSet::new());
        m.is_independent(&ElementSet::new());
        meter.mark();
        m.is_independent(&ElementSet::new());
        meter.mark();
        m.is_independent(&ElementSet::new());
        let stats = meter.finish();
        assert_eq!(stats.gap_oracle_calls, vec![2, 1]);
        assert_eq!(stats.outputs, 2);
        assert_eq!(stats.max_delay_oracle_calls, 2);
        assert_eq!(stats.preprocessing_oracle_calls, 2);
        assert_eq!(stats.tail_oracle_calls, 1);
        assert_eq!(stats.total_oracle_calls, 4);
        assert_eq!(stats.gap_nanos.len(), 2);
    }
}
