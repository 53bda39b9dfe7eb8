//! Checks of the three subset events on a concrete graph. With `s = |S|/n`
//! and density parameter `d`, a subset violates
//!
//! * event 1 when `e(S)  > s (s + C d^{-1/2}) nd/2`,
//! * event 2 when `e(S̄) > (1−s)((1−s) + C d^{-1/2}) nd/2`,
//! * event 3 when `e(S, S̄) < (s(1−s) − C √(s(1−s)) d^{-1/2}) nd`.
//!
//! Counts are exact integers, thresholds are `f64`, and the comparisons are
//! the strict ones above.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use libm::sqrt;
use rand::seq::index;
use rand::RngCore;

use crate::error::{invalid, Error, Result};
use crate::graph::{edge_counts, edge_counts_mask, edge_counts_sparse, EdgeCounts, Graph, VertexSubset};
use crate::rng::{rng_from_seed, salt, stream_seed};

/// Largest `n` accepted by the exhaustive mode.
pub const DEFAULT_EVENTS_CAP: usize = 24;
const MAX_EXAMPLES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EventFlags {
    pub inside_excess: bool,
    pub outside_excess: bool,
    pub cut_deficit: bool,
    pub s: f64,
    pub c: f64,
    pub d: f64,
}

impl EventFlags {
    pub fn any(&self) -> bool {
        self.inside_excess || self.outside_excess || self.cut_deficit
    }
}

/// Flags for a subset of size `k` in an `n`-vertex graph with the given counts.
pub fn event_flags(counts: &EdgeCounts, n: usize, k: usize, c: f64, d: f64) -> EventFlags {
    let nd = n as f64 * d;
    let s = k as f64 / n as f64;
    let r = 1.0 - s;
    let slack = c / sqrt(d);
    let t1 = s * (s + slack) * nd / 2.0;
    let t2 = r * (r + slack) * nd / 2.0;
    let t3 = (s * r - c * sqrt(s * r) / sqrt(d)) * nd;
    EventFlags {
        inside_excess: counts.e_in as f64 > t1,
        outside_excess: counts.e_out as f64 > t2,
        cut_deficit: (counts.e_cross as f64) < t3,
        s,
        c,
        d,
    }
}

fn check_c_d(c: f64, d: f64) -> Result<()> {
    if !(c >= 0.0) || !c.is_finite() {
        return invalid("C", "a finite C >= 0");
    }
    if !(d > 0.0) || !d.is_finite() {
        return invalid("d", "a finite d > 0");
    }
    Ok(())
}

/// Flags for one explicit subset.
pub fn subset_flags(g: &Graph, s: &VertexSubset, c: f64, d: f64) -> Result<EventFlags> {
    check_c_d(c, d)?;
    let counts = edge_counts(g, s)?;
    Ok(event_flags(&counts, g.n(), s.len(), c, d))
}

/// Subset-size ranges used for stratified reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regime {
    /// `k <= √n`
    Small,
    /// `√n < k <= n/3`
    Middle,
    /// `n/3 < k <= n`
    Large,
}

impl Regime {
    pub fn of(k: usize, n: usize) -> Regime {
        if k * k <= n {
            Regime::Small
        } else if 3 * k <= n {
            Regime::Middle
        } else {
            Regime::Large
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Small => "small",
            Regime::Middle => "middle",
            Regime::Large => "large",
        }
    }
}

/// Aggregated outcomes for one subset size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegimeRow {
    pub regime: Regime,
    pub k: usize,
    pub trials: u64,
    pub violations: [u64; 3],
}

/// Per-size counts plus a few violating subsets as examples.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EventSummary {
    pub n: usize,
    rows: BTreeMap<usize, RegimeRow>,
    /// Up to 16 violating subsets (sorted labels) with their flags.
    pub examples: Vec<(Vec<u32>, EventFlags)>,
}

impl EventSummary {
    pub fn new(n: usize) -> Self {
        EventSummary {
            n,
            ..Default::default()
        }
    }

    pub fn record(&mut self, k: usize, flags: &EventFlags, labels: impl FnOnce() -> Vec<u32>) {
        let n = self.n;
        let row = self.rows.entry(k).or_insert(RegimeRow {
            regime: Regime::of(k, n),
            k,
            trials: 0,
            violations: [0; 3],
        });
        row.trials += 1;
        for (slot, hit) in row
            .violations
            .iter_mut()
            .zip([flags.inside_excess, flags.outside_excess, flags.cut_deficit])
        {
            *slot += hit as u64;
        }
        if flags.any() && self.examples.len() < MAX_EXAMPLES {
            self.examples.push((labels(), *flags));
        }
    }

    /// Adds the counts of `other`; the result does not depend on merge order
    /// except for which examples are kept.
    pub fn merge(&mut self, other: EventSummary) {
        for (k, row) in other.rows {
            let mine = self.rows.entry(k).or_insert(RegimeRow {
                trials: 0,
                violations: [0; 3],
                ..row
            });
            mine.trials += row.trials;
            for i in 0..3 {
                mine.violations[i] += row.violations[i];
            }
        }
        for ex in other.examples {
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(ex);
            }
        }
    }

    /// Rows ordered by `k`.
    pub fn rows(&self) -> impl Iterator<Item = &RegimeRow> {
        self.rows.values()
    }

    pub fn trials(&self) -> u64 {
        self.rows.values().map(|r| r.trials).sum()
    }

    /// Violation totals per event.
    pub fn violations(&self) -> [u64; 3] {
        let mut out = [0; 3];
        for r in self.rows.values() {
            for (total, v) in out.iter_mut().zip(r.violations) {
                *total += v;
            }
        }
        out
    }

    pub fn total_violations(&self) -> u64 {
        self.violations().iter().sum()
    }

    /// Totals per regime.
    pub fn by_regime(&self) -> [(Regime, u64, [u64; 3]); 3] {
        let mut out = [
            (Regime::Small, 0, [0; 3]),
            (Regime::Middle, 0, [0; 3]),
            (Regime::Large, 0, [0; 3]),
        ];
        for r in self.rows.values() {
            let slot = &mut out[r.regime as usize];
            slot.1 += r.trials;
            for i in 0..3 {
                slot.2[i] += r.violations[i];
            }
        }
        out
    }
}

/// Sizes `1, 2, 3, √n/2, √n` (small), `√n+1, n/12, n/6, n/4, n/3` (middle),
/// `n/3+1, n/2, 2n/3, 5n/6, n` (large), clamped to `1..=n` and deduplicated.
pub fn default_size_schedule(n: usize) -> Vec<usize> {
    let r = (sqrt(n as f64)) as usize;
    let mut sizes = vec![
        1,
        2,
        3,
        r / 2,
        r,
        r + 1,
        n / 12,
        n / 6,
        n / 4,
        n / 3,
        n / 3 + 1,
        n / 2,
        2 * n / 3,
        5 * n / 6,
        n,
    ];
    sizes.retain(|&k| k >= 1 && k <= n);
    sizes.sort_unstable();
    sizes.dedup();
    sizes
}

/// Stratified random subsets. Trials `0..uniform_trials` draw every vertex
/// independently with probability 1/2; the remaining trials cycle through
/// `sizes`, drawing a uniform subset of each size `per_size_trials` times.
/// Trial `i` uses its own stream `stream_seed(seed ^ SUBSET_SALT, i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePlan {
    pub uniform_trials: u64,
    pub per_size_trials: u64,
    pub sizes: Vec<usize>,
    pub seed: u64,
}

impl SamplePlan {
    pub fn trial_count(&self) -> u64 {
        self.uniform_trials + self.per_size_trials * self.sizes.len() as u64
    }

    /// Member indices (0-based, unsorted) of trial `i`.
    pub fn draw(&self, n: usize, i: u64) -> Vec<usize> {
        let mut rng = rng_from_seed(stream_seed(self.seed ^ salt::SUBSET, i));
        if i < self.uniform_trials {
            let mut members = Vec::new();
            let mut word = 0u64;
            for v in 0..n {
                if v % 64 == 0 {
                    word = rng.next_u64();
                }
                if word >> (v % 64) & 1 == 1 {
                    members.push(v);
                }
            }
            members
        } else {
            let j = (i - self.uniform_trials) as usize % self.sizes.len();
            let k = self.sizes[j].min(n);
            index::sample(&mut rng, n, k).into_vec()
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.per_size_trials > 0 && self.sizes.is_empty() {
            return invalid("sizes", "a nonempty size schedule when per_size_trials > 0");
        }
        if self.sizes.iter().any(|&k| k > n) {
            return invalid("sizes", "every size <= n");
        }
        Ok(())
    }

    /// Evaluates trials `range` into `summary`.
    pub fn run_trials(
        &self,
        g: &Graph,
        c: f64,
        d: f64,
        range: core::ops::Range<u64>,
        summary: &mut EventSummary,
    ) {
        let n = g.n();
        let mut inside = vec![false; n];
        for i in range {
            let members = self.draw(n, i);
            for &v in &members {
                inside[v] = true;
            }
            let counts = edge_counts_sparse(g, &members, &inside);
            let flags = event_flags(&counts, n, members.len(), c, d);
            summary.record(members.len(), &flags, || {
                let mut labels: Vec<u32> = members.iter().map(|&v| v as u32 + 1).collect();
                labels.sort_unstable();
                labels
            });
            for &v in &members {
                inside[v] = false;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EventMode {
    /// Every one of the `2^n` subsets; requires `n <= cap`.
    Exhaustive { cap: usize },
    Sampled(SamplePlan),
}

/// Runs the event checks in the requested mode.
pub fn check_subset_events(g: &Graph, c: f64, d: f64, mode: &EventMode) -> Result<EventSummary> {
    check_c_d(c, d)?;
    let n = g.n();
    let mut summary = EventSummary::new(n);
    match mode {
        EventMode::Exhaustive { cap } => {
            let limit = (*cap).min(63);
            if n > limit {
                return Err(Error::CapExceeded {
                    operation: "exhaustive event check",
                    n,
                    cap: limit,
                });
            }
            for mask in 0..(1u64 << n) {
                let counts = edge_counts_mask(g, mask)?;
                let k = mask.count_ones() as usize;
                let flags = event_flags(&counts, n, k, c, d);
                summary.record(k, &flags, || {
                    (0..n as u32).filter(|&v| mask >> v & 1 == 1).map(|v| v + 1).collect()
                });
            }
        }
        EventMode::Sampled(plan) => {
            plan.validate(n)?;
            plan.run_trials(g, c, d, 0..plan.trial_count(), &mut summary);
        }
    }
    Ok(summary)
}
