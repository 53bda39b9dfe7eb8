//! Multi-trial runners shared by the command line and the test suites. Every
//! trial is seeded from `(base seed, trial index)`, and results are returned
//! in trial order whatever the thread count.

use rayon::prelude::*;

use gnpmod_core::bisection::bisection_modularity_certificate;
use gnpmod_core::bounds::{lower_pstar, spectral_upper, upper_main};
use gnpmod_core::concentration::{EventSummary, SamplePlan};
use gnpmod_core::modularity::heuristic_modularity;
use gnpmod_core::rng::stream_seed;
use gnpmod_core::{sample_gnp, Graph};

use crate::error::{CliError, CliResult};
use crate::report::{num, Report};

/// Runs `f` over `items` on `jobs` threads, keeping input order.
pub fn par_map<T, R, F>(jobs: usize, items: Vec<T>, f: F) -> CliResult<Vec<R>>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    if jobs <= 1 {
        return Ok(items.into_iter().map(f).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    Ok(pool.install(|| items.into_par_iter().map(f).collect()))
}

pub const SWEEP_COLUMNS: [&str; 8] = [
    "n",
    "d",
    "seed",
    "heuristic_mod",
    "certificate",
    "upper_main",
    "lower_Pstar",
    "spectral_upper",
];

/// One sweep trial: a graph `G(n, d/n)` sampled from `seed`, its heuristic
/// modularity and bisection certificate (both seeded with `seed`), and the
/// closed-form bounds at `d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub d: f64,
    pub seed: u64,
    pub heuristic_mod: f64,
    pub certificate: f64,
    pub upper_main: f64,
    pub lower_pstar: f64,
    pub spectral_upper: f64,
}

impl SweepRow {
    pub fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            num(self.d),
            self.seed.to_string(),
            num(self.heuristic_mod),
            num(self.certificate),
            num(self.upper_main),
            num(self.lower_pstar),
            num(self.spectral_upper),
        ]
    }
}

/// Replays exactly one sweep row from its `(n, d, seed)` and the run's
/// `restarts`.
pub fn sweep_trial(n: usize, d: f64, seed: u64, restarts: usize) -> CliResult<SweepRow> {
    let g = sample_gnp(n, d / n as f64, seed)?;
    let (heuristic_mod, certificate) = if g.edge_count() == 0 {
        (0.0, 0.0)
    } else {
        (
            heuristic_modularity(&g, seed, restarts).score,
            bisection_modularity_certificate(&g, seed, restarts).score,
        )
    };
    Ok(SweepRow {
        n,
        d,
        seed,
        heuristic_mod,
        certificate,
        upper_main: upper_main(d),
        lower_pstar: lower_pstar(d),
        spectral_upper: spectral_upper(d),
    })
}

/// Trial `j` of density `i` uses seed `stream_seed(base, i·trials + j)`.
pub fn sweep(
    n: usize,
    ds: &[f64],
    trials: u64,
    base: u64,
    restarts: usize,
    jobs: usize,
) -> CliResult<Vec<SweepRow>> {
    let mut work = Vec::new();
    for (i, &d) in ds.iter().enumerate() {
        for j in 0..trials {
            work.push((d, stream_seed(base, i as u64 * trials + j)));
        }
    }
    par_map(jobs, work, |(d, seed)| sweep_trial(n, d, seed, restarts))?
        .into_iter()
        .collect()
}

pub fn sweep_report(rows: &[SweepRow]) -> Report {
    let mut report = Report::new(SWEEP_COLUMNS);
    for row in rows {
        report.push(row.cells());
    }
    report
}

/// Mean and standard error of the mean.
pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    let k = xs.len() as f64;
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / k;
    if xs.len() < 2 {
        return (mean, f64::NAN);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (mean, (var / k).sqrt())
}

/// `(d, trials, (heuristic mean, se), (certificate mean, se))`.
pub type DensityAggregate = (f64, usize, (f64, f64), (f64, f64));

pub fn sweep_aggregates(rows: &[SweepRow]) -> Vec<DensityAggregate> {
    let mut ds: Vec<f64> = Vec::new();
    for r in rows {
        if !ds.contains(&r.d) {
            ds.push(r.d);
        }
    }
    ds.into_iter()
        .map(|d| {
            let h: Vec<f64> = rows.iter().filter(|r| r.d == d).map(|r| r.heuristic_mod).collect();
            let c: Vec<f64> = rows.iter().filter(|r| r.d == d).map(|r| r.certificate).collect();
            (d, h.len(), mean_se(&h), mean_se(&c))
        })
        .collect()
}

/// Number of work units the sampled trials are split into. Fixed, so the
/// kept example subsets do not depend on the thread count.
const EVENT_CHUNKS: u64 = 64;

pub fn sampled_events(
    g: &Graph,
    c: f64,
    d: f64,
    plan: &SamplePlan,
    jobs: usize,
) -> CliResult<EventSummary> {
    let total = plan.trial_count();
    let chunk = total.div_ceil(EVENT_CHUNKS).max(1);
    let ranges: Vec<_> = (0..total)
        .step_by(chunk as usize)
        .map(|start| start..(start + chunk).min(total))
        .collect();
    let parts = par_map(jobs, ranges, |range| {
        let mut summary = EventSummary::new(g.n());
        plan.run_trials(g, c, d, range, &mut summary);
        summary
    })?;
    let mut out = EventSummary::new(g.n());
    for part in parts {
        out.merge(part);
    }
    Ok(out)
}
