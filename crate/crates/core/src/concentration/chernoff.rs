use libm::{exp, log1p, sqrt};
use rand_distr::{Binomial, Distribution};

use crate::error::{invalid, Result};
use crate::rng::rng_from_seed;

/// `φ(y) = (1 + y) ln(1 + y) − y`.
pub fn phi(y: f64) -> Result<f64> {
    if !(y >= 0.0) {
        return invalid("y", "y >= 0");
    }
    Ok(phi_unchecked(y))
}

pub(crate) fn phi_unchecked(y: f64) -> f64 {
    (1.0 + y) * log1p(y) - y
}

/// Right-hand sides of the upper-tail bound
/// `P(X >= μ + t) <= exp(−μ φ(t/μ)) <= exp(−t² / (2(μ + t/3)))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChernoffBounds {
    pub bound_phi: f64,
    pub bound_quad: f64,
}

fn check_mu_t(mu: f64, t: f64) -> Result<()> {
    if !(mu > 0.0) || !mu.is_finite() {
        return invalid("mu", "mu > 0");
    }
    if !(t >= 0.0) || !t.is_finite() {
        return invalid("t", "t >= 0");
    }
    Ok(())
}

pub fn chernoff_upper(mu: f64, t: f64) -> Result<ChernoffBounds> {
    check_mu_t(mu, t)?;
    Ok(ChernoffBounds {
        bound_phi: exp(-mu * phi_unchecked(t / mu)),
        bound_quad: exp(-t * t / (2.0 * (mu + t / 3.0))),
    })
}

/// `P(X <= μ − t) <= exp(−t² / (2μ))`.
pub fn chernoff_lower(mu: f64, t: f64) -> Result<f64> {
    check_mu_t(mu, t)?;
    Ok(exp(-t * t / (2.0 * mu)))
}

/// Monte Carlo tail frequencies of `X ~ Bin(trials_n, p)` against both bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailCheck {
    pub n: u64,
    pub p: f64,
    pub t: f64,
    pub mu: f64,
    pub samples: u64,
    pub bounds: ChernoffBounds,
    pub bound_lower: f64,
    /// Fraction of samples with `X >= μ + t`.
    pub upper_freq: f64,
    /// Fraction of samples with `X <= μ − t`.
    pub lower_freq: f64,
    pub upper_se: f64,
    pub lower_se: f64,
}

impl TailCheck {
    /// Frequencies within `sigmas` standard errors of the bounds.
    pub fn holds(&self, sigmas: f64) -> bool {
        self.upper_freq <= self.bounds.bound_phi + sigmas * self.upper_se
            && self.lower_freq <= self.bound_lower + sigmas * self.lower_se
    }
}

fn standard_error(freq: f64, samples: u64) -> f64 {
    sqrt(freq * (1.0 - freq) / samples as f64)
}

pub fn binomial_tail_check(n: u64, p: f64, t: f64, samples: u64, seed: u64) -> Result<TailCheck> {
    if !(p > 0.0 && p <= 1.0) {
        return invalid("p", "0 < p <= 1");
    }
    if samples == 0 {
        return invalid("samples", "samples >= 1");
    }
    let mu = n as f64 * p;
    let bounds = chernoff_upper(mu, t)?;
    let bound_lower = chernoff_lower(mu, t)?;
    let dist = match Binomial::new(n, p) {
        Ok(d) => d,
        Err(_) => return invalid("p", "0 < p <= 1"),
    };
    let mut rng = rng_from_seed(seed);
    let (mut upper, mut lower) = (0u64, 0u64);
    for _ in 0..samples {
        let x = dist.sample(&mut rng) as f64;
        if x >= mu + t {
            upper += 1;
        }
        if x <= mu - t {
            lower += 1;
        }
    }
    let upper_freq = upper as f64 / samples as f64;
    let lower_freq = lower as f64 / samples as f64;
    Ok(TailCheck {
        n,
        p,
        t,
        mu,
        samples,
        bounds,
        bound_lower,
        upper_freq,
        lower_freq,
        upper_se: standard_error(upper_freq, samples),
        lower_se: standard_error(lower_freq, samples),
    })
}
