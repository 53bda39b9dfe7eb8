//! The functions `f`, `g`, `h₁`, `h₂`, `h₃` that control the Chernoff
//! exponents in the middle and large subset-size ranges, and a grid verifier
//! for their claimed lower bounds and monotonicity.

use alloc::vec::Vec;

use libm::{log, log1p};

use super::chernoff::phi_unchecked;
use crate::error::{invalid, Result};

/// `f` must stay above this on its domain.
pub const F_THRESHOLD: f64 = 0.001;
/// `g` must stay above `ln 2 + 0.01` on its domain.
pub const G_THRESHOLD: f64 = core::f64::consts::LN_2 + 0.01;

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        invalid(name, "a finite value > 0")
    }
}

/// `f(x, y, z) = (xy/2) φ(z/x) − (ln(y/x) + 1)`.
pub fn f(x: f64, y: f64, z: f64) -> Result<f64> {
    positive("x", x)?;
    positive("y", y)?;
    positive("z", z)?;
    Ok(f_raw(x, y, z))
}

/// `g(x, z) = (x²/2) φ(z/x)`.
pub fn g(x: f64, z: f64) -> Result<f64> {
    positive("x", x)?;
    positive("z", z)?;
    Ok(g_raw(x, z))
}

/// `h₁(x) = x (ln(1 + z/x) − z/x)` for fixed `z`.
pub fn h1(x: f64, z: f64) -> Result<f64> {
    positive("x", x)?;
    positive("z", z)?;
    Ok(h1_raw(x, z))
}

/// `h₂(y) = y² (ln(1 + 3z/y) − 3z/y)` for fixed `z`.
pub fn h2(y: f64, z: f64) -> Result<f64> {
    positive("y", y)?;
    positive("z", z)?;
    Ok(h2_raw(y, z))
}

/// `h₃(t) = ln(1 + t) − t`.
pub fn h3(t: f64) -> Result<f64> {
    positive("t", t)?;
    Ok(h3_raw(t))
}

fn f_raw(x: f64, y: f64, z: f64) -> f64 {
    x * y / 2.0 * phi_unchecked(z / x) - (log(y / x) + 1.0)
}

fn g_raw(x: f64, z: f64) -> f64 {
    x * x / 2.0 * phi_unchecked(z / x)
}

fn h1_raw(x: f64, z: f64) -> f64 {
    let u = z / x;
    x * (log1p(u) - u)
}

fn h2_raw(y: f64, z: f64) -> f64 {
    let u = 3.0 * z / y;
    y * y * (log1p(u) - u)
}

fn h3_raw(t: f64) -> f64 {
    log1p(t) - t
}

/// Grid over which [`verify_appendix`] evaluates.
///
/// `f` is evaluated for `y` on `[y_min, y_max]` (step `y_step`), `x` on
/// `x_step, 2·x_step, …` strictly below `y/3` plus the endpoint `y/3`, and
/// every `z` in `z_values`. `g` is evaluated for `x` on `[g_x_min, g_x_max]`
/// (step `g_x_step`) and every `z` in `z_values`. The one-dimensional
/// monotonicity checks use `mono_points` equally spaced points of
/// `(0, mono_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub x_step: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub y_step: f64,
    pub z_values: Vec<f64>,
    pub g_x_min: f64,
    pub g_x_max: f64,
    pub g_x_step: f64,
    pub mono_max: f64,
    pub mono_points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            x_step: 0.01,
            y_min: 3.95,
            y_max: 20.0,
            y_step: 0.01,
            z_values: alloc::vec![1.999, 2.5, 5.0, 20.0],
            g_x_min: 1.34,
            g_x_max: 20.0,
            g_x_step: 0.01,
            mono_max: 10.0,
            mono_points: 10_000,
        }
    }
}

impl GridSpec {
    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("x_step", self.x_step),
            ("y_min", self.y_min),
            ("y_step", self.y_step),
            ("g_x_min", self.g_x_min),
            ("g_x_step", self.g_x_step),
            ("mono_max", self.mono_max),
        ] {
            positive(name, v)?;
        }
        if !(self.y_max >= self.y_min) || !self.y_max.is_finite() {
            return invalid("y_max", "y_max >= y_min");
        }
        if !(self.g_x_max >= self.g_x_min) || !self.g_x_max.is_finite() {
            return invalid("g_x_max", "g_x_max >= g_x_min");
        }
        if self.z_values.is_empty() {
            return invalid("z_values", "at least one z");
        }
        for &z in &self.z_values {
            positive("z_values", z)?;
        }
        if self.mono_points < 2 {
            return invalid("mono_points", "mono_points >= 2");
        }
        Ok(())
    }

    fn y_grid(&self) -> Vec<f64> {
        closed_grid(self.y_min, self.y_max, self.y_step)
    }

    fn g_x_grid(&self) -> Vec<f64> {
        closed_grid(self.g_x_min, self.g_x_max, self.g_x_step)
    }

    fn mono_grid(&self) -> Vec<f64> {
        let h = self.mono_max / self.mono_points as f64;
        (1..=self.mono_points).map(|i| i as f64 * h).collect()
    }
}

/// `min, min + step, …` up to `max` inclusive (within rounding).
fn closed_grid(min: f64, max: f64, step: f64) -> Vec<f64> {
    let count = ((max - min) / step + 1e-9) as usize;
    (0..=count).map(|i| min + i as f64 * step).collect()
}

/// Strict monotonicity failures found on the one-dimensional grids.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MonotonicityCounts {
    pub phi: usize,
    pub g_in_x: usize,
    pub g_in_z: usize,
    pub h1: usize,
    pub h2: usize,
    pub h3: usize,
}

impl MonotonicityCounts {
    pub fn total(&self) -> usize {
        self.phi + self.g_in_x + self.g_in_z + self.h1 + self.h2 + self.h3
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridReport {
    pub grid: GridSpec,
    pub min_f: f64,
    /// `(x, y, z)` attaining `min_f`.
    pub argmin_f: (f64, f64, f64),
    pub f_evaluations: usize,
    pub min_g: f64,
    /// `(x, z)` attaining `min_g`.
    pub argmin_g: (f64, f64),
    pub g_evaluations: usize,
    pub monotonicity_violations: MonotonicityCounts,
    /// `f(3.95/3, 3.95, 1.999) = 3 g(3.95/3, 1.999) − ln 3 − 1`.
    pub corner_f: f64,
    /// `g(1.34, 1.999)`.
    pub corner_g: f64,
    /// `h₂(3.95)/3 + 2` at `z = 1.999`; negative means `f` decreases in `x`.
    pub h2_corner: f64,
}

impl GridReport {
    pub fn passed(&self) -> bool {
        self.min_f > F_THRESHOLD
            && self.min_g > G_THRESHOLD
            && self.monotonicity_violations.total() == 0
    }
}

fn count_not_increasing(values: impl Iterator<Item = f64>) -> usize {
    let mut prev = f64::NEG_INFINITY;
    let mut bad = 0;
    for v in values {
        if !(v > prev) {
            bad += 1;
        }
        prev = v;
    }
    bad
}

fn count_not_decreasing(values: impl Iterator<Item = f64>) -> usize {
    count_not_increasing(values.map(|v| -v))
}

/// Fixed `x` values at which `g` is checked to increase in `z`.
const G_IN_Z_XS: [f64; 6] = [0.5, 1.0, 1.34, 2.0, 5.0, 10.0];

/// Evaluates `f` and `g` on the declared grid and checks monotonicity of
/// `φ`, `g` (in each argument), `h₁`, `h₂` and `h₃`.
pub fn verify_appendix(grid: &GridSpec) -> Result<GridReport> {
    grid.validate()?;

    let mut min_f = f64::INFINITY;
    let mut argmin_f = (0.0, 0.0, 0.0);
    let mut f_evaluations = 0;
    for y in grid.y_grid() {
        let top = y / 3.0;
        let steps = libm::ceil((top / grid.x_step) - 1e-9) as usize;
        let xs = (1..steps)
            .map(|i| i as f64 * grid.x_step)
            .chain(core::iter::once(top));
        for x in xs {
            for &z in &grid.z_values {
                let v = f_raw(x, y, z);
                f_evaluations += 1;
                if v < min_f {
                    min_f = v;
                    argmin_f = (x, y, z);
                }
            }
        }
    }

    let mut min_g = f64::INFINITY;
    let mut argmin_g = (0.0, 0.0);
    let mut g_evaluations = 0;
    let gx = grid.g_x_grid();
    for &x in &gx {
        for &z in &grid.z_values {
            let v = g_raw(x, z);
            g_evaluations += 1;
            if v < min_g {
                min_g = v;
                argmin_g = (x, z);
            }
        }
    }

    let ts = grid.mono_grid();
    let mut mono = MonotonicityCounts {
        phi: count_not_increasing(ts.iter().map(|&t| phi_unchecked(t))),
        h3: count_not_decreasing(ts.iter().map(|&t| h3_raw(t))),
        ..Default::default()
    };
    for &z in &grid.z_values {
        mono.g_in_x += count_not_increasing(gx.iter().map(|&x| g_raw(x, z)));
        mono.g_in_x += count_not_increasing(ts.iter().map(|&x| g_raw(x, z)));
        mono.h1 += count_not_increasing(ts.iter().map(|&x| h1_raw(x, z)));
        mono.h2 += count_not_decreasing(ts.iter().map(|&y| h2_raw(y, z)));
    }
    for x in G_IN_Z_XS {
        mono.g_in_z += count_not_increasing(ts.iter().map(|&z| g_raw(x, z)));
    }

    Ok(GridReport {
        grid: grid.clone(),
        min_f,
        argmin_f,
        f_evaluations,
        min_g,
        argmin_g,
        g_evaluations,
        monotonicity_violations: mono,
        corner_f: f_raw(3.95 / 3.0, 3.95, 1.999),
        corner_g: g_raw(1.34, 1.999),
        h2_corner: h2_raw(3.95, 1.999) / 3.0 + 2.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corner_values() {
        let g_corner = g(1.34, 1.999).unwrap();
        assert!((g_corner - 0.70317).abs() < 1e-5);
        assert!(g_corner > G_THRESHOLD);
        let chain = 3.0 * g(3.95 / 3.0, 1.999).unwrap() - log(3.0) - 1.0;
        assert!((chain - 0.0012115).abs() < 1e-6);
        assert!(chain > F_THRESHOLD);
        assert!((f(3.95 / 3.0, 3.95, 1.999).unwrap() - chain).abs() < 1e-12);
        assert!(h2(3.95, 1.999).unwrap() / 3.0 + 2.0 < 0.0);
    }

    #[test]
    fn domain_errors() {
        assert!(f(0.0, 1.0, 1.0).is_err());
        assert!(f(1.0, -1.0, 1.0).is_err());
        assert!(g(1.0, 0.0).is_err());
        assert!(h1(-1.0, 1.0).is_err());
        assert!(h2(1.0, f64::NAN).is_err());
        assert!(h3(0.0).is_err());
    }

    #[test]
    fn h3_negative_and_vanishing() {
        for i in 1..1000 {
            assert!(h3(i as f64 * 0.01).unwrap() < 0.0);
        }
        assert!(h3(1e-9).unwrap().abs() < 1e-17);
    }

    #[test]
    fn small_grid_passes() {
        let grid = GridSpec {
            y_max: 6.0,
            g_x_max: 4.0,
            mono_points: 500,
            ..GridSpec::default()
        };
        let r = verify_appendix(&grid).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.argmin_g, (1.34, 1.999));
        assert!((r.argmin_f.1 - 3.95).abs() < 1e-12);
    }

    #[test]
    fn widened_z_breaks_g_bound() {
        let grid = GridSpec {
            z_values: alloc::vec![1.5],
            y_max: 5.0,
            g_x_max: 3.0,
            mono_points: 100,
            ..GridSpec::default()
        };
        let r = verify_appendix(&grid).unwrap();
        assert!(r.min_g < core::f64::consts::LN_2);
        assert!(!r.passed());
    }

    #[test]
    fn malformed_grid() {
        let bad = GridSpec {
            x_step: 0.0,
            ..GridSpec::default()
        };
        assert!(verify_appendix(&bad).is_err());
        let bad = GridSpec {
            y_max: 1.0,
            ..GridSpec::default()
        };
        assert!(verify_appendix(&bad).is_err());
        let bad = GridSpec {
            z_values: alloc::vec![],
            ..GridSpec::default()
        };
        assert!(verify_appendix(&bad).is_err());
    }
}
