//! Normalized Laplacian spectrum and the spectral gap
//! `λ̄(G) = max(|1 − λ₁|, |1 − λ_{n−1}|)`.

use alloc::vec;
use alloc::vec::Vec;

use libm::{fabs, sqrt};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default size cap for the dense eigensolve.
pub const DEFAULT_SPECTRAL_CAP: usize = 2000;
/// Stopping threshold on the off-diagonal Frobenius norm.
pub const JACOBI_TOLERANCE: f64 = 1e-10;
const MAX_SWEEPS: usize = 100;

/// Dense symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        SymmetricMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut sum = 0.0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                let x = self.get(i, j);
                sum += x * x;
            }
        }
        sqrt(2.0 * sum)
    }

    /// All eigenvalues, ascending, by cyclic Jacobi rotations. Consumes the
    /// matrix as scratch space.
    pub fn eigenvalues(mut self) -> Vec<f64> {
        let n = self.n;
        for _ in 0..MAX_SWEEPS {
            if self.off_diagonal_norm() <= JACOBI_TOLERANCE {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    self.rotate(p, q);
                }
            }
        }
        let mut values: Vec<f64> = (0..n).map(|i| self.get(i, i)).collect();
        values.sort_by(f64::total_cmp);
        values
    }

    /// Zeroes entry `(p, q)` with one Givens rotation.
    fn rotate(&mut self, p: usize, q: usize) {
        let n = self.n;
        let apq = self.get(p, q);
        if apq == 0.0 {
            return;
        }
        let app = self.get(p, p);
        let aqq = self.get(q, q);
        let theta = (aqq - app) / (2.0 * apq);
        let t = {
            let t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0));
            if theta < 0.0 {
                -t
            } else {
                t
            }
        };
        let c = 1.0 / sqrt(t * t + 1.0);
        let s = t * c;
        let tau = s / (1.0 + c);
        self.data[p * n + p] = app - t * apq;
        self.data[q * n + q] = aqq + t * apq;
        self.set(p, q, 0.0);
        for k in 0..n {
            if k == p || k == q {
                continue;
            }
            let akp = self.get(k, p);
            let akq = self.get(k, q);
            self.set(k, p, akp - s * (akq + tau * akp));
            self.set(k, q, akq + s * (akp - tau * akq));
        }
    }
}

/// `ℒ = I − D^{−1/2} A D^{−1/2}`, where isolated vertices get `0` in
/// `D^{−1/2}` and therefore a zero diagonal entry.
pub fn normalized_laplacian(g: &Graph) -> SymmetricMatrix {
    let n = g.n();
    let mut l = SymmetricMatrix::zeros(n);
    let inv_sqrt: Vec<f64> = (0..n)
        .map(|i| match g.degree_at(i) {
            0 => 0.0,
            d => 1.0 / sqrt(d as f64),
        })
        .collect();
    for i in 0..n {
        if g.degree_at(i) > 0 {
            l.set(i, i, 1.0);
        }
    }
    for &(u, v) in g.edges() {
        let (i, j) = (u as usize - 1, v as usize - 1);
        l.set(i, j, -inv_sqrt[i] * inv_sqrt[j]);
    }
    l
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    /// `λ₀ <= … <= λ_{n−1}`.
    pub eigenvalues: Vec<f64>,
    /// `max(|1 − λ₁|, |1 − λ_{n−1}|)`; zero when `n < 2`.
    pub gap: f64,
}

/// Spectral gap with the default cap.
pub fn spectral_gap(g: &Graph) -> Result<SpectrumResult> {
    spectral_gap_capped(g, DEFAULT_SPECTRAL_CAP)
}

pub fn spectral_gap_capped(g: &Graph, cap: usize) -> Result<SpectrumResult> {
    if g.n() > cap {
        return Err(Error::CapExceeded {
            operation: "dense eigensolve",
            n: g.n(),
            cap,
        });
    }
    let eigenvalues = normalized_laplacian(g).eigenvalues();
    let gap = match eigenvalues.len() {
        0 | 1 => 0.0,
        len => fabs(1.0 - eigenvalues[1]).max(fabs(1.0 - eigenvalues[len - 1])),
    };
    Ok(SpectrumResult { eigenvalues, gap })
}
