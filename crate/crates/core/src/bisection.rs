//! Balanced bisections: exact minimum by enumeration, swap-based local
//! search, the error decomposition of a bisection's edge counts around
//! `nd/8`, and the two-block modularity certificate.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::ops::{Add, Neg, Sub};

use libm::sqrt;
use rand::seq::SliceRandom;

use crate::error::{invalid, Error, Result};
use crate::graph::{edge_counts, Graph, VertexSubset, MASK_LIMIT};
use crate::modularity::{score_edge_form, Method, ModularityResult, Partition};
use crate::rng::{rng_from_seed, stream_seed};

/// Default size cap for [`exact_min_bisection`]; `C(26, 13) ≈ 10⁷`.
pub const DEFAULT_BISECTION_CAP: usize = 26;
const BISECTION_SALT: u64 = 0x4249_5345_4354_0000;

/// A balanced split: `|S| = ⌈n/2⌉`. For even `n`, `S` is the side holding
/// vertex 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bisection {
    pub subset: VertexSubset,
    /// `e(S, S̄)`.
    pub cut: u64,
}

impl Bisection {
    fn normalized(subset: VertexSubset, cut: u64) -> Self {
        let n = subset.n();
        let subset = if n.is_multiple_of(2) && n > 0 && !subset.contains(1) {
            subset.complement()
        } else {
            subset
        };
        Bisection { subset, cut }
    }

    /// `{S, S̄}`, or `{V}` when `S̄` is empty.
    pub fn partition(&self) -> Partition {
        let s = self.subset.labels();
        let rest = self.subset.complement().labels();
        let n = self.subset.n();
        if rest.is_empty() || s.is_empty() {
            return Partition::trivial(n);
        }
        Partition::new(n, vec![s, rest]).expect("complementary blocks")
    }

    fn key(&self) -> (u64, Vec<u32>) {
        (self.cut, self.subset.labels())
    }
}

pub fn is_balanced(size: usize, n: usize) -> bool {
    size == n.div_ceil(2)
}

/// Exact minimum bisection with the default cap.
pub fn exact_min_bisection(g: &Graph) -> Result<Bisection> {
    exact_min_bisection_capped(g, DEFAULT_BISECTION_CAP)
}

/// Minimum of `e(S, S̄)` over all `S` with `|S| = ⌈n/2⌉`, scanning subsets in
/// lexicographic order of their sorted labels and keeping the first minimum.
/// For even `n` only subsets containing vertex 1 are scanned.
pub fn exact_min_bisection_capped(g: &Graph, cap: usize) -> Result<Bisection> {
    let n = g.n();
    if n > cap || n > MASK_LIMIT {
        return Err(Error::CapExceeded {
            operation: "exact minimum bisection",
            n,
            cap: cap.min(MASK_LIMIT),
        });
    }
    if n == 0 {
        return Ok(Bisection {
            subset: VertexSubset::empty(0),
            cut: 0,
        });
    }
    let masks = g.adjacency_masks().expect("n <= 64 keeps masks");
    let mut search = BisectionSearch {
        masks,
        deg: (0..n).map(|i| g.degree_at(i) as u64).collect(),
        n,
        target: n.div_ceil(2),
        best_cut: u64::MAX,
        best_mask: 0,
    };
    if n.is_multiple_of(2) {
        search.descend(1, 1, 1, 0, search.deg[0]);
    } else {
        search.descend(0, 0, 0, 0, 0);
    }
    let subset = VertexSubset::from_mask(n, search.best_mask)?;
    Ok(Bisection {
        subset,
        cut: search.best_cut,
    })
}

struct BisectionSearch<'a> {
    masks: &'a [u64],
    deg: Vec<u64>,
    n: usize,
    target: usize,
    best_cut: u64,
    best_mask: u64,
}

impl BisectionSearch<'_> {
    fn descend(&mut self, next: usize, taken: usize, mask: u64, e_in: u64, vol: u64) {
        if taken == self.target {
            let cut = vol - 2 * e_in;
            if cut < self.best_cut {
                self.best_cut = cut;
                self.best_mask = mask;
            }
            return;
        }
        let need = self.target - taken;
        for v in next..=self.n - need {
            let add = (self.masks[v] & mask).count_ones() as u64;
            self.descend(v + 1, taken + 1, mask | 1 << v, e_in + add, vol + self.deg[v]);
        }
    }
}

/// Result of one swap descent: the final bisection and the cut after every
/// accepted swap (starting with the initial cut).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapDescent {
    pub bisection: Bisection,
    pub cuts: Vec<u64>,
}

/// Repeatedly applies the swap of one vertex of `S` with one of `S̄` that
/// reduces the cut the most, until no swap reduces it.
pub fn swap_descent(g: &Graph, start: &VertexSubset) -> Result<SwapDescent> {
    let n = g.n();
    if start.n() != n {
        return invalid("start", "a subset of the graph's vertex set");
    }
    if !is_balanced(start.len(), n) {
        return Err(Error::Unbalanced {
            size: start.len(),
            n,
        });
    }
    let mut side: Vec<bool> = start.membership().to_vec();
    // D(v) = external − internal degree.
    let mut gain: Vec<i64> = (0..n)
        .map(|i| {
            g.adjacency(i)
                .iter()
                .map(|&j| if side[j as usize] == side[i] { -1 } else { 1 })
                .sum()
        })
        .collect();
    let mut cut = edge_counts(g, start)?.e_cross;
    let mut sets: [BTreeSet<(Reverse<i64>, u32)>; 2] = [BTreeSet::new(), BTreeSet::new()];
    for i in 0..n {
        sets[side[i] as usize].insert((Reverse(gain[i]), i as u32));
    }
    let mut cuts = vec![cut];

    while let Some((a, b, delta)) = best_swap(g, &sets) {
        sets[1].remove(&(Reverse(gain[a]), a as u32));
        sets[0].remove(&(Reverse(gain[b]), b as u32));
        for x in [a, b] {
            let from = side[x];
            for &w in g.adjacency(x) {
                let w = w as usize;
                if w == a || w == b {
                    gain[w] += if side[w] == from { 2 } else { -2 };
                    continue;
                }
                let old = gain[w];
                let new = if side[w] == from { old + 2 } else { old - 2 };
                let set = &mut sets[side[w] as usize];
                set.remove(&(Reverse(old), w as u32));
                set.insert((Reverse(new), w as u32));
                gain[w] = new;
            }
            gain[x] = -gain[x];
            side[x] = !from;
        }
        sets[side[a] as usize].insert((Reverse(gain[a]), a as u32));
        sets[side[b] as usize].insert((Reverse(gain[b]), b as u32));
        cut -= delta as u64;
        cuts.push(cut);
    }
    Ok(SwapDescent {
        bisection: Bisection::normalized(VertexSubset::from_membership(side), cut),
        cuts,
    })
}

/// Best cut-reducing pair `(a ∈ S, b ∈ S̄)` with its reduction
/// `D(a) + D(b) − 2·[ab ∈ E]`, if any reduction is positive.
fn best_swap(g: &Graph, sets: &[BTreeSet<(Reverse<i64>, u32)>; 2]) -> Option<(usize, usize, i64)> {
    let outside = &sets[0];
    let inside = &sets[1];
    let top_out = outside.iter().next()?.0 .0;
    let mut best: Option<(usize, usize, i64)> = None;
    let mut best_gain = 0i64;
    for &(Reverse(da), a) in inside {
        if da + top_out <= best_gain {
            break;
        }
        for &(Reverse(db), b) in outside {
            if da + db <= best_gain {
                break;
            }
            let adjacent = g.has_edge_at(a as usize, b as usize);
            let value = da + db - if adjacent { 2 } else { 0 };
            if value > best_gain {
                best_gain = value;
                best = Some((a as usize, b as usize, value));
            }
            if !adjacent {
                break;
            }
        }
    }
    best
}

/// Best of `restarts` swap descents from random balanced splits. Restart `r`
/// shuffles the vertices with stream `r` of `seed`; ties on the cut go to the
/// lexicographically smallest `S`.
pub fn local_search_bisection(g: &Graph, seed: u64, restarts: usize) -> Bisection {
    let n = g.n();
    let half = n.div_ceil(2);
    let mut best: Option<Bisection> = None;
    for r in 0..restarts.max(1) {
        let mut rng = rng_from_seed(stream_seed(seed ^ BISECTION_SALT, r as u64));
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let mut members = vec![false; n];
        for &i in &order[..half] {
            members[i] = true;
        }
        let start = VertexSubset::from_membership(members);
        let found = swap_descent(g, &start)
            .expect("random split is balanced")
            .bisection;
        if best.as_ref().is_none_or(|b| found.key() < b.key()) {
            best = Some(found);
        }
    }
    best.expect("at least one restart")
}

/// `units + eighths · (nd/8)`: an exact value in the basis `{1, nd/8}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NdAffine {
    pub units: i64,
    pub eighths: i64,
}

impl NdAffine {
    pub const ZERO: NdAffine = NdAffine {
        units: 0,
        eighths: 0,
    };

    pub fn eval(self, nd: f64) -> f64 {
        self.units as f64 + self.eighths as f64 * nd / 8.0
    }
}

impl Add for NdAffine {
    type Output = NdAffine;
    fn add(self, o: NdAffine) -> NdAffine {
        NdAffine {
            units: self.units + o.units,
            eighths: self.eighths + o.eighths,
        }
    }
}

impl Sub for NdAffine {
    type Output = NdAffine;
    fn sub(self, o: NdAffine) -> NdAffine {
        self + -o
    }
}

impl Neg for NdAffine {
    type Output = NdAffine;
    fn neg(self) -> NdAffine {
        NdAffine {
            units: -self.units,
            eighths: -self.eighths,
        }
    }
}

/// `err₀ = e(G) − nd/2`, `e(S) = nd/8 + err₁ + err₀`, `e(S̄) = nd/8 + err₂`.
///
/// The errors are kept exactly as [`NdAffine`] values, so the reconstruction
/// `e(S, S̄) = nd/4 − (err₁ + err₂)` is checked without rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorDecomposition {
    pub n: usize,
    pub d: f64,
    pub e_in: u64,
    pub e_out: u64,
    pub cut: u64,
    pub err0: NdAffine,
    pub err1: NdAffine,
    pub err2: NdAffine,
}

impl ErrorDecomposition {
    pub fn nd(&self) -> f64 {
        self.n as f64 * self.d
    }

    pub fn err0_value(&self) -> f64 {
        self.err0.eval(self.nd())
    }

    pub fn err1_value(&self) -> f64 {
        self.err1.eval(self.nd())
    }

    pub fn err2_value(&self) -> f64 {
        self.err2.eval(self.nd())
    }

    /// `nd/4 − (err₁ + err₂)`, exactly.
    pub fn reconstructed_cut(&self) -> NdAffine {
        NdAffine {
            units: 0,
            eighths: 2,
        } - (self.err1 + self.err2)
    }

    /// `reconstructed_cut − e(S, S̄)`; zero for every input.
    pub fn residual(&self) -> NdAffine {
        self.reconstructed_cut()
            - NdAffine {
                units: self.cut as i64,
                eighths: 0,
            }
    }

    /// Whether `|e(S) − nd/8| <= c·n·√d` and `|e(S̄) − nd/8| <= c·n·√d`.
    pub fn within_half_deviation(&self, c: f64) -> bool {
        let limit = c * self.n as f64 * sqrt(self.d);
        let eighth = self.nd() / 8.0;
        (self.e_in as f64 - eighth).abs() <= limit && (self.e_out as f64 - eighth).abs() <= limit
    }
}

/// Error decomposition of the balanced bisection `S` with density parameter `d`.
pub fn error_decomposition(g: &Graph, s: &VertexSubset, d: f64) -> Result<ErrorDecomposition> {
    if !(d > 0.0) || !d.is_finite() {
        return invalid("d", "a finite d > 0");
    }
    if s.n() != g.n() {
        return invalid("subset", "a subset of the graph's vertex set");
    }
    if !is_balanced(s.len(), g.n()) {
        return Err(Error::Unbalanced {
            size: s.len(),
            n: g.n(),
        });
    }
    let c = edge_counts(g, s)?;
    let m = g.edge_count() as i64;
    let err0 = NdAffine {
        units: m,
        eighths: -4,
    };
    let err1 = NdAffine {
        units: c.e_in as i64,
        eighths: -1,
    } - err0;
    let err2 = NdAffine {
        units: c.e_out as i64,
        eighths: -1,
    };
    Ok(ErrorDecomposition {
        n: g.n(),
        d,
        e_in: c.e_in,
        e_out: c.e_out,
        cut: c.e_cross,
        err0,
        err1,
        err2,
    })
}

/// Modularity lower bound from the two-block partition of a local-search
/// bisection. Falls back to `{V}` (score 0) when the split scores below zero.
pub fn bisection_modularity_certificate(g: &Graph, seed: u64, restarts: usize) -> ModularityResult {
    let trivial = ModularityResult {
        score: 0.0,
        partition: Partition::trivial(g.n()),
        method: Method::Trivial,
    };
    if g.edge_count() == 0 || g.n() < 2 {
        return trivial;
    }
    let partition = local_search_bisection(g, seed, restarts).partition();
    let score = score_edge_form(g, &partition).expect("partition of g");
    if score > 0.0 {
        ModularityResult {
            score,
            partition,
            method: Method::Bisection,
        }
    } else {
        trivial
    }
}
