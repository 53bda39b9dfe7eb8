//! Modularity scores of partitions and modularity maximization.
//!
//! For a graph with `m >= 1` edges and a partition `A`, the score is
//! `Σ_S e(S)/m − vol(S)²/(2m)²`. The same value can be written using only
//! edge counts as `Σ_S (4 e(S) e(S̄) − e(S, S̄)²) / (4m²)`; the two routes are
//! implemented independently ([`score_definition`] and [`score_edge_form`])
//! so that each checks the other. Graphs without edges score 0.

mod exact;
mod heuristic;

use alloc::vec;
use alloc::vec::Vec;

pub use exact::{exact_modularity, exact_modularity_capped, DEFAULT_EXACT_CAP};
pub use heuristic::heuristic_modularity;

use crate::error::{invalid, Result};
use crate::graph::{connected_components, EdgeCounts, Graph};
pub use crate::partition::Partition;

/// How a [`ModularityResult`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Exact,
    Heuristic,
    Components,
    Bisection,
    Trivial,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Heuristic => "heuristic",
            Method::Components => "components",
            Method::Bisection => "bisection",
            Method::Trivial => "trivial",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModularityResult {
    pub score: f64,
    pub partition: Partition,
    pub method: Method,
}

fn check_partition(g: &Graph, p: &Partition) -> Result<()> {
    if p.n() != g.n() {
        return invalid("partition", "a partition of the graph's vertex set");
    }
    Ok(())
}

/// Per-block [`EdgeCounts`] in one pass over the edge list.
pub fn block_counts(g: &Graph, p: &Partition) -> Result<Vec<EdgeCounts>> {
    check_partition(g, p)?;
    let block = p.assignment();
    let mut e_in = vec![0u64; p.len()];
    let mut vol = vec![0u64; p.len()];
    for &(u, v) in g.edges() {
        let (bu, bv) = (block[u as usize - 1], block[v as usize - 1]);
        vol[bu] += 1;
        vol[bv] += 1;
        if bu == bv {
            e_in[bu] += 1;
        }
    }
    let m = g.edge_count() as u64;
    Ok(e_in
        .into_iter()
        .zip(vol)
        .map(|(e, v)| EdgeCounts::from_inside_and_volume(e, v, m))
        .collect())
}

/// `Σ_S e(S)/e(G) − vol(S)²/vol(G)²`, evaluated term by term in floating point.
pub fn score_definition(g: &Graph, p: &Partition) -> Result<f64> {
    let counts = block_counts(g, p)?;
    let m = g.edge_count();
    if m == 0 {
        return Ok(0.0);
    }
    let m = m as f64;
    let vol_g = 2.0 * m;
    Ok(counts
        .iter()
        .map(|c| {
            let share = c.vol_s as f64 / vol_g;
            c.e_in as f64 / m - share * share
        })
        .sum())
}

/// `Σ_S (4 e(S) e(S̄) − e(S, S̄)²) / (4 e(G)²)` with the numerator summed in
/// exact integer arithmetic and a single final division.
pub fn score_edge_form(g: &Graph, p: &Partition) -> Result<f64> {
    let counts = block_counts(g, p)?;
    let m = g.edge_count();
    if m == 0 {
        return Ok(0.0);
    }
    let numerator: i128 = counts
        .iter()
        .map(|c| 4 * c.e_in as i128 * c.e_out as i128 - (c.e_cross as i128).pow(2))
        .sum();
    Ok(ratio(numerator, m))
}

/// `numerator / (4m²)`.
pub(crate) fn ratio(numerator: i128, m: usize) -> f64 {
    let m = m as i128;
    numerator as f64 / (4 * m * m) as f64
}

/// `Σ_S 4 e(G) e(S) − vol(S)²`, the score scaled by `4 e(G)²`. Exact, so
/// candidate partitions are compared without rounding.
pub(crate) fn scaled_score(g: &Graph, assignment: &[usize], blocks: usize) -> i128 {
    let mut e_in = vec![0i128; blocks];
    let mut vol = vec![0i128; blocks];
    for &(u, v) in g.edges() {
        let (bu, bv) = (assignment[u as usize - 1], assignment[v as usize - 1]);
        vol[bu] += 1;
        vol[bv] += 1;
        if bu == bv {
            e_in[bu] += 1;
        }
    }
    let m4 = 4 * g.edge_count() as i128;
    e_in.iter().zip(&vol).map(|(e, v)| m4 * e - v * v).sum()
}

/// Score of the connected-components partition.
pub fn score_components(g: &Graph) -> Result<ModularityResult> {
    let partition = connected_components(g);
    let score = score_edge_form(g, &partition)?;
    Ok(ModularityResult {
        score,
        partition,
        method: Method::Components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::sample_gnp;

    fn two_edges() -> Graph {
        Graph::from_edges(4, [(1, 2), (3, 4)]).unwrap()
    }

    fn p(n: usize, blocks: &[&[u32]]) -> Partition {
        Partition::new(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn trivial_partition_scores_zero() {
        let g = sample_gnp(15, 0.4, 11).unwrap();
        assert_eq!(score_definition(&g, &Partition::trivial(15)).unwrap(), 0.0);
        assert_eq!(score_edge_form(&g, &Partition::trivial(15)).unwrap(), 0.0);
    }

    #[test]
    fn k2_singletons() {
        let k2 = Graph::complete(2);
        let s = Partition::singletons(2);
        assert_eq!(score_definition(&k2, &s).unwrap(), -0.5);
        assert_eq!(score_edge_form(&k2, &s).unwrap(), -0.5);
    }

    #[test]
    fn path_halves() {
        let path = Graph::from_edges(4, [(1, 2), (2, 3), (3, 4)]).unwrap();
        let halves = p(4, &[&[1, 2], &[3, 4]]);
        // e(S) = 1 per block, vol(S) = 3: 2 (1/3 − 9/36) = 1/6.
        assert!((score_definition(&path, &halves).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert!((score_edge_form(&path, &halves).unwrap() - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn disjoint_edges() {
        let g = two_edges();
        let halves = p(4, &[&[1, 2], &[3, 4]]);
        assert_eq!(score_edge_form(&g, &halves).unwrap(), 0.5);
        assert_eq!(score_definition(&g, &halves).unwrap(), 0.5);
        let r = score_components(&g).unwrap();
        assert_eq!(r.score, 0.5);
        assert_eq!(r.partition, halves);
    }

    #[test]
    fn zero_edges_score_zero() {
        let g = Graph::empty(5);
        assert_eq!(score_definition(&g, &Partition::singletons(5)).unwrap(), 0.0);
        assert_eq!(score_edge_form(&g, &Partition::singletons(5)).unwrap(), 0.0);
        assert_eq!(score_components(&g).unwrap().score, 0.0);
    }

    #[test]
    fn connected_graph_components_zero() {
        let g = Graph::complete(6);
        assert_eq!(score_components(&g).unwrap().score, 0.0);
    }

    #[test]
    fn mismatched_partition_rejected() {
        assert!(score_definition(&two_edges(), &Partition::trivial(3)).is_err());
    }

    #[test]
    fn scaled_score_matches_edge_form() {
        let g = sample_gnp(30, 0.2, 3).unwrap();
        let part = Partition::from_assignment(&(0..30).map(|i| i % 4).collect::<Vec<_>>());
        let scaled = scaled_score(&g, &part.assignment(), part.len());
        assert_eq!(ratio(scaled, g.edge_count()), score_edge_form(&g, &part).unwrap());
    }
}
