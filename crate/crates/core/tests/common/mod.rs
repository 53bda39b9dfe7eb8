//! Direct, slow reference computations used as oracles.
#![allow(dead_code)]

use gnpmod_core::Graph;

pub fn adjacency_matrix(g: &Graph) -> Vec<Vec<u8>> {
    let n = g.n();
    let mut a = vec![vec![0u8; n]; n];
    for &(u, v) in g.edges() {
        a[u as usize - 1][v as usize - 1] = 1;
        a[v as usize - 1][u as usize - 1] = 1;
    }
    a
}

/// `(1/2m) Σ_ij (A_ij − k_i k_j / 2m) [c_i = c_j]`, the matrix form of
/// modularity, with 0 for edgeless graphs.
pub fn matrix_modularity(g: &Graph, assignment: &[usize]) -> f64 {
    let a = adjacency_matrix(g);
    let n = g.n();
    let two_m: f64 = a.iter().flatten().map(|&x| x as f64).sum();
    if two_m == 0.0 {
        return 0.0;
    }
    let k: Vec<f64> = a.iter().map(|r| r.iter().map(|&x| x as f64).sum()).collect();
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if assignment[i] == assignment[j] {
                q += a[i][j] as f64 - k[i] * k[j] / two_m;
            }
        }
    }
    q / two_m
}

/// Calls `visit` with every set partition of `0..n` as a block id per vertex.
pub fn for_each_partition(n: usize, visit: &mut impl FnMut(&[usize])) {
    fn rec(i: usize, used: usize, a: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if i == a.len() {
            visit(a);
            return;
        }
        for b in 0..=used {
            a[i] = b;
            rec(i + 1, used.max(b + 1), a, visit);
        }
    }
    let mut a = vec![0; n];
    if n == 0 {
        visit(&a);
        return;
    }
    rec(1, 1, &mut a, visit);
}

pub fn brute_force_modularity(g: &Graph) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for_each_partition(g.n(), &mut |a| best = best.max(matrix_modularity(g, a)));
    best
}

/// `(e_in, e_out, e_cross)` for the subset with the given membership.
pub fn count_edges(g: &Graph, inside: &[bool]) -> (u64, u64, u64) {
    let mut c = (0, 0, 0);
    for &(u, v) in g.edges() {
        match (inside[u as usize - 1], inside[v as usize - 1]) {
            (true, true) => c.0 += 1,
            (false, false) => c.1 += 1,
            _ => c.2 += 1,
        }
    }
    c
}

pub fn membership_of_mask(n: usize, mask: u64) -> Vec<bool> {
    (0..n).map(|i| mask >> i & 1 == 1).collect()
}

/// Minimum cut over all subsets of size `⌈n/2⌉`.
pub fn brute_force_min_bisection(g: &Graph) -> u64 {
    let n = g.n();
    let half = n.div_ceil(2) as u32;
    (0u64..1 << n)
        .filter(|m| m.count_ones() == half)
        .map(|m| count_edges(g, &membership_of_mask(n, m)).2)
        .min()
        .unwrap()
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (1..=n as u32).map(|v| (v, v % n as u32 + 1))).unwrap()
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n as u32).map(|v| (v, v + 1))).unwrap()
}
