//! Simple undirected graphs on `{1..n}`, the `G(n, p)` sampler, and the
//! subset edge statistics `e(S)`, `e(S̄)`, `e(S, S̄)`, `vol(S)`.
//!
//! Labels are 1-based everywhere in the public API. Adjacency slices are
//! indexed by `label - 1` and hold 0-based neighbor indices.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{invalid, Error, Result};
use crate::partition::Partition;
use crate::rng::rng_from_seed;

/// Largest `n` for which per-vertex adjacency bit masks are kept.
pub const MASK_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Sorted `(u, v)` with `1 <= u < v <= n`.
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
    masks: Option<Vec<u64>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range
    /// labels. Pairs may be given in either orientation.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut list = Vec::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x == 0 || x as usize > n {
                    return Err(Error::VertexOutOfRange { vertex: x as u64, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop { vertex: a });
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge {
                u: w[0].0,
                v: w[0].1,
            });
        }
        Ok(Self::from_sorted_unique(n, list))
    }

    fn from_sorted_unique(n: usize, edges: Vec<(u32, u32)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u as usize - 1].push(v - 1);
            adj[v as usize - 1].push(u - 1);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let masks = (n <= MASK_LIMIT).then(|| {
            adj.iter()
                .map(|nbrs| nbrs.iter().fold(0u64, |m, &j| m | (1u64 << j)))
                .collect()
        });
        Graph {
            n,
            edges,
            adj,
            masks,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unique(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let n32 = n as u32;
        let edges = (1..=n32)
            .flat_map(|u| (u + 1..=n32).map(move |v| (u, v)))
            .collect();
        Self::from_sorted_unique(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `e(G)`.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted `(u, v)` label pairs with `u < v`.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Neighbors of the vertex with index `i = label - 1`, as sorted indices.
    pub fn adjacency(&self, i: usize) -> &[u32] {
        &self.adj[i]
    }

    /// Neighbor bit masks (bit `j` is the vertex with index `j`) when `n <= 64`.
    pub fn adjacency_masks(&self) -> Option<&[u64]> {
        self.masks.as_deref()
    }

    /// Degree of the vertex labeled `v`.
    pub fn degree(&self, v: u32) -> Result<usize> {
        if v == 0 || v as usize > self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v as u64,
                n: self.n,
            });
        }
        Ok(self.adj[v as usize - 1].len())
    }

    /// Degree by 0-based index.
    pub fn degree_at(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    /// Adjacency test by 0-based indices.
    pub fn has_edge_at(&self, i: usize, j: usize) -> bool {
        match &self.masks {
            Some(m) => m[i] >> j & 1 == 1,
            None => self.adj[i].binary_search(&(j as u32)).is_ok(),
        }
    }

    /// Number of vertices with degree zero.
    pub fn isolated_count(&self) -> usize {
        self.adj.iter().filter(|a| a.is_empty()).count()
    }

    /// The graph with every label `v` replaced by `perm[v - 1]`.
    pub fn relabel(&self, perm: &[u32]) -> Result<Self> {
        if perm.len() != self.n {
            return invalid("perm", "a permutation of 1..=n");
        }
        Graph::from_edges(
            self.n,
            self.edges
                .iter()
                .map(|&(u, v)| (perm[u as usize - 1], perm[v as usize - 1])),
        )
    }
}

/// Samples `G(n, p)`: every pair `{u, v}` is visited in lexicographic order
/// `(1,2), (1,3), …, (n-1,n)` and included iff a fresh uniform `[0, 1)` draw
/// is below `p`. The result is a pure function of `(n, p, seed)`.
pub fn sample_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return invalid("n", "n >= 1");
    }
    if !(0.0..=1.0).contains(&p) {
        return invalid("p", "0 <= p <= 1");
    }
    if n > u32::MAX as usize {
        return invalid("n", "n < 2^32");
    }
    let mut rng = rng_from_seed(seed);
    let n32 = n as u32;
    let mut edges = Vec::new();
    for u in 1..=n32 {
        for v in u + 1..=n32 {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_sorted_unique(n, edges))
}

/// A subset `S ⊆ {1..n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSubset {
    members: Vec<bool>,
    len: usize,
}

impl VertexSubset {
    pub fn from_labels(n: usize, labels: &[u32]) -> Result<Self> {
        let mut members = vec![false; n];
        for &v in labels {
            if v == 0 || v as usize > n {
                return Err(Error::VertexOutOfRange { vertex: v as u64, n });
            }
            members[v as usize - 1] = true;
        }
        Ok(Self::from_membership(members))
    }

    pub fn from_membership(members: Vec<bool>) -> Self {
        let len = members.iter().filter(|&&b| b).count();
        VertexSubset { members, len }
    }

    /// Bit `i` of `mask` selects the vertex labeled `i + 1`.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n > MASK_LIMIT {
            return invalid("n", "n <= 64 for mask subsets");
        }
        if n < MASK_LIMIT && mask >> n != 0 {
            return invalid("mask", "no bits at or above n");
        }
        Ok(Self::from_membership(
            (0..n).map(|i| mask >> i & 1 == 1).collect(),
        ))
    }

    pub fn full(n: usize) -> Self {
        VertexSubset {
            members: vec![true; n],
            len: n,
        }
    }

    pub fn empty(n: usize) -> Self {
        VertexSubset {
            members: vec![false; n],
            len: 0,
        }
    }

    pub fn complement(&self) -> Self {
        VertexSubset {
            members: self.members.iter().map(|b| !b).collect(),
            len: self.members.len() - self.len,
        }
    }

    /// Owner vertex count.
    pub fn n(&self) -> usize {
        self.members.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: u32) -> bool {
        v >= 1 && self.members.get(v as usize - 1).copied().unwrap_or(false)
    }

    /// Membership by 0-based index.
    pub fn membership(&self) -> &[bool] {
        &self.members
    }

    /// Sorted member labels.
    pub fn labels(&self) -> Vec<u32> {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i as u32 + 1)
            .collect()
    }

    /// `s = |S| / n`.
    pub fn fraction(&self) -> f64 {
        if self.members.is_empty() {
            0.0
        } else {
            self.len as f64 / self.members.len() as f64
        }
    }
}

/// `e(S)`, `e(S̄)`, `e(S, S̄)` and the two volumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EdgeCounts {
    pub e_in: u64,
    pub e_out: u64,
    pub e_cross: u64,
    pub vol_s: u64,
    pub vol_sbar: u64,
}

impl EdgeCounts {
    /// Counts from `e(S)`, `vol(S)` and `e(G)`, using
    /// `vol(S) = 2 e(S) + e(S, S̄)` and `e(G) = e(S) + e(S̄) + e(S, S̄)`.
    pub fn from_inside_and_volume(e_in: u64, vol_s: u64, edges: u64) -> Self {
        let e_cross = vol_s - 2 * e_in;
        EdgeCounts {
            e_in,
            e_out: edges - e_in - e_cross,
            e_cross,
            vol_s,
            vol_sbar: 2 * edges - vol_s,
        }
    }

    pub fn total(&self) -> u64 {
        self.e_in + self.e_out + self.e_cross
    }

    /// The counts of the complement.
    pub fn swapped(&self) -> Self {
        EdgeCounts {
            e_in: self.e_out,
            e_out: self.e_in,
            e_cross: self.e_cross,
            vol_s: self.vol_sbar,
            vol_sbar: self.vol_s,
        }
    }
}

/// Exact edge statistics of `S` in `g`.
pub fn edge_counts(g: &Graph, s: &VertexSubset) -> Result<EdgeCounts> {
    if s.n() != g.n() {
        return invalid("subset", "owner n equal to the graph's n");
    }
    let inside = s.membership();
    let mut c = EdgeCounts::default();
    for &(u, v) in g.edges() {
        match (inside[u as usize - 1], inside[v as usize - 1]) {
            (true, true) => c.e_in += 1,
            (false, false) => c.e_out += 1,
            _ => c.e_cross += 1,
        }
    }
    c.vol_s = 2 * c.e_in + c.e_cross;
    c.vol_sbar = 2 * c.e_out + c.e_cross;
    Ok(c)
}

/// Edge statistics for a subset given as a bit mask, in `O(n)` word operations.
/// Requires `n <= 64`.
pub fn edge_counts_mask(g: &Graph, mask: u64) -> Result<EdgeCounts> {
    let masks = match g.adjacency_masks() {
        Some(m) => m,
        None => return invalid("graph", "n <= 64 for mask subsets"),
    };
    let mut twice_in = 0u64;
    let mut vol = 0u64;
    let mut rest = mask;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if i >= masks.len() {
            return invalid("mask", "no bits at or above n");
        }
        twice_in += (masks[i] & mask).count_ones() as u64;
        vol += masks[i].count_ones() as u64;
    }
    Ok(EdgeCounts::from_inside_and_volume(
        twice_in / 2,
        vol,
        g.edge_count() as u64,
    ))
}

/// Edge statistics for a subset given as a membership slice, in `O(vol(S))`.
pub(crate) fn edge_counts_sparse(g: &Graph, members: &[usize], inside: &[bool]) -> EdgeCounts {
    let mut twice_in = 0u64;
    let mut vol = 0u64;
    for &i in members {
        let nbrs = g.adjacency(i);
        vol += nbrs.len() as u64;
        twice_in += nbrs.iter().filter(|&&j| inside[j as usize]).count() as u64;
    }
    EdgeCounts::from_inside_and_volume(twice_in / 2, vol, g.edge_count() as u64)
}

/// Connected components; blocks ordered by their smallest vertex, isolated
/// vertices as singletons.
pub fn connected_components(g: &Graph) -> Partition {
    let n = g.n();
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    let mut queue = VecDeque::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = next;
        queue.push_back(start);
        while let Some(i) = queue.pop_front() {
            for &j in g.adjacency(i) {
                let j = j as usize;
                if comp[j] == usize::MAX {
                    comp[j] = next;
                    queue.push_back(j);
                }
            }
        }
        next += 1;
    }
    Partition::from_assignment(&comp)
}
