use alloc::vec;
use alloc::vec::Vec;

use super::{ratio, Method, ModularityResult, Partition};
use crate::error::{Error, Result};
use crate::graph::{Graph, MASK_LIMIT};

/// Default size cap for [`exact_modularity`]; Bell(13) ≈ 2.8·10⁷ partitions.
pub const DEFAULT_EXACT_CAP: usize = 13;

/// `mod(G)` by enumerating every set partition, with the default cap.
pub fn exact_modularity(g: &Graph) -> Result<ModularityResult> {
    exact_modularity_capped(g, DEFAULT_EXACT_CAP)
}

/// `mod(G)` by enumerating all set partitions as restricted-growth strings
/// `a_1 = 0, a_{i+1} <= 1 + max(a_1..a_i)`, in lexicographic order. The
/// score is maintained incrementally as the exact integer `Σ 4m·e(S) − vol(S)²`
/// and the first maximizer in enumeration order is returned.
pub fn exact_modularity_capped(g: &Graph, cap: usize) -> Result<ModularityResult> {
    let n = g.n();
    if n > cap || n > MASK_LIMIT {
        return Err(Error::CapExceeded {
            operation: "exact modularity",
            n,
            cap: cap.min(MASK_LIMIT),
        });
    }
    let m = g.edge_count();
    if m == 0 || n == 0 {
        return Ok(ModularityResult {
            score: 0.0,
            partition: Partition::trivial(n),
            method: Method::Exact,
        });
    }
    let masks = g.adjacency_masks().expect("n <= 64 keeps masks");
    let mut search = Search {
        masks,
        deg: (0..n).map(|i| g.degree_at(i) as i64).collect(),
        m4: 4 * m as i64,
        block_mask: vec![0; n],
        e_in: vec![0; n],
        vol: vec![0; n],
        assign: vec![0; n],
        scaled: 0,
        best_scaled: i64::MIN,
        best_assign: vec![0; n],
    };
    search.descend(0, 0);
    let partition = Partition::from_assignment(&search.best_assign);
    Ok(ModularityResult {
        score: ratio(search.best_scaled as i128, m),
        partition,
        method: Method::Exact,
    })
}

struct Search<'a> {
    masks: &'a [u64],
    deg: Vec<i64>,
    m4: i64,
    block_mask: Vec<u64>,
    e_in: Vec<i64>,
    vol: Vec<i64>,
    assign: Vec<usize>,
    scaled: i64,
    best_scaled: i64,
    best_assign: Vec<usize>,
}

impl Search<'_> {
    fn term(&self, b: usize) -> i64 {
        self.m4 * self.e_in[b] - self.vol[b] * self.vol[b]
    }

    fn descend(&mut self, v: usize, used: usize) {
        if v == self.assign.len() {
            if self.scaled > self.best_scaled {
                self.best_scaled = self.scaled;
                self.best_assign.copy_from_slice(&self.assign);
            }
            return;
        }
        let last = if v == 0 { 0 } else { used };
        for b in 0..=last {
            let before = self.term(b);
            let inside = (self.masks[v] & self.block_mask[b]).count_ones() as i64;
            self.e_in[b] += inside;
            self.vol[b] += self.deg[v];
            self.block_mask[b] |= 1 << v;
            let delta = self.term(b) - before;
            self.scaled += delta;
            self.assign[v] = b;

            self.descend(v + 1, used.max(b + 1));

            self.scaled -= delta;
            self.block_mask[b] &= !(1 << v);
            self.vol[b] -= self.deg[v];
            self.e_in[b] -= inside;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_golden_values() {
        let k2 = exact_modularity(&Graph::complete(2)).unwrap();
        assert_eq!(k2.score, 0.0);
        assert_eq!(k2.partition, Partition::trivial(2));

        let two = Graph::from_edges(4, [(1, 2), (3, 4)]).unwrap();
        let r = exact_modularity(&two).unwrap();
        assert_eq!(r.score, 0.5);
        assert_eq!(r.partition.blocks(), &[vec![1, 2], vec![3, 4]]);

        assert_eq!(exact_modularity(&Graph::complete(3)).unwrap().score, 0.0);
    }

    #[test]
    fn cap_is_enforced() {
        let g = Graph::empty(14);
        assert_eq!(
            exact_modularity(&g),
            Err(Error::CapExceeded {
                operation: "exact modularity",
                n: 14,
                cap: 13
            })
        );
        assert!(exact_modularity_capped(&Graph::complete(5), 4).is_err());
    }

    #[test]
    fn edgeless_graph() {
        let r = exact_modularity(&Graph::empty(4)).unwrap();
        assert_eq!(r.score, 0.0);
    }
}
