//! Local-move modularity maximization.
//!
//! Each restart runs greedy vertex moves to a fixed point, then collapses
//! blocks into super-vertices and repeats the moves there, which merges whole
//! blocks. Levels stack until nothing moves, after which the flattened
//! partition is handed back to the vertex level for another round. All gains
//! are exact integers (the score scaled by `2m²`).

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;

use super::{ratio, scaled_score, Method, ModularityResult, Partition};
use crate::graph::{connected_components, Graph};
use crate::rng::{rng_from_seed, salt, stream_seed};

const MAX_PASSES: usize = 1_000;
const MAX_ROUNDS: usize = 32;

/// Lower estimate of `mod(G)`.
///
/// `budget` is the number of restarts (at least one). Restart 0 visits
/// vertices in label order; later restarts shuffle the order with a stream
/// derived from `seed`. One extra run starts from the connected components,
/// and both the trivial and the component partition compete in the final
/// comparison, so the result never scores below either.
pub fn heuristic_modularity(g: &Graph, seed: u64, budget: usize) -> ModularityResult {
    let n = g.n();
    let m = g.edge_count();
    if m == 0 {
        return ModularityResult {
            score: 0.0,
            partition: Partition::trivial(n),
            method: Method::Trivial,
        };
    }
    let base = Level::from_graph(g);

    let components = connected_components(g).assignment();
    let mut best_assign = vec![0usize; n];
    let mut best_scaled = 0i128;
    let mut best_method = Method::Trivial;
    let comp_blocks = components.iter().max().map_or(0, |b| b + 1);
    let comp_scaled = scaled_score(g, &components, comp_blocks);
    if comp_scaled > best_scaled {
        best_scaled = comp_scaled;
        best_assign.clone_from(&components);
        best_method = Method::Components;
    }

    let mut consider = |assign: Vec<usize>| {
        let blocks = assign.iter().max().map_or(0, |b| b + 1);
        let s = scaled_score(g, &assign, blocks);
        if s > best_scaled {
            best_scaled = s;
            best_assign = assign;
            best_method = Method::Heuristic;
        }
    };

    for restart in 0..budget.max(1) {
        let mut order: Vec<usize> = (0..n).collect();
        if restart > 0 {
            let mut rng = rng_from_seed(stream_seed(seed ^ salt::RESTART, restart as u64));
            order.shuffle(&mut rng);
        }
        consider(optimize(&base, (0..n).collect(), &order));
    }
    let order: Vec<usize> = (0..n).collect();
    consider(optimize(&base, components, &order));

    ModularityResult {
        score: ratio(best_scaled, m),
        partition: Partition::from_assignment(&best_assign),
        method: best_method,
    }
}

/// Weighted graph of super-vertices. `loops[i]` counts edges inside
/// super-vertex `i`; `strength[i]` is its volume.
struct Level {
    adj: Vec<Vec<(u32, i64)>>,
    loops: Vec<i64>,
    strength: Vec<i64>,
    twice_m: i64,
}

impl Level {
    fn from_graph(g: &Graph) -> Self {
        let adj: Vec<Vec<(u32, i64)>> = (0..g.n())
            .map(|i| g.adjacency(i).iter().map(|&j| (j, 1)).collect())
            .collect();
        let strength = adj.iter().map(|a| a.len() as i64).collect();
        Level {
            loops: vec![0; g.n()],
            adj,
            strength,
            twice_m: 2 * g.edge_count() as i64,
        }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    /// Collapses blocks (`comm` must be contiguous `0..k`).
    fn aggregate(&self, comm: &[usize], k: usize) -> Level {
        let mut loops = vec![0i64; k];
        let mut strength = vec![0i64; k];
        let mut weights: Vec<Vec<(u32, i64)>> = vec![Vec::new(); k];
        let mut slot = vec![usize::MAX; k];
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (i, &c) in comm.iter().enumerate() {
            members[c].push(i);
        }
        for c in 0..k {
            let mut touched = Vec::new();
            let mut internal_twice = 0;
            for &i in &members[c] {
                loops[c] += self.loops[i];
                strength[c] += self.strength[i];
                for &(j, w) in &self.adj[i] {
                    let d = comm[j as usize];
                    if d == c {
                        internal_twice += w;
                        continue;
                    }
                    if slot[d] == usize::MAX {
                        slot[d] = touched.len();
                        touched.push((d as u32, 0));
                    }
                    touched[slot[d]].1 += w;
                }
            }
            // Each internal edge is seen from both ends.
            loops[c] += internal_twice / 2;
            for &(d, _) in &touched {
                slot[d as usize] = usize::MAX;
            }
            weights[c] = touched;
        }
        Level {
            adj: weights,
            loops,
            strength,
            twice_m: self.twice_m,
        }
    }
}

/// Greedy moves on one level; returns whether anything moved.
fn local_moves(level: &Level, comm: &mut [usize], order: &[usize]) -> bool {
    let n = level.len();
    let two_m = level.twice_m;
    let mut vol = vec![0i64; n];
    for (i, &c) in comm.iter().enumerate() {
        vol[c] += level.strength[i];
    }
    let mut link = vec![0i64; n];
    let mut seen = vec![false; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut moved_any = false;

    for _ in 0..MAX_PASSES {
        let mut moved = false;
        for &i in order {
            let own = comm[i];
            let k = level.strength[i];
            touched.clear();
            for &(j, w) in &level.adj[i] {
                let c = comm[j as usize];
                if !seen[c] {
                    seen[c] = true;
                    touched.push(c);
                }
                link[c] += w;
            }
            let vol_own = vol[own] - k;
            let stay = two_m * link[own] - k * vol_own;
            let mut best = own;
            let mut best_gain = 0i64;
            for &c in &touched {
                if c == own {
                    continue;
                }
                let gain = (two_m * link[c] - k * vol[c]) - stay;
                if gain > best_gain {
                    best_gain = gain;
                    best = c;
                }
            }
            for &c in &touched {
                link[c] = 0;
                seen[c] = false;
            }
            if best != own {
                vol[own] -= k;
                vol[best] += k;
                comm[i] = best;
                moved = true;
                moved_any = true;
            }
        }
        if !moved {
            break;
        }
    }
    moved_any
}

/// Renumbers block ids to `0..k` in order of first appearance.
fn compact(comm: &mut [usize]) -> usize {
    let mut map = vec![usize::MAX; comm.len()];
    let mut k = 0;
    for c in comm.iter_mut() {
        if map[*c] == usize::MAX {
            map[*c] = k;
            k += 1;
        }
        *c = map[*c];
    }
    k
}

/// Multilevel optimization from `start`, repeated until a full round leaves
/// the vertex-level assignment unchanged.
fn optimize(base: &Level, start: Vec<usize>, order: &[usize]) -> Vec<usize> {
    let mut assign = start;
    compact(&mut assign);
    for _ in 0..MAX_ROUNDS {
        let before = assign.clone();
        local_moves(base, &mut assign, order);
        let mut k = compact(&mut assign);
        let mut level = base.aggregate(&assign, k);
        loop {
            let mut comm: Vec<usize> = (0..k).collect();
            let natural: Vec<usize> = (0..k).collect();
            if !local_moves(&level, &mut comm, &natural) {
                break;
            }
            let k2 = compact(&mut comm);
            for a in assign.iter_mut() {
                *a = comm[*a];
            }
            level = level.aggregate(&comm, k2);
            k = k2;
        }
        if assign == before {
            break;
        }
    }
    assign
}
