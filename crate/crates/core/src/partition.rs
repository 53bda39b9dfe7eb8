use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A decomposition of `{1..n}` into disjoint nonempty blocks.
///
/// Stored in canonical form: every block sorted ascending, blocks ordered by
/// their smallest member. Two partitions are equal iff they have the same
/// blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<u32>>,
}

impl Partition {
    /// Validates and canonicalizes a list of blocks of 1-based labels.
    pub fn new(n: usize, blocks: Vec<Vec<u32>>) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block"));
            }
            for &v in block.iter() {
                if v == 0 || v as usize > n {
                    return Err(Error::VertexOutOfRange { vertex: v as u64, n });
                }
                let slot = &mut seen[v as usize - 1];
                if *slot {
                    return Err(Error::InvalidPartition("blocks are not disjoint"));
                }
                *slot = true;
            }
            block.sort_unstable();
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidPartition("blocks do not cover every vertex"));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Partition { n, blocks })
    }

    /// Builds a partition from a block id per vertex (`assignment[label - 1]`).
    /// Block ids need not be contiguous.
    pub fn from_assignment(assignment: &[usize]) -> Self {
        let n = assignment.len();
        let ids = assignment.iter().max().map_or(0, |m| m + 1);
        let mut relabel = vec![usize::MAX; ids];
        let mut blocks: Vec<Vec<u32>> = Vec::new();
        for (i, &b) in assignment.iter().enumerate() {
            if relabel[b] == usize::MAX {
                relabel[b] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[relabel[b]].push(i as u32 + 1);
        }
        // Scanning vertices in order keeps blocks sorted and ordered by minimum.
        Partition { n, blocks }
    }

    /// `{V}`; for `n = 0` the empty partition.
    pub fn trivial(n: usize) -> Self {
        let blocks = if n == 0 {
            Vec::new()
        } else {
            vec![(1..=n as u32).collect()]
        };
        Partition { n, blocks }
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            n,
            blocks: (1..=n as u32).map(|v| vec![v]).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block index of each vertex, indexed by `label - 1`.
    pub fn assignment(&self) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &v in block {
                out[v as usize - 1] = b;
            }
        }
        out
    }

    /// Applies a relabeling `new_label = perm[old_label - 1]`.
    pub fn relabel(&self, perm: &[u32]) -> Result<Self> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&v| perm[v as usize - 1]).collect())
            .collect();
        Partition::new(self.n, blocks)
    }
}
