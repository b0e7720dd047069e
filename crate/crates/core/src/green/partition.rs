use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};

/// An equivalence relation on `0..len`, stored as a block index per element.
///
/// Blocks are numbered in order of first appearance, so two partitions of
/// the same elements are equal exactly when they have the same blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    block_of: Vec<usize>,
    blocks: usize,
}

impl Partition {
    /// Normalizes arbitrary block ids.
    pub fn from_block_of(ids: Vec<usize>) -> Self {
        Self::from_keys(ids)
    }

    /// Elements with equal keys share a block.
    pub fn from_keys<K: Eq + Hash>(keys: impl IntoIterator<Item = K>) -> Self {
        let mut seen = HashMap::new();
        let block_of: Vec<usize> = keys
            .into_iter()
            .map(|k| {
                let next = seen.len();
                *seen.entry(k).or_insert(next)
            })
            .collect();
        Self {
            blocks: seen.len(),
            block_of,
        }
    }

    pub fn discrete(len: usize) -> Self {
        Self::from_keys(0..len)
    }

    pub fn universal(len: usize) -> Self {
        Self::from_keys(std::iter::repeat_n((), len))
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.block_of[i]
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        self.block_of[i] == self.block_of[j]
    }

    pub fn is_universal(&self) -> bool {
        self.blocks <= 1
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks == self.len()
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (i, &b) in self.block_of.iter().enumerate() {
            out[b].push(i);
        }
        out
    }

    /// First element of each block.
    pub fn representatives(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.blocks];
        for (i, &b) in self.block_of.iter().enumerate() {
            if out[b] == usize::MAX {
                out[b] = i;
            }
        }
        out
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::PartitionMismatch(self.len(), other.len()));
        }
        Ok(())
    }

    /// Common refinement.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_keys(
            self.block_of
                .iter()
                .zip(&other.block_of)
                .map(|(a, b)| (*a, *b)),
        ))
    }

    /// Finest partition coarser than both (transitive closure of the union).
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut uf = UnionFind::new(self.len());
        for p in [self, other] {
            let reps = p.representatives();
            for (i, &b) in p.block_of.iter().enumerate() {
                uf.union(i, reps[b]);
            }
        }
        Ok(Self::from_keys((0..self.len()).map(|i| uf.find(i))))
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Self) -> bool {
        self.len() == other.len() && self.meet(other).map(|m| &m == self).unwrap_or(false)
    }

    /// The partition induced on the listed elements, in that order.
    pub fn restrict(&self, indices: &[usize]) -> Self {
        Self::from_keys(indices.iter().map(|&i| self.block_of[i]))
    }

    /// Pulls a partition of the blocks of `kernel` back to its elements.
    pub fn lift(&self, kernel: &Partition) -> Result<Self> {
        if self.len() != kernel.num_blocks() {
            return Err(Error::PartitionMismatch(self.len(), kernel.num_blocks()));
        }
        Ok(Self::from_keys(
            (0..kernel.len()).map(|i| self.block_of[kernel.block_of(i)]),
        ))
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
