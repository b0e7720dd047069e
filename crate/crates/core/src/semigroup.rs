//! Finite semigroups given by a multiplication table on `0..size`.

use crate::error::{Error, Result};
use crate::green::Partition;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    size: usize,
    table: Vec<usize>,
}

impl FiniteSemigroup {
    /// `table` is row-major: `table[a * size + b] = a * b`.
    pub fn new(size: usize, table: Vec<usize>) -> Result<Self> {
        if table.len() != size * size {
            return Err(Error::Shape(format!(
                "table of {} cells for {size} elements",
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&c| c >= size) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                len: size,
            });
        }
        Ok(Self { size, table })
    }

    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let table = (0..size * size).map(|i| f(i / size, i % size)).collect();
        Self::new(size, table)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    /// First triple with `(ab)c != a(bc)`.
    pub fn find_nonassociative(&self) -> Option<(usize, usize, usize)> {
        let n = self.size;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.find_nonassociative().is_none()
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    pub fn is_band(&self) -> bool {
        (0..self.size).all(|a| self.is_idempotent(a))
    }

    /// Elements `z` with `zx = xz = z` for all `x`.
    pub fn two_sided_zeros(&self) -> Vec<usize> {
        (0..self.size)
            .filter(|&z| (0..self.size).all(|x| self.mul(z, x) == z && self.mul(x, z) == z))
            .collect()
    }

    /// Elements `e` with `ex = xe = x` for all `x`.
    pub fn identities(&self) -> Vec<usize> {
        (0..self.size)
            .filter(|&e| (0..self.size).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
            .collect()
    }

    /// `b` is an inverse of `a` when `aba = a` and `bab = b`.
    pub fn inverses(&self, a: usize) -> Vec<usize> {
        (0..self.size)
            .filter(|&b| self.mul(self.mul(a, b), a) == a && self.mul(self.mul(b, a), b) == b)
            .collect()
    }

    /// Every element has some `x` with `axa = a`.
    pub fn is_regular(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).any(|x| self.mul(self.mul(a, x), a) == a))
    }

    /// `aS¹` as a membership mask.
    pub fn right_ideal(&self, a: usize) -> Vec<bool> {
        let mut out = vec![false; self.size];
        out[a] = true;
        for x in 0..self.size {
            out[self.mul(a, x)] = true;
        }
        out
    }

    /// `S¹a` as a membership mask.
    pub fn left_ideal(&self, a: usize) -> Vec<bool> {
        let mut out = vec![false; self.size];
        out[a] = true;
        for x in 0..self.size {
            out[self.mul(x, a)] = true;
        }
        out
    }

    /// `S¹XS¹` for a membership mask `X`.
    pub fn ideal_closure(&self, set: &[bool]) -> Vec<bool> {
        let mut right = set.to_vec();
        for a in (0..self.size).filter(|&a| set[a]) {
            for x in 0..self.size {
                right[self.mul(a, x)] = true;
            }
        }
        let mut out = right.clone();
        for b in (0..self.size).filter(|&b| right[b]) {
            for x in 0..self.size {
                out[self.mul(x, b)] = true;
            }
        }
        out
    }

    /// `S¹aS¹` as a membership mask.
    pub fn principal_ideal(&self, a: usize) -> Vec<bool> {
        let mut set = vec![false; self.size];
        set[a] = true;
        self.ideal_closure(&set)
    }

    pub fn is_ideal(&self, set: &[bool]) -> bool {
        self.ideal_closure(set) == set
    }

    /// `set` is an ideal, strictly larger than `{zero}`, and no ideal lies
    /// strictly between `{zero}` and `set`. Exhaustive over subsets, so only
    /// for small sets.
    pub fn is_zero_minimal_ideal(&self, set: &[bool], zero: usize) -> bool {
        let members: Vec<usize> = (0..self.size).filter(|&i| set[i]).collect();
        if !set[zero] || members.len() < 2 || !self.is_ideal(set) || members.len() > 20 {
            return false;
        }
        let others: Vec<usize> = members.into_iter().filter(|&i| i != zero).collect();
        let full = (1u32 << others.len()) - 1;
        (1..full).all(|bits| {
            let mut sub = vec![false; self.size];
            sub[zero] = true;
            for (k, &i) in others.iter().enumerate() {
                if bits >> k & 1 == 1 {
                    sub[i] = true;
                }
            }
            !self.is_ideal(&sub)
        })
    }

    /// Distinct `a`, `b` with `xa = xb` for every `x`, so left multiplication
    /// cannot tell them apart.
    pub fn left_nonreductive_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.size;
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if (0..n).all(|x| self.mul(x, a) == self.mul(x, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Whether `p` is compatible with the product: related factors give
    /// related products.
    pub fn is_congruence(&self, p: &Partition) -> bool {
        if p.len() != self.size {
            return false;
        }
        let reps = p.representatives();
        (0..self.size).all(|a| {
            let ra = reps[p.block_of(a)];
            (0..self.size).all(|b| {
                let rb = reps[p.block_of(b)];
                p.block_of(self.mul(a, b)) == p.block_of(self.mul(ra, rb))
            })
        })
    }

    /// The quotient semigroup on the blocks of a congruence.
    pub fn quotient(&self, p: &Partition) -> Result<FiniteSemigroup> {
        if p.len() != self.size {
            return Err(Error::PartitionMismatch(p.len(), self.size));
        }
        if !self.is_congruence(p) {
            return Err(Error::NotCongruence);
        }
        let reps = p.representatives();
        FiniteSemigroup::from_fn(reps.len(), |i, j| p.block_of(self.mul(reps[i], reps[j])))
    }
}
