//! Binary relations on a finite carrier, stored as successor bitmasks.

use std::fmt;

use crate::error::{Error, Result};
use crate::subset::{full_mask, Subset, MAX_POINTS};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    succ: Vec<u32>,
}

impl Relation {
    pub fn empty(size: usize) -> Self {
        Relation {
            succ: vec![0; size],
        }
    }

    pub fn identity(size: usize) -> Self {
        Relation {
            succ: (0..size).map(|i| 1 << i).collect(),
        }
    }

    pub fn total(size: usize) -> Self {
        Relation {
            succ: vec![full_mask(size); size],
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(size: usize, pairs: I) -> Result<Self> {
        if size == 0 || size > MAX_POINTS {
            return Err(Error::BadCarrier(size));
        }
        let mut rel = Relation::empty(size);
        for (x, y) in pairs {
            for p in [x, y] {
                if p >= size {
                    return Err(Error::PointOutOfRange { point: p, size });
                }
            }
            rel.succ[x] |= 1 << y;
        }
        Ok(rel)
    }

    /// Successor masks, one per point; bits at or above `size` are ignored.
    pub fn from_successors(succ: Vec<u32>) -> Self {
        let n = succ.len();
        Relation {
            succ: succ.into_iter().map(|s| s & full_mask(n)).collect(),
        }
    }

    /// Decodes the `n·n`-bit encoding where pair `(i, j)` lives at bit `i·n + j`.
    pub fn from_code(size: usize, code: u32) -> Self {
        debug_assert!(size * size <= 32);
        let row = full_mask(size);
        Relation {
            succ: (0..size).map(|i| code >> (i * size) & row).collect(),
        }
    }

    pub fn code(&self) -> u32 {
        let n = self.size();
        debug_assert!(n * n <= 32);
        self.succ
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &s)| acc | s << (i * n))
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.succ.len()
    }

    #[inline]
    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.succ[x] >> y & 1 == 1
    }

    /// The image `{y | x rel y}` as a bitmask.
    #[inline]
    pub fn successor_mask(&self, x: usize) -> u32 {
        self.succ[x]
    }

    pub fn successors(&self, x: usize) -> Subset {
        Subset::from_bits(self.size(), self.succ[x])
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        (0..n)
            .flat_map(|x| (0..n).filter(move |&y| self.succ[x] >> y & 1 == 1).map(move |y| (x, y)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(|s| s.count_ones() as usize).sum()
    }

    pub fn is_subset_of(&self, other: &Relation) -> bool {
        self.succ.iter().zip(&other.succ).all(|(a, b)| a & !b == 0)
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size()).all(|x| self.contains(x, x))
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.size()).all(|x| !self.contains(x, x))
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.size()).all(|x| {
            Subset::from_bits(self.size(), self.succ[x])
                .iter()
                .all(|y| self.succ[y] & !self.succ[x] == 0)
        })
    }

    /// No directed cycle, self-loops included. Iterative DFS with three colours.
    pub fn is_acyclic(&self) -> bool {
        let n = self.size();
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut colour = vec![0u8; n];
        for root in 0..n {
            if colour[root] != 0 {
                continue;
            }
            let mut stack: Vec<(usize, u32)> = vec![(root, self.succ[root])];
            colour[root] = 1;
            while let Some((node, pending)) = stack.last_mut() {
                if *pending == 0 {
                    colour[*node] = 2;
                    stack.pop();
                    continue;
                }
                let next = pending.trailing_zeros() as usize;
                *pending &= *pending - 1;
                match colour[next] {
                    1 => return false,
                    0 => {
                        colour[next] = 1;
                        stack.push((next, self.succ[next]));
                    }
                    _ => {}
                }
            }
        }
        true
    }

    /// `x (self ; other) z` iff `x self y` and `y other z` for some `y`.
    pub fn then(&self, other: &Relation) -> Relation {
        let succ = self
            .succ
            .iter()
            .map(|&s| {
                Subset::from_bits(self.size(), s)
                    .iter()
                    .fold(0, |acc, y| acc | other.succ[y])
            })
            .collect();
        Relation { succ }
    }

    pub fn transitive_closure(&self) -> Relation {
        let n = self.size();
        let mut succ = self.succ.clone();
        // Warshall over bit rows
        for k in 0..n {
            for i in 0..n {
                if succ[i] >> k & 1 == 1 {
                    succ[i] |= succ[k];
                }
            }
        }
        Relation { succ }
    }

    pub fn reflexive_transitive_closure(&self) -> Relation {
        let mut closed = self.transitive_closure();
        for x in 0..closed.size() {
            closed.succ[x] |= 1 << x;
        }
        closed
    }

    /// Image of the relation under a permutation of the carrier.
    pub fn permuted(&self, perm: &[usize]) -> Relation {
        let mut succ = vec![0u32; self.size()];
        for (x, y) in self.pairs() {
            succ[perm[x]] |= 1 << perm[y];
        }
        Relation { succ }
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}
