use alloc::vec;
use alloc::vec::Vec;

use super::Rel;
use crate::error::{Error, Result};

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; returns false if already merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            core::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }

    pub fn partition(&mut self) -> Partition {
        let roots: Vec<usize> = (0..self.len()).map(|x| self.find(x)).collect();
        Partition::from_labels(&roots)
    }
}

/// A partition of `0..n`, stored as its restricted-growth string: element `x`
/// lies in block `labels[x]`, and blocks are numbered by first occurrence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    labels: Vec<usize>,
    blocks: usize,
}

impl Partition {
    pub fn discrete(n: usize) -> Self {
        Partition {
            labels: (0..n).collect(),
            blocks: n,
        }
    }

    pub fn indiscrete(n: usize) -> Self {
        Partition {
            labels: vec![0; n],
            blocks: usize::from(n > 0),
        }
    }

    /// Canonicalizes arbitrary class tags into a restricted-growth string.
    pub fn from_labels<T: PartialEq>(tags: &[T]) -> Self {
        let mut seen: Vec<&T> = Vec::new();
        let labels = tags
            .iter()
            .map(|t| match seen.iter().position(|s| *s == t) {
                Some(i) => i,
                None => {
                    seen.push(t);
                    seen.len() - 1
                }
            })
            .collect();
        Partition {
            labels,
            blocks: seen.len(),
        }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut tag = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &x in block {
                if x >= n {
                    return Err(Error::OutOfRange {
                        index: b,
                        value: x,
                        bound: n,
                    });
                }
                if tag[x] != usize::MAX {
                    return Err(Error::Precondition(alloc::format!(
                        "element {x} appears in two blocks"
                    )));
                }
                tag[x] = b;
            }
        }
        // unlisted elements are singletons
        for (next, t) in (blocks.len()..).zip(tag.iter_mut().filter(|t| **t == usize::MAX)) {
            *t = next;
        }
        Ok(Partition::from_labels(&tag))
    }

    /// Reads an equivalence relation as a partition.
    pub fn from_rel(r: &Rel) -> Result<Self> {
        if !r.is_equivalence() {
            return Err(Error::Precondition("relation is not an equivalence".into()));
        }
        let tags: Vec<usize> = (0..r.dom())
            .map(|x| r.image_of(x).next().expect("reflexive"))
            .collect();
        Ok(Partition::from_labels(&tags))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.blocks
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    #[inline]
    pub fn block_of(&self, x: usize) -> usize {
        self.labels[x]
    }

    #[inline]
    pub fn related(&self, x: usize, y: usize) -> bool {
        self.labels[x] == self.labels[y]
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (x, &b) in self.labels.iter().enumerate() {
            out[b].push(x);
        }
        out
    }

    /// Smallest element of each element's block.
    pub fn representatives(&self) -> Vec<usize> {
        let mut first = vec![usize::MAX; self.blocks];
        for (x, &b) in self.labels.iter().enumerate() {
            if first[b] == usize::MAX {
                first[b] = x;
            }
        }
        self.labels.iter().map(|&b| first[b]).collect()
    }

    pub fn to_rel(&self) -> Rel {
        Rel::from_fn(self.len(), self.len(), |x, y| self.related(x, y))
    }

    /// True if every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        self.len() == other.len()
            && self
                .representatives()
                .iter()
                .enumerate()
                .all(|(x, &r)| other.related(x, r))
    }

    /// Common refinement.
    pub fn meet(&self, other: &Partition) -> Partition {
        let tags: Vec<(usize, usize)> = self
            .labels
            .iter()
            .copied()
            .zip(other.labels.iter().copied())
            .collect();
        Partition::from_labels(&tags)
    }

    /// Finest partition coarser than both.
    pub fn join(&self, other: &Partition) -> Partition {
        let mut uf = UnionFind::new(self.len());
        for p in [self, other] {
            for (x, r) in p.representatives().into_iter().enumerate() {
                uf.union(x, r);
            }
        }
        uf.partition()
    }
}

/// All partitions of `0..n` in lexicographic order of their restricted-growth
/// strings.
pub fn partitions(n: usize) -> Partitions {
    Partitions {
        current: Some(vec![0; n]),
    }
}

pub struct Partitions {
    current: Option<Vec<usize>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        let out = Partition::from_labels(&cur);
        // advance: rightmost position that can grow
        let mut next = cur;
        let mut i = next.len();
        while i > 1 {
            i -= 1;
            let max_prefix = next[..i].iter().copied().max().unwrap_or(0);
            if next[i] <= max_prefix {
                next[i] += 1;
                for v in &mut next[i + 1..] {
                    *v = 0;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..8).map(|n| partitions(n).count()).collect();
        assert_eq!(counts, [1, 1, 2, 5, 15, 52, 203, 877]);
    }

    #[test]
    fn partitions_are_canonical_and_sorted() {
        let all: Vec<Partition> = partitions(4).collect();
        for w in all.windows(2) {
            assert!(w[0].labels() < w[1].labels());
        }
        assert_eq!(all[0], Partition::indiscrete(4));
        assert_eq!(*all.last().unwrap(), Partition::discrete(4));
    }

    #[test]
    fn blocks_round_trip() {
        let p = Partition::from_blocks(4, &[vec![2, 3], vec![0]]).unwrap();
        assert_eq!(p.labels(), &[0, 1, 2, 2]);
        assert_eq!(p.blocks(), vec![vec![0], vec![1], vec![2, 3]]);
        assert_eq!(Partition::from_rel(&p.to_rel()).unwrap(), p);
        assert!(Partition::from_blocks(3, &[vec![0, 1], vec![1]]).is_err());
    }

    #[test]
    fn lattice_operations() {
        let a = Partition::from_labels(&[0, 0, 1, 1]);
        let b = Partition::from_labels(&[0, 1, 1, 2]);
        assert_eq!(a.join(&b), Partition::indiscrete(4));
        assert_eq!(a.meet(&b), Partition::from_labels(&[0, 1, 2, 3]));
        assert!(a.meet(&b).refines(&a));
        assert!(!a.refines(&b));
    }

    #[test]
    fn union_find_merges() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 3));
        assert!(uf.union(3, 4));
        assert!(!uf.union(0, 4));
        assert_eq!(uf.partition().labels(), &[0, 1, 2, 0, 0]);
    }
}
