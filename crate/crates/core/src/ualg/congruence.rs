use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{tuple_at, Algebra};
use crate::error::{Error, Result};
use crate::finset::{partitions, Partition, Rel, UnionFind};

/// Default carrier bound for [`Congruence::all`].
pub const DEFAULT_CONGRUENCE_BOUND: usize = 8;

/// A partition of an algebra's carrier compatible with every operation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    partition: Partition,
}

/// First operation (signature order) that does not respect `p`.
pub(crate) fn incompatible_op(alg: &Algebra, p: &Partition) -> Option<String> {
    let n = alg.size();
    let reps = p.representatives();
    let mut args = vec![0; alg.signature().max_arity()];
    for op in 0..alg.signature().len() {
        let k = alg.signature().arity(op);
        let table = alg.table(op);
        for (index, &value) in table.iter().enumerate() {
            tuple_at(n, index, &mut args[..k]);
            // replacing one argument by its block representative must not
            // leave the block of the result
            for pos in 0..k {
                let saved = args[pos];
                args[pos] = reps[saved];
                let moved = alg.apply(op, &args[..k]);
                args[pos] = saved;
                if !p.related(value, moved) {
                    return Some(alg.signature().ops()[op].name.clone());
                }
            }
        }
    }
    None
}

impl Congruence {
    /// Validates `partition` against every operation of `alg`.
    pub fn new(alg: &Algebra, partition: Partition) -> Result<Self> {
        if partition.len() != alg.size() {
            return Err(Error::CarrierMismatch {
                context: "congruence",
                expected: alg.size(),
                found: partition.len(),
            });
        }
        match incompatible_op(alg, &partition) {
            Some(op) => Err(Error::NotACongruence { op }),
            None => Ok(Congruence { partition }),
        }
    }

    pub fn diagonal(alg: &Algebra) -> Self {
        Congruence {
            partition: Partition::discrete(alg.size()),
        }
    }

    pub fn full(alg: &Algebra) -> Self {
        Congruence {
            partition: Partition::indiscrete(alg.size()),
        }
    }

    /// Least congruence containing the given pairs.
    ///
    /// Merges the pairs, then propagates every merge through all unary
    /// translations `a ↦ f(c1, …, a, …, ck)` until nothing changes.
    pub fn generated(alg: &Algebra, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = alg.size();
        let mut uf = UnionFind::new(n);
        let mut pending: Vec<(usize, usize)> = Vec::new();
        for (index, &(a, b)) in pairs.iter().enumerate() {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::OutOfRange {
                        index,
                        value: v,
                        bound: n,
                    });
                }
            }
            if uf.union(a, b) {
                pending.push((a, b));
            }
        }
        let sig = alg.signature();
        let mut args = vec![0; sig.max_arity()];
        let mut other = vec![0; sig.max_arity()];
        while let Some((a, b)) = pending.pop() {
            for op in 0..sig.len() {
                let k = sig.arity(op);
                if k == 0 {
                    continue;
                }
                let contexts = n.pow(k as u32 - 1);
                for pos in 0..k {
                    for c in 0..contexts {
                        // context tuple with a hole at `pos`
                        let mut rest = c;
                        for i in (0..k).rev() {
                            if i == pos {
                                continue;
                            }
                            args[i] = rest % n;
                            rest /= n;
                        }
                        args[pos] = a;
                        other[..k].copy_from_slice(&args[..k]);
                        other[pos] = b;
                        let (x, y) = (alg.apply(op, &args[..k]), alg.apply(op, &other[..k]));
                        if uf.union(x, y) {
                            pending.push((x, y));
                        }
                    }
                }
            }
        }
        Ok(Congruence {
            partition: uf.partition(),
        })
    }

    /// Every congruence, in lexicographic order of restricted-growth strings
    /// (so the full congruence comes first and the diagonal last).
    pub fn all(alg: &Algebra, bound: usize) -> Result<Vec<Congruence>> {
        if alg.size() > bound {
            return Err(Error::CarrierTooLarge {
                size: alg.size(),
                bound,
            });
        }
        Ok(partitions(alg.size())
            .filter(|p| incompatible_op(alg, p).is_none())
            .map(|partition| Congruence { partition })
            .collect())
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn to_rel(&self) -> Rel {
        self.partition.to_rel()
    }

    pub fn size(&self) -> usize {
        self.partition.len()
    }

    /// Re-checks compatibility against `alg`.
    pub fn is_valid_on(&self, alg: &Algebra) -> bool {
        self.partition.len() == alg.size() && incompatible_op(alg, &self.partition).is_none()
    }
}
