use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::Algebra;
use crate::error::{Error, Result};

/// Limits for [`subalgebras`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubalgebraSearch {
    /// Only subalgebras generated by at most this many elements beyond the
    /// base set; `None` means no limit, which makes the search complete.
    pub max_generators: Option<usize>,
    /// Abort with [`Error::EnumerationBound`] past this many subalgebras.
    pub max_count: usize,
}

impl SubalgebraSearch {
    pub const EXHAUSTIVE: SubalgebraSearch = SubalgebraSearch {
        max_generators: None,
        max_count: 1 << 20,
    };

    /// All generators when the carrier has at most 16 elements, otherwise at
    /// most three.
    pub fn default_for(size: usize) -> Self {
        SubalgebraSearch {
            max_generators: if size <= 16 { None } else { Some(3) },
            max_count: 1 << 20,
        }
    }

    pub fn is_exhaustive(&self) -> bool {
        self.max_generators.is_none()
    }
}

/// Subalgebras of `alg` containing `base`, as ascending element lists.
///
/// Walks the lattice of subalgebras upward from the one generated by `base`:
/// each step adds one element and closes. Every subalgebra containing `base`
/// is reached this way, so with no generator limit the result is complete.
/// The order is breadth-first by number of added generators, ties by the
/// order in which they were reached; the output is deterministic.
pub fn subalgebras(
    alg: &Algebra,
    base: &[usize],
    search: SubalgebraSearch,
) -> Result<Vec<Vec<usize>>> {
    let n = alg.size();
    let mut start = alloc::vec![false; n];
    for (index, &b) in base.iter().enumerate() {
        if b >= n {
            return Err(Error::OutOfRange {
                index,
                value: b,
                bound: n,
            });
        }
        start[b] = true;
    }
    alg.close(&mut start);

    let mut seen: BTreeSet<Vec<bool>> = BTreeSet::new();
    let mut order: Vec<(Vec<bool>, usize)> = Vec::new();
    seen.insert(start.clone());
    order.push((start, 0));
    let mut head = 0;
    while head < order.len() {
        let (current, gens) = order[head].clone();
        head += 1;
        if search.max_generators.is_some_and(|cap| gens >= cap) {
            continue;
        }
        for e in 0..n {
            if current[e] {
                continue;
            }
            let mut next = current.clone();
            next[e] = true;
            alg.close(&mut next);
            if seen.insert(next.clone()) {
                if order.len() >= search.max_count {
                    return Err(Error::EnumerationBound(search.max_count));
                }
                order.push((next, gens + 1));
            }
        }
    }
    Ok(order
        .into_iter()
        .map(|(mask, _)| (0..n).filter(|&x| mask[x]).collect())
        .collect())
}
