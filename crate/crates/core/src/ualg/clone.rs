//! Clone generation.
//!
//! The `k`-ary term operations of a finite algebra `A` form the subalgebra of
//! `A^(A^k)` generated by the `k` projections. [`CloneTable::generate`]
//! computes that subalgebra breadth-first: every discovered operation is
//! stored once, as its table of `n^k` values, together with how it was first
//! derived. Because the queue is processed in order and every derivation
//! combines already-known elements, elements are discovered in nondecreasing
//! term depth and each witness term has minimal depth.

use alloc::vec;
use alloc::vec::Vec;
use core::hash::BuildHasher;

use hashbrown::HashTable;

use super::{tuple_at, Algebra, Term};
use crate::error::{Error, Result};

/// Default element budget for clone generation.
pub const DEFAULT_CLONE_BUDGET: usize = 1_000_000;

/// Largest carrier clone tables can hold (values are stored as bytes).
pub const MAX_CLONE_CARRIER: usize = 256;

/// Largest table length accepted, `n^k`.
pub const MAX_TABLE_LEN: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Derivation {
    Projection(usize),
    App { op: usize, args: Vec<u32> },
}

/// How a generation run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generation {
    /// The closure is complete: every op applied to every tuple of known
    /// elements gives a known element.
    Fixpoint,
    /// The element budget ran out; what was found is a valid partial clone.
    BudgetExceeded,
    /// The caller's visitor asked to stop.
    Stopped,
}

/// A term operation: its arity, its table, and a term realizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CloneElement {
    pub arity: usize,
    pub table: Vec<usize>,
    pub witness: Term,
}

/// The (possibly partial) `k`-ary clone of an algebra.
#[derive(Debug, Clone)]
pub struct CloneTable {
    arity: usize,
    n: usize,
    len: usize,
    data: Vec<u8>,
    derivations: Vec<Derivation>,
    depth: Vec<u32>,
    op_names: Vec<alloc::string::String>,
    outcome: Generation,
}

impl CloneTable {
    /// Runs generation to fixpoint or until `budget` elements are known.
    pub fn generate(alg: &Algebra, k: usize, budget: usize) -> Result<CloneTable> {
        Self::generate_with(alg, k, budget, |_, _| false)
    }

    /// Like [`generate`](Self::generate), but calls `visit(table, index)` on
    /// every element as it is discovered; returning `true` stops the run.
    pub fn generate_with(
        alg: &Algebra,
        k: usize,
        budget: usize,
        mut visit: impl FnMut(&[u8], usize) -> bool,
    ) -> Result<CloneTable> {
        let n = alg.size();
        if k == 0 {
            return Err(Error::Precondition("clone arity must be at least 1".into()));
        }
        if budget <= k {
            return Err(Error::Precondition(alloc::format!(
                "budget {budget} must exceed arity {k}"
            )));
        }
        if n > MAX_CLONE_CARRIER {
            return Err(Error::CarrierTooLarge {
                size: n,
                bound: MAX_CLONE_CARRIER,
            });
        }
        let len = n
            .checked_pow(k as u32)
            .filter(|&l| l <= MAX_TABLE_LEN)
            .ok_or(Error::CarrierTooLarge {
                size: n,
                bound: MAX_CLONE_CARRIER,
            })?;

        let sig = alg.signature();
        let mut ct = CloneTable {
            arity: k,
            n,
            len,
            data: Vec::new(),
            derivations: Vec::new(),
            depth: Vec::new(),
            op_names: sig.ops().iter().map(|o| o.name.clone()).collect(),
            outcome: Generation::Fixpoint,
        };
        let hasher = hashbrown::DefaultHashBuilder::default();
        let mut index: HashTable<u32> = HashTable::new();
        let mut scratch = vec![0u8; len];

        // Inserts `scratch` if new; Some(stop) when inserted.
        macro_rules! offer {
            ($derivation:expr, $depth:expr) => {{
                let h = hasher.hash_one(&scratch[..]);
                let data = &ct.data;
                let found = index
                    .find(h, |&i| {
                        &data[i as usize * len..(i as usize + 1) * len] == &scratch[..]
                    })
                    .is_some();
                if found {
                    None
                } else if ct.derivations.len() >= budget {
                    ct.outcome = Generation::BudgetExceeded;
                    Some(true)
                } else {
                    let id = ct.derivations.len();
                    ct.data.extend_from_slice(&scratch);
                    ct.derivations.push($derivation);
                    ct.depth.push($depth);
                    let data = &ct.data;
                    index.insert_unique(h, id as u32, |&i| {
                        hasher.hash_one(&data[i as usize * len..(i as usize + 1) * len])
                    });
                    if visit(&scratch, id) {
                        ct.outcome = Generation::Stopped;
                        Some(true)
                    } else {
                        Some(false)
                    }
                }
            }};
        }

        let mut tuple = vec![0usize; k];
        for p in 0..k {
            for (t, slot) in scratch.iter_mut().enumerate() {
                tuple_at(n, t, &mut tuple);
                *slot = tuple[p] as u8;
            }
            if offer!(Derivation::Projection(p), 0) == Some(true) {
                return Ok(ct);
            }
        }
        for op in 0..sig.len() {
            if sig.arity(op) == 0 {
                let c = alg.table(op)[0] as u8;
                scratch.iter_mut().for_each(|s| *s = c);
                if offer!(
                    Derivation::App {
                        op,
                        args: Vec::new()
                    },
                    1
                ) == Some(true)
                {
                    return Ok(ct);
                }
            }
        }

        let mut args = vec![0u32; sig.max_arity()];
        let mut vals = vec![0usize; sig.max_arity()];
        let mut head = 0;
        while head < ct.derivations.len() {
            let newest = head as u32;
            for op in 0..sig.len() {
                let a = sig.arity(op);
                if a == 0 {
                    continue;
                }
                let table = alg.table(op);
                // argument tuples over 0..=newest that mention `newest`, in
                // lexicographic order
                let mut stop = false;
                for_each_tuple_containing(newest, a, &mut args[..a], |args| {
                    let depth = 1 + args
                        .iter()
                        .map(|&i| ct.depth[i as usize])
                        .max()
                        .unwrap_or(0);
                    for (t, slot) in scratch.iter_mut().enumerate() {
                        for (v, &i) in vals.iter_mut().zip(args.iter()) {
                            *v = ct.data[i as usize * len + t] as usize;
                        }
                        *slot = table[vals[..a].iter().fold(0, |acc, &v| acc * n + v)] as u8;
                    }
                    match offer!(
                        Derivation::App {
                            op,
                            args: args.to_vec()
                        },
                        depth
                    ) {
                        Some(true) => {
                            stop = true;
                            false
                        }
                        _ => true,
                    }
                });
                if stop {
                    return Ok(ct);
                }
            }
            head += 1;
        }
        Ok(ct)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn carrier_size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.derivations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.derivations.is_empty()
    }

    pub fn outcome(&self) -> Generation {
        self.outcome
    }

    pub fn is_complete(&self) -> bool {
        self.outcome == Generation::Fixpoint
    }

    pub fn table_bytes(&self, i: usize) -> &[u8] {
        &self.data[i * self.len..(i + 1) * self.len]
    }

    pub fn table(&self, i: usize) -> Vec<usize> {
        self.table_bytes(i).iter().map(|&b| b as usize).collect()
    }

    pub fn depth(&self, i: usize) -> usize {
        self.depth[i] as usize
    }

    /// Index of the element with the given table, by linear scan.
    pub fn position(&self, table: &[usize]) -> Option<usize> {
        (0..self.len()).find(|&i| {
            self.table_bytes(i)
                .iter()
                .zip(table)
                .all(|(&a, &b)| a as usize == b)
                && table.len() == self.len
        })
    }

    pub fn witness(&self, i: usize) -> Term {
        match &self.derivations[i] {
            Derivation::Projection(p) => Term::Var(*p),
            Derivation::App { op, args } => Term::App(
                self.op_names[*op].clone(),
                args.iter().map(|&a| self.witness(a as usize)).collect(),
            ),
        }
    }

    pub fn element(&self, i: usize) -> CloneElement {
        CloneElement {
            arity: self.arity,
            table: self.table(i),
            witness: self.witness(i),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = CloneElement> + '_ {
        (0..self.len()).map(|i| self.element(i))
    }
}

/// Calls `f` on every tuple in `(0..=newest)^k` containing `newest`, in
/// lexicographic order, until `f` returns false.
fn for_each_tuple_containing(
    newest: u32,
    k: usize,
    buf: &mut [u32],
    mut f: impl FnMut(&[u32]) -> bool,
) {
    fn rec(
        pos: usize,
        used: bool,
        newest: u32,
        buf: &mut [u32],
        f: &mut dyn FnMut(&[u32]) -> bool,
    ) -> bool {
        if pos == buf.len() {
            return f(buf);
        }
        let last = pos + 1 == buf.len();
        let start = if last && !used { newest } else { 0 };
        for v in start..=newest {
            buf[pos] = v;
            if !rec(pos + 1, used || v == newest, newest, buf, f) {
                return false;
            }
        }
        true
    }
    debug_assert_eq!(buf.len(), k);
    rec(0, false, newest, buf, &mut f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{cyclic_group, meet_semilattice_chain};
    use crate::ualg::for_each_tuple;

    #[test]
    fn tuples_containing_newest_in_order() {
        let mut seen = Vec::new();
        let mut buf = [0u32; 2];
        for_each_tuple_containing(2, 2, &mut buf, |t| {
            seen.push((t[0], t[1]));
            true
        });
        assert_eq!(seen, vec![(0, 2), (1, 2), (2, 0), (2, 1), (2, 2)]);
    }

    #[test]
    fn unary_clone_has_identity() {
        let z3 = cyclic_group(3).unwrap();
        let ct = CloneTable::generate(&z3, 1, 100).unwrap();
        assert!(ct.is_complete());
        assert_eq!(ct.table(0), vec![0, 1, 2]);
        assert_eq!(ct.witness(0), Term::Var(0));
    }

    #[test]
    fn semilattice_ternary_clone_is_seven_meets() {
        let s = meet_semilattice_chain(2).unwrap();
        let ct = CloneTable::generate(&s, 3, 1000).unwrap();
        assert!(ct.is_complete());
        assert_eq!(ct.len(), 7);
        // each table is the meet of a nonempty subset of the variables
        let mut expected = Vec::new();
        for mask in 1u32..8 {
            let mut t = Vec::new();
            for_each_tuple(2, 3, |xs| {
                t.push(
                    (0..3)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| xs[i])
                        .min()
                        .unwrap(),
                )
            });
            expected.push(t);
        }
        let mut got: Vec<Vec<usize>> = ct.elements().map(|e| e.table).collect();
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn z2_clone_contains_minority() {
        let z2 = cyclic_group(2).unwrap();
        let ct = CloneTable::generate(&z2, 3, 1000).unwrap();
        let mut target = Vec::new();
        for_each_tuple(2, 3, |xs| target.push((xs[0] + 2 - xs[1] + xs[2]) % 2));
        assert!(ct.position(&target).is_some());
    }

    #[test]
    fn witnesses_reproduce_tables_and_closure_is_complete() {
        let z3 = cyclic_group(3).unwrap();
        let ct = CloneTable::generate(&z3, 2, 10_000).unwrap();
        assert!(ct.is_complete());
        for e in ct.elements() {
            assert_eq!(e.witness.table(&z3, 2).unwrap(), e.table);
        }
        let sig = z3.signature();
        for op in 0..sig.len() {
            let a = sig.arity(op);
            let total = ct.len().pow(a as u32);
            let mut pick = vec![0; a];
            for code in 0..total {
                tuple_at(ct.len(), code, &mut pick);
                let t: Vec<usize> = (0..9)
                    .map(|x| {
                        let vals: Vec<usize> = pick.iter().map(|&i| ct.table(i)[x]).collect();
                        z3.apply(op, &vals)
                    })
                    .collect();
                assert!(ct.position(&t).is_some());
            }
        }
    }

    #[test]
    fn budget_is_reported() {
        let z3 = cyclic_group(3).unwrap();
        let ct = CloneTable::generate(&z3, 3, 5).unwrap();
        assert_eq!(ct.outcome(), Generation::BudgetExceeded);
        assert_eq!(ct.len(), 5);
        assert!(CloneTable::generate(&z3, 3, 3).is_err());
        assert!(CloneTable::generate(&z3, 0, 30).is_err());
    }

    #[test]
    fn deterministic() {
        let z3 = cyclic_group(3).unwrap();
        let a = CloneTable::generate(&z3, 2, 1000).unwrap();
        let b = CloneTable::generate(&z3, 2, 1000).unwrap();
        assert_eq!(a.data, b.data);
        assert_eq!(a.derivations, b.derivations);
    }
}
