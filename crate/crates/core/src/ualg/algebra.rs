use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::finset::{Carrier, FinFn, Partition};

/// An operation symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpSymbol {
    pub name: String,
    pub arity: usize,
}

/// Ordered list of operation symbols with distinct names.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    ops: Vec<OpSymbol>,
}

impl Signature {
    pub fn new<S: Into<String>>(ops: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let mut out: Vec<OpSymbol> = Vec::new();
        for (name, arity) in ops {
            let name = name.into();
            if out.iter().any(|o| o.name == name) {
                return Err(Error::DuplicateOp(name));
            }
            out.push(OpSymbol { name, arity });
        }
        Ok(Signature { ops: out })
    }

    pub fn empty() -> Self {
        Signature::default()
    }

    pub fn ops(&self) -> &[OpSymbol] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|o| o.name == name)
    }

    pub fn arity(&self, op: usize) -> usize {
        self.ops[op].arity
    }

    pub fn max_arity(&self) -> usize {
        self.ops.iter().map(|o| o.arity).max().unwrap_or(0)
    }
}

/// A finite algebra: a carrier, a signature and one flat table per operation.
///
/// The table of a `k`-ary operation has `n^k` entries; the arguments
/// `(a1, …, ak)` live at index `a1·n^(k−1) + … + ak`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Algebra {
    carrier: Carrier,
    sig: Signature,
    tables: Vec<Vec<usize>>,
}

/// A failing instance of an operation: the op name and its argument tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpWitness {
    pub op: String,
    pub args: Vec<usize>,
}

/// Mixed-radix index of an argument tuple.
#[inline]
pub fn tuple_index(n: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &a| acc * n + a)
}

/// Decodes a mixed-radix index into `out` (first argument most significant).
#[inline]
pub fn tuple_at(n: usize, mut index: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
}

/// Iterates over all `n^k` argument tuples in lexicographic order.
pub fn for_each_tuple(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let total = n.pow(k as u32);
    let mut buf = vec![0; k];
    for i in 0..total {
        tuple_at(n, i, &mut buf);
        f(&buf);
    }
}

impl Algebra {
    pub fn new(carrier: Carrier, sig: Signature, tables: Vec<Vec<usize>>) -> Result<Self> {
        let n = carrier.size();
        if tables.len() != sig.len() {
            return Err(Error::Precondition(alloc::format!(
                "{} tables for {} operations",
                tables.len(),
                sig.len()
            )));
        }
        for (op, table) in sig.ops().iter().zip(&tables) {
            if op.arity == 0 && n == 0 {
                return Err(Error::ConstantOnEmptyCarrier(op.name.clone()));
            }
            let expected = n
                .checked_pow(op.arity as u32)
                .ok_or(Error::CarrierTooLarge {
                    size: n,
                    bound: usize::MAX,
                })?;
            if table.len() != expected {
                return Err(Error::TableLength {
                    op: op.name.clone(),
                    expected,
                    found: table.len(),
                });
            }
            if let Some((index, &value)) = table.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(Error::TableEntry {
                    op: op.name.clone(),
                    index,
                    value,
                });
            }
        }
        Ok(Algebra {
            carrier,
            sig,
            tables,
        })
    }

    /// Algebra with no operations.
    pub fn set(n: usize) -> Self {
        Algebra {
            carrier: Carrier::new(n),
            sig: Signature::empty(),
            tables: Vec::new(),
        }
    }

    /// Builds the table of each op from a closure over argument tuples.
    pub fn from_fns(
        carrier: Carrier,
        sig: Signature,
        mut f: impl FnMut(usize, &[usize]) -> usize,
    ) -> Result<Self> {
        let n = carrier.size();
        let tables = (0..sig.len())
            .map(|op| {
                let mut t = Vec::with_capacity(n.pow(sig.arity(op) as u32));
                for_each_tuple(n, sig.arity(op), |args| t.push(f(op, args)));
                t
            })
            .collect();
        Algebra::new(carrier, sig, tables)
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn table(&self, op: usize) -> &[usize] {
        &self.tables[op]
    }

    pub fn op_index(&self, name: &str) -> Result<usize> {
        self.sig
            .index_of(name)
            .ok_or_else(|| Error::UnknownOp(name.to_string()))
    }

    #[inline]
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.sig.arity(op));
        self.tables[op][tuple_index(self.size(), args)]
    }

    /// Applies an operation by name, checking arity and ranges.
    pub fn apply_named(&self, name: &str, args: &[usize]) -> Result<usize> {
        let op = self.op_index(name)?;
        let arity = self.sig.arity(op);
        if args.len() != arity {
            return Err(Error::ArityMismatch {
                op: name.to_string(),
                expected: arity,
                found: args.len(),
            });
        }
        if let Some((index, &value)) = args.iter().enumerate().find(|(_, &a)| a >= self.size()) {
            return Err(Error::OutOfRange {
                index,
                value,
                bound: self.size(),
            });
        }
        Ok(self.apply(op, args))
    }

    /// Coordinatewise product; the carrier lists pairs `(a, b)` in
    /// lexicographic order, so `(a, b)` is element `a·|B| + b`.
    pub fn product(&self, other: &Algebra) -> Result<Algebra> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch);
        }
        let (n, m) = (self.size(), other.size());
        let carrier = match (self.carrier.labels(), other.carrier.labels()) {
            (None, None) => Carrier::new(n * m),
            _ => {
                let mut labels = Vec::with_capacity(n * m);
                for a in 0..n {
                    for b in 0..m {
                        labels.push(alloc::format!(
                            "({},{})",
                            self.carrier.label(a),
                            other.carrier.label(b)
                        ));
                    }
                }
                Carrier::with_labels(labels)?
            }
        };
        let mut left = Vec::new();
        let mut right = Vec::new();
        Algebra::from_fns(carrier, self.sig.clone(), |op, args| {
            left.clear();
            right.clear();
            left.extend(args.iter().map(|&p| p / m));
            right.extend(args.iter().map(|&p| p % m));
            self.apply(op, &left) * m + other.apply(op, &right)
        })
    }

    /// The two product projections, as functions on carriers.
    pub fn product_projections(n: usize, m: usize) -> (FinFn, FinFn) {
        let p1 = FinFn::from_fn(n * m, n, |p| p / m).expect("in range");
        let p2 = FinFn::from_fn(n * m, m, |p| p % m).expect("in range");
        (p1, p2)
    }

    /// Least subset containing `seeds` and all constants, closed under every
    /// operation. Returned ascending.
    pub fn subalgebra_generated(&self, seeds: &[usize]) -> Result<Vec<usize>> {
        let n = self.size();
        let mut member = vec![false; n];
        for (index, &s) in seeds.iter().enumerate() {
            if s >= n {
                return Err(Error::OutOfRange {
                    index,
                    value: s,
                    bound: n,
                });
            }
            member[s] = true;
        }
        self.close(&mut member);
        Ok((0..n).filter(|&x| member[x]).collect())
    }

    /// Closes a membership mask under all operations in place.
    pub(crate) fn close(&self, member: &mut [bool]) {
        let n = self.size();
        let mut elems: Vec<usize> = (0..n).filter(|&x| member[x]).collect();
        // semi-naive: each round only needs tuples touching the newest elements
        let mut frontier_start = 0;
        let mut first = true;
        loop {
            let old_len = elems.len();
            let mut fresh = Vec::new();
            for op in 0..self.sig.len() {
                let k = self.sig.arity(op);
                if k == 0 {
                    if first {
                        fresh.push(self.tables[op][0]);
                    }
                    continue;
                }
                let mut idx = vec![0usize; k];
                let mut args = vec![0usize; k];
                let m = old_len;
                if m == 0 {
                    continue;
                }
                'tuples: loop {
                    if idx.iter().any(|&i| i >= frontier_start) {
                        for (a, &i) in args.iter_mut().zip(&idx) {
                            *a = elems[i];
                        }
                        fresh.push(self.apply(op, &args));
                    }
                    for pos in (0..k).rev() {
                        idx[pos] += 1;
                        if idx[pos] < m {
                            continue 'tuples;
                        }
                        idx[pos] = 0;
                    }
                    break;
                }
            }
            first = false;
            for v in fresh {
                if !member[v] {
                    member[v] = true;
                    elems.push(v);
                }
            }
            if elems.len() == old_len {
                return;
            }
            frontier_start = old_len;
        }
    }

    /// Quotient by a partition assumed compatible with every operation.
    pub fn quotient(&self, p: &Partition) -> Result<Algebra> {
        if p.len() != self.size() {
            return Err(Error::CarrierMismatch {
                context: "quotient",
                expected: self.size(),
                found: p.len(),
            });
        }
        if let Some(op) = super::congruence::incompatible_op(self, p) {
            return Err(Error::NotACongruence { op });
        }
        let reps: Vec<usize> = p.blocks().iter().map(|b| b[0]).collect();
        let mut args = Vec::new();
        Algebra::from_fns(
            Carrier::new(p.block_count()),
            self.sig.clone(),
            |op, blocks| {
                args.clear();
                args.extend(blocks.iter().map(|&b| reps[b]));
                p.block_of(self.apply(op, &args))
            },
        )
    }

    /// The subalgebra on a closed subset, elements renumbered ascending.
    pub fn restrict(&self, subset: &[usize]) -> Result<Algebra> {
        let n = self.size();
        let mut pos = vec![usize::MAX; n];
        for (i, &x) in subset.iter().enumerate() {
            pos[x] = i;
        }
        let mut args = Vec::new();
        let mut escaped = None;
        let carrier = match self.carrier.labels() {
            Some(ls) => Carrier::with_labels(subset.iter().map(|&x| ls[x].clone()).collect())?,
            None => Carrier::new(subset.len()),
        };
        let alg = Algebra::from_fns(carrier, self.sig.clone(), |op, local| {
            args.clear();
            args.extend(local.iter().map(|&i| subset[i]));
            let v = pos[self.apply(op, &args)];
            if v == usize::MAX {
                escaped = Some(self.sig.ops()[op].name.clone());
                0
            } else {
                v
            }
        });
        match escaped {
            Some(op) => Err(Error::Precondition(alloc::format!(
                "subset is not closed under `{op}`"
            ))),
            None => alg,
        }
    }

    /// Returns `None` if `f` commutes with every operation, otherwise the
    /// first failing op (signature order) and argument tuple (lexicographic).
    pub fn homomorphism_counterexample(
        &self,
        target: &Algebra,
        f: &FinFn,
    ) -> Result<Option<OpWitness>> {
        if self.sig != target.sig {
            return Err(Error::SignatureMismatch);
        }
        if f.dom() != self.size() || f.cod() != target.size() {
            return Err(Error::CarrierMismatch {
                context: "homomorphism",
                expected: self.size(),
                found: f.dom(),
            });
        }
        let mut mapped = Vec::new();
        for op in 0..self.sig.len() {
            let k = self.sig.arity(op);
            let mut bad = None;
            for_each_tuple(self.size(), k, |args| {
                if bad.is_some() {
                    return;
                }
                mapped.clear();
                mapped.extend(args.iter().map(|&a| f.apply(a)));
                if f.apply(self.apply(op, args)) != target.apply(op, &mapped) {
                    bad = Some(args.to_vec());
                }
            });
            if let Some(args) = bad {
                return Ok(Some(OpWitness {
                    op: self.sig.ops()[op].name.clone(),
                    args,
                }));
            }
        }
        Ok(None)
    }

    pub fn is_homomorphism(&self, target: &Algebra, f: &FinFn) -> Result<bool> {
        Ok(self.homomorphism_counterexample(target, f)?.is_none())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::cyclic_group;

    #[test]
    fn validation_errors() {
        let sig = Signature::new([("m", 2)]).unwrap();
        assert!(matches!(
            Algebra::new(Carrier::new(2), sig.clone(), vec![vec![0, 1, 1]]),
            Err(Error::TableLength { .. })
        ));
        assert_eq!(
            Algebra::new(Carrier::new(2), sig, vec![vec![0, 1, 2, 0]]),
            Err(Error::TableEntry {
                op: "m".into(),
                index: 2,
                value: 2
            })
        );
        let c = Signature::new([("e", 0)]).unwrap();
        assert!(matches!(
            Algebra::new(Carrier::new(0), c, vec![vec![]]),
            Err(Error::ConstantOnEmptyCarrier(_))
        ));
        assert!(matches!(
            Signature::new([("a", 1), ("a", 2)]),
            Err(Error::DuplicateOp(_))
        ));
    }

    #[test]
    fn product_with_trivial_is_isomorphic() {
        let z3 = cyclic_group(3).unwrap();
        let one = cyclic_group(1).unwrap();
        let p = z3.product(&one).unwrap();
        assert_eq!(p.size(), 3);
        assert_eq!(p.tables, z3.tables);
    }

    #[test]
    fn klein_four_squares_to_identity() {
        let z2 = cyclic_group(2).unwrap();
        let v = z2.product(&z2).unwrap();
        assert_eq!(v.size(), 4);
        let mul = v.op_index("·").unwrap();
        let e = v.apply(v.op_index("e").unwrap(), &[]);
        assert!((0..4).all(|x| v.apply(mul, &[x, x]) == e));
    }

    #[test]
    fn diagonal_and_projections() {
        let z3 = cyclic_group(3).unwrap();
        let sq = z3.product(&z3).unwrap();
        let diag: Vec<usize> = (0..3).map(|a| a * 3 + a).collect();
        assert_eq!(sq.subalgebra_generated(&diag).unwrap(), diag);
        let (p1, p2) = Algebra::product_projections(3, 3);
        assert!(sq.is_homomorphism(&z3, &p1).unwrap());
        assert!(sq.is_homomorphism(&z3, &p2).unwrap());
    }

    #[test]
    fn generated_subalgebras() {
        let z4 = cyclic_group(4).unwrap();
        assert_eq!(z4.subalgebra_generated(&[2]).unwrap(), vec![0, 2]);
        assert_eq!(
            z4.subalgebra_generated(&[0, 1, 2, 3]).unwrap(),
            vec![0, 1, 2, 3]
        );
        assert_eq!(z4.subalgebra_generated(&[]).unwrap(), vec![0]);
        assert_eq!(z4.subalgebra_generated(&[1]).unwrap(), vec![0, 1, 2, 3]);
        assert!(z4.subalgebra_generated(&[4]).is_err());
    }

    #[test]
    fn homomorphism_checks() {
        let z4 = cyclic_group(4).unwrap();
        let z2 = cyclic_group(2).unwrap();
        assert!(z4.is_homomorphism(&z4, &FinFn::identity(4)).unwrap());
        let mod2 = FinFn::from_fn(4, 2, |x| x % 2).unwrap();
        assert!(z4.is_homomorphism(&z2, &mod2).unwrap());
        let shift = FinFn::from_fn(4, 4, |x| (x + 1) % 4).unwrap();
        let w = z4
            .homomorphism_counterexample(&z4, &shift)
            .unwrap()
            .unwrap();
        assert_eq!(w.op, "·");
        assert_eq!(w.args, vec![0, 0]);
    }

    #[test]
    fn quotient_mod_two() {
        let z4 = cyclic_group(4).unwrap();
        let p = Partition::from_labels(&[0, 1, 0, 1]);
        let q = z4.quotient(&p).unwrap();
        assert_eq!(q, cyclic_group(2).unwrap());
        assert!(z4.quotient(&Partition::from_labels(&[0, 0, 1, 1])).is_err());
    }
}
