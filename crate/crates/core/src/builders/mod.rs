//! Constructors for the standard example algebras.
//!
//! Every builder checks the axioms of its class exhaustively before
//! returning, so a successful return is also a certificate.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::finset::{Carrier, Rel};
use crate::permutability::{verify_identities, verify_schema, Identity, Schema};
use crate::ualg::{Algebra, Signature, Term};

/// Operation names used by the builders.
pub mod ops {
    pub const MUL: &str = "·";
    pub const UNIT: &str = "e";
    pub const INV: &str = "inv";
    pub const LDIV: &str = "\\";
    pub const RDIV: &str = "/";
    pub const MEET: &str = "∧";
    pub const JOIN: &str = "∨";
    pub const IMP: &str = "→";
    pub const BOT: &str = "0";
    pub const TOP: &str = "1";
}

/// Largest atom count accepted by [`implication_algebra_boolean`].
pub const MAX_IMPLICATION_ATOMS: usize = 6;

fn x(i: usize) -> Term {
    Term::Var(i)
}

fn axioms(alg: &Algebra, ids: &[Identity]) -> Result<()> {
    match verify_identities(alg, ids)? {
        None => Ok(()),
        Some(v) => Err(Error::AxiomViolation {
            axiom: v.identity,
            assignment: v.assignment,
        }),
    }
}

fn assoc(op: &str) -> Identity {
    Identity::new(
        "associativity",
        Term::binary(op, Term::binary(op, x(0), x(1)), x(2)),
        Term::binary(op, x(0), Term::binary(op, x(1), x(2))),
    )
}

/// The cyclic group `Z_n` with signature `(·:2, e:0, inv:1)`.
pub fn cyclic_group(n: usize) -> Result<Algebra> {
    if n == 0 {
        return Err(Error::Precondition("cyclic group needs n ≥ 1".into()));
    }
    let sig = Signature::new([(ops::MUL, 2), (ops::UNIT, 0), (ops::INV, 1)])?;
    let alg = Algebra::from_fns(Carrier::new(n), sig, |op, a| match op {
        0 => (a[0] + a[1]) % n,
        1 => 0,
        _ => (n - a[0]) % n,
    })?;
    let e = Term::constant(ops::UNIT);
    axioms(
        &alg,
        &[
            assoc(ops::MUL),
            Identity::new("left unit", Term::binary(ops::MUL, e.clone(), x(0)), x(0)),
            Identity::new("right unit", Term::binary(ops::MUL, x(0), e.clone()), x(0)),
            Identity::new(
                "left inverse",
                Term::binary(ops::MUL, Term::app(ops::INV, vec![x(0)]), x(0)),
                e,
            ),
        ],
    )?;
    Ok(alg)
}

/// An `n×n` array whose rows and columns are permutations of `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinSquare {
    n: usize,
    rows: Vec<Vec<usize>>,
}

impl LatinSquare {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        let is_perm = |it: &mut dyn Iterator<Item = usize>| {
            let mut seen = vec![false; n];
            let mut ok = true;
            for v in it {
                ok &= v < n && !core::mem::replace(&mut seen[v], true);
            }
            ok
        };
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n || !is_perm(&mut row.iter().copied()) {
                return Err(Error::Precondition(alloc::format!(
                    "row {i} is not a permutation"
                )));
            }
        }
        for j in 0..n {
            if !is_perm(&mut rows.iter().map(|r| r[j])) {
                return Err(Error::Precondition(alloc::format!(
                    "column {j} is not a permutation"
                )));
            }
        }
        Ok(LatinSquare { n, rows })
    }

    /// The addition table of `Z_n`.
    pub fn cyclic(n: usize) -> Self {
        LatinSquare {
            n,
            rows: (0..n)
                .map(|i| (0..n).map(|j| (i + j) % n).collect())
                .collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }
}

/// The quasigroup `(·, \, /)` of a Latin square: `x·y` is the entry at row
/// `x`, column `y`; `x\y` solves `x·z = y` and `x/y` solves `z·y = x`.
pub fn quasigroup_from_latin_square(square: &LatinSquare) -> Result<Algebra> {
    let n = square.n;
    let mut ldiv = vec![0; n * n];
    let mut rdiv = vec![0; n * n];
    for xx in 0..n {
        for z in 0..n {
            let y = square.rows[xx][z];
            ldiv[xx * n + y] = z;
            rdiv[y * n + z] = xx;
        }
    }
    let mul = square.rows.iter().flatten().copied().collect();
    let sig = Signature::new([(ops::MUL, 2), (ops::LDIV, 2), (ops::RDIV, 2)])?;
    let alg = Algebra::new(Carrier::new(n), sig, vec![mul, ldiv, rdiv])?;
    match verify_schema(&alg, &Schema::QuasigroupAxioms)? {
        None => Ok(alg),
        Some(v) => Err(Error::AxiomViolation {
            axiom: v.identity,
            assignment: v.assignment,
        }),
    }
}

/// A finite partial order, given by its order relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    order: Rel,
}

impl FinitePoset {
    pub fn new(order: Rel) -> Result<Self> {
        if !order.is_endo() {
            return Err(Error::Precondition(
                "order must be a relation on one carrier".into(),
            ));
        }
        if !order.is_reflexive() || !order.is_antisymmetric() || !order.is_transitive() {
            return Err(Error::Precondition(
                "order must be reflexive, antisymmetric and transitive".into(),
            ));
        }
        Ok(FinitePoset { order })
    }

    /// `0 < 1 < … < n−1`.
    pub fn chain(n: usize) -> Self {
        FinitePoset {
            order: Rel::from_fn(n, n, |a, b| a <= b),
        }
    }

    /// Subsets of a `k`-set ordered by inclusion, encoded as bitmasks.
    pub fn boolean(k: usize) -> Self {
        let n = 1 << k;
        FinitePoset {
            order: Rel::from_fn(n, n, |a, b| a & !b == 0),
        }
    }

    pub fn size(&self) -> usize {
        self.order.dom()
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.order.contains(a, b)
    }

    pub fn order(&self) -> &Rel {
        &self.order
    }

    fn greatest(&self, candidates: impl Iterator<Item = usize> + Clone) -> Option<usize> {
        candidates
            .clone()
            .find(|&c| candidates.clone().all(|d| self.le(d, c)))
    }

    fn least(&self, candidates: impl Iterator<Item = usize> + Clone) -> Option<usize> {
        candidates
            .clone()
            .find(|&c| candidates.clone().all(|d| self.le(c, d)))
    }
}

/// The Heyting algebra `(∧, ∨, →, 0, 1)` of a finite lattice with relative
/// pseudo-complements, `x → y = max{z | z ∧ x ≤ y}`.
pub fn heyting_from_poset(poset: &FinitePoset) -> Result<Algebra> {
    let n = poset.size();
    if n == 0 {
        return Err(Error::Precondition(
            "a Heyting algebra needs a nonempty carrier".into(),
        ));
    }
    let missing = |what: &str, a: usize, b: usize| {
        Error::Precondition(alloc::format!("no {what} for ({a}, {b})"))
    };
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            meet[a * n + b] = poset
                .greatest((0..n).filter(|&z| poset.le(z, a) && poset.le(z, b)))
                .ok_or_else(|| missing("meet", a, b))?;
            join[a * n + b] = poset
                .least((0..n).filter(|&z| poset.le(a, z) && poset.le(b, z)))
                .ok_or_else(|| missing("join", a, b))?;
        }
    }
    let bottom = poset.least(0..n).ok_or_else(|| missing("bottom", 0, 0))?;
    let top = poset.greatest(0..n).ok_or_else(|| missing("top", 0, 0))?;
    let mut imp = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            imp[a * n + b] = poset
                .greatest((0..n).filter(|&z| poset.le(meet[z * n + a], b)))
                .ok_or_else(|| missing("implication", a, b))?;
        }
    }
    let sig = Signature::new([
        (ops::MEET, 2),
        (ops::JOIN, 2),
        (ops::IMP, 2),
        (ops::BOT, 0),
        (ops::TOP, 0),
    ])?;
    let alg = Algebra::new(
        Carrier::new(n),
        sig,
        vec![meet.clone(), join, imp.clone(), vec![bottom], vec![top]],
    )?;
    // adjunction: z ≤ x→y iff z∧x ≤ y
    for z in 0..n {
        for a in 0..n {
            for b in 0..n {
                if poset.le(z, imp[a * n + b]) != poset.le(meet[z * n + a], b) {
                    return Err(Error::AxiomViolation {
                        axiom: "adjunction".into(),
                        assignment: vec![z, a, b],
                    });
                }
            }
        }
    }
    let m = |a, b| Term::binary(ops::MEET, a, b);
    let j = |a, b| Term::binary(ops::JOIN, a, b);
    axioms(
        &alg,
        &[
            assoc(ops::MEET),
            assoc(ops::JOIN),
            Identity::new("commutativity", m(x(0), x(1)), m(x(1), x(0))),
            Identity::new("commutativity", j(x(0), x(1)), j(x(1), x(0))),
            Identity::new("absorption", m(x(0), j(x(0), x(1))), x(0)),
            Identity::new("absorption", j(x(0), m(x(0), x(1))), x(0)),
            Identity::new(
                "distributivity",
                m(x(0), j(x(1), x(2))),
                j(m(x(0), x(1)), m(x(0), x(2))),
            ),
        ],
    )?;
    Ok(alg)
}

/// The implication reduct of the Boolean algebra of subsets of a `k`-set:
/// one binary operation `x → y = (complement of x) ∪ y`. Elements are
/// bitmasks; `2^k − 1` is the derived constant `xx`.
pub fn implication_algebra_boolean(k: usize) -> Result<Algebra> {
    if k > MAX_IMPLICATION_ATOMS {
        return Err(Error::CarrierTooLarge {
            size: 1 << k,
            bound: 1 << MAX_IMPLICATION_ATOMS,
        });
    }
    let n = 1usize << k;
    let mask = n - 1;
    let sig = Signature::new([(ops::IMP, 2)])?;
    let alg = Algebra::from_fns(Carrier::new(n), sig, |_, a| (!a[0] | a[1]) & mask)?;
    axioms(&alg, &Schema::ImplicationAxioms.identities()?)?;
    axioms(&alg, &Schema::ImplicationUnit.identities()?)?;
    Ok(alg)
}

/// The chain `0 < … < n−1` with the single binary operation `min`.
pub fn meet_semilattice_chain(n: usize) -> Result<Algebra> {
    if n == 0 {
        return Err(Error::Precondition("chain needs n ≥ 1".into()));
    }
    let sig = Signature::new([(ops::MEET, 2)])?;
    let alg = Algebra::from_fns(Carrier::new(n), sig, |_, a| a[0].min(a[1]))?;
    let m = |a, b| Term::binary(ops::MEET, a, b);
    axioms(
        &alg,
        &[
            assoc(ops::MEET),
            Identity::new("commutativity", m(x(0), x(1)), m(x(1), x(0))),
            Identity::new("idempotence", m(x(0), x(0)), x(0)),
        ],
    )?;
    Ok(alg)
}

/// Builds an algebra from a builder name and integer parameter, as used by
/// the command line: `cyclic-group N`, `quasigroup-cyclic N`,
/// `heyting-chain N`, `heyting-boolean K`, `implication-boolean K`,
/// `semilattice-chain N`.
pub fn by_name(name: &str, param: usize) -> Result<Algebra> {
    match name {
        "cyclic-group" => cyclic_group(param),
        "quasigroup-cyclic" => quasigroup_from_latin_square(&LatinSquare::cyclic(param)),
        "heyting-chain" => heyting_from_poset(&FinitePoset::chain(param)),
        "heyting-boolean" => heyting_from_poset(&FinitePoset::boolean(param)),
        "implication-boolean" => implication_algebra_boolean(param),
        "semilattice-chain" => meet_semilattice_chain(param),
        other => Err(Error::Precondition(alloc::format!(
            "unknown builder `{other}`"
        ))),
    }
}

pub const BUILDER_NAMES: &[&str] = &[
    "cyclic-group",
    "quasigroup-cyclic",
    "heyting-chain",
    "heyting-boolean",
    "implication-boolean",
    "semilattice-chain",
];

/// Every builder instance with at most `max_size` elements (plus bare sets),
/// named `builder:param` or `set:n`, in a fixed order.
pub fn corpus(max_size: usize) -> Vec<(String, Algebra)> {
    let mut out = Vec::new();
    for n in 1..=max_size {
        out.push((alloc::format!("set:{n}"), Algebra::set(n)));
    }
    for &name in BUILDER_NAMES {
        for param in 0..=max_size {
            let size = match name {
                "heyting-boolean" | "implication-boolean" => {
                    1usize.checked_shl(param as u32).unwrap_or(usize::MAX)
                }
                _ => param,
            };
            if size == 0 || size > max_size {
                continue;
            }
            if let Ok(alg) = by_name(name, param) {
                out.push((alloc::format!("{name}:{param}"), alg));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permutability::{heyting_maltsev_term, quasigroup_maltsev_term};
    use crate::ualg::Congruence;

    #[test]
    fn cyclic_groups() {
        assert!(cyclic_group(0).is_err());
        let one = cyclic_group(1).unwrap();
        assert_eq!(Congruence::all(&one, 8).unwrap().len(), 1);
        assert_eq!(
            Congruence::all(&cyclic_group(6).unwrap(), 8).unwrap().len(),
            4
        );
        assert_eq!(cyclic_group(5).unwrap(), cyclic_group(5).unwrap());
    }

    #[test]
    fn latin_square_validation() {
        assert!(LatinSquare::new(vec![vec![0, 1], vec![0, 1]]).is_err());
        assert!(LatinSquare::new(vec![vec![0, 1], vec![1]]).is_err());
        assert!(LatinSquare::new(vec![vec![0, 1], vec![1, 0]]).is_ok());
    }

    #[test]
    fn z3_quasigroup() {
        let q = quasigroup_from_latin_square(&LatinSquare::cyclic(3)).unwrap();
        assert_eq!(verify_schema(&q, &Schema::QuasigroupAxioms).unwrap(), None);
        assert_eq!(
            verify_schema(&q, &Schema::Maltsev(quasigroup_maltsev_term())).unwrap(),
            None
        );
        let trivial =
            quasigroup_from_latin_square(&LatinSquare::new(vec![vec![0]]).unwrap()).unwrap();
        assert_eq!(trivial.size(), 1);
    }

    #[test]
    fn non_cyclic_latin_square() {
        // a Latin square that is not a group table (no identity row)
        let sq = LatinSquare::new(vec![vec![1, 0, 2], vec![0, 2, 1], vec![2, 1, 0]]).unwrap();
        let q = quasigroup_from_latin_square(&sq).unwrap();
        assert_eq!(
            verify_schema(&q, &Schema::Maltsev(quasigroup_maltsev_term())).unwrap(),
            None
        );
    }

    #[test]
    fn heyting_chains() {
        let two = heyting_from_poset(&FinitePoset::chain(2)).unwrap();
        let imp = two.op_index(ops::IMP).unwrap();
        assert_eq!(two.table(imp), &[1, 1, 0, 1]);
        let three = heyting_from_poset(&FinitePoset::chain(3)).unwrap();
        let imp = three.op_index(ops::IMP).unwrap();
        // 0 < a=1 < 1=2
        assert_eq!(three.apply(imp, &[1, 0]), 0);
        assert_eq!(three.apply(imp, &[2, 1]), 1);
        assert_eq!(
            verify_schema(&three, &Schema::Maltsev(heyting_maltsev_term())).unwrap(),
            None
        );
        assert!(heyting_from_poset(&FinitePoset::boolean(2)).is_ok());
    }

    #[test]
    fn heyting_rejects_non_lattice() {
        // two incomparable elements with no top
        let anti = FinitePoset::new(Rel::diagonal(2)).unwrap();
        assert!(matches!(
            heyting_from_poset(&anti),
            Err(Error::Precondition(_))
        ));
        // pentagon N5 is a lattice but not distributive: implication missing or axioms fail
        let le = |a: usize, b: usize| a == b || a == 0 || b == 4 || (a == 1 && b == 2);
        let n5 = FinitePoset::new(Rel::from_fn(5, 5, le)).unwrap();
        assert!(heyting_from_poset(&n5).is_err());
    }

    #[test]
    fn implication_algebras() {
        assert_eq!(implication_algebra_boolean(0).unwrap().size(), 1);
        let a = implication_algebra_boolean(1).unwrap();
        assert_eq!(a.table(0), &[1, 1, 0, 1]);
        assert_eq!(implication_algebra_boolean(2).unwrap().size(), 4);
        assert!(implication_algebra_boolean(7).is_err());
    }

    #[test]
    fn semilattice_chains() {
        assert!(meet_semilattice_chain(0).is_err());
        assert_eq!(meet_semilattice_chain(1).unwrap().size(), 1);
        assert_eq!(
            meet_semilattice_chain(3).unwrap().table(0),
            &[0, 0, 0, 0, 1, 1, 0, 1, 2]
        );
    }

    #[test]
    fn builders_by_name() {
        for name in BUILDER_NAMES {
            assert!(by_name(name, 2).is_ok(), "{name}");
        }
        assert!(by_name("nope", 2).is_err());
    }
}
