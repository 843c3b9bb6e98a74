use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::builders::ops;
use crate::error::{Error, Result};
use crate::ualg::{tuple_at, Algebra, Term};

/// An equation `lhs = rhs` between terms, universally quantified over the
/// variables it mentions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
}

impl Identity {
    pub fn new(name: impl Into<String>, lhs: Term, rhs: Term) -> Self {
        Identity {
            name: name.into(),
            lhs,
            rhs,
        }
    }

    pub fn var_count(&self) -> usize {
        self.lhs.var_count().max(self.rhs.var_count())
    }
}

/// A failing assignment for an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub identity: String,
    pub assignment: Vec<usize>,
    pub lhs: usize,
    pub rhs: usize,
}

/// A named family of identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Schema {
    /// `p(x,y,y) = x`, `p(x,x,y) = y`.
    Maltsev(Term),
    /// `p(x,y,y,z) = x`, `q(x,y,y,z) = z`, `p(x,x,y,y) = q(x,x,y,y)`.
    Quaternary(Term, Term),
    /// `x\(x·y) = y`, `(x·y)/y = x`, `x·(x\y) = y`, `(x/y)·y = x`.
    QuasigroupAxioms,
    /// `(xy)x = x`, `(xy)y = (yx)x`, `x(yz) = y(xz)` for the implication `→`.
    ImplicationAxioms,
    /// `xx = yy` and `(xx)y = y`: `xx` is a constant acting as a left unit.
    ImplicationUnit,
    /// The Mal'tsev schema for `((x→y)→z) ∧ ((z→y)→x)`, or for the given
    /// term if one is supplied.
    HeytingMaltsev(Option<Term>),
    Custom(Vec<Identity>),
}

fn x(i: usize) -> Term {
    Term::Var(i)
}

/// `((x→y)→z) ∧ ((z→y)→x)`.
pub fn heyting_maltsev_term() -> Term {
    let imp = |a, b| Term::binary(ops::IMP, a, b);
    Term::binary(
        ops::MEET,
        imp(imp(x(0), x(1)), x(2)),
        imp(imp(x(2), x(1)), x(0)),
    )
}

/// `(x/(y\y))·(y\z)`.
pub fn quasigroup_maltsev_term() -> Term {
    Term::binary(
        ops::MUL,
        Term::binary(ops::RDIV, x(0), Term::binary(ops::LDIV, x(1), x(1))),
        Term::binary(ops::LDIV, x(1), x(2)),
    )
}

/// `p(x,y,z,u) = (zy)x` and `q(x,y,z,u) = (yz)u` for the implication `→`.
pub fn implication_quaternary_terms() -> (Term, Term) {
    let imp = |a, b| Term::binary(ops::IMP, a, b);
    (imp(imp(x(2), x(1)), x(0)), imp(imp(x(1), x(2)), x(3)))
}

fn require_vars(t: &Term, arity: usize) -> Result<()> {
    let vars = t.var_count();
    if vars > arity {
        return Err(Error::VariableOutOfRange {
            index: vars - 1,
            vars: arity,
        });
    }
    Ok(())
}

fn sub(t: &Term, vars: &[usize]) -> Term {
    let s: Vec<Term> = vars.iter().map(|&v| x(v)).collect();
    t.substitute(&s)
}

impl Schema {
    pub fn name(&self) -> &'static str {
        match self {
            Schema::Maltsev(_) => "maltsev",
            Schema::Quaternary(..) => "quaternary",
            Schema::QuasigroupAxioms => "quasigroup-axioms",
            Schema::ImplicationAxioms => "implication-axioms",
            Schema::ImplicationUnit => "implication-unit",
            Schema::HeytingMaltsev(_) => "heyting-maltsev",
            Schema::Custom(_) => "custom",
        }
    }

    pub fn identities(&self) -> Result<Vec<Identity>> {
        Ok(match self {
            Schema::Maltsev(p) => {
                require_vars(p, 3)?;
                vec![
                    Identity::new("p(x,y,y) = x", sub(p, &[0, 1, 1]), x(0)),
                    Identity::new("p(x,x,y) = y", sub(p, &[0, 0, 1]), x(1)),
                ]
            }
            Schema::HeytingMaltsev(p) => {
                let p = p.clone().unwrap_or_else(heyting_maltsev_term);
                return Schema::Maltsev(p).identities();
            }
            Schema::Quaternary(p, q) => {
                require_vars(p, 4)?;
                require_vars(q, 4)?;
                vec![
                    Identity::new("p(x,y,y,z) = x", sub(p, &[0, 1, 1, 2]), x(0)),
                    Identity::new("q(x,y,y,z) = z", sub(q, &[0, 1, 1, 2]), x(2)),
                    Identity::new(
                        "p(x,x,y,y) = q(x,x,y,y)",
                        sub(p, &[0, 0, 1, 1]),
                        sub(q, &[0, 0, 1, 1]),
                    ),
                ]
            }
            Schema::QuasigroupAxioms => {
                let (m, l, r) = (ops::MUL, ops::LDIV, ops::RDIV);
                vec![
                    Identity::new(
                        "x\\(x·y) = y",
                        Term::binary(l, x(0), Term::binary(m, x(0), x(1))),
                        x(1),
                    ),
                    Identity::new(
                        "(x·y)/y = x",
                        Term::binary(r, Term::binary(m, x(0), x(1)), x(1)),
                        x(0),
                    ),
                    Identity::new(
                        "x·(x\\y) = y",
                        Term::binary(m, x(0), Term::binary(l, x(0), x(1))),
                        x(1),
                    ),
                    Identity::new(
                        "(x/y)·y = x",
                        Term::binary(m, Term::binary(r, x(0), x(1)), x(1)),
                        x(0),
                    ),
                ]
            }
            Schema::ImplicationAxioms => {
                let imp = |a, b| Term::binary(ops::IMP, a, b);
                vec![
                    Identity::new("(xy)x = x", imp(imp(x(0), x(1)), x(0)), x(0)),
                    Identity::new(
                        "(xy)y = (yx)x",
                        imp(imp(x(0), x(1)), x(1)),
                        imp(imp(x(1), x(0)), x(0)),
                    ),
                    Identity::new(
                        "x(yz) = y(xz)",
                        imp(x(0), imp(x(1), x(2))),
                        imp(x(1), imp(x(0), x(2))),
                    ),
                ]
            }
            Schema::ImplicationUnit => {
                let imp = |a, b| Term::binary(ops::IMP, a, b);
                vec![
                    Identity::new("xx = yy", imp(x(0), x(0)), imp(x(1), x(1))),
                    Identity::new("(xx)y = y", imp(imp(x(0), x(0)), x(1)), x(1)),
                ]
            }
            Schema::Custom(ids) => ids.clone(),
        })
    }
}

/// Checks every identity over all assignments; returns the first violation
/// (identities in order, assignments in lexicographic order).
pub fn verify_identities(alg: &Algebra, identities: &[Identity]) -> Result<Option<Violation>> {
    let n = alg.size();
    for id in identities {
        let lhs = id.lhs.compile(alg.signature())?;
        let rhs = id.rhs.compile(alg.signature())?;
        let vars = id.var_count();
        let total = n.pow(vars as u32);
        let mut env = vec![0; vars];
        for code in 0..total {
            tuple_at(n, code, &mut env);
            let (l, r) = (lhs.eval(alg, &env), rhs.eval(alg, &env));
            if l != r {
                return Ok(Some(Violation {
                    identity: id.name.clone(),
                    assignment: env,
                    lhs: l,
                    rhs: r,
                }));
            }
        }
    }
    Ok(None)
}

pub fn verify_schema(alg: &Algebra, schema: &Schema) -> Result<Option<Violation>> {
    verify_identities(alg, &schema.identities()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::*;

    #[test]
    fn heyting_term_on_three_chain() {
        let h = heyting_from_poset(&FinitePoset::chain(3)).unwrap();
        assert_eq!(
            verify_schema(&h, &Schema::HeytingMaltsev(None)).unwrap(),
            None
        );
    }

    #[test]
    fn implication_unit_holds() {
        for k in 0..3 {
            let a = implication_algebra_boolean(k).unwrap();
            assert_eq!(verify_schema(&a, &Schema::ImplicationUnit).unwrap(), None);
        }
    }

    #[test]
    fn trivial_identity_holds() {
        let a = meet_semilattice_chain(3).unwrap();
        let t = Term::parse("(∧ x0 (∧ x1 x2))").unwrap();
        let id = Identity::new("t = t", t.clone(), t);
        assert_eq!(verify_identities(&a, &[id]).unwrap(), None);
    }

    #[test]
    fn reports_first_violation() {
        let a = meet_semilattice_chain(2).unwrap();
        let v = verify_schema(&a, &Schema::Maltsev(x(0))).unwrap().unwrap();
        assert_eq!(v.identity, "p(x,x,y) = y");
        assert_eq!(v.assignment, vec![0, 1]);
    }

    #[test]
    fn arity_and_signature_errors() {
        let a = meet_semilattice_chain(2).unwrap();
        assert!(verify_schema(&a, &Schema::Maltsev(x(3))).is_err());
        assert!(matches!(
            verify_schema(&a, &Schema::QuasigroupAxioms),
            Err(Error::UnknownOp(_))
        ));
    }

    #[test]
    fn reference_quaternary_pair_on_implication_algebras() {
        let (p, q) = implication_quaternary_terms();
        for k in 1..3 {
            let a = implication_algebra_boolean(k).unwrap();
            assert_eq!(
                verify_schema(&a, &Schema::Quaternary(p.clone(), q.clone())).unwrap(),
                None
            );
        }
    }
}
