//! Term search in the clone of a finite algebra.
//!
//! An identity holds in the variety generated by a finite algebra exactly when
//! it holds in the algebra, so a Mal'tsev term or a Goursat pair exists for
//! that variety iff the algebra's ternary (resp. quaternary) clone contains
//! operations with the right tables. The searches stream the clone
//! breadth-first and stop at the first hit; absence is only reported once the
//! clone has reached its fixpoint.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::schema::{verify_schema, Schema};
use crate::error::{Error, Result};
use crate::ualg::{Algebra, CloneTable, Generation, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    Found,
    /// The clone reached its fixpoint without a matching operation.
    AbsentConfirmed,
    /// The budget ran out first; nothing can be concluded.
    BudgetExceeded,
}

/// Outcome of a term search. Verdicts concern the variety generated by the
/// algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermSearchResult {
    pub status: SearchStatus,
    /// The Mal'tsev term, or the pair `[p, q]`.
    pub terms: Vec<Term>,
    /// Clone elements generated before the search ended.
    pub clone_size: usize,
}

impl TermSearchResult {
    pub fn found(&self) -> bool {
        self.status == SearchStatus::Found
    }
}

fn nonempty(alg: &Algebra) -> Result<()> {
    if alg.size() == 0 {
        return Err(Error::Precondition(
            "term search needs a nonempty carrier".into(),
        ));
    }
    Ok(())
}

fn status_of(ct: &CloneTable) -> SearchStatus {
    match ct.outcome() {
        Generation::Stopped => SearchStatus::Found,
        Generation::Fixpoint => SearchStatus::AbsentConfirmed,
        Generation::BudgetExceeded => SearchStatus::BudgetExceeded,
    }
}

/// Whether a ternary table satisfies `t(x,y,y) = x` and `t(x,x,y) = y`.
pub fn is_maltsev_table(n: usize, t: &[u8]) -> bool {
    (0..n).all(|x| {
        (0..n).all(|y| {
            t[x * n * n + y * n + y] as usize == x && t[x * n * n + x * n + y] as usize == y
        })
    })
}

/// Searches the ternary clone for `p` with `p(x,y,y) = x` and `p(x,x,y) = y`.
pub fn find_maltsev_term(alg: &Algebra, budget: usize) -> Result<TermSearchResult> {
    nonempty(alg)?;
    let n = alg.size();
    let mut hit = None;
    let ct = CloneTable::generate_with(alg, 3, budget, |t, i| {
        if is_maltsev_table(n, t) {
            hit = Some(i);
            true
        } else {
            false
        }
    })?;
    let terms = hit.map(|i| vec![ct.witness(i)]).unwrap_or_default();
    let res = TermSearchResult {
        status: status_of(&ct),
        terms,
        clone_size: ct.len(),
    };
    if let [p] = res.terms.as_slice() {
        debug_assert!(verify_schema(alg, &Schema::Maltsev(p.clone()))?.is_none());
    }
    Ok(res)
}

/// Restriction of a quaternary table to `(x,x,y,y)`, indexed by `(x,y)`.
fn diagonal_restriction(n: usize, t: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            out.push(t[((x * n + x) * n + y) * n + y]);
        }
    }
    out
}

/// Searches the quaternary clone for `p, q` with `p(x,y,y,z) = x`,
/// `q(x,y,y,z) = z` and `p(x,x,y,y) = q(x,x,y,y)`.
///
/// Candidates for `p` and `q` are indexed by their restriction to
/// `(x,x,y,y)`. The pair returned is the first completed in discovery order:
/// when a new element arrives it is first tried as `p` against the earliest
/// matching `q`, then as `q` against the earliest matching `p`.
pub fn find_quaternary_pair(alg: &Algebra, budget: usize) -> Result<TermSearchResult> {
    nonempty(alg)?;
    let n = alg.size();
    let mut ps: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut qs: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut hit = None;
    let ct = CloneTable::generate_with(alg, 4, budget, |t, i| {
        let at = |x: usize, y: usize, z: usize, u: usize| t[((x * n + y) * n + z) * n + u] as usize;
        let mut is_p = true;
        let mut is_q = true;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let v = at(x, y, y, z);
                    is_p &= v == x;
                    is_q &= v == z;
                }
            }
        }
        if !is_p && !is_q {
            return false;
        }
        let restr = diagonal_restriction(n, t);
        if is_p {
            ps.entry(restr.clone()).or_insert(i);
        }
        if is_q {
            qs.entry(restr.clone()).or_insert(i);
        }
        if is_p {
            if let Some(&q) = qs.get(&restr) {
                hit = Some((i, q));
                return true;
            }
        }
        if is_q {
            if let Some(&p) = ps.get(&restr) {
                hit = Some((p, i));
                return true;
            }
        }
        false
    })?;
    let terms = hit
        .map(|(p, q)| vec![ct.witness(p), ct.witness(q)])
        .unwrap_or_default();
    let res = TermSearchResult {
        status: status_of(&ct),
        terms,
        clone_size: ct.len(),
    };
    if let [p, q] = res.terms.as_slice() {
        debug_assert!(verify_schema(alg, &Schema::Quaternary(p.clone(), q.clone()))?.is_none());
    }
    Ok(res)
}

/// The Goursat pair obtained from a Mal'tsev term `m`: `p(x,y,z,u) = m(x,y,z)`
/// and `q(x,y,z,u) = u`.
pub fn quaternary_from_maltsev(m: &Term) -> (Term, Term) {
    (m.clone(), Term::Var(3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::*;
    use crate::ualg::for_each_tuple;

    #[test]
    fn z2_has_minority_term() {
        let z2 = cyclic_group(2).unwrap();
        let res = find_maltsev_term(&z2, 10_000).unwrap();
        assert_eq!(res.status, SearchStatus::Found);
        let mut expected = Vec::new();
        for_each_tuple(2, 3, |v| expected.push((v[0] + 2 - v[1] + v[2]) % 2));
        assert_eq!(res.terms[0].table(&z2, 3).unwrap(), expected);
    }

    #[test]
    fn semilattice_has_no_maltsev_term() {
        let s = meet_semilattice_chain(2).unwrap();
        let res = find_maltsev_term(&s, 10_000).unwrap();
        assert_eq!(res.status, SearchStatus::AbsentConfirmed);
        assert_eq!(res.clone_size, 7);
        assert!(res.terms.is_empty());
    }

    #[test]
    fn implication_algebra_has_no_maltsev_term() {
        let a = implication_algebra_boolean(1).unwrap();
        let res = find_maltsev_term(&a, 10_000).unwrap();
        assert_eq!(res.status, SearchStatus::AbsentConfirmed);
        // ternary Boolean functions bounded below by a variable
        assert_eq!(res.clone_size, 38);
    }

    #[test]
    fn implication_algebra_has_goursat_pair() {
        let a = implication_algebra_boolean(1).unwrap();
        let res = find_quaternary_pair(&a, 100_000).unwrap();
        assert_eq!(res.status, SearchStatus::Found);
        let schema = Schema::Quaternary(res.terms[0].clone(), res.terms[1].clone());
        assert_eq!(verify_schema(&a, &schema).unwrap(), None);
    }

    #[test]
    fn z2_goursat_pair_and_construction() {
        let z2 = cyclic_group(2).unwrap();
        assert!(find_quaternary_pair(&z2, 100_000).unwrap().found());
        let m = find_maltsev_term(&z2, 10_000).unwrap().terms[0].clone();
        let (p, q) = quaternary_from_maltsev(&m);
        assert_eq!(verify_schema(&z2, &Schema::Quaternary(p, q)).unwrap(), None);
    }

    #[test]
    fn semilattice_has_no_goursat_pair() {
        let s = meet_semilattice_chain(2).unwrap();
        assert_eq!(
            find_quaternary_pair(&s, 100_000).unwrap().status,
            SearchStatus::AbsentConfirmed
        );
    }

    #[test]
    fn budget_exhaustion_is_inconclusive() {
        let z3 = cyclic_group(3).unwrap();
        let res = find_quaternary_pair(&z3, 5).unwrap();
        assert_eq!(res.status, SearchStatus::BudgetExceeded);
    }

    #[test]
    fn search_is_deterministic() {
        let q = quasigroup_from_latin_square(&LatinSquare::cyclic(3)).unwrap();
        let a = find_maltsev_term(&q, 100_000).unwrap();
        let b = find_maltsev_term(&q, 100_000).unwrap();
        assert!(a.found());
        assert_eq!(a, b);
    }

    #[test]
    fn empty_carrier_rejected() {
        assert!(find_maltsev_term(&Algebra::set(0), 100).is_err());
    }
}
