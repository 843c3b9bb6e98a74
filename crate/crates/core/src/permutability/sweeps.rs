//! Sweeps over relations in an algebra: subalgebras of products and squares,
//! and direct images of congruences along quotient maps.
//!
//! Verdicts here concern the concrete algebra, not the variety it generates.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::finset::{FinFn, Rel};
use crate::ualg::{subalgebras, Algebra, Congruence, SubalgebraSearch};

/// A relation that failed a sweep. `present` lists pairs of the relation that
/// force `missing`, which the relation lacks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelFailure {
    pub relation: Rel,
    pub present: Vec<(usize, usize)>,
    pub missing: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    /// Relations examined.
    pub checked: usize,
    /// Relations that failed.
    pub failures: usize,
    /// Whether every relevant subalgebra was examined.
    pub exhaustive: bool,
    pub max_generators: Option<usize>,
    /// The first failure in enumeration order.
    pub witness: Option<RelFailure>,
}

impl SweepReport {
    pub fn clean(&self) -> bool {
        self.failures == 0
    }
}

fn sub_to_rel(sub: &[usize], dom: usize, cod: usize) -> Rel {
    let mut r = Rel::empty(dom, cod);
    for &e in sub {
        r.insert(e / cod, e % cod);
    }
    r
}

/// Pairs `(x,y), (x',y), (x',y')` in `r` with `(x,y')` missing.
pub fn difunctional_failure(r: &Rel) -> Option<RelFailure> {
    for (x, y) in r.pairs() {
        for x2 in 0..r.dom() {
            if !r.contains(x2, y) {
                continue;
            }
            for y2 in r.image_of(x2) {
                if !r.contains(x, y2) {
                    return Some(RelFailure {
                        relation: r.clone(),
                        present: vec![(x, y), (x2, y), (x2, y2)],
                        missing: (x, y2),
                    });
                }
            }
        }
    }
    None
}

/// A reflexivity, symmetry or transitivity failure of an endo-relation.
pub fn equivalence_failure(r: &Rel) -> Option<RelFailure> {
    let fail = |present, missing| {
        Some(RelFailure {
            relation: r.clone(),
            present,
            missing,
        })
    };
    if let Some(x) = (0..r.dom()).find(|&x| !r.contains(x, x)) {
        return fail(vec![], (x, x));
    }
    if let Some((x, y)) = r.pairs().find(|&(x, y)| !r.contains(y, x)) {
        return fail(vec![(x, y)], (y, x));
    }
    for (x, y) in r.pairs() {
        if let Some(z) = r.image_of(y).find(|&z| !r.contains(x, z)) {
            return fail(vec![(x, y), (y, z)], (x, z));
        }
    }
    None
}

fn sweep(
    alg: &Algebra,
    base: &[usize],
    dom: usize,
    cod: usize,
    search: SubalgebraSearch,
    test: impl Fn(&Rel) -> Option<RelFailure>,
) -> Result<SweepReport> {
    let subs = subalgebras(alg, base, search)?;
    let mut failures = 0;
    let mut witness = None;
    for sub in &subs {
        if let Some(f) = test(&sub_to_rel(sub, dom, cod)) {
            failures += 1;
            witness.get_or_insert(f);
        }
    }
    Ok(SweepReport {
        checked: subs.len(),
        failures,
        exhaustive: search.is_exhaustive(),
        max_generators: search.max_generators,
        witness,
    })
}

/// Checks that every subalgebra of `a × b`, read as a relation from `a` to
/// `b`, is difunctional.
pub fn difunctionality_sweep(
    a: &Algebra,
    b: &Algebra,
    search: SubalgebraSearch,
) -> Result<SweepReport> {
    let prod = a.product(b)?;
    sweep(&prod, &[], a.size(), b.size(), search, difunctional_failure)
}

/// Checks that every reflexive subalgebra of `a × a` is an equivalence
/// relation.
pub fn reflexive_subalgebra_sweep(a: &Algebra, search: SubalgebraSearch) -> Result<SweepReport> {
    let n = a.size();
    let prod = a.product(a)?;
    let diagonal: Vec<usize> = (0..n).map(|x| x * n + x).collect();
    sweep(&prod, &diagonal, n, n, search, equivalence_failure)
}

/// The direct image of a congruence along a surjective homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageCheck {
    pub image: Rel,
    /// `(x, y, z)` with `x ~ y`, `y ~ z` and not `x ~ z` in the image.
    pub witness: Option<(usize, usize, usize)>,
}

impl ImageCheck {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Whether `f(R)` is an equivalence relation on `b`. Reflexivity and symmetry
/// follow from surjectivity, so only transitivity can fail.
pub fn goursat_image_check(
    a: &Algebra,
    b: &Algebra,
    f: &FinFn,
    r: &Congruence,
) -> Result<ImageCheck> {
    if !f.is_surjective() {
        return Err(Error::Precondition(
            "image check needs a surjective map".into(),
        ));
    }
    if let Some(w) = a.homomorphism_counterexample(b, f)? {
        return Err(Error::NotAHomomorphism { op: w.op });
    }
    if !r.is_valid_on(a) {
        return Err(Error::Precondition(
            "relation is not a congruence of the source".into(),
        ));
    }
    let image = f.direct_image(&r.to_rel())?;
    let witness = image.pairs().find_map(|(x, y)| {
        image
            .image_of(y)
            .find(|&z| !image.contains(x, z))
            .map(|z| (x, y, z))
    });
    Ok(ImageCheck { image, witness })
}

/// A failing instance of [`goursat_image_sweep`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageFailure {
    /// Kernel of the quotient map.
    pub kernel: Congruence,
    pub relation: Congruence,
    pub triple: (usize, usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageSweepReport {
    pub checked: usize,
    pub failures: usize,
    pub witness: Option<ImageFailure>,
}

impl ImageSweepReport {
    pub fn clean(&self) -> bool {
        self.failures == 0
    }
}

/// Runs [`goursat_image_check`] for every quotient map `a → a/K` and every
/// congruence `R`, both in canonical congruence order. Every surjective
/// homomorphism out of `a` is such a quotient up to isomorphism.
pub fn goursat_image_sweep(a: &Algebra, bound: usize) -> Result<ImageSweepReport> {
    let all = Congruence::all(a, bound)?;
    let mut rep = ImageSweepReport {
        checked: 0,
        failures: 0,
        witness: None,
    };
    for k in &all {
        let q = a.quotient(k.partition())?;
        let f = FinFn::quotient(k.partition());
        for r in &all {
            rep.checked += 1;
            if let Some(triple) = goursat_image_check(a, &q, &f, r)?.witness {
                rep.failures += 1;
                rep.witness.get_or_insert(ImageFailure {
                    kernel: k.clone(),
                    relation: r.clone(),
                    triple,
                });
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{cyclic_group, implication_algebra_boolean};
    use crate::finset::Partition;

    fn le2() -> Rel {
        Rel::from_pairs(2, 2, [(0, 0), (0, 1), (1, 1)]).unwrap()
    }

    #[test]
    fn z2_product_is_difunctional() {
        let z2 = cyclic_group(2).unwrap();
        let rep = difunctionality_sweep(&z2, &z2, SubalgebraSearch::EXHAUSTIVE).unwrap();
        assert!(rep.clean());
        assert!(rep.exhaustive);
        // {0}, diagonal, anti-diagonal... subgroups of Z2 x Z2
        assert_eq!(rep.checked, 5);
    }

    #[test]
    fn order_on_two_element_set() {
        let set = Algebra::set(2);
        let rep = difunctionality_sweep(&set, &set, SubalgebraSearch::EXHAUSTIVE).unwrap();
        assert!(!rep.clean());
        let w = difunctional_failure(&le2()).unwrap();
        assert_eq!(w.missing, (1, 0));
        assert!(rep.witness.unwrap().relation.len() == 3);

        let rep = reflexive_subalgebra_sweep(&set, SubalgebraSearch::EXHAUSTIVE).unwrap();
        assert_eq!(rep.checked, 4);
        assert_eq!(rep.failures, 2);
        let w = rep.witness.unwrap();
        assert_eq!(w.relation, le2());
        assert_eq!((w.present, w.missing), (vec![(0, 1)], (1, 0)));
    }

    #[test]
    fn z3_reflexive_relations_are_equivalences() {
        let z3 = cyclic_group(3).unwrap();
        let rep = reflexive_subalgebra_sweep(&z3, SubalgebraSearch::EXHAUSTIVE).unwrap();
        assert!(rep.clean());
        assert_eq!(rep.checked, 2);
    }

    #[test]
    fn one_element_algebra() {
        let one = cyclic_group(1).unwrap();
        let rep = reflexive_subalgebra_sweep(&one, SubalgebraSearch::EXHAUSTIVE).unwrap();
        assert_eq!((rep.checked, rep.failures), (1, 0));
    }

    #[test]
    fn image_of_kernel_is_diagonal() {
        let z4 = cyclic_group(4).unwrap();
        let k = Congruence::generated(&z4, &[(0, 2)]).unwrap();
        let q = z4.quotient(k.partition()).unwrap();
        let f = FinFn::quotient(k.partition());
        let chk = goursat_image_check(&z4, &q, &f, &k).unwrap();
        assert!(chk.holds());
        assert_eq!(chk.image, Rel::diagonal(2));
    }

    #[test]
    fn image_not_transitive_on_sets() {
        let a = Algebra::set(4);
        let b = Algebra::set(3);
        let f = FinFn::new(3, vec![0, 1, 1, 2]).unwrap();
        let r = Congruence::new(&a, Partition::from_labels(&[0, 0, 1, 1])).unwrap();
        assert_eq!(
            goursat_image_check(&a, &b, &f, &r).unwrap().witness,
            Some((0, 1, 2))
        );
        assert!(!goursat_image_sweep(&a, 8).unwrap().clean());
    }

    #[test]
    fn implication_images_are_equivalences() {
        let a = implication_algebra_boolean(2).unwrap();
        let rep = goursat_image_sweep(&a, 8).unwrap();
        assert!(rep.clean());
        assert!(rep.checked > 1);
    }

    #[test]
    fn image_check_preconditions() {
        let a = Algebra::set(2);
        let f = FinFn::new(3, vec![0, 1]).unwrap();
        let r = Congruence::diagonal(&a);
        assert!(goursat_image_check(&a, &Algebra::set(3), &f, &r).is_err());
        let z2 = cyclic_group(2).unwrap();
        let swap = FinFn::new(2, vec![1, 0]).unwrap();
        assert!(matches!(
            goursat_image_check(&z2, &z2, &swap, &Congruence::diagonal(&z2)),
            Err(Error::NotAHomomorphism { .. })
        ));
    }
}
