use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::finset::{FinFn, Tabulation};

/// Why a comparison map into a pullback is not a bijection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComparisonDefect {
    /// Two elements with the same image.
    NotInjective(usize, usize),
    /// A pair of the pullback outside the image.
    NotSurjective((usize, usize)),
}

/// Checks the map `e ↦ (left(e), right(e))` into `target` for bijectivity.
pub(crate) fn comparison_defect(
    left: &FinFn,
    right: &FinFn,
    target: &Tabulation,
) -> Option<ComparisonDefect> {
    let mut hit: Vec<Option<usize>> = alloc::vec![None; target.size()];
    for e in 0..left.dom() {
        let pair = (left.apply(e), right.apply(e));
        // the caller guarantees commutativity, so every pair lands in target
        let i = target
            .index_of(pair)
            .expect("comparison lands in the pullback");
        if let Some(prev) = hit[i] {
            return Some(ComparisonDefect::NotInjective(prev, e));
        }
        hit[i] = Some(e);
    }
    hit.iter()
        .position(Option::is_none)
        .map(|i| ComparisonDefect::NotSurjective(target.pairs[i]))
}

/// Outcome of a Barr–Kock instance whose premises hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarrKockVerdict {
    /// Defect of the comparison `A → X ×_Y B`, `a ↦ (f a, u a)`; `None` when
    /// the right square is a pullback.
    pub conclusion: Option<ComparisonDefect>,
    /// Whether the square built on the second projections is a pullback too.
    pub second_square_pullback: bool,
}

impl BarrKockVerdict {
    pub fn holds(&self) -> bool {
        self.conclusion.is_none()
    }
}

fn same_shape(context: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::CarrierMismatch {
            context,
            expected,
            found,
        });
    }
    Ok(())
}

fn reject(what: &str) -> Error {
    Error::Rejected(what.into())
}

/// The diagram
///
/// ```text
/// Eq(f) ⇉ A --f--> X
///   v     u        w
/// Eq(g) ⇉ B --g--> Y
/// ```
///
/// with kernel pairs taken in their canonical tabulated form. Premises, all
/// verified: `f` surjective, every square commutes, and the square on the
/// first projections is a pullback. Premise failures are returned as
/// [`Error::Rejected`]; a verdict is only produced for valid premises.
pub fn check_barr_kock(
    v: &FinFn,
    u: &FinFn,
    w: &FinFn,
    f: &FinFn,
    g: &FinFn,
) -> Result<BarrKockVerdict> {
    let eqf = f.kernel_pair_tabulated();
    let eqg = g.kernel_pair_tabulated();
    same_shape("u domain", f.dom(), u.dom())?;
    same_shape("u codomain", g.dom(), u.cod())?;
    same_shape("w domain", f.cod(), w.dom())?;
    same_shape("w codomain", g.cod(), w.cod())?;
    same_shape("v domain", eqf.size(), v.dom())?;
    same_shape("v codomain", eqg.size(), v.cod())?;

    if let Some(&x) = f.missed().first() {
        return Err(reject(&format!("f is not surjective: {x} has no preimage")));
    }
    if let Some(a) = (0..f.dom()).find(|&a| w.apply(f.apply(a)) != g.apply(u.apply(a))) {
        return Err(reject(&format!("w∘f and g∘u differ at {a}")));
    }
    for (i, (pf, pg)) in [(&eqf.p1, &eqg.p1), (&eqf.p2, &eqg.p2)]
        .into_iter()
        .enumerate()
    {
        if let Some(e) = (0..v.dom()).find(|&e| u.apply(pf.apply(e)) != pg.apply(v.apply(e))) {
            return Err(reject(&format!(
                "u∘p{} and p{}∘v differ at {e}",
                i + 1,
                i + 1
            )));
        }
    }
    let square = |pf: &FinFn, pg: &FinFn| -> Result<Option<ComparisonDefect>> {
        let pb = FinFn::pullback(u, pg)?;
        Ok(comparison_defect(pf, v, &pb))
    };
    if let Some(d) = square(&eqf.p1, &eqg.p1)? {
        return Err(reject(&format!(
            "the square on first projections is not a pullback: {d:?}"
        )));
    }
    let second_square_pullback = square(&eqf.p2, &eqg.p2)?.is_none();

    let target = FinFn::pullback(w, g)?;
    Ok(BarrKockVerdict {
        conclusion: comparison_defect(f, u, &target),
        second_square_pullback,
    })
}

/// The map `Eq(f) → Eq(g)` induced by `u`, when `g∘u` factors through `f`.
pub fn induced_kernel_map(u: &FinFn, f: &FinFn, g: &FinFn) -> Result<FinFn> {
    let eqf = f.kernel_pair_tabulated();
    let eqg = g.kernel_pair_tabulated();
    let mut map = Vec::with_capacity(eqf.size());
    for &(a1, a2) in &eqf.pairs {
        match eqg.index_of((u.apply(a1), u.apply(a2))) {
            Some(i) => map.push(i),
            None => return Err(reject("u does not map Eq(f) into Eq(g)")),
        }
    }
    FinFn::new(eqg.size(), map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn run(u: &FinFn, w: &FinFn, f: &FinFn, g: &FinFn) -> Result<BarrKockVerdict> {
        let v = induced_kernel_map(u, f, g)?;
        check_barr_kock(&v, u, w, f, g)
    }

    #[test]
    fn identities() {
        let f = FinFn::new(2, vec![0, 1, 1]).unwrap();
        let verdict = run(&FinFn::identity(3), &FinFn::identity(2), &f, &f).unwrap();
        assert!(verdict.holds());
        assert!(verdict.second_square_pullback);
    }

    #[test]
    fn parity_instance() {
        let f = FinFn::from_fn(4, 2, |x| x % 2).unwrap();
        // with u = f and g = 1 the fibres of f collapse, so the left square is
        // not a pullback
        assert!(matches!(
            run(&f, &FinFn::identity(2), &f, &FinFn::identity(2)),
            Err(Error::Rejected(_))
        ));
        let shift = FinFn::from_fn(4, 4, |x| (x + 1) % 4).unwrap();
        let swap = FinFn::from_fn(2, 2, |x| 1 - x).unwrap();
        let verdict = run(&shift, &swap, &f, &f).unwrap();
        assert!(verdict.holds());
    }

    #[test]
    fn premises_rejected() {
        let f = FinFn::new(3, vec![0, 1]).unwrap();
        let id2 = FinFn::identity(2);
        let v = induced_kernel_map(&id2, &f, &f).unwrap();
        assert!(matches!(
            check_barr_kock(&v, &id2, &FinFn::identity(3), &f, &f),
            Err(Error::Rejected(_))
        ));

        // left square not a pullback: Eq(f) is too small over Eq(g)
        let f = FinFn::identity(2);
        let g = FinFn::new(1, vec![0, 0]).unwrap();
        let u = FinFn::identity(2);
        let w = FinFn::new(1, vec![0, 0]).unwrap();
        assert!(matches!(run(&u, &w, &f, &g), Err(Error::Rejected(_))));
    }

    #[test]
    fn comparison_defects() {
        let target = FinFn::pullback(&FinFn::identity(2), &FinFn::identity(2)).unwrap();
        let collapse = FinFn::new(2, vec![0, 0]).unwrap();
        assert_eq!(
            comparison_defect(&collapse, &collapse, &target),
            Some(ComparisonDefect::NotInjective(0, 1))
        );
        let one = FinFn::new(2, vec![1]).unwrap();
        assert_eq!(
            comparison_defect(&one, &one, &target),
            Some(ComparisonDefect::NotSurjective((0, 0)))
        );
    }
}
