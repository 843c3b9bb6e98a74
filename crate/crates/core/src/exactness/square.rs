use alloc::format;

use crate::error::{Error, Result};
use crate::finset::{FinFn, Partition, Tabulation};

/// A commutative square of split epimorphisms
///
/// ```text
///   C --c--> A
///  g| ^t   f| ^s
///   v |     v |
///   D --d--> B
/// ```
///
/// with `g∘t = 1_D`, `f∘s = 1_B`, `d∘g = f∘c`, `c∘t = s∘d`, and `c`, `d`
/// surjective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSquare {
    c: FinFn,
    d: FinFn,
    g: FinFn,
    f: FinFn,
    t: FinFn,
    s: FinFn,
}

/// A failed pushout check: a pair in the target missed by the comparison map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PushoutCheck {
    pub missing: Option<(usize, usize)>,
}

impl PushoutCheck {
    pub fn holds(&self) -> bool {
        self.missing.is_none()
    }
}

fn shape(context: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::CarrierMismatch {
            context,
            expected,
            found,
        });
    }
    Ok(())
}

fn agree(name: &str, lhs: &FinFn, rhs: &FinFn) -> Result<()> {
    match (0..lhs.dom()).find(|&x| lhs.apply(x) != rhs.apply(x)) {
        Some(x) => Err(Error::Rejected(format!("{name} fails at {x}"))),
        None => Ok(()),
    }
}

fn then(first: &FinFn, second: &FinFn) -> FinFn {
    first.then(second).expect("shapes checked")
}

impl SplitSquare {
    pub fn new(c: FinFn, d: FinFn, g: FinFn, f: FinFn, t: FinFn, s: FinFn) -> Result<Self> {
        shape("g domain", c.dom(), g.dom())?;
        shape("g codomain", d.dom(), g.cod())?;
        shape("f domain", c.cod(), f.dom())?;
        shape("f codomain", d.cod(), f.cod())?;
        shape("t domain", d.dom(), t.dom())?;
        shape("t codomain", c.dom(), t.cod())?;
        shape("s domain", d.cod(), s.dom())?;
        shape("s codomain", c.cod(), s.cod())?;
        agree("g∘t = 1", &then(&t, &g), &FinFn::identity(d.dom()))?;
        agree("f∘s = 1", &then(&s, &f), &FinFn::identity(d.cod()))?;
        agree("d∘g = f∘c", &then(&g, &d), &then(&c, &f))?;
        agree("c∘t = s∘d", &then(&t, &c), &then(&d, &s))?;
        for (name, m) in [("c", &c), ("d", &d)] {
            if let Some(&y) = m.missed().first() {
                return Err(Error::Rejected(format!(
                    "{name} is not surjective: {y} has no preimage"
                )));
            }
        }
        Ok(SplitSquare { c, d, g, f, t, s })
    }

    pub fn c(&self) -> &FinFn {
        &self.c
    }
    pub fn d(&self) -> &FinFn {
        &self.d
    }
    pub fn g(&self) -> &FinFn {
        &self.g
    }
    pub fn f(&self) -> &FinFn {
        &self.f
    }
    pub fn t(&self) -> &FinFn {
        &self.t
    }
    pub fn s(&self) -> &FinFn {
        &self.s
    }

    /// The square over a relation: for an equivalence `r` on `X` and a
    /// quotient `k` of `X`, with `q: X → X/k`,
    ///
    /// ```text
    ///   R --q×q--> q(R)
    ///  r1| ^δ     p1| ^δ
    ///   X ---q---> X/k
    /// ```
    ///
    /// where `R` and `q(R)` are tabulated pair sets and `δ` the diagonals.
    pub fn from_relation(r: &Partition, k: &Partition) -> Result<Self> {
        shape("relation and quotient", r.len(), k.len())?;
        let q = FinFn::quotient(k);
        let rr = r.to_rel().tabulate();
        let img = q.direct_image(&r.to_rel())?.tabulate();
        let image_index =
            |x: usize, y: usize| img.index_of((q.apply(x), q.apply(y))).expect("image pair");
        let c = FinFn::new(
            img.size(),
            rr.pairs.iter().map(|&(x, y)| image_index(x, y)).collect(),
        )?;
        let diag = |tab: &Tabulation, n: usize| {
            FinFn::new(
                tab.size(),
                (0..n)
                    .map(|x| tab.index_of((x, x)).expect("reflexive"))
                    .collect(),
            )
        };
        let t = diag(&rr, r.len())?;
        let s = diag(&img, q.cod())?;
        SplitSquare::new(c, q, rr.p1, img.p1, t, s)
    }
}

/// Whether `(g, c): C → D ×_B A` is surjective onto the pullback of `d` and
/// `f`; reports the first missing pair `(x, a)`.
pub fn check_regular_pushout_comparison(sq: &SplitSquare) -> PushoutCheck {
    let pb = FinFn::pullback(&sq.d, &sq.f).expect("shapes checked");
    let mut hit = alloc::vec![false; pb.size()];
    for e in 0..sq.c.dom() {
        let i = pb
            .index_of((sq.g.apply(e), sq.c.apply(e)))
            .expect("square commutes");
        hit[i] = true;
    }
    PushoutCheck {
        missing: hit.iter().position(|h| !h).map(|i| pb.pairs[i]),
    }
}

/// Whether the induced map `Eq(g) → Eq(f)`, `(x, y) ↦ (c x, c y)`, is
/// surjective; reports the first pair of `Eq(f)` it misses.
pub fn check_goursat_pushout(sq: &SplitSquare) -> PushoutCheck {
    let eqf = sq.f.kernel_pair_tabulated();
    let eqg = sq.g.kernel_pair_tabulated();
    let mut hit = alloc::vec![false; eqf.size()];
    for &(x, y) in &eqg.pairs {
        let i = eqf
            .index_of((sq.c.apply(x), sq.c.apply(y)))
            .expect("square commutes");
        hit[i] = true;
    }
    PushoutCheck {
        missing: hit.iter().position(|h| !h).map(|i| eqf.pairs[i]),
    }
}
