use crate::error::{Error, Result};
use crate::finset::{FinFn, Rel};

/// A fork `R ⇉ X → Y`: legs `r1, r2: R → X` and `f: X → Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fork {
    pub r1: FinFn,
    pub r2: FinFn,
    pub f: FinFn,
}

/// The first clause of exactness that fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForkDefect {
    /// Two elements of `R` with the same legs.
    LegsNotJointlyInjective(usize, usize),
    /// A pair of the kernel pair of `f` that the legs miss.
    KernelPairMissing(usize, usize),
    /// A pair hit by the legs that `f` separates.
    KernelPairExtra(usize, usize),
    /// An element of `Y` outside the image of `f`.
    NotSurjective(usize),
}

impl ForkDefect {
    pub fn clause(&self) -> &'static str {
        match self {
            ForkDefect::LegsNotJointlyInjective(..) => "relation",
            ForkDefect::KernelPairMissing(..) | ForkDefect::KernelPairExtra(..) => "kernel-pair",
            ForkDefect::NotSurjective(_) => "coequalizer",
        }
    }
}

impl Fork {
    /// The fork given by the tabulation of an endo-relation on `f.dom()`.
    pub fn new(r: &Rel, f: FinFn) -> Result<Self> {
        if !r.is_endo() || r.dom() != f.dom() {
            return Err(Error::CarrierMismatch {
                context: "fork relation",
                expected: f.dom(),
                found: r.dom(),
            });
        }
        let tab = r.tabulate();
        Ok(Fork {
            r1: tab.p1,
            r2: tab.p2,
            f,
        })
    }

    /// Checks shapes only; joint injectivity of the legs is part of
    /// [`Fork::defect`].
    pub fn from_legs(r1: FinFn, r2: FinFn, f: FinFn) -> Result<Self> {
        if r1.dom() != r2.dom() {
            return Err(Error::CarrierMismatch {
                context: "fork legs",
                expected: r1.dom(),
                found: r2.dom(),
            });
        }
        for leg in [&r1, &r2] {
            if leg.cod() != f.dom() {
                return Err(Error::CarrierMismatch {
                    context: "fork legs",
                    expected: f.dom(),
                    found: leg.cod(),
                });
            }
        }
        Ok(Fork { r1, r2, f })
    }

    /// The relation `{(r1 e, r2 e)}`.
    pub fn relation(&self) -> Rel {
        let n = self.f.dom();
        let mut r = Rel::empty(n, n);
        for e in 0..self.r1.dom() {
            r.insert(self.r1.apply(e), self.r2.apply(e));
        }
        r
    }

    /// `None` when the legs form the kernel pair of `f` and `f` is their
    /// coequalizer. In finite sets the latter amounts to `f` being surjective
    /// once the former holds.
    pub fn defect(&self) -> Option<ForkDefect> {
        let n = self.f.dom();
        let mut owner = alloc::vec![usize::MAX; n * n];
        for e in 0..self.r1.dom() {
            let slot = &mut owner[self.r1.apply(e) * n + self.r2.apply(e)];
            if *slot != usize::MAX {
                return Some(ForkDefect::LegsNotJointlyInjective(*slot, e));
            }
            *slot = e;
        }
        for x in 0..n {
            for y in 0..n {
                let hit = owner[x * n + y] != usize::MAX;
                match (hit, self.f.apply(x) == self.f.apply(y)) {
                    (false, true) => return Some(ForkDefect::KernelPairMissing(x, y)),
                    (true, false) => return Some(ForkDefect::KernelPairExtra(x, y)),
                    _ => {}
                }
            }
        }
        self.f
            .missed()
            .first()
            .map(|&y| ForkDefect::NotSurjective(y))
    }

    pub fn is_exact(&self) -> bool {
        self.defect().is_none()
    }
}

pub fn is_exact_fork(fork: &Fork) -> bool {
    fork.is_exact()
}
