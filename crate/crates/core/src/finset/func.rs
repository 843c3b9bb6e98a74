use alloc::vec;
use alloc::vec::Vec;

use super::{Rel, UnionFind};
use crate::error::{Error, Result};

/// A total function between finite carriers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinFn {
    cod: usize,
    map: Vec<usize>,
}

/// A set of pairs `(a, b)` drawn from `A × B`, kept in lexicographic order,
/// together with its two projections. Used for pullbacks and for kernel pairs
/// whenever the pairs must be elements of a carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tabulation {
    pub pairs: Vec<(usize, usize)>,
    pub p1: FinFn,
    pub p2: FinFn,
}

pub type Pullback = Tabulation;

impl Tabulation {
    /// `pairs` must be sorted and free of duplicates.
    pub(crate) fn new(left: usize, right: usize, pairs: Vec<(usize, usize)>) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0] < w[1]));
        let p1 = FinFn {
            cod: left,
            map: pairs.iter().map(|p| p.0).collect(),
        };
        let p2 = FinFn {
            cod: right,
            map: pairs.iter().map(|p| p.1).collect(),
        };
        Tabulation { pairs, p1, p2 }
    }

    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    pub fn index_of(&self, pair: (usize, usize)) -> Option<usize> {
        self.pairs.binary_search(&pair).ok()
    }

    /// The relation from `A` to `B` these pairs represent.
    pub fn to_rel(&self) -> Rel {
        Rel::from_pairs(self.p1.cod, self.p2.cod, self.pairs.iter().copied()).expect("in range")
    }
}

impl FinFn {
    pub fn new(cod: usize, map: Vec<usize>) -> Result<Self> {
        if let Some((index, &value)) = map.iter().enumerate().find(|(_, &v)| v >= cod) {
            return Err(Error::OutOfRange {
                index,
                value,
                bound: cod,
            });
        }
        Ok(FinFn { cod, map })
    }

    pub fn identity(n: usize) -> Self {
        FinFn {
            cod: n,
            map: (0..n).collect(),
        }
    }

    pub fn from_fn(dom: usize, cod: usize, f: impl Fn(usize) -> usize) -> Result<Self> {
        FinFn::new(cod, (0..dom).map(f).collect())
    }

    /// All `cod^dom` functions, in lexicographic order of their value lists.
    pub fn all(dom: usize, cod: usize) -> impl Iterator<Item = FinFn> {
        let total = if dom == 0 { 1 } else { cod.pow(dom as u32) };
        (0..total).map(move |mut code| {
            let mut map = vec![0; dom];
            for slot in map.iter_mut().rev() {
                *slot = code % cod;
                code /= cod;
            }
            FinFn { cod, map }
        })
    }

    pub fn dom(&self) -> usize {
        self.map.len()
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FinFn) -> Result<FinFn> {
        if self.cod != next.dom() {
            return Err(Error::CarrierMismatch {
                context: "function composite",
                expected: self.cod,
                found: next.dom(),
            });
        }
        Ok(FinFn {
            cod: next.cod,
            map: self.map.iter().map(|&y| next.map[y]).collect(),
        })
    }

    /// The graph of `self` as a relation from its domain to its codomain.
    pub fn graph(&self) -> Rel {
        Rel::from_pairs(self.dom(), self.cod, self.map.iter().copied().enumerate()).expect("total")
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.cod];
        self.map
            .iter()
            .all(|&y| !core::mem::replace(&mut hit[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom() == self.cod && self.is_injective()
    }

    /// Elements of the codomain that are not hit, ascending.
    pub fn missed(&self) -> Vec<usize> {
        let mut hit = vec![false; self.cod];
        for &y in &self.map {
            hit[y] = true;
        }
        (0..self.cod).filter(|&y| !hit[y]).collect()
    }

    /// `Eq(f) = {(x, y) | f(x) = f(y)}`.
    pub fn kernel_pair(&self) -> Rel {
        Rel::from_fn(self.dom(), self.dom(), |x, y| self.map[x] == self.map[y])
    }

    /// The kernel pair materialized as a carrier of pairs.
    pub fn kernel_pair_tabulated(&self) -> Tabulation {
        self.kernel_pair().tabulate()
    }

    /// Factors `self` as a surjection `q` onto its image followed by an
    /// injection `m`. Image elements are numbered by first occurrence.
    pub fn image_factorize(&self) -> (FinFn, FinFn) {
        let mut slot = vec![usize::MAX; self.cod];
        let mut image = Vec::new();
        let q_map = self
            .map
            .iter()
            .map(|&y| {
                if slot[y] == usize::MAX {
                    slot[y] = image.len();
                    image.push(y);
                }
                slot[y]
            })
            .collect();
        let q = FinFn {
            cod: image.len(),
            map: q_map,
        };
        let m = FinFn {
            cod: self.cod,
            map: image,
        };
        (q, m)
    }

    /// Preimages of each codomain element, ascending.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.cod];
        for (x, &y) in self.map.iter().enumerate() {
            out[y].push(x);
        }
        out
    }

    /// Pullback of `f: A → B` and `g: C → B`: the pairs `(a, c)` with
    /// `f(a) = g(c)` in lexicographic order, with both projections.
    pub fn pullback(f: &FinFn, g: &FinFn) -> Result<Pullback> {
        if f.cod != g.cod {
            return Err(Error::CarrierMismatch {
                context: "pullback",
                expected: f.cod,
                found: g.cod,
            });
        }
        let fibers = g.fibers();
        let pairs = f
            .map
            .iter()
            .enumerate()
            .flat_map(|(a, &b)| fibers[b].iter().map(move |&c| (a, c)))
            .collect();
        Ok(Tabulation::new(f.dom(), g.dom(), pairs))
    }

    /// Coequalizer of `u, v: T → A`: the quotient of `A` by the equivalence
    /// generated by `{(u(t), v(t))}`, blocks numbered by first occurrence.
    pub fn coequalizer(u: &FinFn, v: &FinFn) -> Result<FinFn> {
        if u.dom() != v.dom() {
            return Err(Error::CarrierMismatch {
                context: "coequalizer domains",
                expected: u.dom(),
                found: v.dom(),
            });
        }
        if u.cod != v.cod {
            return Err(Error::CarrierMismatch {
                context: "coequalizer codomains",
                expected: u.cod,
                found: v.cod,
            });
        }
        let mut uf = UnionFind::new(u.cod);
        for (&a, &b) in u.map.iter().zip(&v.map) {
            uf.union(a, b);
        }
        Ok(FinFn::quotient(&uf.partition()))
    }

    /// The canonical surjection onto the blocks of a partition.
    pub fn quotient(p: &super::Partition) -> FinFn {
        FinFn {
            cod: p.block_count(),
            map: p.labels().to_vec(),
        }
    }

    /// `f(R) = f ∘ R ∘ f°`: relates `f(x1)` to `f(x2)` whenever `x1 R x2`.
    pub fn direct_image(&self, r: &Rel) -> Result<Rel> {
        self.check_endo(r, self.dom(), "direct image")?;
        let mut out = Rel::empty(self.cod, self.cod);
        for (x1, x2) in r.pairs() {
            out.insert(self.map[x1], self.map[x2]);
        }
        Ok(out)
    }

    /// `f⁻¹(S)`: relates `x1` to `x2` whenever `f(x1) S f(x2)`.
    pub fn inverse_image(&self, s: &Rel) -> Result<Rel> {
        self.check_endo(s, self.cod, "inverse image")?;
        Ok(Rel::from_fn(self.dom(), self.dom(), |x1, x2| {
            s.contains(self.map[x1], self.map[x2])
        }))
    }

    fn check_endo(&self, r: &Rel, n: usize, context: &'static str) -> Result<()> {
        for found in [r.dom(), r.cod()] {
            if found != n {
                return Err(Error::CarrierMismatch {
                    context,
                    expected: n,
                    found,
                });
            }
        }
        Ok(())
    }
}
