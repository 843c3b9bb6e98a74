use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::UnionFind;
use crate::error::{Error, Result};

const WORD: usize = 64;

/// A binary relation from a carrier of size `dom` to one of size `cod`,
/// stored as `dom` rows of `cod`-bit sets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rel {
    dom: usize,
    cod: usize,
    stride: usize,
    words: Vec<u64>,
}

/// Extensional properties of a relation.
///
/// `reflexive`, `symmetric`, `transitive` and `equivalence` are only defined
/// for relations on a single carrier and are `None` otherwise. Relations on the
/// empty carrier satisfy every predicate vacuously.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelFlags {
    pub reflexive: Option<bool>,
    pub symmetric: Option<bool>,
    pub transitive: Option<bool>,
    pub difunctional: bool,
    pub equivalence: Option<bool>,
}

impl Rel {
    pub fn empty(dom: usize, cod: usize) -> Self {
        let stride = cod.div_ceil(WORD);
        Rel {
            dom,
            cod,
            stride,
            words: vec![0; dom * stride],
        }
    }

    pub fn full(dom: usize, cod: usize) -> Self {
        Rel::from_fn(dom, cod, |_, _| true)
    }

    /// The equality relation on a carrier of size `n`.
    pub fn diagonal(n: usize) -> Self {
        Rel::from_fn(n, n, |x, y| x == y)
    }

    pub fn from_fn(dom: usize, cod: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut r = Rel::empty(dom, cod);
        for x in 0..dom {
            for y in 0..cod {
                if f(x, y) {
                    r.insert(x, y);
                }
            }
        }
        r
    }

    pub fn from_pairs(
        dom: usize,
        cod: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut r = Rel::empty(dom, cod);
        for (i, (x, y)) in pairs.into_iter().enumerate() {
            if x >= dom {
                return Err(Error::OutOfRange {
                    index: i,
                    value: x,
                    bound: dom,
                });
            }
            if y >= cod {
                return Err(Error::OutOfRange {
                    index: i,
                    value: y,
                    bound: cod,
                });
            }
            r.insert(x, y);
        }
        Ok(r)
    }

    /// Every relation between carriers of the given sizes, in bit order.
    /// Only sensible for `dom * cod` up to about 20.
    pub fn all(dom: usize, cod: usize) -> impl Iterator<Item = Rel> {
        let cells = dom * cod;
        assert!(cells < 32, "too many relations to enumerate");
        (0u32..(1 << cells))
            .map(move |mask| Rel::from_fn(dom, cod, |x, y| mask >> (x * cod + y) & 1 == 1))
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn is_endo(&self) -> bool {
        self.dom == self.cod
    }

    #[inline]
    pub fn contains(&self, x: usize, y: usize) -> bool {
        debug_assert!(x < self.dom && y < self.cod);
        self.words[x * self.stride + y / WORD] >> (y % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, x: usize, y: usize) {
        assert!(x < self.dom && y < self.cod, "pair ({x},{y}) out of range");
        self.words[x * self.stride + y / WORD] |= 1 << (y % WORD);
    }

    pub fn remove(&mut self, x: usize, y: usize) {
        assert!(x < self.dom && y < self.cod, "pair ({x},{y}) out of range");
        self.words[x * self.stride + y / WORD] &= !(1 << (y % WORD));
    }

    fn row(&self, x: usize) -> &[u64] {
        &self.words[x * self.stride..(x + 1) * self.stride]
    }

    /// Elements related to `x`, ascending.
    pub fn image_of(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        let cod = self.cod;
        self.row(x).iter().enumerate().flat_map(move |(w, &bits)| {
            (0..WORD)
                .filter(move |b| bits >> b & 1 == 1)
                .map(move |b| w * WORD + b)
                .filter(move |&y| y < cod)
        })
    }

    /// All pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.dom).flat_map(move |x| self.image_of(x).map(move |y| (x, y)))
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn same_shape(&self, other: &Rel, context: &'static str) -> Result<()> {
        if self.dom != other.dom {
            return Err(Error::CarrierMismatch {
                context,
                expected: self.dom,
                found: other.dom,
            });
        }
        if self.cod != other.cod {
            return Err(Error::CarrierMismatch {
                context,
                expected: self.cod,
                found: other.cod,
            });
        }
        Ok(())
    }

    pub fn is_subset(&self, other: &Rel) -> bool {
        self.dom == other.dom
            && self.cod == other.cod
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &Rel) -> Result<Rel> {
        self.same_shape(other, "union")?;
        let mut r = self.clone();
        r.words
            .iter_mut()
            .zip(&other.words)
            .for_each(|(a, b)| *a |= b);
        Ok(r)
    }

    pub fn intersection(&self, other: &Rel) -> Result<Rel> {
        self.same_shape(other, "intersection")?;
        let mut r = self.clone();
        r.words
            .iter_mut()
            .zip(&other.words)
            .for_each(|(a, b)| *a &= b);
        Ok(r)
    }

    /// Relational composite in application order: `x (self;next) z` iff there
    /// is `y` with `x self y` and `y next z`. This is `next ∘ self`.
    pub fn compose(&self, next: &Rel) -> Result<Rel> {
        if self.cod != next.dom {
            return Err(Error::CarrierMismatch {
                context: "compose",
                expected: self.cod,
                found: next.dom,
            });
        }
        let mut out = Rel::empty(self.dom, next.cod);
        for x in 0..self.dom {
            let base = x * out.stride;
            for y in self.image_of(x) {
                for (o, w) in out.words[base..base + out.stride]
                    .iter_mut()
                    .zip(next.row(y))
                {
                    *o |= w;
                }
            }
        }
        Ok(out)
    }

    /// The relation with coordinates swapped.
    pub fn opposite(&self) -> Rel {
        let mut r = Rel::empty(self.cod, self.dom);
        for (x, y) in self.pairs() {
            r.insert(y, x);
        }
        r
    }

    pub fn is_reflexive(&self) -> bool {
        self.is_endo() && (0..self.dom).all(|x| self.contains(x, x))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_endo() && *self == self.opposite()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_endo() && self.pairs().all(|(x, y)| x == y || !self.contains(y, x))
    }

    pub fn is_transitive(&self) -> bool {
        self.is_endo() && self.compose(self).expect("endo").is_subset(self)
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_reflexive() && self.is_symmetric() && self.is_transitive()
    }

    /// `R ∘ R° ∘ R = R`.
    pub fn is_difunctional(&self) -> bool {
        let back = self.compose(&self.opposite()).expect("shapes agree");
        back.compose(self).expect("shapes agree") == *self
    }

    pub fn classify(&self) -> RelFlags {
        let endo = self.is_endo();
        let flag = |b: bool| endo.then_some(b);
        let reflexive = self.is_reflexive();
        let symmetric = self.is_symmetric();
        let transitive = self.is_transitive();
        RelFlags {
            reflexive: flag(reflexive),
            symmetric: flag(symmetric),
            transitive: flag(transitive),
            difunctional: self.is_difunctional(),
            equivalence: flag(reflexive && symmetric && transitive),
        }
    }

    /// Smallest equivalence relation containing `self`.
    pub fn equivalence_closure(&self) -> Result<Rel> {
        if !self.is_endo() {
            return Err(Error::CarrierMismatch {
                context: "equivalence closure",
                expected: self.dom,
                found: self.cod,
            });
        }
        let mut uf = UnionFind::new(self.dom);
        for (x, y) in self.pairs() {
            uf.union(x, y);
        }
        Ok(uf.partition().to_rel())
    }

    /// Tabulates the relation: the carrier of its pairs (in lexicographic
    /// order) with the two projections.
    pub fn tabulate(&self) -> super::Tabulation {
        super::Tabulation::new(self.dom, self.cod, self.pairs().collect())
    }
}

/// `compose(r, s)` is `s ∘ r`: `r` is applied first.
pub fn compose(r: &Rel, s: &Rel) -> Result<Rel> {
    r.compose(s)
}

/// The composite of `n` factors alternating between `r` and `s`, starting
/// with `r` applied first: `n = 1` gives `r`, `n = 2` gives `s ∘ r`, `n = 3`
/// gives `r ∘ s ∘ r`.
pub fn alternating_composite(r: &Rel, s: &Rel, n: usize) -> Result<Rel> {
    if n == 0 {
        return Err(Error::EmptyAlternation);
    }
    let mut acc = r.clone();
    for i in 1..n {
        acc = acc.compose(if i % 2 == 1 { s } else { r })?;
    }
    Ok(acc)
}

impl fmt::Debug for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rel[{}→{}]", self.dom, self.cod)?;
        f.debug_set().entries(self.pairs()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blocks_r() -> Rel {
        // {0,1},{2,3}
        Rel::from_fn(4, 4, |x, y| x / 2 == y / 2)
    }

    fn blocks_s() -> Rel {
        // {0},{1,2},{3}
        let class = [0, 1, 1, 2];
        Rel::from_fn(4, 4, |x, y| class[x] == class[y])
    }

    fn oracle_compose(r: &Rel, s: &Rel) -> Rel {
        Rel::from_fn(r.dom(), s.cod(), |x, z| {
            (0..r.cod()).any(|y| r.contains(x, y) && s.contains(y, z))
        })
    }

    #[test]
    fn single_chain() {
        let r = Rel::from_pairs(1, 2, [(0, 1)]).unwrap();
        let s = Rel::from_pairs(2, 1, [(1, 0)]).unwrap();
        assert_eq!(
            compose(&r, &s).unwrap(),
            Rel::from_pairs(1, 1, [(0, 0)]).unwrap()
        );
    }

    #[test]
    fn compose_rejects_mismatch() {
        let r = Rel::empty(2, 3);
        assert!(matches!(r.compose(&r), Err(Error::CarrierMismatch { .. })));
    }

    #[test]
    fn identity_laws() {
        let r = Rel::from_pairs(2, 3, [(0, 2), (1, 0), (1, 1)]).unwrap();
        assert_eq!(r.compose(&Rel::diagonal(3)).unwrap(), r);
        assert_eq!(Rel::diagonal(2).compose(&r).unwrap(), r);
    }

    #[test]
    fn three_fold_composites_differ_on_blocks() {
        let (r, s) = (blocks_r(), blocks_s());
        let srs = oracle_compose(&oracle_compose(&s, &r), &s);
        let rsr = oracle_compose(&oracle_compose(&r, &s), &r);
        assert!(rsr.contains(0, 3));
        assert!(!srs.contains(0, 3));
        assert_eq!(alternating_composite(&r, &s, 3).unwrap(), rsr);
        assert_eq!(alternating_composite(&s, &r, 3).unwrap(), srs);
    }

    #[test]
    fn alternating_composite_edges() {
        let r = blocks_r();
        assert_eq!(alternating_composite(&r, &blocks_s(), 1).unwrap(), r);
        assert_eq!(alternating_composite(&r, &r, 3).unwrap(), r);
        assert_eq!(
            alternating_composite(&r, &r, 0),
            Err(Error::EmptyAlternation)
        );
    }

    #[test]
    fn opposite_basics() {
        assert_eq!(Rel::diagonal(3).opposite(), Rel::diagonal(3));
        let r = Rel::from_pairs(1, 2, [(0, 1)]).unwrap();
        assert_eq!(r.opposite(), Rel::from_pairs(2, 1, [(1, 0)]).unwrap());
        assert_eq!(r.opposite().opposite(), r);
    }

    #[test]
    fn classify_order_on_three() {
        let le = Rel::from_fn(3, 3, |x, y| x <= y);
        assert_ne!(le.opposite(), le);
        let flags = le.classify();
        assert_eq!(flags.reflexive, Some(true));
        assert_eq!(flags.symmetric, Some(false));
        assert_eq!(flags.transitive, Some(true));
        assert!(!flags.difunctional);
        assert_eq!(flags.equivalence, Some(false));
    }

    #[test]
    fn classify_diagonal_and_empty() {
        let flags = Rel::diagonal(3).classify();
        assert_eq!(flags.equivalence, Some(true));
        assert!(flags.difunctional);
        let empty = Rel::diagonal(0);
        assert!(empty.is_empty());
        assert_eq!(empty.classify().equivalence, Some(true));
        let rect = Rel::full(2, 3).classify();
        assert_eq!(rect.reflexive, None);
        assert!(rect.difunctional);
    }

    #[test]
    fn equivalence_closure_examples() {
        assert_eq!(
            Rel::empty(3, 3).equivalence_closure().unwrap(),
            Rel::diagonal(3)
        );
        let r = Rel::from_pairs(4, 4, [(0, 1), (1, 2)]).unwrap();
        let expected = Rel::from_fn(4, 4, |x, y| (x < 3) == (y < 3));
        let c = r.equivalence_closure().unwrap();
        assert_eq!(c, expected);
        assert_eq!(c.equivalence_closure().unwrap(), c);
        assert!(Rel::empty(2, 3).equivalence_closure().is_err());
    }

    #[test]
    fn wide_rows_compose() {
        let n = 130;
        let succ = Rel::from_fn(n, n, |x, y| y == (x + 1) % n);
        let two = succ.compose(&succ).unwrap();
        assert!(two.contains(128, 0));
        assert!(two.contains(129, 1));
        assert_eq!(two.len(), n);
        assert_eq!(two, oracle_compose(&succ, &succ));
    }
}
