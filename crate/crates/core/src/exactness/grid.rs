use alloc::format;
use alloc::vec::Vec;

use super::fork::{Fork, ForkDefect};
use crate::error::{Error, Result};
use crate::finset::{FinFn, Partition, Tabulation};

/// A commutative diagram
///
/// ```text
/// Eq(a) ==z1,z2==> Eq(b) --z--> Eq(c)
///  a1‖a2            b1‖b2        c1‖c2
/// Eq(y) ==y1,y2==>   A  ---y-->   C
///   a               b            c
///   K   ==k1,k2==>   B  ---x-->   D
/// ```
///
/// Objects are implicit in the domains and codomains of the arrows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid3x3 {
    pub a1: FinFn,
    pub a2: FinFn,
    pub a: FinFn,
    pub b1: FinFn,
    pub b2: FinFn,
    pub b: FinFn,
    pub c1: FinFn,
    pub c2: FinFn,
    pub c: FinFn,
    pub z1: FinFn,
    pub z2: FinFn,
    pub z: FinFn,
    pub y1: FinFn,
    pub y2: FinFn,
    pub y: FinFn,
    pub k1: FinFn,
    pub k2: FinFn,
    pub x: FinFn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridVerdict {
    pub columns_ok: bool,
    pub middle_row_ok: bool,
    pub upper_exact: bool,
    pub lower_exact: bool,
    /// False only when the hypotheses hold and exactly one of the outer rows
    /// is exact.
    pub lemma_consistent: bool,
    pub upper_defect: Option<ForkDefect>,
    pub lower_defect: Option<ForkDefect>,
}

impl GridVerdict {
    pub fn hypotheses(&self) -> bool {
        self.columns_ok && self.middle_row_ok
    }
}

/// Local changes to a grid, for building negative and neighbouring instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GridMutation {
    /// Renumber `D` by a permutation.
    RelabelBottom(FinFn),
    /// Identify two elements of `D` in `c` and `x`, leaving `Eq(c)` alone.
    MergeBottom(usize, usize),
    /// Add an element to `D` that nothing reaches.
    ExtendBottom,
    /// Send one element of `B` elsewhere under `x`.
    PerturbX(usize),
}

const NAMES: [&str; 18] = [
    "a1", "a2", "a", "b1", "b2", "b", "c1", "c2", "c", "z1", "z2", "z", "y1", "y2", "y", "k1",
    "k2", "x",
];

fn then(first: &FinFn, second: &FinFn) -> FinFn {
    first.then(second).expect("shapes checked")
}

impl Grid3x3 {
    pub fn arrows(&self) -> [(&'static str, &FinFn); 18] {
        let g = self;
        let all = [
            &g.a1, &g.a2, &g.a, &g.b1, &g.b2, &g.b, &g.c1, &g.c2, &g.c, &g.z1, &g.z2, &g.z, &g.y1,
            &g.y2, &g.y, &g.k1, &g.k2, &g.x,
        ];
        core::array::from_fn(|i| (NAMES[i], all[i]))
    }

    fn check_shapes(&self) -> Result<()> {
        let g = self;
        // (object, [(arrow, size seen by the arrow)])
        let objects: [(&str, Vec<(&str, usize)>); 9] = [
            (
                "Eq(a)",
                alloc::vec![
                    ("a1", g.a1.dom()),
                    ("a2", g.a2.dom()),
                    ("z1", g.z1.dom()),
                    ("z2", g.z2.dom())
                ],
            ),
            (
                "Eq(y)",
                alloc::vec![
                    ("a1", g.a1.cod()),
                    ("a2", g.a2.cod()),
                    ("a", g.a.dom()),
                    ("y1", g.y1.dom()),
                    ("y2", g.y2.dom())
                ],
            ),
            (
                "K",
                alloc::vec![("a", g.a.cod()), ("k1", g.k1.dom()), ("k2", g.k2.dom())],
            ),
            (
                "Eq(b)",
                alloc::vec![
                    ("b1", g.b1.dom()),
                    ("b2", g.b2.dom()),
                    ("z1", g.z1.cod()),
                    ("z2", g.z2.cod()),
                    ("z", g.z.dom())
                ],
            ),
            (
                "A",
                alloc::vec![
                    ("b1", g.b1.cod()),
                    ("b2", g.b2.cod()),
                    ("b", g.b.dom()),
                    ("y1", g.y1.cod()),
                    ("y2", g.y2.cod()),
                    ("y", g.y.dom())
                ],
            ),
            (
                "B",
                alloc::vec![
                    ("b", g.b.cod()),
                    ("k1", g.k1.cod()),
                    ("k2", g.k2.cod()),
                    ("x", g.x.dom())
                ],
            ),
            (
                "Eq(c)",
                alloc::vec![("c1", g.c1.dom()), ("c2", g.c2.dom()), ("z", g.z.cod())],
            ),
            (
                "C",
                alloc::vec![
                    ("c1", g.c1.cod()),
                    ("c2", g.c2.cod()),
                    ("c", g.c.dom()),
                    ("y", g.y.cod())
                ],
            ),
            ("D", alloc::vec![("c", g.c.cod()), ("x", g.x.cod())]),
        ];
        for (object, seen) in &objects {
            let (first, size) = seen[0];
            if let Some((arrow, other)) = seen.iter().find(|(_, s)| *s != size) {
                return Err(Error::Rejected(format!(
                    "object {object} has size {size} at {first} but {other} at {arrow}"
                )));
            }
        }
        Ok(())
    }

    fn check_commutativity(&self) -> Result<()> {
        let g = self;
        let ys = [&g.y1, &g.y2];
        let zs = [&g.z1, &g.z2];
        let as_ = [&g.a1, &g.a2];
        let bs = [&g.b1, &g.b2];
        let cs = [&g.c1, &g.c2];
        let ks = [&g.k1, &g.k2];
        let mut equations: Vec<(alloc::string::String, FinFn, FinFn)> = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                equations.push((
                    format!("y{}∘a{} = b{}∘z{}", i + 1, j + 1, j + 1, i + 1),
                    then(as_[j], ys[i]),
                    then(zs[i], bs[j]),
                ));
            }
        }
        for i in 0..2 {
            equations.push((
                format!("y∘b{0} = c{0}∘z", i + 1),
                then(bs[i], &g.y),
                then(&g.z, cs[i]),
            ));
            equations.push((
                format!("b∘y{0} = k{0}∘a", i + 1),
                then(ys[i], &g.b),
                then(&g.a, ks[i]),
            ));
        }
        equations.push(("x∘b = c∘y".into(), then(&g.b, &g.x), then(&g.y, &g.c)));
        for (name, lhs, rhs) in equations {
            if let Some(e) = (0..lhs.dom()).find(|&e| lhs.apply(e) != rhs.apply(e)) {
                return Err(Error::Rejected(format!("{name} fails at {e}")));
            }
        }
        Ok(())
    }

    fn fork(r1: &FinFn, r2: &FinFn, f: &FinFn) -> Option<ForkDefect> {
        Fork::from_legs(r1.clone(), r2.clone(), f.clone())
            .expect("shapes checked")
            .defect()
    }

    /// The grid of a tower `θ ∨ φ ≤ ψ` of equivalences on a carrier `A`:
    /// `y: A → A/θ`, `b: A → A/φ`, `D = A/ψ`, kernel pairs in tabulated form,
    /// `K` the image of `θ` in `A/φ` and `Eq(a)` the kernel pair of
    /// `a: θ → K`. Columns and middle row are exact by construction; the
    /// upper row is exact iff `θ∘φ∘θ = ψ` and the lower iff `φ∘θ∘φ = ψ`.
    pub fn from_tower(theta: &Partition, phi: &Partition, psi: &Partition) -> Result<Self> {
        let n = theta.len();
        for p in [phi, psi] {
            if p.len() != n {
                return Err(Error::CarrierMismatch {
                    context: "grid tower",
                    expected: n,
                    found: p.len(),
                });
            }
        }
        if !theta.join(phi).refines(psi) {
            return Err(Error::Precondition("grid tower needs θ ∨ φ ≤ ψ".into()));
        }
        let y = FinFn::quotient(theta);
        let b = FinFn::quotient(phi);
        let eq_y = theta.to_rel().tabulate();
        let eq_b = phi.to_rel().tabulate();
        let induced = |from: &FinFn| -> Result<FinFn> {
            let mut map = alloc::vec![0; from.cod()];
            for u in 0..n {
                map[from.apply(u)] = psi.block_of(u);
            }
            FinFn::new(psi.block_count(), map)
        };
        let c = induced(&y)?;
        let x = induced(&b)?;
        let eq_c = c.kernel_pair_tabulated();
        let pair_map = |src: &Tabulation, h: &FinFn, dst: &Tabulation| -> Result<FinFn> {
            let map = src
                .pairs
                .iter()
                .map(|&(u, v)| dst.index_of((h.apply(u), h.apply(v))).expect("pair lands"))
                .collect();
            FinFn::new(dst.size(), map)
        };
        let z = pair_map(&eq_b, &y, &eq_c)?;
        let k = b.direct_image(&theta.to_rel())?.tabulate();
        let a = pair_map(&eq_y, &b, &k)?;
        let eq_a = a.kernel_pair_tabulated();
        let column = |pick: fn((usize, usize)) -> usize| -> Result<FinFn> {
            let map = eq_a
                .pairs
                .iter()
                .map(|&(e, e2)| {
                    eq_b.index_of((pick(eq_y.pairs[e]), pick(eq_y.pairs[e2])))
                        .expect("φ-related")
                })
                .collect();
            FinFn::new(eq_b.size(), map)
        };
        let z1 = column(|p| p.0)?;
        let z2 = column(|p| p.1)?;
        Ok(Grid3x3 {
            a1: eq_a.p1,
            a2: eq_a.p2,
            a,
            b1: eq_b.p1,
            b2: eq_b.p2,
            b,
            c1: eq_c.p1,
            c2: eq_c.p2,
            c,
            z1,
            z2,
            z,
            y1: eq_y.p1,
            y2: eq_y.p2,
            y,
            k1: k.p1,
            k2: k.p2,
            x,
        })
    }

    /// Applies a mutation. The result is not validated; run it through
    /// [`verify_3x3`].
    pub fn mutate(&self, m: &GridMutation) -> Result<Self> {
        let mut out = self.clone();
        let d = self.c.cod();
        let push = |h: &FinFn, out: &mut Grid3x3| -> Result<()> {
            out.c = self.c.then(h)?;
            out.x = self.x.then(h)?;
            Ok(())
        };
        match *m {
            GridMutation::RelabelBottom(ref perm) => {
                if perm.dom() != d || !perm.is_bijective() {
                    return Err(Error::Precondition(
                        "relabelling must be a permutation of D".into(),
                    ));
                }
                push(perm, &mut out)?;
            }
            GridMutation::MergeBottom(p, q) => {
                if p >= d || q >= d {
                    return Err(Error::OutOfRange {
                        index: 0,
                        value: p.max(q),
                        bound: d,
                    });
                }
                let merged: Vec<usize> = (0..d).map(|e| if e == q { p } else { e }).collect();
                let h = FinFn::new(d, merged)?;
                let (h, _) = h.image_factorize();
                push(&h, &mut out)?;
            }
            GridMutation::ExtendBottom => {
                push(&FinFn::from_fn(d, d + 1, |e| e)?, &mut out)?;
            }
            GridMutation::PerturbX(e) => {
                if e >= self.x.dom() {
                    return Err(Error::OutOfRange {
                        index: 0,
                        value: e,
                        bound: self.x.dom(),
                    });
                }
                if d < 2 {
                    return Err(Error::Precondition(
                        "perturbing x needs two elements in D".into(),
                    ));
                }
                let mut map = self.x.map().to_vec();
                map[e] = (map[e] + 1) % d;
                out.x = FinFn::new(d, map)?;
            }
        }
        Ok(out)
    }
}

/// Checks shapes and commutativity (failures are [`Error::Rejected`]), then
/// decides exactness of the three columns and three rows.
pub fn verify_3x3(grid: &Grid3x3) -> Result<GridVerdict> {
    grid.check_shapes()?;
    grid.check_commutativity()?;
    let g = grid;
    let columns_ok = [
        (&g.a1, &g.a2, &g.a),
        (&g.b1, &g.b2, &g.b),
        (&g.c1, &g.c2, &g.c),
    ]
    .iter()
    .all(|(r1, r2, f)| Grid3x3::fork(r1, r2, f).is_none());
    let middle_row_ok = Grid3x3::fork(&g.y1, &g.y2, &g.y).is_none();
    let upper_defect = Grid3x3::fork(&g.z1, &g.z2, &g.z);
    let lower_defect = Grid3x3::fork(&g.k1, &g.k2, &g.x);
    let (upper_exact, lower_exact) = (upper_defect.is_none(), lower_defect.is_none());
    Ok(GridVerdict {
        columns_ok,
        middle_row_ok,
        upper_exact,
        lower_exact,
        lemma_consistent: !(columns_ok && middle_row_ok && upper_exact != lower_exact),
        upper_defect,
        lower_defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mod_k(n: usize, k: usize) -> Partition {
        let labels: Vec<usize> = (0..n).map(|x| x % k).collect();
        Partition::from_labels(&labels)
    }

    #[test]
    fn identity_grid() {
        let d = Partition::discrete(3);
        let v = verify_3x3(&Grid3x3::from_tower(&d, &d, &d).unwrap()).unwrap();
        assert!(v.hypotheses() && v.upper_exact && v.lower_exact && v.lemma_consistent);
    }

    #[test]
    fn cyclic_tower() {
        let g = Grid3x3::from_tower(&mod_k(8, 4), &mod_k(8, 2), &mod_k(8, 2)).unwrap();
        let v = verify_3x3(&g).unwrap();
        assert!(v.hypotheses());
        assert!(v.upper_exact && v.lower_exact);
    }

    #[test]
    fn broken_lower_coequalizer() {
        let g = Grid3x3::from_tower(&mod_k(8, 4), &mod_k(8, 2), &mod_k(8, 2)).unwrap();
        let v = verify_3x3(&g.mutate(&GridMutation::ExtendBottom).unwrap()).unwrap();
        assert!(!v.lower_exact);
        assert_eq!(v.lower_defect, Some(ForkDefect::NotSurjective(2)));
        assert!(!v.columns_ok);
        assert!(v.lemma_consistent);
    }

    #[test]
    fn commutativity_rejected() {
        let g = Grid3x3::from_tower(&mod_k(8, 4), &mod_k(8, 2), &mod_k(8, 2)).unwrap();
        let bad = g.mutate(&GridMutation::PerturbX(0)).unwrap();
        assert!(matches!(verify_3x3(&bad), Err(Error::Rejected(_))));
        let mut bad = g.clone();
        bad.z = FinFn::identity(bad.z.dom());
        assert!(verify_3x3(&bad).is_err());
    }

    #[test]
    fn sets_are_not_goursat() {
        let theta = Partition::from_labels(&[0, 0, 1, 1]);
        let phi = Partition::from_labels(&[0, 1, 1, 2]);
        let all = Partition::indiscrete(4);
        let v = verify_3x3(&Grid3x3::from_tower(&theta, &phi, &all).unwrap()).unwrap();
        assert!(v.hypotheses());
        assert!(v.upper_exact);
        assert!(!v.lower_exact);
        assert!(!v.lemma_consistent);
    }

    #[test]
    fn relabel_and_merge() {
        let g = Grid3x3::from_tower(&mod_k(6, 3), &mod_k(6, 2), &Partition::indiscrete(6)).unwrap();
        let v = verify_3x3(&g).unwrap();
        assert!(v.hypotheses() && v.upper_exact && v.lower_exact);
        let g = Grid3x3::from_tower(&mod_k(6, 3), &Partition::discrete(6), &mod_k(6, 3)).unwrap();
        let swap = FinFn::new(3, alloc::vec![2, 1, 0]).unwrap();
        let v2 = verify_3x3(&g.mutate(&GridMutation::RelabelBottom(swap)).unwrap()).unwrap();
        assert!(v2.hypotheses() && v2.upper_exact && v2.lower_exact);
        let v3 = verify_3x3(&g.mutate(&GridMutation::MergeBottom(0, 1)).unwrap()).unwrap();
        assert!(!v3.columns_ok);
    }

    #[test]
    fn tower_precondition() {
        let theta = Partition::from_labels(&[0, 0, 1]);
        assert!(Grid3x3::from_tower(&theta, &theta, &Partition::discrete(3)).is_err());
    }
}
