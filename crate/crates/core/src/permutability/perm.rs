use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::finset::{alternating_composite, Rel};
use crate::ualg::{Algebra, Congruence};

/// Which alternating composite contains the witness pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StartsWith {
    R,
    S,
}

/// A congruence pair whose `n`-fold alternating composites differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermWitness {
    pub r: Congruence,
    pub s: Congruence,
    /// Lexicographically first pair in exactly one of the two composites.
    pub pair: (usize, usize),
    /// The composite that contains `pair`.
    pub found_in: StartsWith,
}

/// Outcome of an `n`-permutability check. Verdicts are about concrete
/// congruences of the given algebra, not about the variety it generates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermReport {
    pub level: usize,
    pub holds: bool,
    /// Number of congruence pairs compared.
    pub pairs_checked: usize,
    pub witness: Option<PermWitness>,
}

impl PermWitness {
    /// Replays the witness: the pair lies in the recorded composite and not in
    /// the other.
    pub fn verify(&self, level: usize) -> Result<bool> {
        let (rr, ss) = (self.r.to_rel(), self.s.to_rel());
        let from_r = alternating_composite(&rr, &ss, level)?;
        let from_s = alternating_composite(&ss, &rr, level)?;
        let (a, b) = self.pair;
        Ok(match self.found_in {
            StartsWith::R => from_r.contains(a, b) && !from_s.contains(a, b),
            StartsWith::S => from_s.contains(a, b) && !from_r.contains(a, b),
        })
    }
}

fn first_difference(x: &Rel, y: &Rel) -> Option<((usize, usize), StartsWith)> {
    (0..x.dom())
        .flat_map(|a| (0..x.cod()).map(move |b| (a, b)))
        .find_map(|(a, b)| match (x.contains(a, b), y.contains(a, b)) {
            (true, false) => Some(((a, b), StartsWith::R)),
            (false, true) => Some(((a, b), StartsWith::S)),
            _ => None,
        })
}

fn compare(r: &Congruence, s: &Congruence, level: usize) -> Result<Option<PermWitness>> {
    let (rr, ss) = (r.to_rel(), s.to_rel());
    let from_r = alternating_composite(&rr, &ss, level)?;
    let from_s = alternating_composite(&ss, &rr, level)?;
    Ok(
        first_difference(&from_r, &from_s).map(|(pair, found_in)| PermWitness {
            r: r.clone(),
            s: s.clone(),
            pair,
            found_in,
        }),
    )
}

/// Compares `R ∘ S ∘ R ∘ …` with `S ∘ R ∘ S ∘ …` (`level` factors each).
pub fn check_permutability(
    alg: &Algebra,
    r: &Congruence,
    s: &Congruence,
    level: usize,
) -> Result<PermReport> {
    if level < 2 {
        return Err(Error::InvalidLevel(level));
    }
    for c in [r, s] {
        if !c.is_valid_on(alg) {
            return Err(Error::Precondition(
                "congruence does not belong to this algebra".into(),
            ));
        }
    }
    let witness = compare(r, s, level)?;
    Ok(PermReport {
        level,
        holds: witness.is_none(),
        pairs_checked: 1,
        witness,
    })
}

/// Runs [`check_permutability`] over every unordered pair of distinct
/// congruences, in the canonical congruence order; the first failure wins.
pub fn check_algebra_permutability(
    alg: &Algebra,
    level: usize,
    bound: usize,
) -> Result<PermReport> {
    if level < 2 {
        return Err(Error::InvalidLevel(level));
    }
    let all = Congruence::all(alg, bound)?;
    check_pairs(&all, level)
}

pub(crate) fn check_pairs(all: &[Congruence], level: usize) -> Result<PermReport> {
    let mut pairs_checked = 0;
    for (i, r) in all.iter().enumerate() {
        for s in &all[i + 1..] {
            pairs_checked += 1;
            if let Some(w) = compare(r, s, level)? {
                return Ok(PermReport {
                    level,
                    holds: false,
                    pairs_checked,
                    witness: Some(w),
                });
            }
        }
    }
    Ok(PermReport {
        level,
        holds: true,
        pairs_checked,
        witness: None,
    })
}

/// Congruence pairs of `alg` that commute at `level` but not at `level + 1`.
/// Permutability at a level implies it at every higher level, so this is
/// always empty.
pub fn monotonicity_failures(
    alg: &Algebra,
    level: usize,
    bound: usize,
) -> Result<Vec<(Congruence, Congruence)>> {
    let all = Congruence::all(alg, bound)?;
    let mut out = Vec::new();
    for r in &all {
        for s in &all {
            if compare(r, s, level)?.is_none() && compare(r, s, level + 1)?.is_some() {
                out.push((r.clone(), s.clone()));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{cyclic_group, implication_algebra_boolean, meet_semilattice_chain};
    use crate::finset::Partition;

    fn four_blocks() -> (Algebra, Congruence, Congruence) {
        let a = Algebra::set(4);
        let r = Congruence::new(&a, Partition::from_labels(&[0, 0, 1, 1])).unwrap();
        let s = Congruence::new(&a, Partition::from_labels(&[0, 1, 1, 2])).unwrap();
        (a, r, s)
    }

    #[test]
    fn equal_congruences_permute() {
        let (a, r, _) = four_blocks();
        for n in 2..6 {
            assert!(check_permutability(&a, &r, &r, n).unwrap().holds);
        }
    }

    #[test]
    fn four_element_set_fails_at_two_and_three() {
        let (a, r, s) = four_blocks();
        let two = check_permutability(&a, &r, &s, 2).unwrap();
        assert!(!two.holds);
        let w2 = two.witness.unwrap();
        assert_eq!(w2.pair, (0, 2));
        assert_eq!(w2.found_in, StartsWith::R);
        assert!(w2.verify(2).unwrap());
        let three = check_permutability(&a, &r, &s, 3).unwrap();
        let w3 = three.witness.unwrap();
        assert_eq!(w3.pair, (0, 3));
        assert_eq!(w3.found_in, StartsWith::R);
        assert!(w3.verify(3).unwrap());
        assert!(check_permutability(&a, &r, &s, 4).unwrap().holds);
    }

    #[test]
    fn groups_are_two_permutable() {
        let z4 = cyclic_group(4).unwrap();
        let rep = check_algebra_permutability(&z4, 2, 8).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.pairs_checked, 3);
    }

    #[test]
    fn small_cases() {
        let one = cyclic_group(1).unwrap();
        assert!(check_algebra_permutability(&one, 2, 8).unwrap().holds);
        let imp = implication_algebra_boolean(1).unwrap();
        assert!(check_algebra_permutability(&imp, 3, 8).unwrap().holds);
        let chain = meet_semilattice_chain(3).unwrap();
        let rep = check_algebra_permutability(&chain, 2, 8).unwrap();
        assert!(!rep.holds);
        assert!(rep.witness.unwrap().verify(2).unwrap());
    }

    #[test]
    fn errors() {
        let (a, r, s) = four_blocks();
        assert_eq!(
            check_permutability(&a, &r, &s, 1),
            Err(Error::InvalidLevel(1))
        );
        let z4 = cyclic_group(4).unwrap();
        assert!(check_permutability(&z4, &r, &s, 2).is_err());
    }

    #[test]
    fn monotone_on_small_sets() {
        for n in 1..5 {
            assert!(monotonicity_failures(&Algebra::set(n), 2, 8)
                .unwrap()
                .is_empty());
        }
    }
}
