//! Seeded instance generators. Instance `i` of a stream depends only on the
//! seed and `i`, so a harness may split the index range freely.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::barr_kock::induced_kernel_map;
use crate::finset::FinFn;

/// Data for [`check_barr_kock`](super::check_barr_kock), in argument order
/// `v, u, w, f, g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarrKockInstance {
    pub v: FinFn,
    pub u: FinFn,
    pub w: FinFn,
    pub f: FinFn,
    pub g: FinFn,
}

fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A commutative Barr–Kock diagram with `f` surjective and `A`, `B`, `X`, `Y`
/// of size at most `max_size` (at least 1). About half the instances are
/// built fibrewise, so that `u` maps each fibre of `f` bijectively onto a
/// fibre of `g`, then possibly disturbed at one point; the rest pick `u` at
/// random among maps making the square commute. Whether the pullback premise
/// holds is left to the checker.
pub fn barr_kock_instance(seed: u64, index: u64, max_size: usize) -> BarrKockInstance {
    let max = max_size.max(1);
    let mut rng = rng_for(seed, index);
    loop {
        let ny = rng.gen_range(1..=max.min(3));
        let nb = rng.gen_range(1..=max);
        let g = FinFn::new(ny, (0..nb).map(|_| rng.gen_range(0..ny)).collect()).expect("in range");
        let fibers = g.fibers();
        let image: Vec<usize> = (0..ny).filter(|&y| !fibers[y].is_empty()).collect();
        let nx = rng.gen_range(1..=max);
        let w_map: Vec<usize> = (0..nx)
            .map(|_| *image.choose(&mut rng).expect("g has an image"))
            .collect();

        let (f_map, u_map) = if rng.gen_bool(0.5) {
            let mut f_map = Vec::new();
            let mut u_map = Vec::new();
            for (x, &y) in w_map.iter().enumerate() {
                for &b in &fibers[y] {
                    f_map.push(x);
                    u_map.push(b);
                }
            }
            if rng.gen_bool(0.3) {
                let a = rng.gen_range(0..u_map.len());
                u_map[a] = *fibers[w_map[f_map[a]]]
                    .choose(&mut rng)
                    .expect("nonempty fibre");
            }
            (f_map, u_map)
        } else {
            let na = rng.gen_range(nx..=max.max(nx));
            let mut f_map: Vec<usize> = (0..nx)
                .chain((nx..na).map(|_| rng.gen_range(0..nx)))
                .collect();
            f_map.shuffle(&mut rng);
            let u_map = f_map
                .iter()
                .map(|&x| *fibers[w_map[x]].choose(&mut rng).expect("nonempty fibre"))
                .collect();
            (f_map, u_map)
        };
        if f_map.len() > max {
            continue;
        }
        let f = FinFn::new(nx, f_map).expect("in range");
        let u = FinFn::new(nb, u_map).expect("in range");
        let w = FinFn::new(ny, w_map).expect("in range");
        let v = induced_kernel_map(&u, &f, &g).expect("square commutes");
        return BarrKockInstance { v, u, w, f, g };
    }
}

#[cfg(test)]
mod tests {
    use super::super::check_barr_kock;
    use super::*;

    #[test]
    fn reproducible() {
        assert_eq!(barr_kock_instance(7, 3, 5), barr_kock_instance(7, 3, 5));
        assert_ne!(
            (0..8)
                .map(|i| barr_kock_instance(7, i, 5))
                .collect::<Vec<_>>(),
            (0..8)
                .map(|i| barr_kock_instance(8, i, 5))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn commutative_and_bounded() {
        let mut valid = 0;
        for i in 0..300 {
            let BarrKockInstance { v, u, w, f, g } = barr_kock_instance(1, i, 5);
            assert!(f.is_surjective());
            assert!([f.dom(), f.cod(), g.dom(), g.cod()].iter().all(|&s| s <= 5));
            if let Ok(verdict) = check_barr_kock(&v, &u, &w, &f, &g) {
                valid += 1;
                assert!(verdict.holds());
                assert!(verdict.second_square_pullback);
            }
        }
        assert!(valid > 50);
    }
}
