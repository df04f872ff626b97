#![allow(dead_code)]

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uso_core::construct::{
    flip_edge, klee_minty, random_fmo, random_product, random_target_combed, uniform,
};
use uso_core::{CoordSet, Orientation};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cs(coords: &[usize]) -> CoordSet {
    CoordSet::from_coords(coords.iter().copied())
}

/// Applies up to `k` random legal edge flips.
pub fn scramble<R: Rng>(mut o: Orientation, k: usize, rng: &mut R) -> Orientation {
    let n = o.dim();
    for _ in 0..k {
        let v = CoordSet::from_bits(rng.random_range(0..1u32 << n));
        let j = rng.random_range(1..=n);
        if let Ok(f) = flip_edge(&o, v, j) {
            o = f;
        }
    }
    o
}

/// A USO drawn from a mix of the library's families.
pub fn random_uso<R: Rng>(n: usize, rng: &mut R) -> Orientation {
    let base = match rng.random_range(0..6) {
        0 => klee_minty(n),
        1 => uniform(n, rng.random()),
        2 => random_fmo(n, rng),
        3 if n >= 2 => random_product(n, rng),
        _ => random_target_combed(n, rng),
    };
    let flips = rng.random_range(0..4 * n);
    scramble(base, flips, rng)
}

/// An arbitrary edge orientation, as an outmap table.
pub fn random_orientation<R: Rng>(n: usize, rng: &mut R) -> Orientation {
    let mut table = vec![CoordSet::EMPTY; 1 << n];
    for v in 0..1u32 << n {
        let vs = CoordSet::from_bits(v);
        for j in 1..=n {
            if !vs.contains(j) && rng.random() {
                table[v as usize].insert(j);
            } else if !vs.contains(j) {
                table[vs.toggle(j).index()].insert(j);
            }
        }
    }
    Orientation::from_outmaps(n, table).unwrap()
}

/// Every orientation of the `n`-cube, `n ≤ 3`.
pub fn all_orientations(n: usize) -> Vec<Orientation> {
    let edges: Vec<(CoordSet, usize)> = (0..1u32 << n)
        .flat_map(|v| (1..=n).map(move |j| (CoordSet::from_bits(v), j)))
        .filter(|(v, j)| !v.contains(*j))
        .collect();
    (0..1u64 << edges.len())
        .map(|mask| {
            let mut table = vec![CoordSet::EMPTY; 1 << n];
            for (k, &(v, j)) in edges.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    table[v.index()].insert(j);
                } else {
                    table[v.toggle(j).index()].insert(j);
                }
            }
            Orientation::from_outmaps(n, table).unwrap()
        })
        .collect()
}

/// All USOs of dimension `n ≤ 3` via the unpruned face-scan filter.
pub fn all_usos_brute(n: usize) -> Vec<Orientation> {
    all_orientations(n)
        .into_iter()
        .filter(|o| o.is_uso_by_face_scan())
        .collect()
}

pub fn pick<'a, T, R: Rng>(items: &'a [T], rng: &mut R) -> &'a T {
    items.choose(rng).unwrap()
}

/// Rejection-samples [`random_uso`] until the result is acyclic.
pub fn random_acyclic<R: Rng>(n: usize, rng: &mut R) -> Orientation {
    loop {
        let o = random_uso(n, rng);
        if o.is_acyclic() {
            return o;
        }
    }
}
