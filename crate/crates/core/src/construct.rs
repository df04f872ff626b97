//! Orientation families and combinators.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::coords::{CoordSet, MAX_DIM};
use crate::error::UsoError;
use crate::face::Face;
use crate::orientation::Orientation;

fn assert_dim(n: usize) {
    assert!(
        (1..=MAX_DIM).contains(&n),
        "dimension {n} outside 1..={MAX_DIM}"
    );
}

/// Uniform orientation. Forward: every edge points to the larger endpoint,
/// `s(v) = [n] ∖ v`, sink `[n]`. Backward: `s(v) = v`, sink `∅`.
///
/// Panics if `n` is outside `1..=MAX_DIM`.
pub fn uniform(n: usize, forward: bool) -> Orientation {
    assert_dim(n);
    let full = CoordSet::full(n);
    let table = (0..1u32 << n)
        .map(CoordSet::from_bits)
        .map(|v| if forward { full - v } else { v })
        .collect();
    Orientation::from_table_unchecked(n, table)
}

/// Klee-Minty cube: `s(v) = { i : |v ∩ {i, …, n}| odd }`. Sink at `∅`.
///
/// Panics if `n` is outside `1..=MAX_DIM`.
pub fn klee_minty(n: usize) -> Orientation {
    assert_dim(n);
    let table = (0..1u32 << n)
        .map(|bits| {
            let mut out = 0u32;
            let mut parity = 0u32;
            for i in (0..n).rev() {
                parity ^= (bits >> i) & 1;
                out |= parity << i;
            }
            CoordSet::from_bits(out)
        })
        .collect();
    Orientation::from_table_unchecked(n, table)
}

/// Reverses the edge `{v, v ⊕ {j}}`. Allowed only when both endpoints have
/// the same outmap apart from `j`; the result is then a USO whenever `o` is.
pub fn flip_edge(o: &Orientation, v: CoordSet, j: usize) -> Result<Orientation, UsoError> {
    o.check_vertex(v)?;
    o.check_coord(j)?;
    let w = v.toggle(j);
    let jset = CoordSet::singleton(j);
    if o.outmap(v) - jset != o.outmap(w) - jset {
        return Err(UsoError::FlipPreconditionViolated {
            vertex: v,
            coord: j,
        });
    }
    let mut table = o.table().to_vec();
    table[v.index()] ^= jset;
    table[w.index()] ^= jset;
    Ok(Orientation::from_table_unchecked(o.dim(), table))
}

/// A set of pairwise vertex-disjoint cube edges `{v, v ⊕ {j}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    n: usize,
    edges: Vec<(CoordSet, usize)>,
}

impl Matching {
    pub fn new(n: usize, edges: Vec<(CoordSet, usize)>) -> Result<Self, UsoError> {
        if n == 0 || n > MAX_DIM {
            return Err(UsoError::DimensionOutOfRange { n, max: MAX_DIM });
        }
        let mut used = vec![false; 1 << n];
        for &(v, j) in &edges {
            if !v.fits(n) {
                return Err(UsoError::VertexOutOfRange { vertex: v, n });
            }
            if j == 0 || j > n {
                return Err(UsoError::CoordinateOutOfRange { coord: j, n });
            }
            for x in [v, v.toggle(j)] {
                if core::mem::replace(&mut used[x.index()], true) {
                    return Err(UsoError::MatchingOverlap { vertex: x });
                }
            }
        }
        Ok(Matching { n, edges })
    }

    /// A maximal matching built greedily over a shuffled edge list.
    pub fn random_maximal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        assert_dim(n);
        let mut all: Vec<(CoordSet, usize)> = Vec::with_capacity(n << (n - 1));
        for bits in 0..1u32 << n {
            let v = CoordSet::from_bits(bits);
            for j in (CoordSet::full(n) - v).iter() {
                all.push((v, j));
            }
        }
        all.shuffle(rng);
        let mut used = vec![false; 1 << n];
        let mut edges = Vec::new();
        for (v, j) in all {
            let w = v.toggle(j);
            if !used[v.index()] && !used[w.index()] {
                used[v.index()] = true;
                used[w.index()] = true;
                edges.push((v, j));
            }
        }
        Matching { n, edges }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(CoordSet, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Flip-matching orientation: a uniform orientation with every edge of `m`
/// reversed. Always a USO.
pub fn flip_matching(n: usize, m: &Matching, forward_base: bool) -> Result<Orientation, UsoError> {
    if m.dim() != n {
        return Err(UsoError::DimensionMismatch {
            expected: n,
            found: m.dim(),
        });
    }
    let mut table = uniform(n, forward_base).into_table();
    for &(v, j) in m.edges() {
        let bit = CoordSet::singleton(j);
        table[v.index()] ^= bit;
        table[v.toggle(j).index()] ^= bit;
    }
    let o = Orientation::from_table_unchecked(n, table);
    debug_assert!(n > 8 || o.is_uso());
    Ok(o)
}

/// Random flip-matching orientation over a random uniform base.
pub fn random_fmo<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Orientation {
    let forward = rng.random_bool(0.5);
    let m = Matching::random_maximal(n, rng);
    flip_matching(n, &m, forward).expect("matching dimension matches")
}

/// Product construction. The frame orientation lives on the coordinates
/// `frame_coords`; for every frame vertex `u` (local label) the fiber
/// `fibers[u]` orients the complementary coordinates:
///
/// `s(v) = s̃(v ∩ B) ∪ s_{v ∩ B}(v ∖ B)`.
///
/// Coordinates of the frame and of the fibers are mapped in increasing order
/// onto `frame_coords` and its complement respectively.
pub fn product(
    frame_coords: CoordSet,
    frame: &Orientation,
    fibers: &[Orientation],
) -> Result<Orientation, UsoError> {
    if frame_coords.len() != frame.dim() {
        return Err(UsoError::DimensionMismatch {
            expected: frame_coords.len(),
            found: frame.dim(),
        });
    }
    if fibers.len() != frame.vertex_count() {
        return Err(UsoError::FiberCount {
            expected: frame.vertex_count(),
            found: fibers.len(),
        });
    }
    let fiber_dim = fibers[0].dim();
    if let Some(bad) = fibers.iter().find(|f| f.dim() != fiber_dim) {
        return Err(UsoError::DimensionMismatch {
            expected: fiber_dim,
            found: bad.dim(),
        });
    }
    let n = frame.dim() + fiber_dim;
    if n > MAX_DIM {
        return Err(UsoError::DimensionOutOfRange { n, max: MAX_DIM });
    }
    if !frame_coords.fits(n) {
        return Err(UsoError::CoordinateOutOfRange {
            coord: frame_coords.iter().last().unwrap_or(0),
            n,
        });
    }
    let fiber_coords = CoordSet::full(n) - frame_coords;
    let table = (0..1u32 << n)
        .map(|bits| {
            let v = CoordSet::from_bits(bits);
            let u = v.extract(frame_coords);
            let w = v.extract(fiber_coords);
            frame.outmap(u).deposit(frame_coords)
                | fibers[u.index()].outmap(w).deposit(fiber_coords)
        })
        .collect();
    Ok(Orientation::from_table_unchecked(n, table))
}

/// Replaces the orientation inside the hypersink `sub` by `replacement`
/// (labelled through [`Face::local`]); everything else is kept.
pub fn hypersink_reorient(
    o: &Orientation,
    sub: &Face,
    replacement: &Orientation,
) -> Result<Orientation, UsoError> {
    o.check_face(sub)?;
    if replacement.dim() != sub.dim() {
        return Err(UsoError::DimensionMismatch {
            expected: sub.dim(),
            found: replacement.dim(),
        });
    }
    let outside = o.full() - sub.span();
    if let Some(vertex) = sub
        .vertices()
        .find(|&v| !(o.outmap(v) & outside).is_empty())
    {
        return Err(UsoError::HypersinkViolated { face: *sub, vertex });
    }
    let mut table = o.table().to_vec();
    for v in sub.vertices() {
        table[v.index()] = replacement.outmap(sub.local(v)).deposit(sub.span());
    }
    Ok(Orientation::from_table_unchecked(o.dim(), table))
}

/// Target-combed orientation. Starting from the backward 1-cube `A_1`,
/// `A_{k+1}` places `A_k` on the side `k+1 ∉ v` and `fibers[k-1]` (a
/// `k`-dimensional USO) antipodally on the side `k+1 ∈ v`, with every edge on
/// coordinate `k+1` directed towards `A_k`.
///
/// `fibers` must hold `n - 1` orientations of dimensions `1, …, n - 1`.
pub fn target_combed(n: usize, fibers: &[Orientation]) -> Result<Orientation, UsoError> {
    if n == 0 || n > MAX_DIM {
        return Err(UsoError::DimensionOutOfRange { n, max: MAX_DIM });
    }
    if fibers.len() != n - 1 {
        return Err(UsoError::FiberCount {
            expected: n - 1,
            found: fibers.len(),
        });
    }
    let towards_lower = uniform(1, false);
    let mut acc = uniform(1, false);
    for (i, fiber) in fibers.iter().enumerate() {
        let k = i + 1;
        if fiber.dim() != k {
            return Err(UsoError::DimensionMismatch {
                expected: k,
                found: fiber.dim(),
            });
        }
        acc = product(
            CoordSet::singleton(k + 1),
            &towards_lower,
            &[acc, fiber.clone()],
        )?;
    }
    Ok(acc)
}

/// Target-combed orientation with random flip-matching fibers.
pub fn random_target_combed<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Orientation {
    let fibers: Vec<Orientation> = (1..n).map(|k| random_fmo(k, rng)).collect();
    target_combed(n, &fibers).expect("fiber dimensions are consistent")
}

/// Random product of two flip-matching families over a random coordinate
/// split. Needs `n ≥ 2`.
pub fn random_product<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Orientation {
    assert!(
        (2..=MAX_DIM).contains(&n),
        "product needs 2 <= n <= {MAX_DIM}"
    );
    let b = rng.random_range(1..n);
    let mut coords: Vec<usize> = (1..=n).collect();
    coords.shuffle(rng);
    let frame_coords = CoordSet::from_coords(coords[..b].iter().copied());
    let frame = random_fmo(b, rng);
    let fibers: Vec<Orientation> = (0..1usize << b).map(|_| random_fmo(n - b, rng)).collect();
    product(frame_coords, &frame, &fibers).expect("consistent product")
}

/// The cyclic flip-matching orientation whose non-sink vertices all have
/// full reachmaps.
///
/// Forward uniform with the edges `{[n] ∖ {i}, [n] ∖ {i, i+1}}` on coordinate
/// `i+1` (cyclically) reversed for `i = 1..n`. This yields the directed
/// `2n`-cycle `[n]∖{1} → [n]∖{1,2} → [n]∖{2} → [n]∖{2,3} → … → [n]∖{1}`
/// through every neighbor of the sink `[n]`.
pub fn cyclic_full_reach(n: usize) -> Result<Orientation, UsoError> {
    if n < 3 {
        return Err(UsoError::DimensionTooSmall { n, min: 3 });
    }
    if n > MAX_DIM {
        return Err(UsoError::DimensionOutOfRange { n, max: MAX_DIM });
    }
    let full = CoordSet::full(n);
    let edges = (1..=n)
        .map(|i| (full - CoordSet::singleton(i), i % n + 1))
        .collect();
    flip_matching(n, &Matching::new(n, edges)?, true)
}

/// An acyclic USO that is not `i`-nice for any `i < n - 2`.
///
/// Starting from the forward uniform orientation:
/// 1. reverse the square `F_{{1,2}, v}` with `v = [n] ∖ {1,2,3}` (edges on
///    coordinate 1 first, then 2);
/// 2. reverse `F_{{4}, [n]∖{2}}` and `F_{{k+1}, [n]∖{k}}` for `k = 4..n-1`;
/// 3. reverse `F_{{3}, u}` for every `u` of size `n - 3` containing 3.
///
/// Every flip is checked against the single-edge flip precondition.
pub fn auso_lower_bound(n: usize) -> Result<Orientation, UsoError> {
    if n < 4 {
        return Err(UsoError::DimensionTooSmall { n, min: 4 });
    }
    if n > MAX_DIM {
        return Err(UsoError::DimensionOutOfRange { n, max: MAX_DIM });
    }
    let full = CoordSet::full(n);
    let without = |c: &[usize]| full - CoordSet::from_coords(c.iter().copied());
    let mut o = uniform(n, true);

    let v = without(&[1, 2, 3]);
    for j in [1, 2] {
        let other = if j == 1 { 2 } else { 1 };
        o = flip_edge(&o, v, j)?;
        o = flip_edge(&o, v.toggle(other), j)?;
    }

    o = flip_edge(&o, without(&[2]), 4)?;
    for k in 4..n {
        o = flip_edge(&o, without(&[k]), k + 1)?;
    }

    for bits in 0..1u32 << n {
        let u = CoordSet::from_bits(bits);
        if u.len() == n - 3 && u.contains(3) {
            o = flip_edge(&o, u, 3)?;
        }
    }
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reach::{niceness_index, reach_table};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cs(c: &[usize]) -> CoordSet {
        CoordSet::from_coords(c.iter().copied())
    }

    #[test]
    fn uniform_one_cube() {
        let f = uniform(1, true);
        assert_eq!(f.outmap(cs(&[])), cs(&[1]));
        assert_eq!(f.outmap(cs(&[1])), cs(&[]));
        assert_eq!(uniform(1, false).outmap(cs(&[1])), cs(&[1]));
    }

    #[test]
    fn klee_minty_square() {
        let km = klee_minty(2);
        assert_eq!(km.table(), &[cs(&[]), cs(&[1]), cs(&[1, 2]), cs(&[2])]);
    }

    #[test]
    fn klee_minty_has_hamiltonian_path() {
        // an acyclic orientation has a Hamiltonian path iff consecutive
        // vertices of its (then unique) topological order are adjacent
        for n in 1..=8 {
            let km = klee_minty(n);
            let order = km.topological_order().unwrap();
            assert_eq!(order.len(), 1 << n);
            for w in order.windows(2) {
                let d = w[0] ^ w[1];
                assert_eq!(d.len(), 1);
                assert!(km.outmap(w[0]).is_superset_of(d));
            }
            assert_eq!(order[0], km.source().unwrap());
        }
    }

    #[test]
    fn flip_edge_rules() {
        let u = uniform(3, true);
        let f = flip_edge(&u, CoordSet::EMPTY, 1).unwrap();
        assert!(f.is_uso());
        assert_eq!(flip_edge(&f, CoordSet::EMPTY, 1).unwrap(), u);
        assert!(matches!(
            flip_edge(&klee_minty(2), cs(&[2]), 2),
            Err(UsoError::FlipPreconditionViolated { .. })
        ));
    }

    #[test]
    fn three_flips_from_backward_uniform_make_the_cyclic_cube() {
        // the forward construction reflected through all coordinates
        let mut o = uniform(3, false);
        for (v, j) in [(cs(&[1]), 2), (cs(&[2]), 3), (cs(&[3]), 1)] {
            o = flip_edge(&o, v, j).unwrap();
        }
        assert!(o.is_uso_by_face_scan());
        assert!(!o.is_acyclic());
        assert_eq!(
            crate::canonical::canonical_form(&o).unwrap(),
            crate::canonical::canonical_form(&cyclic_full_reach(3).unwrap()).unwrap()
        );
    }

    #[test]
    fn matching_validation() {
        assert!(Matching::new(2, vec![(cs(&[]), 1), (cs(&[1]), 2)]).is_err());
        assert!(Matching::new(2, vec![(cs(&[]), 1), (cs(&[2]), 1)]).is_ok());
        assert!(Matching::new(2, vec![(cs(&[]), 3)]).is_err());
        let empty = Matching::new(3, vec![]).unwrap();
        assert_eq!(flip_matching(3, &empty, true).unwrap(), uniform(3, true));
    }

    #[test]
    fn cyclic_full_reach_three() {
        let o = cyclic_full_reach(3).unwrap();
        assert!(o.is_uso_by_face_scan());
        assert!(!o.is_acyclic());
        // the explicit 6-cycle
        let cycle = [
            cs(&[2, 3]),
            cs(&[3]),
            cs(&[1, 3]),
            cs(&[1]),
            cs(&[1, 2]),
            cs(&[2]),
        ];
        for i in 0..6 {
            let (a, b) = (cycle[i], cycle[(i + 1) % 6]);
            assert!(o.outmap(a).is_superset_of(a ^ b), "{a} -> {b}");
        }
        assert!(cyclic_full_reach(2).is_err());
    }

    #[test]
    fn product_of_identical_fibers_doubles_along_a_combed_coordinate() {
        let km = klee_minty(2);
        let p = product(cs(&[3]), &uniform(1, true), &[km.clone(), km.clone()]).unwrap();
        assert!(p.is_uso());
        for v in p.vertices() {
            let low = v - cs(&[3]);
            assert_eq!(p.outmap(v) - cs(&[3]), km.outmap(low));
            assert_eq!(p.outmap(v).contains(3), !v.contains(3));
        }
        assert!(product(cs(&[1, 2]), &uniform(1, true), &[km.clone(), km]).is_err());
    }

    #[test]
    fn km_frame_with_km_fibers_is_decomposable() {
        let p = product(cs(&[1]), &klee_minty(1), &[klee_minty(2), klee_minty(2)]).unwrap();
        assert!(p.is_uso() && p.is_decomposable());
    }

    #[test]
    fn hypersink_reorientation() {
        let u = uniform(3, true);
        let top = Face::new(cs(&[3]), cs(&[1, 2]));
        assert!(u.is_hypersink(&top));
        let same = u.restrict(&top).unwrap();
        assert_eq!(hypersink_reorient(&u, &top, &same).unwrap(), u);
        let r = hypersink_reorient(&u, &top, &klee_minty(2)).unwrap();
        assert!(r.is_uso_by_face_scan());
        let bottom = Face::new(cs(&[]), cs(&[1, 2]));
        assert!(matches!(
            hypersink_reorient(&u, &bottom, &klee_minty(2)),
            Err(UsoError::HypersinkViolated { .. })
        ));
    }

    #[test]
    fn target_combed_families() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let uniform_fibers: Vec<_> = (1..5).map(|k| uniform(k, true)).collect();
        assert!(target_combed(5, &uniform_fibers).unwrap().is_decomposable());
        for _ in 0..10 {
            let o = random_target_combed(6, &mut rng);
            assert!(o.is_uso());
            assert_eq!(niceness_index(&o).unwrap().niceness_index, 1);
        }
        let fibers = [
            uniform(1, true),
            klee_minty(2),
            cyclic_full_reach(3).unwrap(),
        ];
        let o = target_combed(4, &fibers).unwrap();
        assert!(o.is_uso_by_face_scan());
        assert!(!o.is_acyclic());
        assert_eq!(niceness_index(&o).unwrap().niceness_index, 1);
        assert!(target_combed(3, &fibers).is_err());
    }

    #[test]
    fn auso_lower_bound_five_has_only_the_listed_backward_edges() {
        let n = 5;
        let o = auso_lower_bound(n).unwrap();
        let full = CoordSet::full(n);
        let without = |c: &[usize]| full - cs(c);
        // (upper endpoint, coordinate) of each reversed edge
        let mut expected = vec![
            (without(&[2, 3]), 1),
            (without(&[3]), 1),
            (without(&[1, 3]), 2),
            (without(&[3]), 2),
            (without(&[2]), 4),
            (without(&[4]), 5),
        ];
        for bits in 0..1u32 << n {
            let u = CoordSet::from_bits(bits);
            if u.len() == n - 3 && u.contains(3) {
                expected.push((u, 3));
            }
        }
        let mut got = o.backward_edges();
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
        assert_eq!(o.outmap(without(&[1, 2, 3])), cs(&[3]));
    }

    #[test]
    fn auso_lower_bound_claims() {
        for n in 4..=7 {
            let o = auso_lower_bound(n).unwrap();
            assert!(o.is_uso());
            assert!(o.is_acyclic());
            let t = reach_table(&o);
            for v in o.vertices().filter(|v| v.len() <= n - 3) {
                assert_eq!(t.get(v), CoordSet::full(n), "n={n} v={v}");
            }
        }
        assert!(auso_lower_bound(3).is_err());
    }
}
