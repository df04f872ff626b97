//! Canonical forms under the hypercube automorphism group.
//!
//! An automorphism is a coordinate permutation `π` followed by a reflection
//! `v ↦ v ⊕ m`. It maps an orientation `s` to `s'` with
//! `s'(π(v) ⊕ m) = π(s(v))`; reflections do not change which coordinates
//! are outgoing. The canonical form is the lexicographically least outmap
//! table over the whole group of size `2^n · n!`.

use alloc::vec;
use alloc::vec::Vec;

use crate::coords::CoordSet;
use crate::error::UsoError;
use crate::orientation::Orientation;

/// Largest dimension for which [`canonical_form`] is offered.
pub const CANONICAL_MAX_DIM: usize = 6;

/// A hypercube automorphism. `perm[i]` is the image (0-based) of the
/// 0-based coordinate `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub perm: Vec<u8>,
    pub reflect: CoordSet,
}

impl Automorphism {
    pub fn identity(n: usize) -> Self {
        Automorphism {
            perm: (0..n as u8).collect(),
            reflect: CoordSet::EMPTY,
        }
    }

    pub fn permute(&self, v: CoordSet) -> CoordSet {
        let mut out = 0u32;
        for i in v.iter() {
            out |= 1 << self.perm[i - 1];
        }
        CoordSet::from_bits(out)
    }

    pub fn map_vertex(&self, v: CoordSet) -> CoordSet {
        self.permute(v) ^ self.reflect
    }

    pub fn apply(&self, o: &Orientation) -> Orientation {
        let mut table = vec![CoordSet::EMPTY; o.vertex_count()];
        for v in o.vertices() {
            table[self.map_vertex(v).index()] = self.permute(o.outmap(v));
        }
        Orientation::from_table_unchecked(o.dim(), table)
    }
}

/// Rearranges `p` into its lexicographic successor; false once `p` is the
/// last permutation.
fn next_permutation(p: &mut [u8]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).expect("successor exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Calls `f` once for every automorphism of the `n`-cube.
pub fn for_each_automorphism<F: FnMut(&Automorphism)>(n: usize, mut f: F) {
    let mut a = Automorphism::identity(n);
    loop {
        for m in CoordSet::full(n).subsets() {
            a.reflect = m;
            f(&a);
        }
        if !next_permutation(&mut a.perm) {
            break;
        }
    }
}

/// Lexicographically least image of `o` under all cube automorphisms.
pub fn canonical_form(o: &Orientation) -> Result<Orientation, UsoError> {
    let n = o.dim();
    if n > CANONICAL_MAX_DIM {
        return Err(UsoError::DimensionTooLarge {
            n,
            max: CANONICAL_MAX_DIM,
        });
    }
    let size = o.vertex_count();
    let mut best: Vec<CoordSet> = o.table().to_vec();
    let mut cand = vec![CoordSet::EMPTY; size];
    let mut permuted_outmap = vec![CoordSet::EMPTY; size];
    let mut perm: Vec<u8> = (0..n as u8).collect();
    loop {
        let a = Automorphism {
            perm: perm.clone(),
            reflect: CoordSet::EMPTY,
        };
        // π(v) and π(s(v)) do not depend on the reflection; reuse them
        let mut pv = vec![CoordSet::EMPTY; size];
        for v in o.vertices() {
            pv[v.index()] = a.permute(v);
            permuted_outmap[v.index()] = a.permute(o.outmap(v));
        }
        for m in CoordSet::full(n).subsets() {
            for v in o.vertices() {
                cand[(pv[v.index()] ^ m).index()] = permuted_outmap[v.index()];
            }
            if cand < best {
                best.copy_from_slice(&cand);
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(Orientation::from_table_unchecked(n, best))
}

/// Whether two orientations are related by a cube automorphism.
pub fn is_isomorphic(a: &Orientation, b: &Orientation) -> Result<bool, UsoError> {
    if a.dim() != b.dim() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}
