//! Dense orientations of the `n`-cube and the structural predicates on them.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::coords::{CoordSet, MAX_DIM};
use crate::error::UsoError;
use crate::face::Face;

/// An edge-consistent orientation of the `n`-cube, stored as its outmap
/// table indexed by vertex bitmask.
///
/// Construction checks that every edge has exactly one outgoing endpoint.
/// Being a *unique sink* orientation is a separate property, see
/// [`Orientation::is_uso`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Orientation {
    n: usize,
    outmap: Box<[CoordSet]>,
}

/// True iff every edge of the `n`-cube described by `table` has exactly one
/// outgoing endpoint. Tables of the wrong length or with bits beyond `n`
/// fail.
pub fn validate_orientation(n: usize, table: &[CoordSet]) -> bool {
    check_table(n, table).is_ok()
}

fn check_dim(n: usize) -> Result<(), UsoError> {
    if n == 0 || n > MAX_DIM {
        return Err(UsoError::DimensionOutOfRange { n, max: MAX_DIM });
    }
    Ok(())
}

fn check_table(n: usize, table: &[CoordSet]) -> Result<(), UsoError> {
    check_dim(n)?;
    if table.len() != 1 << n {
        return Err(UsoError::TableLength {
            expected: 1 << n,
            found: table.len(),
        });
    }
    for (idx, &s) in table.iter().enumerate() {
        let v = CoordSet::from_bits(idx as u32);
        if !s.fits(n) {
            return Err(UsoError::OutmapOutOfRange { vertex: v, n });
        }
    }
    for (idx, &s) in table.iter().enumerate() {
        let v = CoordSet::from_bits(idx as u32);
        // each edge once, from its endpoint without the coordinate
        for j in (CoordSet::full(n) - v).iter() {
            let w = v.toggle(j);
            let out_v = s.contains(j);
            let out_w = table[w.index()].contains(j);
            if out_v == out_w {
                return Err(UsoError::EdgeInconsistent {
                    vertex: v,
                    coord: j,
                    outgoing: out_v as u8 + out_w as u8,
                });
            }
        }
    }
    Ok(())
}

impl Orientation {
    /// Builds an orientation from an outmap table, rejecting tables that are
    /// not edge consistent.
    pub fn from_outmaps(n: usize, table: Vec<CoordSet>) -> Result<Self, UsoError> {
        check_table(n, &table)?;
        Ok(Orientation {
            n,
            outmap: table.into_boxed_slice(),
        })
    }

    /// Builds an orientation from a function giving each vertex's outmap.
    pub fn from_fn<F>(n: usize, mut outmap: F) -> Result<Self, UsoError>
    where
        F: FnMut(CoordSet) -> CoordSet,
    {
        check_dim(n)?;
        let table = (0..1u32 << n)
            .map(|b| outmap(CoordSet::from_bits(b)))
            .collect();
        Self::from_outmaps(n, table)
    }

    /// Skips validation; callers guarantee edge consistency.
    pub(crate) fn from_table_unchecked(n: usize, table: Vec<CoordSet>) -> Self {
        debug_assert!(validate_orientation(n, &table));
        Orientation {
            n,
            outmap: table.into_boxed_slice(),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.outmap.len()
    }

    #[inline]
    pub fn full(&self) -> CoordSet {
        CoordSet::full(self.n)
    }

    /// All vertices in index order.
    pub fn vertices(&self) -> impl Iterator<Item = CoordSet> + Clone {
        (0..self.outmap.len() as u32).map(CoordSet::from_bits)
    }

    #[inline]
    pub fn contains_vertex(&self, v: CoordSet) -> bool {
        v.fits(self.n)
    }

    /// `s(v)`; panics on vertices outside the cube.
    #[inline]
    pub fn outmap(&self, v: CoordSet) -> CoordSet {
        self.outmap[v.index()]
    }

    /// `s(v)` with a range check.
    pub fn outmap_of(&self, v: CoordSet) -> Result<CoordSet, UsoError> {
        if !self.contains_vertex(v) {
            return Err(UsoError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(self.outmap[v.index()])
    }

    pub fn table(&self) -> &[CoordSet] {
        &self.outmap
    }

    pub fn into_table(self) -> Vec<CoordSet> {
        self.outmap.into_vec()
    }

    /// `v → v ⊕ {j}` for `j ∈ s(v)`, ascending coordinate order.
    pub fn out_neighbors(&self, v: CoordSet) -> impl Iterator<Item = CoordSet> {
        self.outmap(v).iter().map(move |j| v.toggle(j))
    }

    pub fn check_coord(&self, coord: usize) -> Result<(), UsoError> {
        if coord == 0 || coord > self.n {
            return Err(UsoError::CoordinateOutOfRange { coord, n: self.n });
        }
        Ok(())
    }

    pub fn check_vertex(&self, v: CoordSet) -> Result<(), UsoError> {
        self.outmap_of(v).map(|_| ())
    }

    pub fn check_face(&self, f: &Face) -> Result<(), UsoError> {
        self.check_vertex(f.anchor() | f.span())
    }

    /// First vertex with empty outmap, if any.
    pub fn sink(&self) -> Option<CoordSet> {
        self.vertices().find(|&v| self.outmap(v).is_empty())
    }

    /// First vertex whose outmap is all of `[n]`, if any.
    pub fn source(&self) -> Option<CoordSet> {
        let full = self.full();
        self.vertices().find(|&v| self.outmap(v) == full)
    }

    /// The unique sink of `f`, or the reason `f` fails the unique-sink
    /// property.
    pub fn face_sink(&self, f: &Face) -> Result<CoordSet, UsoError> {
        self.check_face(f)?;
        let span = f.span();
        let mut found: Option<CoordSet> = None;
        for u in f.vertices() {
            if (self.outmap(u) & span).is_empty() {
                match found {
                    None => found = Some(u),
                    Some(first) => {
                        return Err(UsoError::MultipleSinks {
                            face: *f,
                            first,
                            second: u,
                        })
                    }
                }
            }
        }
        found.ok_or(UsoError::ZeroSinks { face: *f })
    }

    /// Unique-sink test via the pairwise criterion
    /// `(s(u) ⊕ s(v)) ∩ (u ⊕ v) ≠ ∅` for all `u ≠ v`.
    pub fn is_uso(&self) -> bool {
        let t = &self.outmap;
        for (a, &sa) in t.iter().enumerate() {
            for (b, &sb) in t.iter().enumerate().skip(a + 1) {
                if (sa.bits() ^ sb.bits()) & (a ^ b) as u32 == 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Exhaustive face scan over all `3^n` faces. Returns the first face
    /// without a unique sink, ordered by dimension, then span, then anchor.
    pub fn find_uso_violation(&self) -> Option<UsoError> {
        let n = self.n;
        let size = self.outmap.len();
        let mut sinks = vec![0u8; size];
        let mut first = vec![CoordSet::EMPTY; size];
        let mut second = vec![CoordSet::EMPTY; size];
        for d in 1..=n {
            for span_bits in 0..size as u32 {
                if span_bits.count_ones() as usize != d {
                    continue;
                }
                let span = CoordSet::from_bits(span_bits);
                sinks.fill(0);
                for v in self.vertices() {
                    if (self.outmap(v) & span).is_empty() {
                        let a = (v - span).index();
                        match sinks[a] {
                            0 => first[a] = v,
                            1 => second[a] = v,
                            _ => {}
                        }
                        sinks[a] = sinks[a].saturating_add(1);
                    }
                }
                for anchor in (CoordSet::full(n) - span).subsets() {
                    let a = anchor.index();
                    let face = Face::new(anchor, span);
                    match sinks[a] {
                        1 => {}
                        0 => return Some(UsoError::ZeroSinks { face }),
                        _ => {
                            return Some(UsoError::MultipleSinks {
                                face,
                                first: first[a],
                                second: second[a],
                            })
                        }
                    }
                }
            }
        }
        None
    }

    /// Exhaustive counterpart of [`is_uso`](Self::is_uso).
    pub fn is_uso_by_face_scan(&self) -> bool {
        self.find_uso_violation().is_none()
    }

    /// A topological order of the vertices, if the directed cube graph has
    /// no cycle.
    pub fn topological_order(&self) -> Option<Vec<CoordSet>> {
        let mut indeg: Vec<u8> = self
            .outmap
            .iter()
            .map(|s| (self.n - s.len()) as u8)
            .collect();
        let mut order: Vec<CoordSet> = self.vertices().filter(|v| indeg[v.index()] == 0).collect();
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for w in self.out_neighbors(v) {
                let d = &mut indeg[w.index()];
                *d -= 1;
                if *d == 0 {
                    order.push(w);
                }
            }
        }
        (order.len() == self.outmap.len()).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Whether all edges on `coord` inside `f` point the same way.
    pub fn is_combed_in(&self, f: &Face, coord: usize) -> bool {
        debug_assert!(f.span().contains(coord));
        let rest = f.span() - CoordSet::singleton(coord);
        let mut dir: Option<bool> = None;
        for s in rest.subsets() {
            let lower = f.anchor() | s;
            let forward = self.outmap(lower).contains(coord);
            match dir {
                None => dir = Some(forward),
                Some(d) if d != forward => return false,
                _ => {}
            }
        }
        true
    }

    /// A combed coordinate of `f`, smallest first.
    pub fn combed_coord(&self, f: &Face) -> Option<usize> {
        f.span().iter().find(|&c| self.is_combed_in(f, c))
    }

    /// Whether every face of dimension at least one has a combed coordinate.
    ///
    /// A face with combed coordinate `c` is decomposable iff both of its
    /// facets along `c` are, since every sub-face either lies in one of those
    /// facets or spans `c`.
    pub fn is_decomposable(&self) -> bool {
        let mut memo = BTreeSet::new();
        self.decomposable_face(Face::cube(self.n), &mut memo)
    }

    fn decomposable_face(&self, f: Face, memo: &mut BTreeSet<Face>) -> bool {
        if f.dim() <= 1 || memo.contains(&f) {
            return true;
        }
        let Some(c) = self.combed_coord(&f) else {
            return false;
        };
        let rest = f.span() - CoordSet::singleton(c);
        let lower = Face::new(f.anchor(), rest);
        let upper = Face::new(f.anchor() | CoordSet::singleton(c), rest);
        let ok = self.decomposable_face(lower, memo) && self.decomposable_face(upper, memo);
        if ok {
            memo.insert(f);
        }
        ok
    }

    /// Whether no vertex of `f` has an outgoing edge leaving `f`.
    pub fn is_hypersink(&self, f: &Face) -> bool {
        let outside = self.full() - f.span();
        f.vertices().all(|v| (self.outmap(v) & outside).is_empty())
    }

    /// The orientation induced on `f`, relabelled to a `dim(f)`-cube through
    /// [`Face::local`].
    pub fn restrict(&self, f: &Face) -> Result<Orientation, UsoError> {
        self.check_face(f)?;
        if f.dim() == 0 {
            return Err(UsoError::DimensionOutOfRange { n: 0, max: MAX_DIM });
        }
        let span = f.span();
        let table = (0..1u32 << f.dim())
            .map(|l| {
                let v = f.global(CoordSet::from_bits(l));
                (self.outmap(v) & span).extract(span)
            })
            .collect();
        Ok(Orientation::from_table_unchecked(f.dim(), table))
    }

    /// Directed edges `v → v ⊕ {j}` with `j ∈ v`, i.e. edges pointing to the
    /// smaller endpoint.
    pub fn backward_edges(&self) -> Vec<(CoordSet, usize)> {
        let mut out = Vec::new();
        for v in self.vertices() {
            for j in (self.outmap(v) & v).iter() {
                out.push((v, j));
            }
        }
        out
    }
}

impl core::fmt::Debug for Orientation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Orientation")
            .field("n", &self.n)
            .field("outmap", &self.outmap)
            .finish()
    }
}
