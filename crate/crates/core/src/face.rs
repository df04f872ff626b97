use core::fmt;

use crate::coords::CoordSet;

/// The face `{u : u ⊕ anchor ⊆ span}`.
///
/// The anchor is stored with its span bits cleared, so two faces compare
/// equal exactly when they contain the same vertices.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Face {
    anchor: CoordSet,
    span: CoordSet,
}

impl Face {
    #[inline]
    pub fn new(anchor: CoordSet, span: CoordSet) -> Self {
        Face {
            anchor: anchor - span,
            span,
        }
    }

    /// The whole `n`-cube.
    #[inline]
    pub fn cube(n: usize) -> Self {
        Face::new(CoordSet::EMPTY, CoordSet::full(n))
    }

    /// The 1-face `{v, v ⊕ {coord}}`.
    #[inline]
    pub fn edge(v: CoordSet, coord: usize) -> Self {
        Face::new(v, CoordSet::singleton(coord))
    }

    #[inline]
    pub fn vertex(v: CoordSet) -> Self {
        Face::new(v, CoordSet::EMPTY)
    }

    /// Normalized anchor: the member of the face with no span coordinates.
    #[inline]
    pub fn anchor(&self) -> CoordSet {
        self.anchor
    }

    #[inline]
    pub fn span(&self) -> CoordSet {
        self.span
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.span.len()
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        1usize << self.dim()
    }

    #[inline]
    pub fn contains(&self, v: CoordSet) -> bool {
        (v ^ self.anchor).is_subset(self.span)
    }

    /// Vertices of the face, anchor first.
    pub fn vertices(&self) -> impl Iterator<Item = CoordSet> + '_ {
        let anchor = self.anchor;
        self.span.subsets().map(move |s| anchor | s)
    }

    /// Local label of `v` inside the face: its span coordinates packed into
    /// the low bits.
    #[inline]
    pub fn local(&self, v: CoordSet) -> CoordSet {
        v.extract(self.span)
    }

    /// Inverse of [`local`](Self::local).
    #[inline]
    pub fn global(&self, local: CoordSet) -> CoordSet {
        self.anchor | local.deposit(self.span)
    }

    /// The face with the same span through the antipodal vertex inside the
    /// cube spanned by `outer` (which must contain `span`).
    pub fn antipodal_within(&self, outer: CoordSet) -> Face {
        Face::new(self.anchor ^ (outer - self.span), self.span)
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F[span={}, anchor={}]", self.span, self.anchor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn equality_ignores_anchor_bits_inside_span() {
        let span = CoordSet::from_coords([1, 2]);
        let a = Face::new(CoordSet::from_coords([1, 3]), span);
        let b = Face::new(CoordSet::from_coords([2, 3]), span);
        assert_eq!(a, b);
        assert_ne!(a, Face::new(CoordSet::from_coords([1]), span));
    }

    #[test]
    fn vertices_and_local_labels() {
        let f = Face::new(CoordSet::from_coords([3]), CoordSet::from_coords([1, 4]));
        let vs: Vec<_> = f.vertices().collect();
        assert_eq!(vs.len(), f.vertex_count());
        assert_eq!(f.dim(), 2);
        for v in vs {
            assert!(f.contains(v));
            assert_eq!(f.global(f.local(v)), v);
        }
        assert!(!f.contains(CoordSet::from_coords([1])));
    }
}
