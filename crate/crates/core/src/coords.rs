//! Coordinate sets over `[n]`, stored as a single machine word.
//!
//! Bit `i - 1` stands for coordinate `i`. The same type is used for hypercube
//! vertices (a vertex is the set of coordinates it contains), for face spans,
//! and for outmap and reachmap values.

use core::fmt;
use core::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, BitXor, BitXorAssign, Not, Sub};

/// Largest dimension whose full vertex table we are willing to materialize.
pub const MAX_DIM: usize = 24;

/// A subset of `[n]` as a bitmask.
#[derive(Copy, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct CoordSet(u32);

impl CoordSet {
    pub const EMPTY: CoordSet = CoordSet(0);

    #[inline]
    pub const fn from_bits(bits: u32) -> Self {
        CoordSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        self.0
    }

    /// Vertex index of this set when it is read as a vertex.
    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    /// `[n] = {1, ..., n}`.
    #[inline]
    pub const fn full(n: usize) -> Self {
        if n >= 32 {
            CoordSet(u32::MAX)
        } else {
            CoordSet((1u32 << n) - 1)
        }
    }

    /// `{coord}` for a 1-based coordinate.
    #[inline]
    pub const fn singleton(coord: usize) -> Self {
        debug_assert!(coord >= 1 && coord <= 32);
        CoordSet(1u32 << (coord - 1))
    }

    pub fn from_coords<I: IntoIterator<Item = usize>>(coords: I) -> Self {
        coords
            .into_iter()
            .fold(CoordSet::EMPTY, |acc, c| acc | CoordSet::singleton(c))
    }

    #[inline]
    pub const fn contains(self, coord: usize) -> bool {
        coord >= 1 && coord <= 32 && self.0 & (1u32 << (coord - 1)) != 0
    }

    #[inline]
    pub fn insert(&mut self, coord: usize) {
        *self |= CoordSet::singleton(coord);
    }

    #[inline]
    pub fn remove(&mut self, coord: usize) {
        *self = *self - CoordSet::singleton(coord);
    }

    /// `self ⊕ {coord}`.
    #[inline]
    pub const fn toggle(self, coord: usize) -> Self {
        CoordSet(self.0 ^ (1u32 << (coord - 1)))
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn is_subset(self, other: CoordSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn is_superset_of(self, other: CoordSet) -> bool {
        other.is_subset(self)
    }

    /// Strict inclusion `self ⊂ other`.
    #[inline]
    pub const fn is_proper_subset(self, other: CoordSet) -> bool {
        self.is_subset(other) && self.0 != other.0
    }

    /// Smallest coordinate in the set.
    #[inline]
    pub const fn min_coord(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize + 1)
        }
    }

    /// The `k`-th smallest coordinate (0-based rank).
    pub fn nth_coord(self, k: usize) -> Option<usize> {
        self.iter().nth(k)
    }

    /// True iff only the low `n` bits may be set.
    #[inline]
    pub const fn fits(self, n: usize) -> bool {
        self.is_subset(CoordSet::full(n))
    }

    /// Coordinates in ascending order.
    #[inline]
    pub fn iter(self) -> Coords {
        Coords(self.0)
    }

    /// All subsets of `self`, in increasing order of their bitmask.
    #[inline]
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }

    /// Packs the bits of `self` selected by `mask` into the low positions.
    pub fn extract(self, mask: CoordSet) -> CoordSet {
        let mut out = 0u32;
        let mut m = mask.0;
        let mut k = 0;
        while m != 0 {
            let low = m & m.wrapping_neg();
            if self.0 & low != 0 {
                out |= 1 << k;
            }
            k += 1;
            m &= m - 1;
        }
        CoordSet(out)
    }

    /// Inverse of [`extract`](Self::extract): spreads the low bits of `self`
    /// onto the positions selected by `mask`.
    pub fn deposit(self, mask: CoordSet) -> CoordSet {
        let mut out = 0u32;
        let mut m = mask.0;
        let mut k = 0;
        while m != 0 {
            let low = m & m.wrapping_neg();
            if self.0 & (1 << k) != 0 {
                out |= low;
            }
            k += 1;
            m &= m - 1;
        }
        CoordSet(out)
    }
}

impl BitOr for CoordSet {
    type Output = CoordSet;
    #[inline]
    fn bitor(self, rhs: CoordSet) -> CoordSet {
        CoordSet(self.0 | rhs.0)
    }
}

impl BitOrAssign for CoordSet {
    #[inline]
    fn bitor_assign(&mut self, rhs: CoordSet) {
        self.0 |= rhs.0;
    }
}

impl BitAnd for CoordSet {
    type Output = CoordSet;
    #[inline]
    fn bitand(self, rhs: CoordSet) -> CoordSet {
        CoordSet(self.0 & rhs.0)
    }
}

impl BitAndAssign for CoordSet {
    #[inline]
    fn bitand_assign(&mut self, rhs: CoordSet) {
        self.0 &= rhs.0;
    }
}

impl BitXor for CoordSet {
    type Output = CoordSet;
    #[inline]
    fn bitxor(self, rhs: CoordSet) -> CoordSet {
        CoordSet(self.0 ^ rhs.0)
    }
}

impl BitXorAssign for CoordSet {
    #[inline]
    fn bitxor_assign(&mut self, rhs: CoordSet) {
        self.0 ^= rhs.0;
    }
}

/// Set difference.
impl Sub for CoordSet {
    type Output = CoordSet;
    #[inline]
    fn sub(self, rhs: CoordSet) -> CoordSet {
        CoordSet(self.0 & !rhs.0)
    }
}

/// Complement within the full machine word; intersect with
/// [`CoordSet::full`] to stay inside a dimension.
impl Not for CoordSet {
    type Output = CoordSet;
    #[inline]
    fn not(self) -> CoordSet {
        CoordSet(!self.0)
    }
}

impl IntoIterator for CoordSet {
    type Item = usize;
    type IntoIter = Coords;
    fn into_iter(self) -> Coords {
        self.iter()
    }
}

impl FromIterator<usize> for CoordSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        CoordSet::from_coords(iter)
    }
}

impl fmt::Debug for CoordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CoordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, c) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

/// Iterator over the coordinates of a [`CoordSet`], ascending.
#[derive(Clone, Debug)]
pub struct Coords(u32);

impl Iterator for Coords {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let c = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(c)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Coords {}

/// Iterator over all subsets of a mask.
#[derive(Clone, Debug)]
pub struct Subsets {
    mask: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = CoordSet;

    #[inline]
    fn next(&mut self) -> Option<CoordSet> {
        let cur = self.next?;
        // standard submask successor: (cur - mask) & mask walks upward
        let succ = cur.wrapping_sub(self.mask) & self.mask;
        self.next = if succ == 0 { None } else { Some(succ) };
        Some(CoordSet(cur))
    }
}
