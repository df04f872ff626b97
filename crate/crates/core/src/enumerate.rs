//! Exhaustive generation and classification of small USOs.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::canonical::canonical_form;
use crate::coords::CoordSet;
use crate::error::UsoError;
use crate::orientation::{validate_orientation, Orientation};
use crate::reach::niceness_index;

/// Largest dimension enumerated by default.
pub const ENUM_MAX_DIM: usize = 3;
/// Largest dimension enumerated when the caller opts into long runs.
pub const ENUM_HEAVY_MAX_DIM: usize = 4;

/// Order in which the free outmap bits of each vertex are tried.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum Branching {
    #[default]
    Ascending,
    Descending,
}

/// Checks `n` against the enumeration limits.
pub fn check_enum_dim(n: usize, heavy: bool) -> Result<(), UsoError> {
    let max = if heavy {
        ENUM_HEAVY_MAX_DIM
    } else {
        ENUM_MAX_DIM
    };
    if n == 0 {
        return Err(UsoError::DimensionOutOfRange { n, max });
    }
    if n > max {
        return Err(UsoError::DimensionTooLarge { n, max });
    }
    Ok(())
}

/// Visits every USO of dimension `n` exactly once and returns how many
/// there are. Dimension 4 needs `heavy`.
pub fn enumerate_all<F: FnMut(&[CoordSet])>(
    n: usize,
    heavy: bool,
    visitor: F,
) -> Result<u64, UsoError> {
    enumerate_with(n, heavy, Branching::Ascending, visitor)
}

/// [`enumerate_all`] with an explicit branching order.
pub fn enumerate_with<F: FnMut(&[CoordSet])>(
    n: usize,
    heavy: bool,
    branching: Branching,
    mut visitor: F,
) -> Result<u64, UsoError> {
    check_enum_dim(n, heavy)?;
    let mut count = 0;
    for root in root_outmaps(n, branching) {
        count += enumerate_rooted(n, heavy, root, branching, &mut visitor)?;
    }
    Ok(count)
}

/// Candidate outmaps of vertex `∅`, one per independent subtree.
pub fn root_outmaps(n: usize, branching: Branching) -> Vec<CoordSet> {
    let mut roots: Vec<_> = CoordSet::full(n).subsets().collect();
    if branching == Branching::Descending {
        roots.reverse();
    }
    roots
}

/// Enumerates the USOs with `s(∅) = root`.
pub fn enumerate_rooted<F: FnMut(&[CoordSet])>(
    n: usize,
    heavy: bool,
    root: CoordSet,
    branching: Branching,
    mut visitor: F,
) -> Result<u64, UsoError> {
    check_enum_dim(n, heavy)?;
    if !root.fits(n) {
        return Err(UsoError::OutmapOutOfRange {
            vertex: CoordSet::EMPTY,
            n,
        });
    }
    let mut table = vec![CoordSet::EMPTY; 1 << n];
    table[0] = root;
    let mut search = Search {
        n,
        table: &mut table,
        branching,
        count: 0,
    };
    search.run(1, &mut visitor);
    Ok(search.count)
}

struct Search<'a> {
    n: usize,
    table: &'a mut [CoordSet],
    branching: Branching,
    count: u64,
}

impl Search<'_> {
    fn run<F: FnMut(&[CoordSet])>(&mut self, v: usize, visitor: &mut F) {
        if v == self.table.len() {
            // pruning is only a speed-up; membership is decided here
            if validate_orientation(self.n, self.table)
                && Orientation::from_table_unchecked(self.n, self.table.to_vec())
                    .is_uso_by_face_scan()
            {
                self.count += 1;
                visitor(self.table);
            }
            return;
        }
        let vs = CoordSet::from_bits(v as u32);
        // edges to lower neighbours are already oriented
        let mut fixed = CoordSet::EMPTY;
        for j in vs {
            if !self.table[vs.toggle(j).index()].contains(j) {
                fixed.insert(j);
            }
        }
        let free = CoordSet::full(self.n) - vs;
        for sub in free.subsets() {
            let sub = match self.branching {
                Branching::Ascending => sub,
                Branching::Descending => free - sub,
            };
            let s = fixed | sub;
            let compatible = (0..v).all(|u| {
                let uc = CoordSet::from_bits(u as u32);
                !((s ^ self.table[u]) & (vs ^ uc)).is_empty()
            });
            if compatible {
                self.table[v] = s;
                self.run(v + 1, visitor);
            }
        }
    }
}

/// One isomorphism class in a census.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IsoClass {
    /// Lexicographically smallest outmap table in the class.
    pub canonical: Vec<CoordSet>,
    pub count: u64,
    pub acyclic: bool,
    pub decomposable: bool,
    pub niceness: u32,
}

/// Classification of every USO of one dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Census {
    pub n: usize,
    pub total_uso: u64,
    pub acyclic: u64,
    pub cyclic: u64,
    pub decomposable: u64,
    pub niceness_histogram: BTreeMap<u32, u64>,
    /// Present for `n ≤ 3`; ordered by canonical table.
    pub iso_classes: Option<Vec<IsoClass>>,
}

impl Census {
    /// Number of USOs whose niceness index is `i`.
    pub fn with_niceness(&self, i: u32) -> u64 {
        self.niceness_histogram.get(&i).copied().unwrap_or(0)
    }
}

/// Mergeable census accumulator.
#[derive(Clone, Debug)]
pub struct CensusBuilder {
    n: usize,
    total: u64,
    acyclic: u64,
    decomposable: u64,
    histogram: BTreeMap<u32, u64>,
    classes: Option<BTreeMap<Vec<CoordSet>, IsoClass>>,
}

impl CensusBuilder {
    /// Isomorphism classes are tracked iff `n ≤ 3`.
    pub fn new(n: usize) -> Self {
        CensusBuilder {
            n,
            total: 0,
            acyclic: 0,
            decomposable: 0,
            histogram: BTreeMap::new(),
            classes: (n <= ENUM_MAX_DIM).then(BTreeMap::new),
        }
    }

    pub fn add_table(&mut self, table: &[CoordSet]) -> Result<(), UsoError> {
        let o = Orientation::from_outmaps(self.n, table.to_vec())?;
        self.add(&o)
    }

    pub fn add(&mut self, o: &Orientation) -> Result<(), UsoError> {
        if o.dim() != self.n {
            return Err(UsoError::DimensionMismatch {
                expected: self.n,
                found: o.dim(),
            });
        }
        let acyclic = o.is_acyclic();
        let decomposable = o.is_decomposable();
        let niceness = niceness_index(o)?.niceness_index;
        self.total += 1;
        self.acyclic += acyclic as u64;
        self.decomposable += decomposable as u64;
        *self.histogram.entry(niceness).or_default() += 1;
        if let Some(classes) = &mut self.classes {
            let canonical = canonical_form(o)?.into_table();
            classes
                .entry(canonical.clone())
                .or_insert(IsoClass {
                    canonical,
                    count: 0,
                    acyclic,
                    decomposable,
                    niceness,
                })
                .count += 1;
        }
        Ok(())
    }

    /// Folds another partial census of the same dimension into this one.
    pub fn merge(&mut self, other: CensusBuilder) {
        assert_eq!(self.n, other.n, "merging censuses of different dimensions");
        self.total += other.total;
        self.acyclic += other.acyclic;
        self.decomposable += other.decomposable;
        for (k, c) in other.histogram {
            *self.histogram.entry(k).or_default() += c;
        }
        if let (Some(mine), Some(theirs)) = (&mut self.classes, other.classes) {
            for (key, class) in theirs {
                match mine.get_mut(&key) {
                    Some(c) => c.count += class.count,
                    None => {
                        mine.insert(key, class);
                    }
                }
            }
        }
    }

    pub fn finish(self) -> Census {
        Census {
            n: self.n,
            total_uso: self.total,
            acyclic: self.acyclic,
            cyclic: self.total - self.acyclic,
            decomposable: self.decomposable,
            niceness_histogram: self.histogram,
            iso_classes: self.classes.map(|c| c.into_values().collect()),
        }
    }
}

/// Full classification of all USOs of dimension `n ≤ 3`, or `n = 4` with
/// `heavy` (counts only, no isomorphism classes).
pub fn census_with(n: usize, heavy: bool) -> Result<Census, UsoError> {
    check_enum_dim(n, heavy)?;
    let mut builder = CensusBuilder::new(n);
    let mut failure = None;
    enumerate_all(n, heavy, |t| {
        if failure.is_none() {
            if let Err(e) = builder.add_table(t) {
                failure = Some(e);
            }
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(builder.finish()),
    }
}

/// [`census_with`] restricted to `n ≤ 3`.
pub fn census(n: usize) -> Result<Census, UsoError> {
    census_with(n, false)
}

/// Checks `2·F(n−1)² ≤ F(n) ≤ 2n·F(n−1)²` for the enumerated counts `F`
/// of decomposable USOs, `n ∈ {2, 3}`.
pub fn recurrence_check(n: usize) -> Result<bool, UsoError> {
    if n < 2 {
        return Err(UsoError::DimensionTooSmall { n, min: 2 });
    }
    check_enum_dim(n, false)?;
    let prev = census(n - 1)?.decomposable;
    let cur = census(n)?.decomposable;
    let sq = prev * prev;
    Ok(2 * sq <= cur && cur <= 2 * n as u64 * sq)
}
