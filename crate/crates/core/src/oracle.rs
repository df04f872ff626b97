use alloc::vec;
use alloc::vec::Vec;

use crate::coords::CoordSet;
use crate::orientation::Orientation;

/// Number of distinct vertex evaluations made during one run.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct EvalCounter {
    evaluations: u64,
}

impl EvalCounter {
    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }
}

/// Vertex-oracle view over an [`Orientation`].
///
/// Every call to [`eval`](Self::eval) returns `s(v)`; only the first query
/// of each vertex is counted.
pub struct Oracle<'a> {
    o: &'a Orientation,
    seen: Vec<u64>,
    counter: EvalCounter,
}

impl<'a> Oracle<'a> {
    pub fn new(o: &'a Orientation) -> Self {
        Oracle {
            o,
            seen: vec![0; o.vertex_count().div_ceil(64)],
            counter: EvalCounter::default(),
        }
    }

    pub fn orientation(&self) -> &'a Orientation {
        self.o
    }

    pub fn dim(&self) -> usize {
        self.o.dim()
    }

    pub fn eval(&mut self, v: CoordSet) -> CoordSet {
        let i = v.index();
        let (word, bit) = (i / 64, 1u64 << (i % 64));
        if self.seen[word] & bit == 0 {
            self.seen[word] |= bit;
            self.counter.evaluations += 1;
        }
        self.o.outmap(v)
    }

    pub fn is_evaluated(&self, v: CoordSet) -> bool {
        let i = v.index();
        self.seen[i / 64] & (1u64 << (i % 64)) != 0
    }

    pub fn evaluations(&self) -> u64 {
        self.counter.evaluations
    }

    pub fn counter(&self) -> EvalCounter {
        self.counter
    }
}
