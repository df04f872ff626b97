//! Unique sink orientations (USOs) of hypercubes.
//!
//! An orientation of the `n`-cube is stored as its outmap table: vertex `v`
//! (a subset of `[n]`) maps to the set `s(v)` of coordinates whose edges
//! leave `v`. The crate provides validation, reachmaps and the niceness
//! index, the standard constructions, oracle-model sink-finding algorithms
//! and exhaustive enumeration for small dimensions.
//!
//! ```
//! use uso_core::{construct, reach, CoordSet};
//!
//! let km = construct::klee_minty(4);
//! assert!(km.is_uso());
//! assert_eq!(km.sink(), Some(CoordSet::EMPTY));
//! assert_eq!(reach::niceness_index(&km).unwrap().niceness_index, 1);
//! ```

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algo;
pub mod canonical;
pub mod construct;
pub mod coords;
pub mod enumerate;
pub mod error;
pub mod face;
pub mod oracle;
pub mod orientation;
pub mod reach;

pub use coords::{CoordSet, MAX_DIM};
pub use error::UsoError;
pub use face::Face;
pub use oracle::Oracle;
pub use orientation::{validate_orientation, Orientation};
