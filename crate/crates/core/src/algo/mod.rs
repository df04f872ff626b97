//! Sink-finding algorithms in the vertex-oracle model.

mod derandomized;
mod join;
mod seesaw;
mod walk;

pub use derandomized::{derandomized_re, derandomized_re_with_trace, DerandomizedRound};
pub use join::{
    join_pair, join_pair_with, join_set, join_set_with, neighbor_join, neighbor_join_with, Joined,
};
pub use seesaw::{fibonacci_seesaw, fibonacci_seesaw_with, fs_revisited, SeesawStep, SeesawTrace};
pub use walk::{
    bottom_antipodal, derive_seed, markov_upper_bound, random_edge_walk, re_trials, run_trial,
    summarize, trial_start, StartPolicy, TrialSummary,
};

use crate::coords::CoordSet;

/// Outcome of one algorithm run.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RunStats {
    pub start: CoordSet,
    pub steps: u64,
    /// Distinct vertices evaluated.
    pub evaluations: u64,
    pub found_sink: Option<CoordSet>,
    pub seed: u64,
    pub capped: bool,
}
