//! Parallel experiment execution with results independent of thread count.

use std::env;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};
use uso_core::algo::{
    bottom_antipodal, derandomized_re, derive_seed, fibonacci_seesaw, fs_revisited, run_trial,
    trial_start, RunStats, StartPolicy,
};
use uso_core::enumerate::{
    check_enum_dim, enumerate_rooted, root_outmaps, Branching, Census, CensusBuilder,
};
use uso_core::{Face, Orientation, UsoError};

/// Name of the variable capping the worker count (`0` or unset = automatic).
pub const THREADS_VAR: &str = "USO_THREADS";

/// Worker pool sized from [`THREADS_VAR`].
pub fn thread_pool() -> Result<ThreadPool, String> {
    let threads = match env::var(THREADS_VAR) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("{THREADS_VAR} must be a non-negative integer, got `{v}`"))?,
        Err(_) => 0,
    };
    ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| e.to_string())
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    RandomEdge,
    BottomAntipodal,
    Derandomized,
    Seesaw,
    SeesawRevisited,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::RandomEdge => "re",
            Algorithm::BottomAntipodal => "ba",
            Algorithm::Derandomized => "dre",
            Algorithm::Seesaw => "fs",
            Algorithm::SeesawRevisited => "fsr",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        [
            Algorithm::RandomEdge,
            Algorithm::BottomAntipodal,
            Algorithm::Derandomized,
            Algorithm::Seesaw,
            Algorithm::SeesawRevisited,
        ]
        .into_iter()
        .find(|a| a.name() == s)
        .ok_or_else(|| format!("unknown algorithm `{s}` (expected re, ba, dre, fs or fsr)"))
    }
}

/// Trial `index` of `algo` on `o`. Every trial owns the seed
/// `derive_seed(master_seed, index)`; deterministic algorithms use it only to
/// pick the start vertex.
pub fn run_one(
    o: &Orientation,
    algo: Algorithm,
    policy: StartPolicy,
    master_seed: u64,
    index: u64,
    cap: u64,
) -> Result<RunStats, UsoError> {
    let seed = derive_seed(master_seed, index);
    let start = trial_start(o, policy, seed);
    let mut stats = match algo {
        Algorithm::RandomEdge => return run_trial(o, policy, master_seed, index, cap),
        Algorithm::BottomAntipodal => bottom_antipodal(o, start, cap)?,
        Algorithm::Derandomized => derandomized_re(o, start)?,
        Algorithm::Seesaw => {
            let (t, evaluations) = fibonacci_seesaw(o, Face::cube(o.dim()))?;
            RunStats {
                start,
                steps: 0,
                evaluations,
                found_sink: Some(t),
                seed,
                capped: false,
            }
        }
        Algorithm::SeesawRevisited => {
            let (t, trace) = fs_revisited(o, start)?;
            RunStats {
                start,
                steps: trace.iterations() as u64,
                evaluations: trace.evaluations,
                found_sink: Some(t),
                seed,
                capped: false,
            }
        }
    };
    stats.seed = seed;
    Ok(stats)
}

/// Runs trials `0..trials` on the current rayon pool; results are in trial
/// order.
pub fn run_trials(
    o: &Orientation,
    algo: Algorithm,
    policy: StartPolicy,
    trials: u64,
    master_seed: u64,
    cap: u64,
) -> Result<Vec<RunStats>, UsoError> {
    (0..trials)
        .into_par_iter()
        .map(|i| run_one(o, algo, policy, master_seed, i, cap))
        .collect()
}

/// Number of USOs of dimension `n`, one task per outmap of vertex `∅`.
pub fn count_parallel(n: usize, heavy: bool) -> Result<u64, UsoError> {
    check_enum_dim(n, heavy)?;
    root_outmaps(n, Branching::Ascending)
        .into_par_iter()
        .map(|root| enumerate_rooted(n, heavy, root, Branching::Ascending, |_| {}))
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// Census computed per root subtree and merged in root order.
pub fn census_parallel(n: usize, heavy: bool) -> Result<Census, UsoError> {
    check_enum_dim(n, heavy)?;
    let parts: Vec<CensusBuilder> = root_outmaps(n, Branching::Ascending)
        .into_par_iter()
        .map(|root| {
            let mut builder = CensusBuilder::new(n);
            let mut failure = None;
            enumerate_rooted(n, heavy, root, Branching::Ascending, |t| {
                if failure.is_none() {
                    failure = builder.add_table(t).err();
                }
            })?;
            failure.map_or(Ok(builder), Err)
        })
        .collect::<Result<_, _>>()?;
    let mut total = CensusBuilder::new(n);
    for p in parts {
        total.merge(p);
    }
    Ok(total.finish())
}
