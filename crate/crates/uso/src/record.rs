//! One CSV row per algorithm run.

use std::io::{self, Write};

use uso_core::algo::RunStats;

use crate::family::Family;
use crate::harness::Algorithm;

pub const CSV_HEADER: &str = "family,n,seed,algorithm,steps,evaluations,capped,wall_ms";

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExperimentRecord {
    pub family: String,
    pub n: usize,
    pub seed: u64,
    pub algorithm: String,
    pub steps: u64,
    pub evaluations: u64,
    pub capped: bool,
    /// Zero unless timing was requested.
    pub wall_ms: u64,
}

impl ExperimentRecord {
    pub fn new(family: &str, n: usize, algo: Algorithm, run: &RunStats) -> Self {
        ExperimentRecord {
            family: family.to_string(),
            n,
            seed: run.seed,
            algorithm: algo.name().to_string(),
            steps: run.steps,
            evaluations: run.evaluations,
            capped: run.capped,
            wall_ms: 0,
        }
    }

    pub fn for_family(family: Family, n: usize, algo: Algorithm, run: &RunStats) -> Self {
        Self::new(family.name(), n, algo, run)
    }

    pub fn write_csv<W: Write>(&self, w: &mut W) -> io::Result<()> {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            self.family,
            self.n,
            self.seed,
            self.algorithm,
            self.steps,
            self.evaluations,
            self.capped,
            self.wall_ms
        )
    }
}

/// Header plus rows, sorted by family, dimension and seed.
pub fn write_csv<W: Write>(w: &mut W, records: &mut [ExperimentRecord]) -> io::Result<()> {
    records.sort_by(|a, b| (&a.family, a.n, a.seed).cmp(&(&b.family, b.n, b.seed)));
    writeln!(w, "{CSV_HEADER}")?;
    for r in records.iter() {
        r.write_csv(w)?;
    }
    Ok(())
}
