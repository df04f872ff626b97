//! Named orientation families.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use uso_core::construct::{
    auso_lower_bound, cyclic_full_reach, klee_minty, random_fmo, random_product,
    random_target_combed, uniform,
};
use uso_core::{Orientation, UsoError, MAX_DIM};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Uniform,
    KleeMinty,
    Fmo,
    TargetCombed,
    CyclicLb,
    AusoLb,
    Product,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Uniform,
        Family::KleeMinty,
        Family::Fmo,
        Family::TargetCombed,
        Family::CyclicLb,
        Family::AusoLb,
        Family::Product,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Uniform => "uniform",
            Family::KleeMinty => "km",
            Family::Fmo => "fmo",
            Family::TargetCombed => "target-combed",
            Family::CyclicLb => "cyclic-lb",
            Family::AusoLb => "auso-lb",
            Family::Product => "product",
        }
    }

    /// Whether the seed influences the generated instance.
    pub fn is_random(self) -> bool {
        matches!(self, Family::Fmo | Family::TargetCombed | Family::Product)
    }

    /// Smallest dimension the family is defined for.
    pub fn min_dim(self) -> usize {
        match self {
            Family::CyclicLb => 3,
            Family::AusoLb => 4,
            Family::Product => 2,
            _ => 1,
        }
    }

    /// The instance of dimension `n`; random families draw from `seed`.
    pub fn generate(self, n: usize, seed: u64) -> Result<Orientation, UsoError> {
        if n > MAX_DIM || n == 0 {
            return Err(UsoError::DimensionOutOfRange { n, max: MAX_DIM });
        }
        if n < self.min_dim() {
            return Err(UsoError::DimensionTooSmall {
                n,
                min: self.min_dim(),
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(match self {
            Family::Uniform => uniform(n, true),
            Family::KleeMinty => klee_minty(n),
            Family::Fmo => random_fmo(n, &mut rng),
            Family::TargetCombed => random_target_combed(n, &mut rng),
            Family::CyclicLb => cyclic_full_reach(n)?,
            Family::AusoLb => auso_lower_bound(n)?,
            Family::Product => random_product(n, &mut rng),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
                format!(
                    "unknown family `{s}` (expected one of {})",
                    names.join(", ")
                )
            })
    }
}
