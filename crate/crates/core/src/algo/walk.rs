use alloc::vec::Vec;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::RunStats;
use crate::coords::CoordSet;
use crate::error::UsoError;
use crate::oracle::Oracle;
use crate::orientation::Orientation;

/// Random Edge: from the current vertex follow a uniformly random outgoing
/// edge until the sink is reached or `cap` steps have been taken.
///
/// The walk is a pure function of `(o, start, seed, cap)`.
pub fn random_edge_walk(
    o: &Orientation,
    start: CoordSet,
    seed: u64,
    cap: u64,
) -> Result<RunStats, UsoError> {
    o.check_vertex(start)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut oracle = Oracle::new(o);
    let mut v = start;
    let mut steps = 0;
    loop {
        let out = oracle.eval(v);
        if out.is_empty() {
            return Ok(RunStats {
                start,
                steps,
                evaluations: oracle.evaluations(),
                found_sink: Some(v),
                seed,
                capped: false,
            });
        }
        if steps >= cap {
            return Ok(RunStats {
                start,
                steps,
                evaluations: oracle.evaluations(),
                found_sink: None,
                seed,
                capped: true,
            });
        }
        let k = rng.random_range(0..out.len());
        let j = out.nth_coord(k).expect("rank within outmap");
        v = v.toggle(j);
        steps += 1;
    }
}

/// Bottom Antipodal: jump `v ← v ⊕ s(v)` until the sink or the cap.
pub fn bottom_antipodal(o: &Orientation, start: CoordSet, cap: u64) -> Result<RunStats, UsoError> {
    o.check_vertex(start)?;
    let mut oracle = Oracle::new(o);
    let mut v = start;
    let mut steps = 0;
    loop {
        let out = oracle.eval(v);
        if out.is_empty() || steps >= cap {
            return Ok(RunStats {
                start,
                steps,
                evaluations: oracle.evaluations(),
                found_sink: out.is_empty().then_some(v),
                seed: 0,
                capped: !out.is_empty(),
            });
        }
        v ^= out;
        steps += 1;
    }
}

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of substream `index` under `master`. Independent of how trials are
/// scheduled.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    mix64(master ^ mix64(index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15)))
}

/// Where each trial starts.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum StartPolicy {
    Fixed(CoordSet),
    /// Uniformly random vertex drawn from the trial's own seed.
    Random,
}

/// Runs trial `index` of a Random Edge experiment.
pub fn run_trial(
    o: &Orientation,
    policy: StartPolicy,
    master_seed: u64,
    index: u64,
    cap: u64,
) -> Result<RunStats, UsoError> {
    let seed = derive_seed(master_seed, index);
    random_edge_walk(o, trial_start(o, policy, seed), seed, cap)
}

/// Start vertex of the trial with seed `trial_seed`. Random starts come from
/// a stream separate from the walk's own.
pub fn trial_start(o: &Orientation, policy: StartPolicy, trial_seed: u64) -> CoordSet {
    match policy {
        StartPolicy::Fixed(v) => v,
        StartPolicy::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(mix64(trial_seed ^ 0x5354_4152_5400_0000));
            CoordSet::from_bits(rng.random_range(0..o.vertex_count() as u32))
        }
    }
}

/// Aggregate of many independent runs.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TrialSummary {
    pub trials: u64,
    pub mean: f64,
    /// Population variance of the step counts.
    pub variance: f64,
    pub min: u64,
    pub max: u64,
    pub p50: u64,
    pub p90: u64,
    pub p99: u64,
    pub mean_evaluations: f64,
    pub capped: u64,
}

fn nearest_rank(sorted: &[u64], q: f64) -> u64 {
    let n = sorted.len();
    let rank = (q * n as f64) as usize;
    let rank = if (rank as f64) < q * n as f64 {
        rank + 1
    } else {
        rank
    };
    sorted[rank.clamp(1, n) - 1]
}

/// Summary statistics of a set of runs, accumulated in the given order.
pub fn summarize(runs: &[RunStats]) -> TrialSummary {
    assert!(!runs.is_empty(), "no runs to summarize");
    let count = runs.len() as f64;
    let mut sorted: Vec<u64> = runs.iter().map(|r| r.steps).collect();
    let mean = sorted.iter().map(|&s| s as f64).sum::<f64>() / count;
    let variance = sorted
        .iter()
        .map(|&s| {
            let d = s as f64 - mean;
            d * d
        })
        .sum::<f64>()
        / count;
    let mean_evaluations = runs.iter().map(|r| r.evaluations as f64).sum::<f64>() / count;
    sorted.sort_unstable();
    TrialSummary {
        trials: runs.len() as u64,
        mean,
        variance,
        min: sorted[0],
        max: sorted[sorted.len() - 1],
        p50: nearest_rank(&sorted, 0.5),
        p90: nearest_rank(&sorted, 0.9),
        p99: nearest_rank(&sorted, 0.99),
        mean_evaluations,
        capped: runs.iter().filter(|r| r.capped).count() as u64,
    }
}

/// Independent Random Edge runs with per-trial derived seeds.
pub fn re_trials(
    o: &Orientation,
    policy: StartPolicy,
    trials: u64,
    seed: u64,
    cap: u64,
) -> Result<TrialSummary, UsoError> {
    if trials == 0 {
        return Err(UsoError::EmptySet);
    }
    let runs = (0..trials)
        .map(|i| run_trial(o, policy, seed, i, cap))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(summarize(&runs))
}

/// `n · Σ_{k=1..i} n^k`: expected steps to hit a target at distance at most
/// `i` when the right edge is picked with probability `1/n` and every miss
/// restarts, times the at most `n` reachmap reductions.
pub fn markov_upper_bound(n: u64, i: u32) -> BigUint {
    let base = BigUint::from(n);
    let mut power = base.clone();
    let mut sum = BigUint::from(0u32);
    for _ in 0..i {
        sum += &power;
        power *= &base;
    }
    sum * base
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{klee_minty, uniform};
    use num_rational::BigRational;

    #[test]
    fn walk_from_the_sink_takes_no_steps() {
        let km = klee_minty(4);
        let r = random_edge_walk(&km, CoordSet::EMPTY, 3, 10).unwrap();
        assert_eq!(r.steps, 0);
        assert_eq!(r.found_sink, Some(CoordSet::EMPTY));
        assert_eq!(r.evaluations, 1);
    }

    #[test]
    fn forward_uniform_walks_are_monotone() {
        let o = uniform(6, true);
        for seed in 0..50 {
            let start = CoordSet::from_bits((seed * 7 % 64) as u32);
            let r = random_edge_walk(&o, start, seed, 1000).unwrap();
            assert_eq!(r.steps as usize, 6 - start.len());
            assert_eq!(r.found_sink, Some(CoordSet::full(6)));
        }
    }

    #[test]
    fn walks_are_reproducible_and_capped() {
        let km = klee_minty(8);
        let src = km.source().unwrap();
        assert_eq!(
            random_edge_walk(&km, src, 99, 1 << 16).unwrap(),
            random_edge_walk(&km, src, 99, 1 << 16).unwrap()
        );
        let r = random_edge_walk(&km, src, 99, 2).unwrap();
        assert!(r.capped);
        assert_eq!(r.steps, 2);
        assert_eq!(r.found_sink, None);
    }

    #[test]
    fn single_trial_matches_a_walk() {
        let km = klee_minty(5);
        let s = re_trials(&km, StartPolicy::Fixed(CoordSet::full(5)), 1, 17, 1000).unwrap();
        let w = random_edge_walk(&km, CoordSet::full(5), derive_seed(17, 0), 1000).unwrap();
        assert_eq!(s.max, w.steps);
        assert_eq!(s.mean, w.steps as f64);
        assert_eq!(s.variance, 0.0);
    }

    #[test]
    fn bottom_antipodal_basics() {
        let o = uniform(5, true);
        assert_eq!(
            bottom_antipodal(&o, CoordSet::full(5), 10).unwrap().steps,
            0
        );
        let r = bottom_antipodal(&o, CoordSet::EMPTY, 10).unwrap();
        assert_eq!(r.steps, 1);
        assert_eq!(r.found_sink, Some(CoordSet::full(5)));
    }

    #[test]
    fn markov_bound_values() {
        assert_eq!(markov_upper_bound(5, 1), BigUint::from(25u32));
        assert_eq!(markov_upper_bound(3, 2), BigUint::from(36u32));
        assert_eq!(markov_upper_bound(7, 0), BigUint::from(0u32));
        assert_eq!(
            markov_upper_bound(30, 30),
            (1..=30u32)
                .map(|k| BigUint::from(30u32).pow(k))
                .sum::<BigUint>()
                * 30u32
        );
    }

    /// Expected hitting time of state 0 from state `i` in the restart chain,
    /// solved exactly: `E_k = 1 + E_{k-1}/n + (n-1)/n · E_i`.
    fn chain_hitting_time(n: u64, i: u32) -> BigRational {
        // write E_k = a_k + b_k · E_i and solve the last equation for E_i
        let one = BigRational::from_integer(1.into());
        let p = BigRational::new(1.into(), (n as i64).into());
        let q = &one - &p;
        let (mut a, mut b) = (
            BigRational::from_integer(0.into()),
            BigRational::from_integer(0.into()),
        );
        for _ in 0..i {
            a = &one + &p * &a;
            b = &p * &b + &q;
        }
        a / (one - b)
    }

    #[test]
    fn markov_bound_matches_the_exact_chain() {
        for n in 2..6u64 {
            for i in 1..=n as u32 {
                let exact = chain_hitting_time(n, i) * BigRational::from_integer((n as i64).into());
                let bound = markov_upper_bound(n, i);
                assert_eq!(
                    exact,
                    BigRational::from_integer(num_bigint::BigInt::from(bound))
                );
            }
        }
    }

    #[test]
    fn markov_chain_simulation_within_one_percent() {
        let (n, i) = (3u64, 2u32);
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let runs = 200_000;
        let mut total = 0u64;
        for _ in 0..runs {
            let mut state = i;
            while state > 0 {
                total += 1;
                state = if rng.random_range(0..n) == 0 {
                    state - 1
                } else {
                    i
                };
            }
        }
        let simulated = n as f64 * total as f64 / runs as f64;
        let bound: f64 = alloc::string::ToString::to_string(&markov_upper_bound(n, i))
            .parse()
            .unwrap();
        assert!(
            (simulated - bound).abs() / bound < 0.01,
            "{simulated} vs {bound}"
        );
    }
}
