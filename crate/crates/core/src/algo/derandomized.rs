use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::join::{join_set_with, neighbor_join_with};
use super::RunStats;
use crate::coords::CoordSet;
use crate::error::UsoError;
use crate::oracle::Oracle;
use crate::orientation::Orientation;

/// One round of the derandomized walk.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct DerandomizedRound {
    /// Search depth `i`: the round joins everything within distance `i`.
    pub level: u32,
    pub from: CoordSet,
    pub to: CoordSet,
    /// Cumulative distinct evaluations after the round.
    pub evaluations: u64,
}

/// Deterministic sink search by repeated joins of the depth-`i` ball.
///
/// Starts at depth 1. A round that returns to its own start vertex, or `n`
/// consecutive rounds at one depth without reaching the sink, moves to the
/// next depth. At depth `n` the ball contains the sink.
pub fn derandomized_re(o: &Orientation, start: CoordSet) -> Result<RunStats, UsoError> {
    derandomized_re_with_trace(o, start).map(|(stats, _)| stats)
}

/// [`derandomized_re`] together with the per-round trace.
pub fn derandomized_re_with_trace(
    o: &Orientation,
    start: CoordSet,
) -> Result<(RunStats, Vec<DerandomizedRound>), UsoError> {
    o.check_vertex(start)?;
    let n = o.dim() as u32;
    let mut oracle = Oracle::new(o);
    let mut rounds = Vec::new();
    let mut depth_mark = vec![u32::MAX; o.vertex_count()];
    let mut stamp = 0u32;
    let mut v = start;
    let mut level = 1u32;
    let mut at_level = 0u32;
    let sink = loop {
        if oracle.eval(v).is_empty() {
            break v;
        }
        stamp += 1;
        let ball = match ball(&mut oracle, v, level - 1, &mut depth_mark, stamp) {
            Ball::Sink(t) => break t,
            Ball::Members(m) => m,
        };
        let joins = ball
            .into_iter()
            .map(|u| neighbor_join_with(&mut oracle, u))
            .collect::<Result<Vec<_>, _>>()?;
        let (w, _) = join_set_with(&mut oracle, &joins)?;
        rounds.push(DerandomizedRound {
            level,
            from: v,
            to: w,
            evaluations: oracle.evaluations(),
        });
        if w == v {
            if level == n {
                return Err(UsoError::NoJoinStep { u: v, v: w });
            }
            level += 1;
            at_level = 0;
            continue;
        }
        v = w;
        at_level += 1;
        if at_level >= n && level < n {
            level += 1;
            at_level = 0;
        }
    };
    let stats = RunStats {
        start,
        steps: rounds.len() as u64,
        evaluations: oracle.evaluations(),
        found_sink: Some(sink),
        seed: 0,
        capped: false,
    };
    Ok((stats, rounds))
}

enum Ball {
    Sink(CoordSet),
    Members(Vec<CoordSet>),
}

/// Vertices within directed distance `radius` of `v`, all evaluated.
fn ball(oracle: &mut Oracle<'_>, v: CoordSet, radius: u32, mark: &mut [u32], stamp: u32) -> Ball {
    let mut members = vec![v];
    let mut queue = VecDeque::from([(v, 0u32)]);
    mark[v.index()] = stamp;
    while let Some((u, d)) = queue.pop_front() {
        let su = oracle.eval(u);
        if su.is_empty() {
            return Ball::Sink(u);
        }
        if d == radius {
            continue;
        }
        for j in su {
            let w = u.toggle(j);
            if mark[w.index()] != stamp {
                mark[w.index()] = stamp;
                members.push(w);
                queue.push_back((w, d + 1));
            }
        }
    }
    Ball::Members(members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{auso_lower_bound, cyclic_full_reach, klee_minty, uniform};

    #[test]
    fn start_at_sink() {
        let km = klee_minty(4);
        let r = derandomized_re(&km, CoordSet::EMPTY).unwrap();
        assert_eq!(r.found_sink, Some(CoordSet::EMPTY));
        assert_eq!((r.steps, r.evaluations), (0, 1));
    }

    #[test]
    fn finds_sinks_of_standard_families() {
        for n in 2..=8 {
            let fams = [klee_minty(n), uniform(n, true), uniform(n, false)];
            for o in fams.iter() {
                let sink = o.sink();
                for v in o.vertices().step_by(3) {
                    assert_eq!(derandomized_re(o, v).unwrap().found_sink, sink);
                }
            }
        }
        for n in 3..=7 {
            let o = cyclic_full_reach(n).unwrap();
            for v in o.vertices() {
                assert_eq!(derandomized_re(&o, v).unwrap().found_sink, o.sink());
            }
        }
        let o = auso_lower_bound(6).unwrap();
        for v in o.vertices() {
            assert_eq!(derandomized_re(&o, v).unwrap().found_sink, o.sink());
        }
    }

    #[test]
    fn uniform_takes_one_round() {
        let o = uniform(6, true);
        let (r, trace) = derandomized_re_with_trace(&o, CoordSet::EMPTY).unwrap();
        assert_eq!(r.steps, 1);
        assert_eq!(trace[0].to, CoordSet::full(6));
        assert_eq!(r.evaluations, 8);
    }
}
