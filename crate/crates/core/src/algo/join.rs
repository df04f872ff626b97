use alloc::vec::Vec;

use crate::coords::CoordSet;
use crate::error::UsoError;
use crate::oracle::Oracle;
use crate::orientation::Orientation;

/// Result of a join computation.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Joined {
    /// A vertex reachable from every input.
    pub vertex: CoordSet,
    /// Edges traversed while joining (zero for the neighbor join).
    pub moves: u64,
    /// Distinct vertices evaluated.
    pub evaluations: u64,
}

/// Walks `u` and `v` towards each other along the smallest coordinate of
/// `(s(u) ⊕ s(v)) ∩ (u ⊕ v)`, moving whichever endpoint has that edge
/// outgoing. Returns the meeting vertex and the number of moves.
pub fn join_pair_with(
    oracle: &mut Oracle<'_>,
    mut u: CoordSet,
    mut v: CoordSet,
) -> Result<(CoordSet, u64), UsoError> {
    let mut moves = 0;
    while u != v {
        let (su, sv) = (oracle.eval(u), oracle.eval(v));
        let j = ((su ^ sv) & (u ^ v))
            .min_coord()
            .ok_or(UsoError::NoJoinStep { u, v })?;
        if su.contains(j) {
            u = u.toggle(j);
        } else {
            v = v.toggle(j);
        }
        moves += 1;
    }
    Ok((u, moves))
}

/// Folds [`join_pair_with`] over `set` from left to right.
pub fn join_set_with(
    oracle: &mut Oracle<'_>,
    set: &[CoordSet],
) -> Result<(CoordSet, u64), UsoError> {
    let (&first, rest) = set.split_first().ok_or(UsoError::EmptySet)?;
    let mut acc = first;
    let mut moves = 0;
    for &w in rest {
        let (j, m) = join_pair_with(oracle, acc, w)?;
        acc = j;
        moves += m;
    }
    Ok((acc, moves))
}

/// Joins the out-neighbours of `v` by the active-vertex / active-coordinate
/// elimination. Only `N⁺(v)` is evaluated.
pub fn neighbor_join_with(oracle: &mut Oracle<'_>, v: CoordSet) -> Result<CoordSet, UsoError> {
    let sv = oracle.eval(v);
    if sv.is_empty() {
        return Err(UsoError::IsSink { vertex: v });
    }
    let neighbors: Vec<(usize, CoordSet, CoordSet)> = sv
        .iter()
        .map(|j| {
            let u = v.toggle(j);
            (j, u, oracle.eval(u))
        })
        .collect();
    // active vertices are exactly the neighbours across active coordinates
    let mut active = sv;
    for &(j, u, su) in &neighbors {
        if !active.contains(j) {
            continue;
        }
        for l in active {
            if l != j && !su.contains(l) {
                active.remove(l);
            }
        }
        if (su & active).is_empty() {
            return Ok(u);
        }
    }
    Ok(v ^ active)
}

fn joined(oracle: &Oracle<'_>, vertex: CoordSet, moves: u64) -> Joined {
    Joined {
        vertex,
        moves,
        evaluations: oracle.evaluations(),
    }
}

/// A vertex reachable from both `u` and `v`, in at most `|u ⊕ v|` moves.
pub fn join_pair(o: &Orientation, u: CoordSet, v: CoordSet) -> Result<Joined, UsoError> {
    o.check_vertex(u)?;
    o.check_vertex(v)?;
    let mut oracle = Oracle::new(o);
    let (w, moves) = join_pair_with(&mut oracle, u, v)?;
    Ok(joined(&oracle, w, moves))
}

/// A vertex reachable from every member of `set`.
pub fn join_set(o: &Orientation, set: &[CoordSet]) -> Result<Joined, UsoError> {
    for &v in set {
        o.check_vertex(v)?;
    }
    let mut oracle = Oracle::new(o);
    let (w, moves) = join_set_with(&mut oracle, set)?;
    Ok(joined(&oracle, w, moves))
}

/// A vertex reachable from every out-neighbour of `v`. The reported
/// evaluations include `v` itself.
pub fn neighbor_join(o: &Orientation, v: CoordSet) -> Result<Joined, UsoError> {
    o.check_vertex(v)?;
    let mut oracle = Oracle::new(o);
    let w = neighbor_join_with(&mut oracle, v)?;
    Ok(joined(&oracle, w, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{klee_minty, uniform};
    use crate::reach::reaches;

    fn set(c: &[usize]) -> CoordSet {
        CoordSet::from_coords(c.iter().copied())
    }

    #[test]
    fn pair_examples() {
        let u3 = uniform(3, true);
        let j = join_pair(&u3, set(&[1]), set(&[2])).unwrap();
        assert_eq!(j.vertex, set(&[1, 2]));
        assert_eq!(j.moves, 2);
        let km = klee_minty(2);
        assert_eq!(
            join_pair(&km, set(&[2]), set(&[1])).unwrap().vertex,
            CoordSet::EMPTY
        );
        let same = join_pair(&km, set(&[2]), set(&[2])).unwrap();
        assert_eq!((same.vertex, same.moves), (set(&[2]), 0));
    }

    #[test]
    fn set_examples() {
        let u3 = uniform(3, true);
        assert_eq!(join_set(&u3, &[set(&[3])]).unwrap().vertex, set(&[3]));
        let nbrs: Vec<_> = u3.out_neighbors(CoordSet::EMPTY).collect();
        let w = join_set(&u3, &nbrs).unwrap().vertex;
        assert!(nbrs.iter().all(|&u| reaches(&u3, u, w)));
        assert_eq!(join_set(&u3, &[]), Err(UsoError::EmptySet));
    }

    #[test]
    fn neighbor_examples() {
        let u3 = uniform(3, true);
        assert_eq!(
            neighbor_join(&u3, CoordSet::EMPTY).unwrap().vertex,
            set(&[1, 2, 3])
        );
        let km = klee_minty(2);
        let j = neighbor_join(&km, set(&[2])).unwrap();
        assert_eq!(j.vertex, CoordSet::EMPTY);
        assert_eq!(j.evaluations, 3);
        assert_eq!(
            neighbor_join(&km, CoordSet::EMPTY),
            Err(UsoError::IsSink {
                vertex: CoordSet::EMPTY
            })
        );
        let one = neighbor_join(&km, set(&[1])).unwrap();
        assert_eq!(one.vertex, CoordSet::EMPTY);
    }
}
