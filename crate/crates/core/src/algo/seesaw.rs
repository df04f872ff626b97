use alloc::vec::Vec;

use crate::coords::CoordSet;
use crate::error::UsoError;
use crate::face::Face;
use crate::oracle::Oracle;
use crate::orientation::Orientation;
use crate::reach::reachmap;

/// Sink of `face` by the Fibonacci Seesaw.
///
/// Keeps two antipodal `k`-faces `A` and `B` of `face` with known sinks.
/// A coordinate `b` on which the two sinks disagree says which of them is
/// not the sink of the extended face; that side is re-solved recursively on
/// the new half, a `k`-face.
pub fn fibonacci_seesaw_with(oracle: &mut Oracle<'_>, face: Face) -> Result<CoordSet, UsoError> {
    let span = face.span();
    let a0 = face.anchor();
    if span.is_empty() {
        oracle.eval(a0);
        return Ok(a0);
    }
    let b0 = a0 | span;
    let (mut sa, mut sb) = (a0, b0);
    let mut oa = oracle.eval(sa) & span;
    let mut ob = oracle.eval(sb) & span;
    let mut grown = CoordSet::EMPTY;
    for _ in 1..span.len() {
        let b = ((oa ^ ob) & (span - grown))
            .min_coord()
            .ok_or(UsoError::NoJoinStep { u: sa, v: sb })?;
        if oa.contains(b) {
            sa = fibonacci_seesaw_with(oracle, Face::new(a0.toggle(b), grown))?;
            oa = oracle.eval(sa) & span;
        } else {
            sb = fibonacci_seesaw_with(oracle, Face::new(b0.toggle(b), grown))?;
            ob = oracle.eval(sb) & span;
        }
        grown.insert(b);
    }
    match (oa.is_empty(), ob.is_empty()) {
        (true, false) => Ok(sa),
        (false, true) => Ok(sb),
        (false, false) => Err(UsoError::ZeroSinks { face }),
        (true, true) => Err(UsoError::MultipleSinks {
            face,
            first: sa.min(sb),
            second: sa.max(sb),
        }),
    }
}

/// Sink of `face` and the number of distinct evaluations used.
pub fn fibonacci_seesaw(o: &Orientation, face: Face) -> Result<(CoordSet, u64), UsoError> {
    o.check_face(&face)?;
    let mut oracle = Oracle::new(o);
    let t = fibonacci_seesaw_with(&mut oracle, face)?;
    Ok((t, oracle.evaluations()))
}

/// One outer iteration of FS-Revisited.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SeesawStep {
    /// The outgoing coordinate taken.
    pub coord: usize,
    /// Dimension of the face solved by the seesaw.
    pub face_dim: usize,
    /// Distinct evaluations spent on that face.
    pub evaluations: u64,
}

/// Run log of [`fs_revisited`].
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SeesawTrace {
    pub start: CoordSet,
    pub sink: CoordSet,
    /// `v⁰, v¹, …, v^ρ`.
    pub vertices: Vec<CoordSet>,
    pub steps: Vec<SeesawStep>,
    /// `|r(vʲ)|` for each visited vertex; computed outside the oracle and
    /// not counted as evaluations.
    pub reachmap_sizes: Vec<u32>,
    pub evaluations: u64,
}

impl SeesawTrace {
    /// Number of outer iterations `ρ`.
    pub fn iterations(&self) -> usize {
        self.steps.len()
    }
}

/// FS-Revisited: from `vʲ`, take the smallest `b ∈ s(vʲ)` and let `vʲ⁺¹` be
/// the sink of `F_{Eʲ, vʲ ⊕ {b}}`, found by the seesaw; then add `b` to `E`.
pub fn fs_revisited(o: &Orientation, start: CoordSet) -> Result<(CoordSet, SeesawTrace), UsoError> {
    o.check_vertex(start)?;
    let mut oracle = Oracle::new(o);
    let mut v = start;
    let mut e = CoordSet::EMPTY;
    let mut vertices = Vec::from([v]);
    let mut steps = Vec::new();
    let mut sv = oracle.eval(v);
    while let Some(b) = (sv - e).min_coord() {
        if !(sv & e).is_empty() {
            return Err(UsoError::ZeroSinks {
                face: Face::new(v, e),
            });
        }
        let before = oracle.evaluations();
        v = fibonacci_seesaw_with(&mut oracle, Face::new(v.toggle(b), e))?;
        steps.push(SeesawStep {
            coord: b,
            face_dim: e.len(),
            evaluations: oracle.evaluations() - before,
        });
        e.insert(b);
        vertices.push(v);
        sv = oracle.eval(v);
    }
    if !sv.is_empty() {
        return Err(UsoError::ZeroSinks {
            face: Face::new(v, e),
        });
    }
    let reachmap_sizes = vertices
        .iter()
        .map(|&u| reachmap(o, u).len() as u32)
        .collect();
    let trace = SeesawTrace {
        start,
        sink: v,
        vertices,
        steps,
        reachmap_sizes,
        evaluations: oracle.evaluations(),
    };
    Ok((v, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{klee_minty, uniform};

    #[test]
    fn zero_dimensional_face() {
        let km = klee_minty(3);
        let v = CoordSet::from_coords([2]);
        assert_eq!(fibonacci_seesaw(&km, Face::vertex(v)).unwrap(), (v, 1));
    }

    #[test]
    fn solves_whole_cubes_and_faces() {
        let km = klee_minty(3);
        assert_eq!(
            fibonacci_seesaw(&km, Face::cube(3)).unwrap().0,
            CoordSet::EMPTY
        );
        let km = klee_minty(7);
        for span in CoordSet::full(7).subsets().step_by(5) {
            for anchor in (CoordSet::full(7) - span).subsets().step_by(3) {
                let f = Face::new(anchor, span);
                assert_eq!(
                    fibonacci_seesaw(&km, f).unwrap().0,
                    km.face_sink(&f).unwrap()
                );
            }
        }
    }

    #[test]
    fn evaluation_count_follows_the_fibonacci_recurrence() {
        // worst case t(d) = 2 + Σ_{k ≤ d-2} t(k), t(0) = 1
        let mut t = Vec::from([1u64]);
        for d in 1..12usize {
            t.push(2 + t[..d.saturating_sub(1)].iter().sum::<u64>());
        }
        for (n, &bound) in t.iter().enumerate().skip(1) {
            let (_, evals) = fibonacci_seesaw(&klee_minty(n), Face::cube(n)).unwrap();
            assert!(evals <= bound, "n={n}: {evals} > {bound}");
        }
    }

    #[test]
    fn fs_revisited_from_the_sink() {
        let o = uniform(4, true);
        let (t, trace) = fs_revisited(&o, CoordSet::full(4)).unwrap();
        assert_eq!(t, CoordSet::full(4));
        assert_eq!(trace.iterations(), 0);
        assert_eq!(trace.evaluations, 1);
    }

    #[test]
    fn fs_revisited_reachmaps_shrink() {
        let km = klee_minty(6);
        for v in km.vertices() {
            let (t, trace) = fs_revisited(&km, v).unwrap();
            assert_eq!(t, CoordSet::EMPTY);
            assert!(trace.iterations() <= trace.reachmap_sizes[0] as usize);
            assert!(trace.reachmap_sizes.windows(2).all(|w| w[0] >= w[1]));
            let r: Vec<_> = trace.vertices.iter().map(|&u| reachmap(&km, u)).collect();
            assert!(r.windows(2).all(|w| w[1].is_subset(w[0])));
        }
    }
}
