//! Reachmaps, cover distances and the niceness index.
//!
//! `r(v)` is the union of `s(u)` over every `u` reachable from `v` (including
//! `v`). A non-sink vertex `v` is `i`-covered by `u` when `u` lies at
//! directed distance at most `i` and `r(u) ⊂ r(v)` strictly. The niceness
//! index is the smallest `i` covering every non-sink vertex.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::coords::CoordSet;
use crate::error::UsoError;
use crate::orientation::Orientation;

/// Reachmap of a single vertex by breadth-first traversal.
pub fn reachmap(o: &Orientation, v: CoordSet) -> CoordSet {
    let mut acc = CoordSet::EMPTY;
    for u in reachable(o, v) {
        acc |= o.outmap(u);
    }
    acc
}

/// Every vertex reachable from `v`, `v` first, in BFS order.
pub fn reachable(o: &Orientation, v: CoordSet) -> Vec<CoordSet> {
    let mut seen = vec![false; o.vertex_count()];
    let mut out = vec![v];
    seen[v.index()] = true;
    let mut head = 0;
    while head < out.len() {
        let u = out[head];
        head += 1;
        for w in o.out_neighbors(u) {
            if !seen[w.index()] {
                seen[w.index()] = true;
                out.push(w);
            }
        }
    }
    out
}

/// Whether a directed path leads from `from` to `to`.
pub fn reaches(o: &Orientation, from: CoordSet, to: CoordSet) -> bool {
    distance(o, from, to).is_some()
}

/// Length of a shortest directed path, `None` when `to` is unreachable.
pub fn distance(o: &Orientation, from: CoordSet, to: CoordSet) -> Option<u32> {
    let mut dist = vec![u32::MAX; o.vertex_count()];
    let mut queue = VecDeque::new();
    dist[from.index()] = 0;
    queue.push_back(from);
    while let Some(u) = queue.pop_front() {
        if u == to {
            return Some(dist[u.index()]);
        }
        let d = dist[u.index()];
        for w in o.out_neighbors(u) {
            if dist[w.index()] == u32::MAX {
                dist[w.index()] = d + 1;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Reachmaps of all vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachTable {
    reach: Vec<CoordSet>,
}

impl ReachTable {
    /// Computes every reachmap by condensing strongly connected components
    /// (Tarjan) and accumulating along the condensation in reverse
    /// topological order. Linear in the number of edges.
    pub fn new(o: &Orientation) -> Self {
        const UNSEEN: u32 = u32::MAX;
        let size = o.vertex_count();
        let mut index = vec![UNSEEN; size];
        let mut low = vec![0u32; size];
        let mut on_stack = vec![false; size];
        let mut comp = vec![UNSEEN; size];
        let mut comp_reach: Vec<CoordSet> = Vec::new();
        let mut stack: Vec<CoordSet> = Vec::new();
        let mut calls: Vec<(CoordSet, CoordSet)> = Vec::new();
        let mut next_index = 0u32;

        for root in o.vertices() {
            if index[root.index()] != UNSEEN {
                continue;
            }
            index[root.index()] = next_index;
            low[root.index()] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root.index()] = true;
            calls.push((root, o.outmap(root)));

            while let Some(&mut (v, ref mut rest)) = calls.last_mut() {
                if let Some(j) = rest.min_coord() {
                    rest.remove(j);
                    let w = v.toggle(j);
                    if index[w.index()] == UNSEEN {
                        index[w.index()] = next_index;
                        low[w.index()] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w.index()] = true;
                        calls.push((w, o.outmap(w)));
                    } else if on_stack[w.index()] {
                        low[v.index()] = low[v.index()].min(index[w.index()]);
                    }
                    continue;
                }
                calls.pop();
                if low[v.index()] == index[v.index()] {
                    // every component reachable from this one is already closed
                    let c = comp_reach.len() as u32;
                    let mut members = Vec::new();
                    loop {
                        let u = stack.pop().expect("tarjan stack underflow");
                        on_stack[u.index()] = false;
                        comp[u.index()] = c;
                        members.push(u);
                        if u == v {
                            break;
                        }
                    }
                    let mut acc = CoordSet::EMPTY;
                    for &u in &members {
                        acc |= o.outmap(u);
                        for w in o.out_neighbors(u) {
                            let cw = comp[w.index()];
                            if cw != c {
                                acc |= comp_reach[cw as usize];
                            }
                        }
                    }
                    comp_reach.push(acc);
                }
                if let Some(&(parent, _)) = calls.last() {
                    low[parent.index()] = low[parent.index()].min(low[v.index()]);
                }
            }
        }

        ReachTable {
            reach: comp.iter().map(|&c| comp_reach[c as usize]).collect(),
        }
    }

    #[inline]
    pub fn get(&self, v: CoordSet) -> CoordSet {
        self.reach[v.index()]
    }

    pub fn as_slice(&self) -> &[CoordSet] {
        &self.reach
    }
}

/// Bulk reachmap computation; see [`ReachTable::new`].
pub fn reach_table(o: &Orientation) -> ReachTable {
    ReachTable::new(o)
}

/// A covering vertex and its directed distance.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub distance: u32,
    pub witness: CoordSet,
}

/// Scratch space for repeated cover searches on one orientation.
struct CoverSearch {
    mark: Vec<u32>,
    epoch: u32,
    frontier: Vec<CoordSet>,
    next: Vec<CoordSet>,
}

impl CoverSearch {
    fn new(size: usize) -> Self {
        CoverSearch {
            mark: vec![0; size],
            epoch: 0,
            frontier: Vec::new(),
            next: Vec::new(),
        }
    }

    fn run(&mut self, o: &Orientation, t: &ReachTable, v: CoordSet) -> Result<Cover, UsoError> {
        let rv = t.get(v);
        if o.outmap(v).is_empty() {
            return Err(UsoError::IsSink { vertex: v });
        }
        self.epoch += 1;
        let epoch = self.epoch;
        self.mark[v.index()] = epoch;
        self.frontier.clear();
        self.frontier.push(v);
        let mut level = 0;
        while !self.frontier.is_empty() {
            level += 1;
            self.next.clear();
            let mut best: Option<CoordSet> = None;
            for &u in &self.frontier {
                for w in o.out_neighbors(u) {
                    if self.mark[w.index()] == epoch {
                        continue;
                    }
                    self.mark[w.index()] = epoch;
                    self.next.push(w);
                    if t.get(w).is_proper_subset(rv) && best.is_none_or(|b| w < b) {
                        best = Some(w);
                    }
                }
            }
            if let Some(witness) = best {
                return Ok(Cover {
                    distance: level,
                    witness,
                });
            }
            core::mem::swap(&mut self.frontier, &mut self.next);
        }
        Err(UsoError::Uncovered { vertex: v })
    }
}

/// Smallest `i` such that `v` is `i`-covered, with the smallest-index
/// witness among covers at that distance.
pub fn cover_distance(o: &Orientation, t: &ReachTable, v: CoordSet) -> Result<Cover, UsoError> {
    o.check_vertex(v)?;
    CoverSearch::new(o.vertex_count()).run(o, t, v)
}

/// Per-vertex cover distances, witnesses and the overall niceness index.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NicenessReport {
    pub n: usize,
    pub sink: Option<CoordSet>,
    pub reachmap: Vec<CoordSet>,
    /// `None` for the sink.
    pub cover_distance: Vec<Option<u32>>,
    pub witness: Vec<Option<CoordSet>>,
    pub niceness_index: u32,
}

impl NicenessReport {
    /// Vertices attaining the niceness index.
    pub fn hardest_vertices(&self) -> impl Iterator<Item = CoordSet> + '_ {
        self.cover_distance
            .iter()
            .enumerate()
            .filter(|(_, d)| **d == Some(self.niceness_index))
            .map(|(i, _)| CoordSet::from_bits(i as u32))
    }
}

/// Niceness report of a USO.
pub fn niceness_index(o: &Orientation) -> Result<NicenessReport, UsoError> {
    let t = ReachTable::new(o);
    niceness_with_table(o, &t)
}

pub fn niceness_with_table(o: &Orientation, t: &ReachTable) -> Result<NicenessReport, UsoError> {
    let size = o.vertex_count();
    let mut search = CoverSearch::new(size);
    let mut cover_distance = vec![None; size];
    let mut witness = vec![None; size];
    let mut index = 0;
    let mut sink = None;
    for v in o.vertices() {
        if o.outmap(v).is_empty() {
            sink = Some(v);
            continue;
        }
        let c = search.run(o, t, v)?;
        cover_distance[v.index()] = Some(c.distance);
        witness[v.index()] = Some(c.witness);
        index = index.max(c.distance);
    }
    Ok(NicenessReport {
        n: o.dim(),
        sink,
        reachmap: t.as_slice().to_vec(),
        cover_distance,
        witness,
        niceness_index: index,
    })
}
