mod common;

use common::*;
use uso_core::construct::{auso_lower_bound, cyclic_full_reach, klee_minty, uniform};
use uso_core::enumerate::enumerate_all;
use uso_core::reach::{cover_distance, distance, niceness_index, reach_table, reachmap};
use uso_core::{CoordSet, Orientation};

fn check_reach_invariants(o: &Orientation) {
    let t = reach_table(o);
    let sink = o.sink().unwrap();
    for v in o.vertices() {
        let rv = t.get(v);
        assert_eq!(rv, reachmap(o, v));
        assert!(rv.is_superset_of(v ^ sink));
        for u in o.out_neighbors(v) {
            assert!(rv.is_superset_of(t.get(u) | o.outmap(v)));
        }
    }
}

#[test]
fn reach_invariants_exhaustive_small() {
    for n in 1..=3 {
        enumerate_all(n, false, |table| {
            check_reach_invariants(&Orientation::from_outmaps(n, table.to_vec()).unwrap())
        })
        .unwrap();
    }
}

#[test]
fn reach_invariants_sampled() {
    let mut r = rng(21);
    for n in 4..=10 {
        for _ in 0..6 {
            check_reach_invariants(&random_uso(n, &mut r));
        }
    }
}

#[test]
fn cover_witnesses_are_genuine() {
    let mut r = rng(22);
    for n in 2..=7 {
        for _ in 0..8 {
            let o = random_uso(n, &mut r);
            let t = reach_table(&o);
            let report = niceness_index(&o).unwrap();
            assert!(report.niceness_index as usize <= n);
            for v in o.vertices() {
                let Some(d) = report.cover_distance[v.index()] else {
                    assert_eq!(Some(v), o.sink());
                    continue;
                };
                let w = report.witness[v.index()].unwrap();
                assert_eq!(distance(&o, v, w), Some(d));
                assert!(t.get(w).is_proper_subset(t.get(v)));
                assert_eq!(cover_distance(&o, &t, v).unwrap().distance, d);
            }
        }
    }
}

#[test]
fn low_dimensions_are_one_nice() {
    for n in 1..=2 {
        let count = enumerate_all(n, false, |table| {
            let o = Orientation::from_outmaps(n, table.to_vec()).unwrap();
            assert_eq!(niceness_index(&o).unwrap().niceness_index, 1);
        })
        .unwrap();
        assert!(count > 0);
    }
}

#[test]
fn cyclic_full_reach_attains_n() {
    for n in 3..=6 {
        let o = cyclic_full_reach(n).unwrap();
        let report = niceness_index(&o).unwrap();
        assert_eq!(report.niceness_index as usize, n);
        assert_eq!(report.cover_distance[0], Some(n as u32));
        for v in o.vertices().filter(|&v| v != CoordSet::full(n)) {
            assert_eq!(report.reachmap[v.index()], CoordSet::full(n));
        }
    }
}

#[test]
fn auso_families_are_at_most_n_minus_two_nice() {
    let mut r = rng(23);
    for n in 4..=8 {
        let mut family = vec![
            klee_minty(n),
            uniform(n, true),
            auso_lower_bound(n).unwrap(),
        ];
        family.extend((0..10).map(|_| random_acyclic(n, &mut r)));
        for o in &family {
            assert!(o.is_acyclic());
            assert!(niceness_index(o).unwrap().niceness_index as usize <= n - 2);
        }
    }
}
