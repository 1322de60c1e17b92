mod common;

use std::collections::BTreeSet;

use clspace_core::bitopology::all_bitop_spaces;
use clspace_core::search::{enumerate_frames, FrameClass};
use clspace_core::topology::all_topologies;
use clspace_core::Subset;

use common::{full, opens_of};

// number of topologies on a labelled n-set
const TOPOLOGY_COUNTS: [usize; 4] = [1, 4, 29, 355];

#[test]
fn topologies_are_all_distinct_and_valid() {
    for n in 1..=4 {
        let tops = all_topologies(n);
        assert_eq!(tops.len(), TOPOLOGY_COUNTS[n - 1]);
        let families: BTreeSet<Vec<u32>> = tops.iter().map(opens_of).collect();
        assert_eq!(families.len(), tops.len());
        for fam in &families {
            assert!(common::is_topology(n, &fam.iter().copied().collect()));
        }
    }
}

/// Pairs of relation codes checked condition by condition, without going
/// through `Relation` at all.
fn brute_force_frames(n: usize, class: FrameClass) -> usize {
    let has = |code: u32, x: usize, y: usize| code >> (x * n + y) & 1 == 1;
    let pts = || 0..n;
    let transitive = |c: u32| {
        pts().all(|x| pts().all(|y| pts().all(|z| !(has(c, x, y) && has(c, y, z)) || has(c, x, z))))
    };
    let mut count = 0;
    for r in 0u32..1 << (n * n) {
        // transitive + irreflexive already rules out cycles
        if !transitive(r) || pts().any(|x| has(r, x, x)) {
            continue;
        }
        for s in 0u32..1 << (n * n) {
            if !transitive(s) || !pts().all(|x| has(s, x, x)) {
                continue;
            }
            let clm = pts().all(|x| {
                pts().all(|y| pts().all(|z| !(has(s, x, y) && has(r, y, z)) || has(r, x, z)))
            });
            let sub = pts().all(|x| pts().all(|y| !has(r, x, y) || has(s, x, y)));
            let ilp = pts().all(|x| {
                pts().all(|y| pts().all(|z| !(has(r, x, y) && has(s, y, z)) || has(r, x, z)))
            });
            let ok = match class {
                FrameClass::Cl => true,
                FrameClass::Clm => clm,
                FrameClass::Il => sub,
                FrameClass::Ilp => sub && ilp,
                FrameClass::IlmCond => sub && clm,
                FrameClass::Ilw => continue,
            };
            count += ok as usize;
        }
    }
    count
}

#[test]
fn frame_enumeration_counts() {
    for n in 1..=3 {
        for class in [FrameClass::Cl, FrameClass::Clm, FrameClass::Il, FrameClass::Ilp, FrameClass::IlmCond] {
            let got = enumerate_frames(n, class, false).unwrap().count();
            assert_eq!(got, brute_force_frames(n, class), "{class} on {n} points");
        }
    }
}

#[test]
fn e_sets_exhaustive_small() {
    for n in 1..=2 {
        for sp in all_bitop_spaces(n) {
            let (t0, t1) = (opens_of(sp.tau0()), opens_of(sp.tau1()));
            for y in 0..=full(n) {
                for z in 0..=full(n) {
                    let e = sp.e_set(Subset::from_bits(n, y), Subset::from_bits(n, z)).unwrap();
                    assert_eq!(e.bits(), common::e_def(n, &t0, &t1, y, z));
                }
            }
        }
    }
}

#[test]
fn punctured_neighbourhoods_are_open() {
    for n in 1..=4 {
        for t in all_topologies(n).into_iter().filter(|t| t.is_scattered()) {
            for x in 0..n {
                let y = t.punctured_neighborhood(x).unwrap();
                assert!(y.contains(x) && t.is_open(y) && t.is_open(y.without(x)));
            }
        }
    }
}
