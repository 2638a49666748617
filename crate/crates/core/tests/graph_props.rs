mod common;

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sinograph::charstore::{build_allograph_classes, ClassId};
use sinograph::graphcore::{lift_to_classes, transitive_reduce, DiGraph};
use sinograph::InclusionGraph;

fn chars_of(n: u32) -> BTreeSet<char> {
    (0..n).map(|i| char::from_u32(0x4E00 + i).unwrap()).collect()
}

/// Components by repeated relabelling until a fixpoint.
fn naive_components(n: u32, pairs: &[(u32, u32)]) -> Vec<u32> {
    let mut label: Vec<u32> = (0..n).collect();
    loop {
        let mut changed = false;
        for &(a, b) in pairs {
            let m = label[a as usize].min(label[b as usize]);
            for x in [a, b] {
                if label[x as usize] != m {
                    label[x as usize] = m;
                    changed = true;
                }
            }
        }
        if !changed {
            return label;
        }
    }
}

proptest! {
    #[test]
    fn partition_matches_components(n in 1u32..30, raw in prop::collection::vec((0u32..30, 0u32..30), 0..25)) {
        let pairs: Vec<(u32, u32)> = raw.into_iter().filter(|&(a, b)| a < n && b < n).collect();
        let chars = chars_of(n);
        let cp = |i: u32| char::from_u32(0x4E00 + i).unwrap();
        let char_pairs: Vec<(char, char)> = pairs.iter().map(|&(a, b)| (cp(a), cp(b))).collect();
        let p = build_allograph_classes(&char_pairs, &chars).unwrap();
        let labels = naive_components(n, &pairs);

        let total: usize = p.classes().iter().map(|c| c.members.len()).sum();
        prop_assert_eq!(total, n as usize);
        for a in 0..n {
            for b in 0..n {
                let same = p.class_of(cp(a)).unwrap() == p.class_of(cp(b)).unwrap();
                prop_assert_eq!(same, labels[a as usize] == labels[b as usize]);
            }
        }
        // ids are dense and follow the smallest member
        let mins: Vec<char> = p.classes().iter().map(|c| *c.members.iter().min().unwrap()).collect();
        prop_assert!(mins.windows(2).all(|w| w[0] < w[1]));
        for (i, c) in p.classes().iter().enumerate() {
            prop_assert_eq!(c.id, ClassId(i as u32));
            prop_assert!(c.members.contains(&c.representative));
        }
    }

    #[test]
    fn reduction_matches_brute_force(seed in any::<u64>(), n in 1u32..25, density in 0.05f64..0.6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges = common::random_dag(&mut rng, n, density);
        let g = DiGraph::from_edges(0..n, edges.iter().copied());
        let reduced = transitive_reduce(&g).unwrap();
        let got: BTreeSet<(u32, u32)> = reduced.sorted_edges().into_iter().collect();
        prop_assert_eq!(&got, &common::brute_reduction(n as usize, &edges));
        let kept: Vec<(u32, u32)> = got.into_iter().collect();
        prop_assert_eq!(common::reachability(n as usize, &kept), common::reachability(n as usize, &edges));
    }

    #[test]
    fn reduction_is_idempotent(seed in any::<u64>(), n in 1u32..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = DiGraph::from_edges(0..n, common::random_dag(&mut rng, n, 0.4));
        let once = transitive_reduce(&g).unwrap();
        prop_assert_eq!(transitive_reduce(&once).unwrap(), once);
    }

    #[test]
    fn lifting_singletons_is_relabelling(seed in any::<u64>(), n in 1u32..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges = common::random_dag(&mut rng, n, 0.3);
        let cp = |i: u32| char::from_u32(0x4E00 + i).unwrap();
        let chars = chars_of(n);
        let p = build_allograph_classes(&[], &chars).unwrap();
        let char_dag = DiGraph::from_edges(chars.iter().copied(), edges.iter().map(|&(a, b)| (cp(a), cp(b))));
        let g: InclusionGraph = lift_to_classes(char_dag.sorted_edges(), &p).unwrap();
        let expected: BTreeSet<(ClassId, ClassId)> = edges.iter().map(|&(a, b)| (ClassId(a), ClassId(b))).collect();
        prop_assert_eq!(g.edges().into_iter().collect::<BTreeSet<_>>(), expected);
    }
}

#[test]
fn variants_can_close_a_cycle() {
    let cp = |i: u32| char::from_u32(0x4E00 + i).unwrap();
    let chars = chars_of(4);
    // 0 -> 1 and 2 -> 3, with 0~3 and 1~2 merged: the classes form a cycle
    let p = build_allograph_classes(&[(cp(0), cp(3)), (cp(1), cp(2))], &chars).unwrap();
    let char_dag = DiGraph::from_edges(chars.iter().copied(), [(cp(0), cp(1)), (cp(2), cp(3))]);
    let g = lift_to_classes::<f64>(char_dag.sorted_edges(), &p).unwrap();
    assert!(!g.dag().is_acyclic());
    assert!(g.transitive_reduce().is_err());
}

#[test]
fn degree_statistics_count_sources_and_leaves() {
    let g = InclusionGraph::with_singletons(4, [(0, 1), (0, 2), (1, 3), (2, 3)]);
    let d = g.degree_statistics();
    assert_eq!(d.sources, vec![ClassId(0)]);
    assert_eq!(d.leaves, vec![ClassId(3)]);
    assert_eq!(d.max_in, 2);
    assert_eq!(d.max_out, 2);
    let in_hist: BTreeMap<usize, usize> = d.in_hist.clone();
    assert_eq!(in_hist, BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
}
