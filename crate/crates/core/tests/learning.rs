mod common;

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sinograph::charstore::{ClassId, Language};
use sinograph::classify::{cross_validate, stratified_folds, train, TrainConfig};
use sinograph::features::{augment_strategy1, augment_strategy2, baseline_vectors, Provenance};
use sinograph::inferschar::{semantic_approximation, Direction};
use sinograph::phonetics::PhoneticityEdge;
use sinograph::semantics::SemanticityEdge;
use sinograph::InclusionGraph;

/// Documents over the private characters of a singleton graph.
fn corpus<R: Rng>(rng: &mut R, n: u32, docs: usize) -> Vec<String> {
    (0..docs)
        .map(|_| (0..rng.random_range(1..12)).map(|_| char::from_u32(0xE000 + rng.random_range(0..n)).unwrap()).collect())
        .collect()
}

proptest! {
    #[test]
    fn zero_scores_leave_vectors_alone(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = common::weighted_graph(&mut rng, 12, 0.3);
        for e in g.edges() {
            let a = g.attrs_mut(e);
            a.semantic = Some(SemanticityEdge::default());
            a.phonetic.insert(Language::JapaneseOn, PhoneticityEdge::default());
        }
        let docs = corpus(&mut rng, 12, 8);
        let set = baseline_vectors::<f64, _>(&docs, g.classes(), 1).unwrap();
        let (s1, st1) = augment_strategy1(&set, &g);
        prop_assert_eq!(&s1, &set);
        prop_assert_eq!(st1.added + st1.modified, 0);
        prop_assert_eq!(&augment_strategy2(&set, &g, Language::JapaneseOn, false).0, &set);
        prop_assert_eq!(&augment_strategy2(&set, &g, Language::JapaneseOn, true).0, &set);
    }

    #[test]
    fn strategy1_vocabulary_matches_chain_walk(seed in any::<u64>(), min_count in 1u64..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::weighted_graph(&mut rng, 15, 0.3);
        let docs = corpus(&mut rng, 15, 10);
        let Ok(set) = baseline_vectors::<f64, _>(&docs, g.classes(), min_count) else { return Ok(()) };
        let (out, stats) = augment_strategy1(&set, &g);
        let (modified, added) = common::strategy1_oracle(&g, &set);
        prop_assert_eq!(stats.added, added.len());
        prop_assert_eq!(stats.modified, modified.len());
        let got: BTreeSet<ClassId> = out.vocabulary.entries().filter(|e| e.1 == Provenance::AddedByChain).map(|e| e.0).collect();
        prop_assert_eq!(got, added);
        // augmentation only ever adds weight
        for (before, after) in set.raw.iter().zip(&out.raw) {
            for (c, w) in before {
                prop_assert!(after[c] >= *w);
            }
        }
    }

    #[test]
    fn folds_are_stratified(labels in prop::collection::vec(0u8..3, 12..60), k in 2usize..5, seed in any::<u64>()) {
        let labels: Vec<String> = labels.iter().map(|l| format!("c{l}")).collect();
        let counts: BTreeMap<&str, usize> = labels.iter().fold(BTreeMap::new(), |mut m, l| {
            *m.entry(l.as_str()).or_insert(0) += 1;
            m
        });
        let ok = counts.len() >= 2 && counts.values().all(|&n| n >= k);
        let folds = stratified_folds(&labels, k, seed);
        prop_assert_eq!(folds.is_ok(), ok);
        let Ok(folds) = folds else { return Ok(()) };
        prop_assert_eq!(&folds, &stratified_folds(&labels, k, seed).unwrap());
        prop_assert!(folds.iter().all(|&f| f < k));
        let mut sizes = vec![0usize; k];
        folds.iter().for_each(|&f| sizes[f] += 1);
        prop_assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
        for cat in counts.keys() {
            let mut per = vec![0usize; k];
            for (l, &f) in labels.iter().zip(&folds) {
                if l == cat {
                    per[f] += 1;
                }
            }
            prop_assert!(per.iter().max().unwrap() - per.iter().min().unwrap() <= 1);
        }
    }

    #[test]
    fn approximation_matches_path_enumeration(seed in any::<u64>(), depth in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = common::weighted_graph(&mut rng, 10, 0.35);
        let annotations = (0..10u32)
            .filter(|_| rng.random_bool(0.3))
            .map(|c| (ClassId(c), BTreeSet::from([format!("syn{}", c % 4), format!("syn{}", c % 3 + 4)])))
            .collect();
        g.set_annotations(annotations);
        for u in 0..10 {
            let u = ClassId(u);
            let v = semantic_approximation(&g, u, depth, Direction::Incoming).unwrap();
            if g.annotation(u).is_some() {
                prop_assert!(!v.is_empty());
                continue;
            }
            let expected = common::approximation_oracle(&g, u, depth);
            prop_assert_eq!(v.weights.keys().collect::<Vec<_>>(), expected.keys().collect::<Vec<_>>());
            for (k, w) in &expected {
                prop_assert!((v.weights[k] - w).abs() < 1e-12);
            }
            if !v.is_empty() {
                prop_assert!((v.weights.values().sum::<f64>() - 1.0).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn leave_one_out_when_k_is_n() {
    let labels = ["a", "b", "a", "b", "a"];
    assert_eq!(stratified_folds(&labels, 5, 3).unwrap(), vec![0, 1, 2, 3, 4]);
}

#[test]
fn cross_validation_is_reproducible() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut xs = Vec::new();
    let mut labels = Vec::new();
    for i in 0..60 {
        let c = i % 3;
        xs.push(vec![(c, 1.0), (3, rng.random_range(0.0..0.5))]);
        labels.push(format!("c{c}"));
    }
    let config = TrainConfig { seed: 11, ..Default::default() };
    let a = cross_validate(&xs, &labels, 4, 5, &config).unwrap();
    assert_eq!(a, cross_validate(&xs, &labels, 4, 5, &config).unwrap());
    assert_eq!(a.accuracy, 1.0);
    assert_eq!(a.fold_accuracies.len(), 5);
    let model = train(&xs, &labels, 4, &config).unwrap();
    assert!(model.support_vectors(&xs, &labels) > 0);
    assert!(cross_validate(&xs, &labels, 3, 5, &config).is_err());
}

#[test]
fn outgoing_direction_walks_toward_containers() {
    let mut g = InclusionGraph::with_singletons(3, [(0, 1), (1, 2)]);
    for (e, s) in [((0, 1), 0.5), ((1, 2), 0.8)] {
        g.attrs_mut((ClassId(e.0), ClassId(e.1))).semantic = Some(SemanticityEdge { s, ..Default::default() });
    }
    g.set_annotations(BTreeMap::from([(ClassId(2), BTreeSet::from(["top".to_string()]))]));
    assert!(semantic_approximation(&g, ClassId(0), 4, Direction::Incoming).unwrap().is_empty());
    let v = semantic_approximation(&g, ClassId(0), 4, Direction::Outgoing).unwrap();
    assert_eq!(v.ranked(), vec![("top", 1.0)]);
    assert!(semantic_approximation(&g, ClassId(0), 1, Direction::Outgoing).unwrap().is_empty());
    assert!(semantic_approximation(&g, ClassId(9), 4, Direction::Outgoing).is_err());
}
