mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sinograph::charstore::{ClassId, Language};
use sinograph::features::{Provenance, Vocabulary};
use sinograph::io::{self, VectorFile};
use sinograph::phonetics::PhoneticityEdge;
use sinograph::semantics::SemanticityEdge;
use sinograph::strokesig::StrokeType;
use sinograph::synthetic::{generate, SyntheticConfig};
use sinograph::{InclusionGraph, Stroke};

fn bundled() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/synthetic")
}

proptest! {
    #[test]
    fn snapshot_round_trip(seed in any::<u64>(), n in 1u32..15) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = common::weighted_graph(&mut rng, n, 0.3);
        for e in g.edges() {
            let a = g.attrs_mut(e);
            if let Some(s) = a.semantic.as_mut() {
                s.f1 = rng.random_range(0..100);
                s.f2 = rng.random_range(0..100);
                s.r = rng.random();
                s.raw = rng.random::<f64>() * 3.0;
            }
            if rng.random_bool(0.5) {
                a.phonetic.insert(Language::JapaneseKun, PhoneticityEdge { d_min: Some(rng.random()), phi: Some(rng.random()) });
            }
        }
        g.meta.phi_normalizer.insert(Language::Mandarin, rng.random());
        g.meta.semantic_normalizer = Some(rng.random());
        let mut annotations = BTreeMap::new();
        for c in (0..n).filter(|_| rng.random_bool(0.4)).collect::<Vec<_>>() {
            let k = rng.random_range(1..4);
            annotations.insert(ClassId(c), (0..k).map(|i| format!("0{i}{c}-n")).collect::<BTreeSet<_>>());
        }
        g.set_annotations(annotations);
        let text = io::write_snapshot(&g);
        let back: InclusionGraph = io::read_snapshot(&text, "snapshot").unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(io::write_snapshot(&back), text);
    }

    #[test]
    fn strokes_round_trip(
        pts in prop::collection::vec(prop::collection::vec((-100i32..100, -100i32..100), 2..5), 1..6),
        kinds in prop::collection::vec(0usize..36, 6),
    ) {
        let strokes: Vec<Stroke> = pts
            .iter()
            .zip(&kinds)
            .map(|(p, &k)| {
                let skeleton = p.iter().map(|&(x, y)| sinograph::strokesig::Point::new(f64::from(x) / 8.0, f64::from(y) / 3.0)).collect();
                Stroke::new(StrokeType::from_index(k).unwrap(), skeleton)
            })
            .collect::<Result<_, _>>()
            .unwrap();
        let line = io::format_strokes('永', &strokes);
        let parsed = io::parse_strokes::<f64>(&line, "strokes").unwrap();
        prop_assert_eq!(&parsed[&'永'], &strokes);
    }

    #[test]
    fn vectors_round_trip(rows in prop::collection::vec(prop::collection::btree_map(0usize..20, 0.0f64..1.0, 0..6), 1..10)) {
        let vocabulary = Vocabulary::from_entries((0..20).map(|i| (ClassId(i * 3), if i % 4 == 0 { Provenance::AddedByChain } else { Provenance::Baseline })));
        let v = VectorFile {
            vocabulary,
            labels: (0..rows.len()).map(|i| format!("label{}", i % 3)).collect(),
            vectors: rows.iter().map(|r| r.iter().map(|(&i, &w)| (i, w)).collect()).collect(),
        };
        let back: VectorFile<f64> = io::read_vectors(&io::write_vectors(&v), "vectors").unwrap();
        prop_assert_eq!(back, v);
    }
}

#[test]
fn bundled_dataset_is_the_default_generator_output() {
    let dataset = generate(&SyntheticConfig::default());
    for (name, text) in &dataset.files {
        let on_disk = std::fs::read_to_string(bundled().join(name)).unwrap();
        assert!(on_disk == *text, "{name} differs from the generator output");
    }
}

#[test]
fn bundled_dataset_parses() {
    let read = |name: &str| io::read_text(&bundled().join(name)).unwrap();
    let strokes = io::parse_strokes::<f64>(&read("strokes.tsv"), "strokes.tsv").unwrap();
    assert!(strokes.len() >= 250);
    let readings = io::parse_readings(&read("readings.tsv"), "readings.tsv").unwrap();
    let languages: BTreeSet<Language> = readings.iter().map(|(_, r)| r.language()).collect();
    assert_eq!(languages.len(), 3);
    assert!(!io::parse_variants(&read("variants.tsv"), "variants.tsv").unwrap().is_empty());
    assert!(!io::parse_radicals(&read("radicals.tsv"), "radicals.tsv").unwrap().is_empty());
    let synsets = io::parse_synsets(&read("synsets.tsv"), "synsets.tsv").unwrap();
    let relations = io::parse_relations(&read("relations.tsv"), "relations.tsv").unwrap();
    sinograph::semantics::SynsetStore::new(synsets, relations).unwrap();
    let corpus = io::parse_corpus(&read("corpus.tsv"), "corpus.tsv").unwrap();
    assert_eq!(corpus.len(), 1000);
    let freq: BTreeMap<char, u64> = io::parse_freq(&read("freq.tsv"), "freq.tsv").unwrap();
    let total: u64 = freq.values().sum();
    assert_eq!(total as usize, corpus.iter().map(|(_, d)| d.chars().count()).sum::<usize>());
}

#[test]
fn parse_errors_name_the_line() {
    let err = io::parse_freq("4E00\t3\n4E01\tmany\n", "freq.tsv").unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("freq.tsv") && msg.contains('2'), "{msg}");
    assert!(err.is_input_error());
    assert!(io::parse_radicals("4E00\t215\n", "r").is_err());
    assert!(io::parse_variants("4E00\n", "v").is_err());
    assert!(io::read_snapshot::<f64>("SINOGRAPH-GRAPH 2\n", "g").is_err());
}

#[test]
fn semantic_columns_round_trip_when_zero() {
    let mut g = InclusionGraph::with_singletons(2, [(0, 1)]);
    g.attrs_mut((ClassId(0), ClassId(1))).semantic = Some(SemanticityEdge::default());
    let back: InclusionGraph = io::read_snapshot(&io::write_snapshot(&g), "g").unwrap();
    assert_eq!(back, g);
}
