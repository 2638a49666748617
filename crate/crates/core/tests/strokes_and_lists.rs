mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use sinograph::freqlists::{comchar, distance_dn, spearman};
use sinograph::strokesig::{char_signature, detect_inclusions, pair_signature, SigValue, StrokeType};
use sinograph::{FrequencyList, Stroke};

fn stroke(kind: usize, a: (f64, f64), b: (f64, f64)) -> Stroke {
    Stroke::segment(StrokeType::from_index(kind).unwrap(), a, b)
}

fn close(a: SigValue<f64>, b: SigValue<f64>) -> bool {
    match (a.finite(), b.finite()) {
        (Some(x), Some(y)) => (x - y).abs() <= 1e-6 * (1.0 + x.abs()),
        (None, None) => true,
        _ => false,
    }
}

fn point() -> impl Strategy<Value = (f64, f64)> {
    (-10.0f64..10.0, -10.0f64..10.0)
}

fn long_enough(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() > 0.1 && (a.1 - b.1).abs() > 0.1
}

proptest! {
    #[test]
    fn signature_survives_translation_and_uniform_scaling(
        a in point(), b in point(), c in point(), d in point(),
        k in 0.1f64..10.0, tx in -50.0f64..50.0, ty in -50.0f64..50.0,
    ) {
        prop_assume!(long_enough(a, b) && long_enough(c, d));
        let (s1, s2) = (stroke(16, a, b), stroke(17, c, d));
        let base = pair_signature(&s1, &s2).unwrap();
        let moved = pair_signature(&s1.transformed(k, k, tx, ty), &s2.transformed(k, k, tx, ty)).unwrap();
        for (x, y) in base.components().iter().zip(moved.components()) {
            prop_assert!(close(*x, *y), "{} vs {}", base, moved);
        }
    }

    #[test]
    fn box_ratios_survive_independent_scaling(
        a in point(), b in point(), c in point(), d in point(),
        sx in 0.1f64..10.0, sy in 0.1f64..10.0,
    ) {
        prop_assume!(long_enough(a, b) && long_enough(c, d));
        let (s1, s2) = (stroke(16, a, b), stroke(17, c, d));
        let base = pair_signature(&s1, &s2).unwrap();
        let moved = pair_signature(&s1.transformed(sx, sy, 0.0, 0.0), &s2.transformed(sx, sy, 0.0, 0.0)).unwrap();
        prop_assert!(close(base.components()[1], moved.components()[1]));
        prop_assert!(close(base.components()[2], moved.components()[2]));
    }

    #[test]
    fn concatenated_signatures_contain_their_parts(
        pts in prop::collection::vec((point(), point(), 0usize..36), 2..7),
        cut in 1usize..6,
    ) {
        prop_assume!(pts.iter().all(|&(a, b, _)| long_enough(a, b)));
        let strokes: Vec<Stroke> = pts.iter().map(|&(a, b, k)| stroke(k, a, b)).collect();
        let cut = cut.min(strokes.len() - 1);
        let whole = char_signature(&strokes).unwrap();
        let head = char_signature(&strokes[..cut]).unwrap();
        let tail = char_signature(&strokes[cut..]).unwrap();
        prop_assert!(head.occurs_in(&whole, 0.0));
        prop_assert!(tail.occurs_in(&whole, 0.0));
        let sigs = BTreeMap::from([('A', head), ('B', whole)]);
        let found = detect_inclusions(&sigs, 0.0).unwrap();
        prop_assert!(found.contains(&('A', 'B')));
        prop_assert!(found.iter().all(|(s, c)| sigs[s].stroke_count() <= sigs[c].stroke_count()));
    }

    #[test]
    fn spearman_matches_naive_ranks(xs in prop::collection::vec(0u8..6, 2..12), seed in any::<u64>()) {
        let x: Vec<f64> = xs.iter().map(|&v| f64::from(v)).collect();
        let mut y = x.clone();
        // a deterministic scramble of x
        let n = y.len();
        for i in 0..n {
            y.swap(i, (seed as usize).wrapping_mul(i + 7) % n);
        }
        let expected = common::pearson_of_ranks(&x, &y);
        match spearman(&x, &y) {
            Some(r) => prop_assert!((r - expected).abs() < 1e-9),
            None => prop_assert!(expected.is_nan()),
        }
    }

    #[test]
    fn dn_is_symmetric_and_bounded(
        a in prop::collection::btree_map(0u32..40, 1u64..100, 1..30),
        b in prop::collection::btree_map(0u32..40, 1u64..100, 1..30),
        n in 1usize..40,
    ) {
        let to_list = |m: &BTreeMap<u32, u64>| {
            let counts: BTreeMap<char, u64> = m.iter().map(|(&k, &v)| (char::from_u32(0x4E00 + k).unwrap(), v)).collect();
            FrequencyList::from_counts(&counts).unwrap()
        };
        let (la, lb) = (to_list(&a), to_list(&b));
        let d = distance_dn(&la, &lb, n).unwrap();
        prop_assert!((d - distance_dn(&lb, &la, n).unwrap()).abs() < 1e-12);
        let cov = comchar(&la, &lb, n).len() as f64 / n as f64;
        prop_assert!(d >= 1.0 - cov - 1e-12 && d <= 1.0 + 1e-12);
        if n == la.len() {
            prop_assert!(distance_dn(&la, &la, n).unwrap().abs() < 1e-12);
        }
    }
}

#[test]
fn spearman_matches_classical_formula_on_all_small_permutations() {
    for n in 2..=6 {
        let x: Vec<f64> = (0..n).map(|i| i as f64).collect();
        for p in common::permutations(n) {
            let y: Vec<f64> = p.iter().map(|&i| i as f64).collect();
            let r = spearman(&x, &y).unwrap();
            assert!((r - common::classical_spearman(&x, &y)).abs() < 1e-12, "{p:?}");
        }
    }
}
