//! Brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use sinograph::charstore::{build_allograph_classes, ClassId, Language, Partition};
use sinograph::phonetics::PhoneticityEdge;
use sinograph::semantics::{SemRelation, SemanticityEdge, Synset, SynsetStore};
use sinograph::InclusionGraph;

/// Random DAG on `n` nodes: edges go forward in a shuffled order, each kept
/// with probability `density`.
pub fn random_dag<R: Rng>(rng: &mut R, n: u32, density: f64) -> Vec<(u32, u32)> {
    let mut order: Vec<u32> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            if rng.random_bool(density) {
                edges.push((order[i], order[j]));
            }
        }
    }
    edges
}

/// Reflexive-free reachability by Floyd-Warshall.
pub fn reachability(n: usize, edges: &[(u32, u32)]) -> Vec<Vec<bool>> {
    let mut r = vec![vec![false; n]; n];
    for &(a, b) in edges {
        r[a as usize][b as usize] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

/// Edges `(a, b)` with no other path from `a` to `b`.
pub fn brute_reduction(n: usize, edges: &[(u32, u32)]) -> BTreeSet<(u32, u32)> {
    let r = reachability(n, edges);
    edges
        .iter()
        .copied()
        .filter(|&(a, b)| !(0..n).any(|m| m != a as usize && m != b as usize && r[a as usize][m] && r[m][b as usize]))
        .collect()
}

/// Rank of each value counted directly: smaller values plus the midpoint of ties.
pub fn naive_ranks(xs: &[f64]) -> Vec<f64> {
    xs.iter()
        .map(|&x| {
            let less = xs.iter().filter(|&&y| y < x).count() as f64;
            let equal = xs.iter().filter(|&&y| y == x).count() as f64;
            less + (equal + 1.0) / 2.0
        })
        .collect()
}

/// Tie-free Spearman correlation `1 - 6 sum d^2 / (n (n^2 - 1))`.
pub fn classical_spearman(x: &[f64], y: &[f64]) -> f64 {
    let (rx, ry) = (naive_ranks(x), naive_ranks(y));
    let n = x.len() as f64;
    let d2: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - b) * (a - b)).sum();
    1.0 - 6.0 * d2 / (n * (n * n - 1.0))
}

/// Pearson correlation of naive ranks, for inputs with ties.
pub fn pearson_of_ranks(x: &[f64], y: &[f64]) -> f64 {
    let (rx, ry) = (naive_ranks(x), naive_ranks(y));
    let n = x.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let cov: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = rx.iter().map(|a| (a - mx) * (a - mx)).sum();
    let vy: f64 = ry.iter().map(|b| (b - my) * (b - my)).sum();
    cov / (vx * vy).sqrt()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Toy graph with random semanticity and Mandarin phoneticity on every edge;
/// about one edge in five has unknown phoneticity.
pub fn weighted_graph<R: Rng>(rng: &mut R, n: u32, density: f64) -> InclusionGraph {
    let edges = random_dag(rng, n, density);
    let mut g = InclusionGraph::with_singletons(n, edges.iter().copied());
    for (a, b) in edges {
        let attrs = g.attrs_mut((ClassId(a), ClassId(b)));
        // coarse values so ties actually happen
        let s = f64::from(rng.random_range(0..5u8)) / 4.0;
        attrs.semantic = Some(SemanticityEdge { s, ..Default::default() });
        let phi = rng.random_bool(0.8).then(|| f64::from(rng.random_range(0..5u8)) / 4.0);
        attrs.phonetic.insert(Language::Mandarin, PhoneticityEdge { d_min: phi.map(|p| 1.0 - p), phi });
    }
    g
}

/// Chain built by sorting every step's candidates explicitly, lowest or
/// highest score first, then lowest id. Unscored edges are skipped.
pub fn chain_oracle(
    g: &InclusionGraph,
    start: ClassId,
    score: impl Fn((ClassId, ClassId)) -> Option<f64>,
    prefer_low: bool,
) -> Vec<ClassId> {
    let mut chain = vec![start];
    loop {
        let cur = *chain.last().unwrap();
        let mut cands: Vec<(f64, ClassId)> = g
            .dag()
            .sorted_edges()
            .into_iter()
            .filter(|&(_, b)| b == cur)
            .filter_map(|(a, b)| score((a, b)).map(|s| (if prefer_low { s } else { -s }, a)))
            .collect();
        cands.sort_by(|x, y| x.partial_cmp(y).unwrap());
        match cands.first() {
            Some(&(_, z)) if !chain.contains(&z) => chain.push(z),
            _ => return chain,
        }
    }
}

/// `f1` and `f2` by listing every tuple of relations, lemmas and member
/// characters, the subcharacter on the source side.
pub fn brute_f1_f2(
    synsets: &SynsetStore,
    sub_members: &[char],
    sup_members: &[char],
) -> (u64, u64) {
    let lemmas = |id: &str| synsets.get(id).unwrap().lemmas.iter().cloned().collect::<Vec<String>>();
    let hits = |id: &str, members: &[char]| -> u64 {
        let mut n = 0;
        for w in lemmas(id) {
            for m in members {
                if w.contains(*m) {
                    n += 1;
                }
            }
        }
        n
    };
    let mut f1 = 0;
    let mut f2 = 0;
    for r in synsets.relations() {
        f1 += hits(&r.source, sub_members) * hits(&r.target, sup_members);
        for r2 in synsets.relations() {
            let (a, b, c) = (&r.source, &r.target, &r2.target);
            if r2.source == *b && a != b && b != c && a != c {
                f2 += hits(a, sub_members) * hits(c, sup_members);
            }
        }
    }
    (f1, f2)
}

/// Every simple path of 1..=`max_depth` edges from `u` against edge
/// direction, ending at its first annotated node.
pub fn annotated_paths(g: &InclusionGraph, u: ClassId, max_depth: usize) -> Vec<Vec<ClassId>> {
    let edges = g.dag().sorted_edges();
    let mut out = Vec::new();
    let mut stack = vec![vec![u]];
    while let Some(path) = stack.pop() {
        let last = *path.last().unwrap();
        if path.len() > 1 && g.annotation(last).is_some() {
            out.push(path);
            continue;
        }
        if path.len() > max_depth {
            continue;
        }
        for &(a, b) in &edges {
            if b == last && !path.contains(&a) {
                let mut p = path.clone();
                p.push(a);
                stack.push(p);
            }
        }
    }
    out
}

/// Normalized synset weights summed over [`annotated_paths`].
pub fn approximation_oracle(g: &InclusionGraph, u: ClassId, max_depth: usize) -> BTreeMap<String, f64> {
    let mut raw: BTreeMap<String, f64> = BTreeMap::new();
    for path in annotated_paths(g, u, max_depth) {
        let product: f64 = path.windows(2).map(|w| g.semanticity((w[1], w[0])).unwrap_or(0.0)).product();
        let w = product / (path.len() - 1) as f64;
        if w > 0.0 {
            for s in g.annotation(*path.last().unwrap()).unwrap() {
                *raw.entry(s.clone()).or_insert(0.0) += w;
            }
        }
    }
    let total: f64 = raw.values().sum();
    raw.values_mut().for_each(|v| *v /= total);
    raw
}

/// Up to 12 synsets over a 6-character alphabet, at most 50 words in all.
pub fn toy_wordnet<R: Rng>(rng: &mut R) -> (SynsetStore, Partition) {
    let alphabet: Vec<char> = "水木火土金石".chars().collect();
    let n = rng.random_range(2..12);
    let mut synsets = Vec::new();
    for i in 0..n {
        let lemmas: BTreeSet<String> = (0..rng.random_range(1..5))
            .map(|_| (0..rng.random_range(1..4)).map(|_| alphabet[rng.random_range(0..6)]).collect())
            .collect();
        synsets.push(Synset { id: format!("s{i}"), lemmas });
    }
    let types = ["hypernym", "meronym"];
    let relations: Vec<SemRelation> = (0..rng.random_range(0..3 * n))
        .map(|_| SemRelation {
            source: format!("s{}", rng.random_range(0..n)),
            relation_type: types[rng.random_range(0..2)].to_string(),
            target: format!("s{}", rng.random_range(0..n)),
        })
        .collect();
    let variants = if rng.random_bool(0.5) { vec![('水', '石')] } else { vec![] };
    let partition = build_allograph_classes(&variants, &alphabet.iter().copied().collect()).unwrap();
    (SynsetStore::new(synsets, relations).unwrap(), partition)
}


/// Classes touched by Strategy 1 in any document, split into those already
/// in the vocabulary and those added, found by walking every chain.
pub fn strategy1_oracle(
    g: &InclusionGraph,
    set: &sinograph::FeatureSet,
) -> (BTreeSet<ClassId>, BTreeSet<ClassId>) {
    let mut touched = BTreeSet::new();
    for doc in &set.raw {
        for (&c, &w) in doc {
            if w <= 0.0 {
                continue;
            }
            let chain = sinograph::semantics::most_semantic_chain(g, c);
            for pair in chain.windows(2) {
                if g.semanticity((pair[1], pair[0])).unwrap_or(0.0) > 0.0 {
                    touched.insert(pair[1]);
                }
            }
        }
    }
    touched.into_iter().partition(|c| set.vocabulary.contains(*c))
}
