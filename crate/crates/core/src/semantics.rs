//! Synsets, class annotation, semantic weight counting and semanticity.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use crate::charstore::{AllographClass, CharStore, ClassId, Partition};
use crate::error::{Error, Result};
use crate::graphcore::{Edge, InclusionGraph};
use crate::phonetics::greedy_chain;
use crate::Scalar;

/// Default weights of `ln(1 + f1)`, `ln(1 + f2)` and `r`.
pub const DEFAULT_COEFFICIENTS: [f64; 3] = [0.5, 0.25, 0.25];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Synset {
    pub id: String,
    pub lemmas: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SemRelation {
    pub source: String,
    pub relation_type: String,
    pub target: String,
}

/// Synsets with their typed relations. Immutable once built.
#[derive(Debug, Clone, Default)]
pub struct SynsetStore {
    synsets: Vec<Synset>,
    index: HashMap<String, usize>,
    relations: BTreeSet<SemRelation>,
}

impl SynsetStore {
    pub fn new(synsets: impl IntoIterator<Item = Synset>, relations: impl IntoIterator<Item = SemRelation>) -> Result<Self> {
        let mut store = SynsetStore::default();
        for s in synsets {
            if s.lemmas.is_empty() {
                return Err(Error::InvalidParameter(format!("synset {} has no lemma", s.id)));
            }
            if store.index.insert(s.id.clone(), store.synsets.len()).is_some() {
                return Err(Error::InvalidParameter(format!("duplicate synset id {}", s.id)));
            }
            store.synsets.push(s);
        }
        for r in relations {
            for end in [&r.source, &r.target] {
                if !store.index.contains_key(end) {
                    return Err(Error::InvalidParameter(format!("relation endpoint {end} is not a known synset")));
                }
            }
            store.relations.insert(r);
        }
        Ok(store)
    }

    pub fn synsets(&self) -> &[Synset] {
        &self.synsets
    }

    pub fn get(&self, id: &str) -> Option<&Synset> {
        self.index.get(id).map(|&i| &self.synsets[i])
    }

    pub fn relations(&self) -> &BTreeSet<SemRelation> {
        &self.relations
    }

    pub fn relation_types(&self) -> BTreeSet<&str> {
        self.relations.iter().map(|r| r.relation_type.as_str()).collect()
    }

    /// Word -> ids of the synsets listing it as a lemma.
    pub fn word_index(&self) -> BTreeMap<&str, BTreeSet<&str>> {
        let mut out: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
        for s in &self.synsets {
            for w in &s.lemmas {
                out.entry(w.as_str()).or_default().insert(s.id.as_str());
            }
        }
        out
    }

    /// Keeps only relations whose type is in `types`.
    pub fn filter_relations(&self, types: &BTreeSet<String>) -> Self {
        SynsetStore {
            synsets: self.synsets.clone(),
            index: self.index.clone(),
            relations: self.relations.iter().filter(|r| types.contains(&r.relation_type)).cloned().collect(),
        }
    }
}

/// Attaches synset `σ` to a class when a member's gloss word is a lemma of
/// `σ`, or when a member character occurs inside a lemma of `σ`.
pub fn annotate_classes(
    synsets: &SynsetStore,
    partition: &Partition,
    glosses: &BTreeMap<char, Vec<String>>,
) -> BTreeMap<ClassId, BTreeSet<String>> {
    let words = synsets.word_index();
    let mut by_char: HashMap<char, BTreeSet<&str>> = HashMap::new();
    for s in synsets.synsets() {
        for w in &s.lemmas {
            for c in w.chars() {
                by_char.entry(c).or_default().insert(s.id.as_str());
            }
        }
    }
    let mut out = BTreeMap::new();
    for class in partition.classes() {
        let mut ids: BTreeSet<String> = BTreeSet::new();
        for c in &class.members {
            if let Some(found) = by_char.get(c) {
                ids.extend(found.iter().map(|s| s.to_string()));
            }
            for g in glosses.get(c).into_iter().flatten() {
                if let Some(found) = words.get(g.as_str()) {
                    ids.extend(found.iter().map(|s| s.to_string()));
                }
            }
        }
        if !ids.is_empty() {
            out.insert(class.id, ids);
        }
    }
    out
}

/// Precomputed occurrence counts for `f1` and `f2`.
///
/// `occ[σ][𝐜]` is the number of (lemma of σ, member of 𝐜) pairs with the
/// member inside the lemma; a relation then contributes the product of the
/// counts on its two ends.
pub struct SemanticCounter {
    occ: Vec<HashMap<ClassId, u64>>,
    by_class: HashMap<ClassId, Vec<usize>>,
    out: Vec<Vec<usize>>,
}

impl SemanticCounter {
    pub fn new(synsets: &SynsetStore, partition: &Partition) -> Self {
        let n = synsets.synsets().len();
        let mut occ: Vec<HashMap<ClassId, u64>> = vec![HashMap::new(); n];
        let mut by_class: HashMap<ClassId, Vec<usize>> = HashMap::new();
        for (i, s) in synsets.synsets().iter().enumerate() {
            for w in &s.lemmas {
                let chars: BTreeSet<char> = w.chars().collect();
                for c in chars {
                    if let Some(id) = partition.get(c) {
                        *occ[i].entry(id).or_insert(0) += 1;
                    }
                }
            }
            for &id in occ[i].keys() {
                by_class.entry(id).or_default().push(i);
            }
        }
        let mut out = vec![Vec::new(); n];
        for r in synsets.relations() {
            out[synsets.index[&r.source]].push(synsets.index[&r.target]);
        }
        SemanticCounter { occ, by_class, out }
    }

    fn occ(&self, synset: usize, class: ClassId) -> u64 {
        self.occ[synset].get(&class).copied().unwrap_or(0)
    }

    /// Distinct (relation, w1, w2, s, c) tuples with `s` in `w1` and `c` in `w2`.
    pub fn f1(&self, (s, c): Edge) -> u64 {
        let mut total = 0;
        for &a in self.by_class.get(&s).into_iter().flatten() {
            for &b in &self.out[a] {
                total += self.occ(a, s) * self.occ(b, c);
            }
        }
        total
    }

    /// Like [`f1`](Self::f1) over two-step relation paths through three
    /// distinct synsets.
    pub fn f2(&self, (s, c): Edge) -> u64 {
        let mut total = 0;
        for &a in self.by_class.get(&s).into_iter().flatten() {
            let left = self.occ(a, s);
            for &mid in &self.out[a] {
                if mid == a {
                    continue;
                }
                for &b in &self.out[mid] {
                    if b != a && b != mid {
                        total += left * self.occ(b, c);
                    }
                }
            }
        }
        total
    }
}

/// Fraction of member pairs `(s, c)` sharing their Kāng Xī radical; a
/// missing radical never matches.
pub fn radical_agreement<T: Scalar>(store: &CharStore, sub: &AllographClass, sup: &AllographClass) -> T {
    let mut same = 0usize;
    for &s in &sub.members {
        for &c in &sup.members {
            if matches!((store.radical(s), store.radical(c)), (Some(a), Some(b)) if a == b) {
                same += 1;
            }
        }
    }
    T::from_count(same) / T::from_count(sub.len() * sup.len())
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SemanticityEdge<T> {
    pub f1: u64,
    pub f2: u64,
    pub r: T,
    /// Value of the formula before normalization.
    pub raw: T,
    /// Normalized semanticity in `[0, 1]`.
    pub s: T,
}

pub fn semanticity_raw<T: Scalar>(f1: u64, f2: u64, r: T, coefficients: [T; 3]) -> T {
    let [a, b, c] = coefficients;
    a * T::from_count(f1 as usize).ln_1p() + b * T::from_count(f2 as usize).ln_1p() + c * r
}

/// Evaluates the formula on every edge and divides by the largest raw value.
/// Returns the edges and the normalizer (zero when every raw value is zero).
pub fn semanticity_from_counts<T: Scalar>(
    counts: &BTreeMap<Edge, (u64, u64, T)>,
    coefficients: [T; 3],
) -> (BTreeMap<Edge, SemanticityEdge<T>>, T) {
    let raws: BTreeMap<Edge, SemanticityEdge<T>> = counts
        .iter()
        .map(|(&e, &(f1, f2, r))| (e, SemanticityEdge { f1, f2, r, raw: semanticity_raw(f1, f2, r, coefficients), s: T::zero() }))
        .collect();
    let max = raws.values().map(|e| e.raw).fold(T::zero(), T::max);
    let out = raws
        .into_iter()
        .map(|(e, mut v)| {
            v.s = if max > T::zero() { v.raw / max } else { T::zero() };
            (e, v)
        })
        .collect();
    (out, max)
}

/// Counts `f1`, `f2`, `r` for every edge, writes normalized semanticity into
/// the graph and records the normalizer and coefficients.
pub fn semanticity<T: Scalar>(
    g: &mut InclusionGraph<T>,
    store: &CharStore,
    synsets: &SynsetStore,
    coefficients: [T; 3],
) -> Result<T> {
    if coefficients.iter().any(|c| !c.is_finite() || *c < T::zero()) {
        return Err(Error::InvalidParameter("semanticity coefficients must be finite and nonnegative".into()));
    }
    let classes = g.classes();
    let counter = SemanticCounter::new(synsets, classes);
    let counts: BTreeMap<Edge, (u64, u64, T)> = g
        .edges()
        .par_iter()
        .map(|&e| {
            let r = radical_agreement(store, classes.class(e.0)?, classes.class(e.1)?);
            Ok((e, (counter.f1(e), counter.f2(e), r)))
        })
        .collect::<Result<_>>()?;
    let (values, max) = semanticity_from_counts(&counts, coefficients);
    for (e, v) in values {
        g.attrs_mut(e).semantic = Some(v);
    }
    g.meta.semantic_normalizer = Some(max);
    g.meta.semantic_coefficients = Some(coefficients);
    Ok(max)
}

pub fn default_coefficients<T: Scalar>() -> [T; 3] {
    DEFAULT_COEFFICIENTS.map(T::lit)
}

/// `s_0 = c`, `s_{i+1}` = the subclass of `s_i` with the largest semanticity.
/// Zero is a valid value; ties keep the lowest class id.
pub fn most_semantic_chain<T: Scalar>(g: &InclusionGraph<T>, c: ClassId) -> Vec<ClassId> {
    greedy_chain(g, c, |e| g.semanticity(e), |a, b| a > b)
}
