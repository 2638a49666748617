//! Unigram class features and chain augmentation.
//!
//! A chain `(c = s_0, s_1, ..., s_L)` hanging below an occurring class `c`
//! gives each `s_i` an extra `(1/i) * score(s_i -> s_{i-1}) * w(c)`, where the
//! score is semanticity (Strategy 1) or phoneticity (Strategy 2, on top of
//! Strategy 1). Chain members that were not features yet join the vocabulary.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::charstore::{ClassId, Language, Partition};
use crate::error::{Error, Result};
use crate::graphcore::{Edge, InclusionGraph};
use crate::phonetics::least_phonetic_chain;
use crate::semantics::most_semantic_chain;
use crate::Scalar;

pub const DEFAULT_MIN_COUNT: u64 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Provenance {
    Baseline,
    AddedByChain,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Vocabulary {
    entries: BTreeMap<ClassId, Provenance>,
}

impl Vocabulary {
    pub fn from_entries(entries: impl IntoIterator<Item = (ClassId, Provenance)>) -> Self {
        Vocabulary { entries: entries.into_iter().collect() }
    }

    pub fn contains(&self, id: ClassId) -> bool {
        self.entries.contains_key(&id)
    }

    pub fn provenance(&self, id: ClassId) -> Option<Provenance> {
        self.entries.get(&id).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Ids in ascending order; the position of an id is its feature index.
    pub fn ids(&self) -> impl Iterator<Item = ClassId> + '_ {
        self.entries.keys().copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (ClassId, Provenance)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn count(&self, provenance: Provenance) -> usize {
        self.entries.values().filter(|&&p| p == provenance).count()
    }

    pub fn index_of(&self) -> BTreeMap<ClassId, usize> {
        self.entries.keys().enumerate().map(|(i, &k)| (k, i)).collect()
    }
}

/// Sparse class weights of one document.
pub type FeatureVector<T> = BTreeMap<ClassId, T>;

/// Vocabulary plus unnormalized document vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSet<T> {
    pub vocabulary: Vocabulary,
    pub raw: Vec<FeatureVector<T>>,
}

/// Counts of features touched by an augmentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AugmentStats {
    /// Existing features that received extra weight somewhere.
    pub modified: usize,
    /// Features new to the vocabulary.
    pub added: usize,
}

pub fn l2_normalize<T: Scalar>(v: &FeatureVector<T>) -> FeatureVector<T> {
    let norm = v.values().map(|&x| x * x).sum::<T>().sqrt();
    if norm == T::zero() {
        return v.clone();
    }
    v.iter().map(|(&k, &x)| (k, x / norm)).collect()
}

impl<T: Scalar> FeatureSet<T> {
    /// L2-normalized document vectors.
    pub fn normalized(&self) -> Vec<FeatureVector<T>> {
        self.raw.iter().map(l2_normalize).collect()
    }

    /// Normalized vectors as `(feature index, value)` lists over the vocabulary.
    pub fn to_sparse(&self) -> Vec<Vec<(usize, T)>> {
        let index = self.vocabulary.index_of();
        self.normalized().into_iter().map(|v| v.into_iter().map(|(k, x)| (index[&k], x)).collect()).collect()
    }
}

/// Per-class weights of one text: the relative frequency of each known
/// character, maximized over the members of its class. Unknown characters
/// (spaces, punctuation, anything outside the partition) are ignored.
pub fn document_weights<T: Scalar>(text: &str, partition: &Partition) -> FeatureVector<T> {
    let mut counts: BTreeMap<char, usize> = BTreeMap::new();
    for c in text.chars().filter(|&c| partition.get(c).is_some()) {
        *counts.entry(c).or_insert(0) += 1;
    }
    let total: usize = counts.values().sum();
    let mut out: FeatureVector<T> = BTreeMap::new();
    for (c, n) in counts {
        let w = T::from_count(n) / T::from_count(total);
        let slot = out.entry(partition.get(c).expect("filtered")).or_insert(w);
        *slot = slot.max(w);
    }
    out
}

/// Baseline unigram features: classes occurring at least `min_count` times
/// in the corpus, weighted by [`document_weights`].
pub fn baseline_vectors<T: Scalar, S: AsRef<str> + Sync>(
    docs: &[S],
    partition: &Partition,
    min_count: u64,
) -> Result<FeatureSet<T>> {
    if docs.is_empty() {
        return Err(Error::Empty("corpus"));
    }
    let mut corpus_counts: BTreeMap<ClassId, u64> = BTreeMap::new();
    for d in docs {
        for c in d.as_ref().chars() {
            if let Some(id) = partition.get(c) {
                *corpus_counts.entry(id).or_insert(0) += 1;
            }
        }
    }
    let vocabulary = Vocabulary::from_entries(
        corpus_counts.into_iter().filter(|&(_, n)| n >= min_count).map(|(id, _)| (id, Provenance::Baseline)),
    );
    if vocabulary.is_empty() {
        return Err(Error::EmptyVocabulary(min_count as usize));
    }
    let raw: Vec<FeatureVector<T>> = docs
        .par_iter()
        .enumerate()
        .map(|(i, d)| {
            let mut w = document_weights(d.as_ref(), partition);
            if w.is_empty() {
                log::warn!("document {i} has no known character");
            }
            w.retain(|id, _| vocabulary.contains(*id));
            w
        })
        .collect();
    Ok(FeatureSet { vocabulary, raw })
}

/// Adds chain weights to every document. `chains` maps a class to its chain
/// (starting with the class itself); `score` gives the weight of an edge
/// `sub -> super`, `None` contributing nothing.
///
/// Only classes of the baseline vocabulary trigger chains, with their
/// weights in the vectors passed in as `triggers`.
pub fn augment_with_chains<T: Scalar>(
    set: &FeatureSet<T>,
    triggers: &[FeatureVector<T>],
    chains: &BTreeMap<ClassId, Vec<ClassId>>,
    score: impl Fn(Edge) -> Option<T> + Sync,
) -> (FeatureSet<T>, AugmentStats) {
    let results: Vec<(FeatureVector<T>, BTreeSet<ClassId>)> = set
        .raw
        .par_iter()
        .zip(triggers.par_iter())
        .map(|(v, trig)| {
            let mut v = v.clone();
            let mut touched = BTreeSet::new();
            for (&c, &w) in trig {
                if set.vocabulary.provenance(c) != Some(Provenance::Baseline) {
                    continue;
                }
                let Some(chain) = chains.get(&c) else { continue };
                for i in 1..chain.len() {
                    let Some(s) = score((chain[i], chain[i - 1])) else { continue };
                    let add = s / T::from_count(i) * w;
                    if add > T::zero() {
                        let slot = v.entry(chain[i]).or_insert(T::zero());
                        *slot = *slot + add;
                        touched.insert(chain[i]);
                    }
                }
            }
            (v, touched)
        })
        .collect();

    let mut vocabulary = set.vocabulary.clone();
    let mut touched_all = BTreeSet::new();
    let mut raw = Vec::with_capacity(results.len());
    for (v, touched) in results {
        touched_all.extend(touched);
        raw.push(v);
    }
    let mut stats = AugmentStats::default();
    for id in touched_all {
        if vocabulary.contains(id) {
            stats.modified += 1;
        } else {
            vocabulary.entries.insert(id, Provenance::AddedByChain);
            stats.added += 1;
        }
    }
    (FeatureSet { vocabulary, raw }, stats)
}

fn chains_for<T: Scalar>(
    set: &FeatureSet<T>,
    chain: impl Fn(ClassId) -> Vec<ClassId> + Sync,
) -> BTreeMap<ClassId, Vec<ClassId>> {
    let ids: Vec<ClassId> = set.vocabulary.ids().collect();
    ids.into_par_iter().map(|c| (c, chain(c))).collect()
}

/// Strategy 1: augmentation along most semantic chains.
pub fn augment_strategy1<T: Scalar>(set: &FeatureSet<T>, g: &InclusionGraph<T>) -> (FeatureSet<T>, AugmentStats) {
    let chains = chains_for(set, |c| if g.contains(c) { most_semantic_chain(g, c) } else { vec![c] });
    augment_with_chains(set, &set.raw, &chains, |e| g.semanticity(e))
}

/// Strategy 2: Strategy 1 followed by augmentation along least phonetic
/// chains in `language`. With `phonetic_only` the semantic pass is skipped.
pub fn augment_strategy2<T: Scalar>(
    set: &FeatureSet<T>,
    g: &InclusionGraph<T>,
    language: Language,
    phonetic_only: bool,
) -> (FeatureSet<T>, AugmentStats) {
    let first = if phonetic_only { set.clone() } else { augment_strategy1(set, g).0 };
    let chains = chains_for(set, |c| if g.contains(c) { least_phonetic_chain(g, c, language) } else { vec![c] });
    let (out, _) = augment_with_chains(&first, &set.raw, &chains, |e| g.phi(e, language));
    let stats = AugmentStats {
        modified: modified_against(set, &out),
        added: out.vocabulary.count(Provenance::AddedByChain) - set.vocabulary.count(Provenance::AddedByChain),
    };
    (out, stats)
}

/// Baseline features whose weight changed in at least one document.
fn modified_against<T: Scalar>(before: &FeatureSet<T>, after: &FeatureSet<T>) -> usize {
    let mut changed = BTreeSet::new();
    for (a, b) in before.raw.iter().zip(&after.raw) {
        for (k, x) in b {
            if before.vocabulary.contains(*k) && a.get(k) != Some(x) {
                changed.insert(*k);
            }
        }
    }
    changed.len()
}
