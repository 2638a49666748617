//! End-to-end stages over in-memory inputs: graph construction, edge
//! annotation and feature extraction.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::charstore::{CharStore, ClassId, Language, Reading, Sinograph, build_allograph_classes};
use crate::error::{Error, Result};
use crate::features::{augment_strategy1, augment_strategy2, baseline_vectors, AugmentStats, FeatureSet};
use crate::graphcore::{transitive_reduce, DiGraph, InclusionGraph};
use crate::phonetics::{phoneticity, PhoneticModel, PhoneticityEdge};
use crate::semantics::{annotate_classes, semanticity, SynsetStore};
use crate::strokesig::{char_signature, detect_inclusions, Stroke, DEFAULT_TOLERANCE};
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuildOptions<T> {
    pub tolerance: T,
    /// Characters above this codepoint are ignored (`0xFFFF` keeps the BMP).
    pub max_codepoint: Option<u32>,
}

impl<T: Scalar> Default for BuildOptions<T> {
    fn default() -> Self {
        BuildOptions { tolerance: T::lit(DEFAULT_TOLERANCE), max_codepoint: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BuildStats {
    pub chars: usize,
    pub classes: usize,
    /// Characters skipped because a stroke has coincident endpoints.
    pub degenerate: usize,
    /// Inclusions between signatures of equal length, dropped as identities.
    pub identities: usize,
    pub char_edges: usize,
    pub char_edges_reduced: usize,
    pub class_edges: usize,
    /// Lifted edges dropped because they closed a cycle between classes.
    pub cyclic: usize,
    pub class_edges_reduced: usize,
}

/// Mines inclusions from strokes, reduces them, lifts them to allographic
/// classes and reduces again. Representatives are the most frequent member
/// when `frequencies` is given.
pub fn build_graph<T: Scalar>(
    strokes: &BTreeMap<char, Vec<Stroke<T>>>,
    variants: &[(char, char)],
    frequencies: Option<&BTreeMap<char, u64>>,
    options: &BuildOptions<T>,
) -> Result<(InclusionGraph<T>, BuildStats)> {
    let keep = |c: char| options.max_codepoint.is_none_or(|m| u32::from(c) <= m);
    let strokes: BTreeMap<char, &Vec<Stroke<T>>> = strokes.iter().filter(|(c, _)| keep(**c)).map(|(c, s)| (*c, s)).collect();
    if strokes.is_empty() {
        return Err(Error::Empty("stroke data"));
    }
    let variants: Vec<(char, char)> = variants.iter().copied().filter(|&(a, b)| keep(a) && keep(b)).collect();
    let mut chars: BTreeSet<char> = strokes.keys().copied().collect();
    chars.extend(variants.iter().flat_map(|&(a, b)| [a, b]));
    let mut stats = BuildStats { chars: chars.len(), ..Default::default() };

    let sigs: Vec<(char, Result<_>)> = strokes.par_iter().map(|(&c, s)| (c, char_signature(s))).collect();
    let mut signatures = BTreeMap::new();
    for (c, sig) in sigs {
        match sig {
            Ok(sig) => {
                signatures.insert(c, sig);
            }
            Err(Error::DegenerateStroke { index }) => {
                log::warn!("U+{:04X}: stroke {index} is degenerate, character skipped", u32::from(c));
                stats.degenerate += 1;
            }
            Err(e) => return Err(e),
        }
    }

    let found = detect_inclusions(&signatures, options.tolerance)?;
    let mut char_dag = DiGraph::from_edges(signatures.keys().copied(), []);
    for (s, c) in found {
        if signatures[&s].stroke_count() == signatures[&c].stroke_count() {
            stats.identities += 1;
        } else {
            char_dag.add_edge(s, c);
        }
    }
    stats.char_edges = char_dag.edge_count();
    let char_dag = transitive_reduce(&char_dag)?;
    stats.char_edges_reduced = char_dag.edge_count();

    let mut partition = build_allograph_classes(&variants, &chars)?;
    if let Some(f) = frequencies {
        partition.choose_representatives(|c| f.get(&c).copied());
    }
    stats.classes = partition.len();

    // lift, keeping the most supported edges when variants would close a cycle
    let mut support: BTreeMap<(ClassId, ClassId), usize> = BTreeMap::new();
    for (s, c) in char_dag.sorted_edges() {
        let (a, b) = (partition.class_of(s)?, partition.class_of(c)?);
        if a != b {
            *support.entry((a, b)).or_insert(0) += 1;
        }
    }
    let ids: Vec<ClassId> = partition.classes().iter().map(|c| c.id).collect();
    let mut dag = DiGraph::from_edges(ids.iter().copied(), support.keys().copied());
    if !dag.is_acyclic() {
        let mut ranked: Vec<((ClassId, ClassId), usize)> = support.into_iter().collect();
        ranked.sort_by(|x, y| y.1.cmp(&x.1).then(x.0.cmp(&y.0)));
        dag = DiGraph::from_edges(ids, []);
        for ((a, b), _) in ranked {
            if dag.descendants(b).contains(&a) {
                stats.cyclic += 1;
            } else {
                dag.add_edge(a, b);
            }
        }
        log::warn!("dropped {} class edges that closed cycles", stats.cyclic);
    }
    stats.class_edges = dag.edge_count();
    let dag = transitive_reduce(&dag)?;
    stats.class_edges_reduced = dag.edge_count();
    Ok((InclusionGraph::from_parts(partition, dag), stats))
}

/// Character records for the classes of a graph.
pub fn char_store<T: Scalar>(
    g: &InclusionGraph<T>,
    readings: &[(char, Reading)],
    radicals: &BTreeMap<char, u8>,
) -> CharStore {
    let mut chars: BTreeMap<char, Sinograph> = BTreeMap::new();
    for (c, r) in readings {
        chars.entry(*c).or_insert_with(|| Sinograph::new(*c)).readings.push(r.clone());
    }
    for (&c, &r) in radicals {
        chars.entry(c).or_insert_with(|| Sinograph::new(c)).kangxi_radical = Some(r);
    }
    CharStore::with_partition(g.classes().clone(), chars)
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct AnnotateStats<T> {
    /// Phoneticity normalizer per language; `None` when no edge had a finite distance.
    pub phi_normalizers: BTreeMap<Language, Option<T>>,
    pub semantic_normalizer: Option<T>,
    pub annotated_classes: usize,
}

/// Semantic inputs for annotation.
pub struct SemanticInputs<'a, T> {
    pub synsets: &'a SynsetStore,
    pub glosses: &'a BTreeMap<char, Vec<String>>,
    pub coefficients: [T; 3],
}

/// Recomputes phoneticity for `languages` and, when given, class synsets and
/// semanticity. Previous attributes are discarded, so reruns give the same
/// graph. A language without any finite distance leaves its edges unknown.
pub fn annotate<T: Scalar>(
    g: &mut InclusionGraph<T>,
    store: &CharStore,
    model: &PhoneticModel<T>,
    languages: &[Language],
    semantic: Option<SemanticInputs<'_, T>>,
) -> Result<AnnotateStats<T>> {
    if g.edge_count() == 0 {
        return Err(Error::Empty("graph edges"));
    }
    g.clear_attributes();
    let mut stats = AnnotateStats::default();
    for &l in languages {
        match phoneticity(g, store, model, l) {
            Ok(d) => {
                stats.phi_normalizers.insert(l, Some(d));
            }
            Err(Error::NoFiniteDistance(_)) => {
                log::warn!("no edge has readings on both sides in {l}; phoneticity unknown");
                for e in g.edges() {
                    g.attrs_mut(e).phonetic.insert(l, PhoneticityEdge::default());
                }
                stats.phi_normalizers.insert(l, None);
            }
            Err(e) => return Err(e),
        }
    }
    if let Some(sem) = semantic {
        let annotations = annotate_classes(sem.synsets, g.classes(), sem.glosses);
        stats.annotated_classes = annotations.len();
        g.set_annotations(annotations);
        stats.semantic_normalizer = Some(semanticity(g, store, sem.synsets, sem.coefficients)?);
    }
    Ok(stats)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Baseline,
    /// Most semantic chains.
    Semantic,
    /// Most semantic chains, then least phonetic chains in a language.
    SemanticPhonetic(Language),
    /// Least phonetic chains only.
    Phonetic(Language),
}

/// Baseline vectors of `docs`, augmented according to `strategy`.
pub fn extract_features<T: Scalar, S: AsRef<str> + Sync>(
    g: &InclusionGraph<T>,
    docs: &[S],
    min_count: u64,
    strategy: Strategy,
) -> Result<(FeatureSet<T>, AugmentStats)> {
    let base = baseline_vectors(docs, g.classes(), min_count)?;
    Ok(match strategy {
        Strategy::Baseline => (base, AugmentStats::default()),
        Strategy::Semantic => augment_strategy1(&base, g),
        Strategy::SemanticPhonetic(l) => augment_strategy2(&base, g, l, false),
        Strategy::Phonetic(l) => augment_strategy2(&base, g, l, true),
    })
}
