//! The inclusion DAG over allographic classes.

mod dag;
mod powerlaw;

use std::collections::{BTreeMap, BTreeSet};

pub use dag::{degree_statistics, transitive_reduce, DegreeStats, DiGraph};
pub use powerlaw::{fit_power_law, zeta, PowerLawFit, MIN_SAMPLES};

use crate::charstore::{ClassId, Language, Partition};
use crate::error::Result;
use crate::phonetics::PhoneticityEdge;
use crate::semantics::SemanticityEdge;
use crate::Scalar;

pub type Edge = (ClassId, ClassId);

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EdgeAttrs<T> {
    pub phonetic: BTreeMap<Language, PhoneticityEdge<T>>,
    pub semantic: Option<SemanticityEdge<T>>,
}

/// Normalizers and parameters recorded while annotating.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GraphMeta<T> {
    /// Largest finite `d_min` per language; phoneticity is `1 - d_min / D`.
    pub phi_normalizer: BTreeMap<Language, T>,
    /// Largest raw semanticity over all edges.
    pub semantic_normalizer: Option<T>,
    pub semantic_coefficients: Option<[T; 3]>,
}

/// Inclusion graph of allographic classes: an edge `s -> c` means class `s`
/// occurs as a subcharacter of class `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct InclusionGraph<T> {
    classes: Partition,
    dag: DiGraph<ClassId>,
    attrs: BTreeMap<Edge, EdgeAttrs<T>>,
    annotations: BTreeMap<ClassId, BTreeSet<String>>,
    pub meta: GraphMeta<T>,
}

/// Lifts character inclusions to classes: `s -> c` between classes iff some
/// member pair is included. Pairs inside one class are dropped.
pub fn lift_to_classes<T: Scalar>(
    char_edges: impl IntoIterator<Item = (char, char)>,
    classes: &Partition,
) -> Result<InclusionGraph<T>> {
    let mut dag = DiGraph::new();
    for class in classes.classes() {
        dag.add_node(class.id);
    }
    for (s, c) in char_edges {
        let (a, b) = (classes.class_of(s)?, classes.class_of(c)?);
        dag.add_edge(a, b);
    }
    Ok(InclusionGraph::from_parts(classes.clone(), dag))
}

impl<T: Scalar> InclusionGraph<T> {
    pub fn from_parts(classes: Partition, dag: DiGraph<ClassId>) -> Self {
        InclusionGraph { classes, dag, attrs: BTreeMap::new(), annotations: BTreeMap::new(), meta: GraphMeta::default() }
    }

    /// Builds a graph whose classes are all singletons numbered `0..n`.
    /// Mostly useful for toy graphs; members are taken from the Private Use Area.
    pub fn with_singletons(n: u32, edges: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let chars: BTreeSet<char> = (0..n).map(|i| char::from_u32(0xE000 + i).unwrap()).collect();
        let classes = crate::charstore::build_allograph_classes(&[], &chars).unwrap();
        let dag = DiGraph::from_edges((0..n).map(ClassId), edges.into_iter().map(|(a, b)| (ClassId(a), ClassId(b))));
        Self::from_parts(classes, dag)
    }

    pub fn classes(&self) -> &Partition {
        &self.classes
    }

    pub fn dag(&self) -> &DiGraph<ClassId> {
        &self.dag
    }

    pub fn node_count(&self) -> usize {
        self.dag.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.dag.edge_count()
    }

    pub fn contains(&self, id: ClassId) -> bool {
        self.dag.contains(id)
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.dag.sorted_edges()
    }

    /// Subclasses of `c`: sources of edges into `c`, ascending.
    pub fn subclasses(&self, c: ClassId) -> Vec<ClassId> {
        let mut v: Vec<ClassId> = self.dag.predecessors(c).collect();
        v.sort();
        v
    }

    pub fn superclasses(&self, c: ClassId) -> Vec<ClassId> {
        let mut v: Vec<ClassId> = self.dag.successors(c).collect();
        v.sort();
        v
    }

    pub fn attrs(&self, e: Edge) -> Option<&EdgeAttrs<T>> {
        self.attrs.get(&e)
    }

    pub fn attrs_mut(&mut self, e: Edge) -> &mut EdgeAttrs<T> {
        debug_assert!(self.dag.has_edge(e.0, e.1), "attributes on a missing edge");
        self.attrs.entry(e).or_default()
    }

    /// Phoneticity of an edge; `None` if unknown or not computed.
    pub fn phi(&self, e: Edge, language: Language) -> Option<T> {
        self.attrs.get(&e)?.phonetic.get(&language)?.phi
    }

    /// Normalized semanticity of an edge; `None` if not computed.
    pub fn semanticity(&self, e: Edge) -> Option<T> {
        Some(self.attrs.get(&e)?.semantic.as_ref()?.s)
    }

    pub fn annotations(&self) -> &BTreeMap<ClassId, BTreeSet<String>> {
        &self.annotations
    }

    pub fn annotation(&self, c: ClassId) -> Option<&BTreeSet<String>> {
        self.annotations.get(&c).filter(|s| !s.is_empty())
    }

    pub fn set_annotations(&mut self, annotations: BTreeMap<ClassId, BTreeSet<String>>) {
        self.annotations = annotations.into_iter().filter(|(_, s)| !s.is_empty()).collect();
    }

    /// Removes shortcut edges and their attributes.
    pub fn transitive_reduce(&self) -> Result<Self> {
        let dag = transitive_reduce(&self.dag)?;
        let attrs = self.attrs.iter().filter(|(e, _)| dag.has_edge(e.0, e.1)).map(|(e, a)| (*e, a.clone())).collect();
        Ok(InclusionGraph {
            classes: self.classes.clone(),
            dag,
            attrs,
            annotations: self.annotations.clone(),
            meta: self.meta.clone(),
        })
    }

    pub fn degree_statistics(&self) -> DegreeStats<ClassId> {
        degree_statistics(&self.dag)
    }

    /// Drops every edge attribute and recorded normalizer.
    pub fn clear_attributes(&mut self) {
        self.attrs.clear();
        self.meta = GraphMeta::default();
    }
}
