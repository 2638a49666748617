//! Meaning of unknown characters from annotated relatives in the graph.

use std::collections::BTreeMap;

use crate::charstore::ClassId;
use crate::error::{Error, Result};
use crate::graphcore::InclusionGraph;
use crate::Scalar;

pub const DEFAULT_MAX_DEPTH: usize = 4;

/// Which way paths leave the queried class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Direction {
    /// Toward subcharacters, along incoming edges.
    #[default]
    Incoming,
    /// Toward characters that contain the query.
    Outgoing,
}

/// Synset weights summing to one, or empty.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SynsetVector<T> {
    pub weights: BTreeMap<String, T>,
}

impl<T: Scalar> SynsetVector<T> {
    fn normalized(raw: BTreeMap<String, T>) -> Self {
        let total: T = raw.values().copied().sum();
        if total <= T::zero() {
            return SynsetVector::default();
        }
        SynsetVector { weights: raw.into_iter().map(|(k, v)| (k, v / total)).collect() }
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Entries by decreasing weight, ties by id.
    pub fn ranked(&self) -> Vec<(&str, T)> {
        let mut v: Vec<(&str, T)> = self.weights.iter().map(|(k, &w)| (k.as_str(), w)).collect();
        v.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(std::cmp::Ordering::Equal).then(a.0.cmp(b.0)));
        v
    }
}

/// Walks every simple path of at most `max_depth` edges from `u`. A path ends
/// at its first annotated node, which adds `(product of edge semanticity) /
/// (path length)` to each of its synsets. The sums are normalized.
///
/// An annotated `u` returns its own synsets with equal weight.
pub fn semantic_approximation<T: Scalar>(
    g: &InclusionGraph<T>,
    u: ClassId,
    max_depth: usize,
    direction: Direction,
) -> Result<SynsetVector<T>> {
    if !g.contains(u) {
        return Err(Error::UnknownClass(u.0));
    }
    if let Some(own) = g.annotation(u) {
        return Ok(SynsetVector::normalized(own.iter().map(|s| (s.clone(), T::one())).collect()));
    }
    let mut raw = BTreeMap::new();
    let mut path = vec![u];
    walk(g, &mut path, T::one(), max_depth, direction, &mut raw);
    Ok(SynsetVector::normalized(raw))
}

fn walk<T: Scalar>(
    g: &InclusionGraph<T>,
    path: &mut Vec<ClassId>,
    product: T,
    max_depth: usize,
    direction: Direction,
    raw: &mut BTreeMap<String, T>,
) {
    let cur = *path.last().expect("path starts at the query");
    let next = match direction {
        Direction::Incoming => g.subclasses(cur),
        Direction::Outgoing => g.superclasses(cur),
    };
    for z in next {
        if path.contains(&z) {
            continue;
        }
        let edge = match direction {
            Direction::Incoming => (z, cur),
            Direction::Outgoing => (cur, z),
        };
        let p = product * g.semanticity(edge).unwrap_or(T::zero());
        let len = path.len();
        if let Some(synsets) = g.annotation(z) {
            let w = p / T::from_count(len);
            if w > T::zero() {
                for s in synsets {
                    let slot = raw.entry(s.clone()).or_insert(T::zero());
                    *slot = *slot + w;
                }
            }
        } else if len < max_depth {
            path.push(z);
            walk(g, path, p, max_depth, direction, raw);
            path.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::semantics::SemanticityEdge;

    fn graph(n: u32, edges: &[(u32, u32, f64)], annotated: &[(u32, &str)]) -> InclusionGraph<f64> {
        let mut g = InclusionGraph::with_singletons(n, edges.iter().map(|&(a, b, _)| (a, b)));
        for &(a, b, s) in edges {
            g.attrs_mut((ClassId(a), ClassId(b))).semantic = Some(SemanticityEdge { s, ..Default::default() });
        }
        g.set_annotations(annotated.iter().map(|&(c, s)| (ClassId(c), BTreeSet::from([s.to_string()]))).collect());
        g
    }

    #[test]
    fn single_annotated_sub() {
        let g = graph(2, &[(1, 0, 0.6)], &[(1, "water")]);
        let v = semantic_approximation(&g, ClassId(0), 4, Direction::Incoming).unwrap();
        assert_eq!(v.weights, BTreeMap::from([("water".to_string(), 1.0)]));
    }

    #[test]
    fn two_paths_worked_example() {
        // 0 <- 1 (S 0.6, annotated a); 0 <- 2 <- 3 (S 0.5, 0.5, 3 annotated b)
        let g = graph(4, &[(1, 0, 0.6), (2, 0, 0.5), (3, 2, 0.5)], &[(1, "a"), (3, "b")]);
        let v = semantic_approximation(&g, ClassId(0), 4, Direction::Incoming).unwrap();
        assert!((v.weights["a"] - 0.6 / 0.725).abs() < 1e-12);
        assert!((v.weights["b"] - 0.125 / 0.725).abs() < 1e-12);
    }

    #[test]
    fn depth_limit_and_cutoff() {
        let g = graph(4, &[(1, 0, 1.0), (2, 1, 1.0), (3, 2, 1.0)], &[(2, "mid"), (3, "deep")]);
        assert!(semantic_approximation(&g, ClassId(0), 1, Direction::Incoming).unwrap().is_empty());
        let v = semantic_approximation(&g, ClassId(0), 4, Direction::Incoming).unwrap();
        assert_eq!(v.weights.keys().collect::<Vec<_>>(), vec!["mid"]);
    }

    #[test]
    fn annotated_query_and_direction() {
        let g = graph(2, &[(1, 0, 0.6)], &[(1, "x")]);
        let own = semantic_approximation(&g, ClassId(1), 4, Direction::Incoming).unwrap();
        assert_eq!(own.weights["x"], 1.0);
        let g = graph(2, &[(1, 0, 0.6)], &[(0, "y")]);
        assert!(semantic_approximation(&g, ClassId(1), 4, Direction::Incoming).unwrap().is_empty());
        let up = semantic_approximation(&g, ClassId(1), 4, Direction::Outgoing).unwrap();
        assert_eq!(up.weights["y"], 1.0);
        assert!(semantic_approximation(&g, ClassId(9), 4, Direction::Incoming).is_err());
    }
}
