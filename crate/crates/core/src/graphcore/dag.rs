use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Directed graph over labelled nodes with set-valued adjacency.
///
/// Self-loops and parallel edges cannot be represented.
#[derive(Debug, Clone)]
pub struct DiGraph<N> {
    nodes: Vec<N>,
    index: HashMap<N, usize>,
    out: Vec<BTreeSet<usize>>,
    inc: Vec<BTreeSet<usize>>,
}

/// Equal node sets and edge sets, regardless of insertion order.
impl<N: Copy + Eq + Hash + Ord + Debug> PartialEq for DiGraph<N> {
    fn eq(&self, other: &Self) -> bool {
        let nodes = |g: &Self| g.nodes.iter().copied().collect::<BTreeSet<N>>();
        nodes(self) == nodes(other) && self.sorted_edges() == other.sorted_edges()
    }
}

impl<N: Copy + Eq + Hash + Ord + Debug> Eq for DiGraph<N> {}

impl<N: Copy + Eq + Hash + Ord + Debug> Default for DiGraph<N> {
    fn default() -> Self {
        Self::new()
    }
}

impl<N: Copy + Eq + Hash + Ord + Debug> DiGraph<N> {
    pub fn new() -> Self {
        DiGraph { nodes: Vec::new(), index: HashMap::new(), out: Vec::new(), inc: Vec::new() }
    }

    pub fn from_edges(nodes: impl IntoIterator<Item = N>, edges: impl IntoIterator<Item = (N, N)>) -> Self {
        let mut g = Self::new();
        for n in nodes {
            g.add_node(n);
        }
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn add_node(&mut self, n: N) -> usize {
        if let Some(&i) = self.index.get(&n) {
            return i;
        }
        self.nodes.push(n);
        self.out.push(BTreeSet::new());
        self.inc.push(BTreeSet::new());
        self.index.insert(n, self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    /// Inserts `a -> b`, adding missing endpoints. Returns false for
    /// self-loops and already present edges.
    pub fn add_edge(&mut self, a: N, b: N) -> bool {
        if a == b {
            return false;
        }
        let (i, j) = (self.add_node(a), self.add_node(b));
        self.inc[j].insert(i);
        self.out[i].insert(j)
    }

    pub fn remove_edge(&mut self, a: N, b: N) -> bool {
        match (self.index.get(&a), self.index.get(&b)) {
            (Some(&i), Some(&j)) => {
                self.inc[j].remove(&i);
                self.out[i].remove(&j)
            }
            _ => false,
        }
    }

    pub fn contains(&self, n: N) -> bool {
        self.index.contains_key(&n)
    }

    pub fn has_edge(&self, a: N, b: N) -> bool {
        match (self.index.get(&a), self.index.get(&b)) {
            (Some(&i), Some(&j)) => self.out[i].contains(&j),
            _ => false,
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(BTreeSet::len).sum()
    }

    pub fn nodes(&self) -> &[N] {
        &self.nodes
    }

    /// Edges in insertion order of their source node, then by target index.
    pub fn edges(&self) -> impl Iterator<Item = (N, N)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(move |(i, s)| s.iter().map(move |&j| (self.nodes[i], self.nodes[j])))
    }

    /// Edges sorted by `(source, target)` label.
    pub fn sorted_edges(&self) -> Vec<(N, N)> {
        let mut e: Vec<_> = self.edges().collect();
        e.sort();
        e
    }

    pub fn successors(&self, n: N) -> impl Iterator<Item = N> + '_ {
        self.index.get(&n).into_iter().flat_map(move |&i| self.out[i].iter().map(move |&j| self.nodes[j]))
    }

    pub fn predecessors(&self, n: N) -> impl Iterator<Item = N> + '_ {
        self.index.get(&n).into_iter().flat_map(move |&i| self.inc[i].iter().map(move |&j| self.nodes[j]))
    }

    pub fn in_degree(&self, n: N) -> usize {
        self.index.get(&n).map_or(0, |&i| self.inc[i].len())
    }

    pub fn out_degree(&self, n: N) -> usize {
        self.index.get(&n).map_or(0, |&i| self.out[i].len())
    }

    /// Kahn's algorithm over node indices, smallest index first. On a cycle,
    /// returns one cycle as a witness.
    pub fn topo_order(&self) -> Result<Vec<usize>> {
        let n = self.nodes.len();
        let mut indeg: Vec<usize> = self.inc.iter().map(BTreeSet::len).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(i) = queue.pop_front() {
            order.push(i);
            for &j in &self.out[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    queue.push_back(j);
                }
            }
        }
        if order.len() == n {
            return Ok(order);
        }
        // Every unprocessed node keeps an unprocessed predecessor; walk back until a repeat.
        let start = (0..n).find(|&i| indeg[i] > 0).unwrap();
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut walk = vec![start];
        let mut cur = start;
        loop {
            seen.insert(cur, walk.len() - 1);
            cur = *self.inc[cur].iter().find(|&&p| indeg[p] > 0).unwrap();
            if let Some(&pos) = seen.get(&cur) {
                let mut cycle: Vec<usize> = walk[pos..].to_vec();
                cycle.reverse();
                cycle.push(cycle[0]);
                return Err(Error::Cycle(cycle.into_iter().map(|i| format!("{:?}", self.nodes[i])).collect()));
            }
            walk.push(cur);
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.topo_order().is_ok()
    }

    /// Nodes reachable from `n` by a path of length at least one.
    pub fn descendants(&self, n: N) -> BTreeSet<N> {
        let mut out = BTreeSet::new();
        let Some(&start) = self.index.get(&n) else {
            return out;
        };
        let mut seen = vec![false; self.nodes.len()];
        let mut stack: Vec<usize> = self.out[start].iter().copied().collect();
        while let Some(i) = stack.pop() {
            if std::mem::replace(&mut seen[i], true) {
                continue;
            }
            out.insert(self.nodes[i]);
            stack.extend(self.out[i].iter().copied());
        }
        out
    }

    /// Restricts the graph to nodes accepted by `keep`.
    pub fn induced(&self, keep: impl Fn(N) -> bool) -> Self {
        let nodes: Vec<N> = self.nodes.iter().copied().filter(|&n| keep(n)).collect();
        let kept: BTreeSet<N> = nodes.iter().copied().collect();
        let edges = self.edges().filter(|(a, b)| kept.contains(a) && kept.contains(b));
        Self::from_edges(nodes, edges.collect::<Vec<_>>())
    }
}

/// Removes every edge `a -> c` for which a longer path `a -> ... -> c`
/// exists. For a DAG this is the unique transitive reduction.
///
/// Per source node, successors are visited in topological order; a successor
/// already reached from an earlier successor is a shortcut.
pub fn transitive_reduce<N>(g: &DiGraph<N>) -> Result<DiGraph<N>>
where
    N: Copy + Eq + Hash + Ord + Debug + Send + Sync,
{
    let order = g.topo_order()?;
    let n = g.node_count();
    let mut pos = vec![0usize; n];
    for (p, &i) in order.iter().enumerate() {
        pos[i] = p;
    }

    let kept: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map_init(
            || (vec![0u32; n], 0u32, Vec::new()),
            |(mark, stamp, stack), u| {
                *stamp += 1;
                let mut succ: Vec<usize> = g.out[u].iter().copied().collect();
                succ.sort_by_key(|&v| pos[v]);
                let mut keep = Vec::new();
                for v in succ {
                    if mark[v] == *stamp {
                        continue;
                    }
                    keep.push(v);
                    stack.push(v);
                    while let Some(w) = stack.pop() {
                        if mark[w] == *stamp {
                            continue;
                        }
                        mark[w] = *stamp;
                        stack.extend(g.out[w].iter().copied().filter(|&x| mark[x] != *stamp));
                    }
                }
                keep
            },
        )
        .collect();

    let mut out = vec![BTreeSet::new(); n];
    let mut inc = vec![BTreeSet::new(); n];
    for (u, vs) in kept.into_iter().enumerate() {
        for v in vs {
            out[u].insert(v);
            inc[v].insert(u);
        }
    }
    Ok(DiGraph { nodes: g.nodes.clone(), index: g.index.clone(), out, inc })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStats<N> {
    /// degree -> number of nodes with that in-degree
    pub in_hist: BTreeMap<usize, usize>,
    pub out_hist: BTreeMap<usize, usize>,
    pub sources: Vec<N>,
    pub leaves: Vec<N>,
    pub max_in: usize,
    pub max_out: usize,
}

pub fn degree_statistics<N: Copy + Eq + Hash + Ord + Debug>(g: &DiGraph<N>) -> DegreeStats<N> {
    let mut stats = DegreeStats {
        in_hist: BTreeMap::new(),
        out_hist: BTreeMap::new(),
        sources: Vec::new(),
        leaves: Vec::new(),
        max_in: 0,
        max_out: 0,
    };
    for (i, &node) in g.nodes.iter().enumerate() {
        let (din, dout) = (g.inc[i].len(), g.out[i].len());
        *stats.in_hist.entry(din).or_default() += 1;
        *stats.out_hist.entry(dout).or_default() += 1;
        if din == 0 {
            stats.sources.push(node);
        }
        if dout == 0 {
            stats.leaves.push(node);
        }
        stats.max_in = stats.max_in.max(din);
        stats.max_out = stats.max_out.max(dout);
    }
    stats.sources.sort();
    stats.leaves.sort();
    stats
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(edges: &[(u32, u32)]) -> DiGraph<u32> {
        DiGraph::from_edges([], edges.iter().copied())
    }

    #[test]
    fn triangle_loses_shortcut() {
        let r = transitive_reduce(&g(&[(0, 1), (1, 2), (0, 2)])).unwrap();
        assert_eq!(r.sorted_edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn reduced_chain_is_unchanged() {
        let chain = g(&[(0, 1), (1, 2)]);
        assert_eq!(transitive_reduce(&chain).unwrap(), chain);
    }

    #[test]
    fn cycle_reports_witness() {
        let err = transitive_reduce(&g(&[(0, 1), (1, 2), (2, 0), (2, 3)])).unwrap_err();
        let Error::Cycle(w) = err else { panic!("expected cycle") };
        assert_eq!(w.first(), w.last());
        assert_eq!(w.len(), 4);
    }

    #[test]
    fn self_loops_and_duplicates_rejected() {
        let mut d = g(&[(0, 1)]);
        assert!(!d.add_edge(0, 1));
        assert!(!d.add_edge(2, 2));
        assert_eq!(d.edge_count(), 1);
    }

    #[test]
    fn degree_stats_examples() {
        let s = degree_statistics(&g(&[(0, 1)]));
        assert_eq!((s.sources, s.leaves), (vec![0], vec![1]));

        let iso = DiGraph::from_edges([0u32, 1, 2], []);
        let s = degree_statistics(&iso);
        assert_eq!(s.sources, vec![0, 1, 2]);
        assert_eq!(s.leaves, vec![0, 1, 2]);

        let star = g(&[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
        let s = degree_statistics(&star);
        assert_eq!(s.max_out, 5);
        assert_eq!(s.max_in, 1);
        assert_eq!(s.in_hist, BTreeMap::from([(0, 1), (1, 5)]));
    }
}
