use std::fmt;

use crate::error::{Error, Result};
use crate::set::VertexSet;

/// An irreflexive directed graph on the vertices `0..n`.
///
/// Undirected graphs are digraphs whose arcs are all symmetric; the flag is
/// computed once at construction. Both adjacency directions are stored.
#[derive(Clone)]
pub struct DiGraph {
    n: usize,
    out_adj: Vec<VertexSet>,
    in_adj: Vec<VertexSet>,
    in_lists: Vec<Vec<usize>>,
    out_lists: Vec<Vec<usize>>,
    undirected: bool,
    labels: Option<Vec<String>>,
}

impl DiGraph {
    pub fn empty(n: usize) -> Self {
        Self::from_adjacency(vec![VertexSet::empty(n); n])
    }

    /// Builds a digraph from directed arcs `(u, v)` meaning `u -> v`.
    pub fn from_arcs<I: IntoIterator<Item = (usize, usize)>>(n: usize, arcs: I) -> Result<Self> {
        let mut out = vec![VertexSet::empty(n); n];
        for (u, v) in arcs {
            check_arc(n, u, v)?;
            out[u].insert(v);
        }
        Ok(Self::from_adjacency(out))
    }

    /// Builds an undirected graph: every pair becomes a symmetric edge.
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut out = vec![VertexSet::empty(n); n];
        for (u, v) in edges {
            check_arc(n, u, v)?;
            out[u].insert(v);
            out[v].insert(u);
        }
        Ok(Self::from_adjacency(out))
    }

    pub(crate) fn from_adjacency(out_adj: Vec<VertexSet>) -> Self {
        let n = out_adj.len();
        let mut in_adj = vec![VertexSet::empty(n); n];
        for (u, outs) in out_adj.iter().enumerate() {
            debug_assert!(!outs.contains(u));
            for v in outs.iter() {
                in_adj[v].insert(u);
            }
        }
        let undirected = (0..n).all(|v| out_adj[v] == in_adj[v]);
        let in_lists = in_adj.iter().map(VertexSet::to_vec).collect();
        let out_lists = out_adj.iter().map(VertexSet::to_vec).collect();
        DiGraph {
            n,
            out_adj,
            in_adj,
            in_lists,
            out_lists,
            undirected,
            labels: None,
        }
    }

    /// Attaches display labels, one per vertex.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::Domain(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_undirected(&self) -> bool {
        self.undirected
    }

    pub fn require_undirected(&self) -> Result<()> {
        if self.undirected {
            Ok(())
        } else {
            Err(Error::NotUndirected)
        }
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out_adj[u].contains(v)
    }

    /// True iff both `u -> v` and `v -> u` are present.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out_adj[u].contains(v) && self.out_adj[v].contains(u)
    }

    pub fn out_neighbours(&self, v: usize) -> &VertexSet {
        &self.out_adj[v]
    }

    pub fn in_neighbours(&self, v: usize) -> &VertexSet {
        &self.in_adj[v]
    }

    /// Neighbourhood of an undirected graph (same as the in-neighbourhood).
    pub fn neighbours(&self, v: usize) -> &VertexSet {
        &self.in_adj[v]
    }

    pub fn in_list(&self, v: usize) -> &[usize] {
        &self.in_lists[v]
    }

    pub fn out_list(&self, v: usize) -> &[usize] {
        &self.out_lists[v]
    }

    pub fn closed_in_neighbours(&self, v: usize) -> VertexSet {
        let mut s = self.in_adj[v].clone();
        s.insert(v);
        s
    }

    pub fn closed_neighbours(&self, v: usize) -> VertexSet {
        self.closed_in_neighbours(v)
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_lists[v].len()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_lists[v].len()
    }

    /// Union of in-neighbourhoods of the members of `s`.
    pub fn in_neighbours_of_set(&self, s: &VertexSet) -> VertexSet {
        let mut acc = VertexSet::empty(self.n);
        for v in s.iter() {
            acc.union_with(&self.in_adj[v]);
        }
        acc
    }

    pub fn out_neighbours_of_set(&self, s: &VertexSet) -> VertexSet {
        let mut acc = VertexSet::empty(self.n);
        for v in s.iter() {
            acc.union_with(&self.out_adj[v]);
        }
        acc
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.out_lists[u].iter().map(move |&v| (u, v)))
    }

    pub fn arc_count(&self) -> usize {
        self.out_lists.iter().map(Vec::len).sum()
    }

    /// Symmetric edges as pairs `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs().filter(move |&(u, v)| u < v && self.has_arc(v, u))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Induced subgraph on `keep`; vertex `i` of the result is the `i`-th
    /// smallest member of `keep`, which is also returned as the map back.
    pub fn induced(&self, keep: &VertexSet) -> (DiGraph, Vec<usize>) {
        let map = keep.to_vec();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let m = map.len();
        let out = map
            .iter()
            .map(|&u| {
                VertexSet::from_vertices(
                    m,
                    self.out_lists[u]
                        .iter()
                        .filter(|&&v| keep.contains(v))
                        .map(|&v| index[v]),
                )
            })
            .collect();
        let mut g = DiGraph::from_adjacency(out);
        if let Some(labels) = &self.labels {
            g.labels = Some(map.iter().map(|&v| labels[v].clone()).collect());
        }
        (g, map)
    }

    pub fn remove_vertex(&self, v: usize) -> (DiGraph, Vec<usize>) {
        let mut keep = self.vertices();
        keep.remove(v);
        self.induced(&keep)
    }

    /// No arc joins two members of `s`.
    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.out_adj[v].is_disjoint(s))
    }

    /// Every symmetric edge has an endpoint in `s` (undirected vertex cover).
    pub fn is_vertex_cover(&self, s: &VertexSet) -> bool {
        self.edges().all(|(u, v)| s.contains(u) || s.contains(v))
    }

    /// The first edge `u < v` with no endpoint in `s`.
    pub fn uncovered_edge(&self, s: &VertexSet) -> Option<(usize, usize)> {
        self.edges().find(|&(u, v)| !s.contains(u) && !s.contains(v))
    }

    /// Every symmetric edge meets `s` and every oriented arc has its head in `s`.
    pub fn is_directed_vertex_cover(&self, s: &VertexSet) -> bool {
        self.arcs().all(|(u, v)| {
            if self.has_arc(v, u) {
                s.contains(u) || s.contains(v)
            } else {
                s.contains(v)
            }
        })
    }

    /// `s ∪ N⁺(s) = V`.
    pub fn is_dominating(&self, s: &VertexSet) -> bool {
        self.out_neighbours_of_set(s).union(s).len() == self.n
    }

    pub fn is_kernel(&self, s: &VertexSet) -> bool {
        self.is_independent(s) && self.is_dominating(s)
    }

    /// Complement of an undirected graph.
    pub fn complement(&self) -> DiGraph {
        let out = (0..self.n)
            .map(|v| {
                let mut s = self.out_adj[v].complement();
                s.remove(v);
                s
            })
            .collect();
        DiGraph::from_adjacency(out)
    }

    /// `u` and `v` are adjacent in some direction.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    /// Out-neighbourhood bit masks; requires `n <= 64`.
    pub fn out_masks(&self) -> Vec<u64> {
        self.out_adj.iter().map(VertexSet::mask).collect()
    }

    pub fn in_masks(&self) -> Vec<u64> {
        self.in_adj.iter().map(VertexSet::mask).collect()
    }

    /// Weak connectivity (arcs read in both directions).
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = VertexSet::empty(self.n);
        let mut stack = vec![0];
        seen.insert(0);
        while let Some(u) = stack.pop() {
            for &v in self.out_lists[u].iter().chain(&self.in_lists[u]) {
                if !seen.contains(v) {
                    seen.insert(v);
                    stack.push(v);
                }
            }
        }
        seen.len() == self.n
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(v))
        }
    }

    pub(crate) fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.universe() == self.n {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "vertex set over {} elements used with a {}-vertex graph",
                s.universe(),
                self.n
            )))
        }
    }
}

fn check_arc(n: usize, u: usize, v: usize) -> Result<()> {
    if u >= n {
        return Err(Error::VertexOutOfRange(u));
    }
    if v >= n {
        return Err(Error::VertexOutOfRange(v));
    }
    if u == v {
        return Err(Error::Domain(format!("self-loop at vertex {u}")));
    }
    Ok(())
}

impl PartialEq for DiGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.out_adj == other.out_adj
    }
}

impl Eq for DiGraph {}

impl fmt::Debug for DiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiGraph(n={}, arcs=[", self.n)?;
        for (i, (u, v)) in self.arcs().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{u}->{v}")?;
        }
        f.write_str("])")
    }
}
