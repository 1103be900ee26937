//! Orientations of undirected graphs and (near-)transitivity.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::DiGraph;
use crate::network::Word;
use crate::set::VertexSet;

/// A direction for every edge of an undirected base graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    out: Vec<VertexSet>,
}

impl Orientation {
    /// Builds an orientation from arcs; every edge of `g` must be oriented
    /// exactly once.
    pub fn from_arcs(g: &DiGraph, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        g.require_undirected()?;
        let n = g.n();
        let mut out = vec![VertexSet::empty(n); n];
        let mut count = 0;
        for (u, v) in arcs {
            if u >= n || v >= n || !g.has_edge(u, v) || out[v].contains(u) || out[u].contains(v) {
                return Err(Error::Domain(format!("arc ({u},{v}) does not orient a distinct edge")));
            }
            out[u].insert(v);
            count += 1;
        }
        if count != g.edge_count() {
            return Err(Error::Domain("some edges are left unoriented".into()));
        }
        Ok(Orientation { out })
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn out_neighbours(&self, v: usize) -> &VertexSet {
        &self.out[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|u| self.out[u].iter().map(move |v| (u, v)))
            .collect()
    }

    /// `t -> a -> b` implies `t -> b`.
    pub fn is_transitive_vertex(&self, t: usize) -> bool {
        self.out[t].iter().all(|a| {
            let mut reach = self.out[a].clone();
            reach.remove(t);
            reach.is_subset(&self.out[t])
        })
    }

    /// Some transitive `t` has `N[t] ⊆ N[v]` in the base graph.
    pub fn is_near_transitive_vertex(&self, g: &DiGraph, v: usize) -> bool {
        let nv = g.closed_neighbours(v);
        let found = nv
            .iter()
            .any(|t| self.is_transitive_vertex(t) && g.closed_neighbours(t).is_subset(&nv));
        found
    }

    pub fn transitive_vertices(&self) -> VertexSet {
        VertexSet::from_vertices(self.n(), (0..self.n()).filter(|&t| self.is_transitive_vertex(t)))
    }

    pub fn near_transitive_vertices(&self, g: &DiGraph) -> VertexSet {
        let trans = self.transitive_vertices();
        VertexSet::from_vertices(
            self.n(),
            (0..self.n()).filter(|&v| {
                let nv = g.closed_neighbours(v);
                let found = nv
                    .iter()
                    .any(|t| trans.contains(t) && g.closed_neighbours(t).is_subset(&nv));
                found
            }),
        )
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.n()).all(|t| self.is_transitive_vertex(t))
    }

    pub fn is_near_transitive(&self, g: &DiGraph) -> bool {
        self.near_transitive_vertices(g).len() == self.n()
    }

    /// Topological order taking the smallest available source first, or
    /// `None` if the orientation has a cycle.
    pub fn topological_order(&self) -> Option<Word> {
        let n = self.n();
        let mut indeg = vec![0usize; n];
        for u in 0..n {
            for v in self.out[u].iter() {
                indeg[v] += 1;
            }
        }
        let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<usize>> =
            (0..n).filter(|&v| indeg[v] == 0).map(std::cmp::Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(std::cmp::Reverse(u)) = heap.pop() {
            order.push(u);
            for v in self.out[u].iter() {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    heap.push(std::cmp::Reverse(v));
                }
            }
        }
        (order.len() == n).then_some(Word(order))
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }
}

/// Orientation induced by a permutation: earlier-updated endpoint is the tail.
pub fn orientation_of(g: &DiGraph, w: &Word) -> Result<Orientation> {
    g.require_undirected()?;
    w.require_permutation(g.n())?;
    let pos = w.positions(g.n());
    let arcs: Vec<(usize, usize)> = g
        .edges()
        .map(|(u, v)| if pos[u] < pos[v] { (u, v) } else { (v, u) })
        .collect();
    Orientation::from_arcs(g, arcs)
}

/// Serializable arc list, for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArcList(pub Vec<(usize, usize)>);

impl From<&Orientation> for ArcList {
    fn from(o: &Orientation) -> Self {
        ArcList(o.arcs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{family, Family};

    #[test]
    fn p3_orientations() {
        let g = family(Family::Path, 3).unwrap();
        let o = orientation_of(&g, &Word(vec![0, 2, 1])).unwrap();
        assert_eq!(o.arcs(), vec![(0, 1), (2, 1)]);
        assert!(o.is_transitive_vertex(0) && o.is_transitive_vertex(1));
        let o = orientation_of(&g, &Word(vec![0, 1, 2])).unwrap();
        assert_eq!(o.arcs(), vec![(0, 1), (1, 2)]);
        assert!(!o.is_transitive_vertex(0));
        assert!(o.is_transitive_vertex(2));
        assert_eq!(o.topological_order(), Some(Word(vec![0, 1, 2])));
        let k1 = DiGraph::empty(1);
        assert!(orientation_of(&k1, &Word(vec![0])).unwrap().arcs().is_empty());
        assert!(orientation_of(&g, &Word(vec![0, 0, 1])).is_err());
    }

    #[test]
    fn cycle_detection() {
        let c3 = family(Family::Cycle, 3).unwrap();
        let o = Orientation::from_arcs(&c3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(!o.is_acyclic());
        assert!(Orientation::from_arcs(&c3, [(0, 1)]).is_err());
    }
}
