//! Maximal independent set enumeration: Bron–Kerbosch with pivoting, run on
//! the complement so that cliques there are independent sets here.

use std::ops::ControlFlow;

use crate::graph::DiGraph;
use crate::set::VertexSet;

struct Search<'a> {
    /// Complement neighbourhoods: `V \ N[v]`.
    non_adj: Vec<VertexSet>,
    visit: &'a mut dyn FnMut(&VertexSet) -> ControlFlow<()>,
}

impl Search<'_> {
    fn run(&mut self, r: &mut VertexSet, mut p: VertexSet, mut x: VertexSet) -> ControlFlow<()> {
        if p.is_empty() {
            if x.is_empty() {
                return (self.visit)(r);
            }
            return ControlFlow::Continue(());
        }
        // Pivot maximizing |P ∩ non_adj(u)|, smallest index on ties.
        let mut pivot = usize::MAX;
        let mut best = 0;
        for u in p.iter().chain(x.iter()) {
            let c = p.intersection(&self.non_adj[u]).len();
            if pivot == usize::MAX || c > best || (c == best && u < pivot) {
                pivot = u;
                best = c;
            }
        }
        let candidates = p.difference(&self.non_adj[pivot]);
        for v in candidates.iter() {
            r.insert(v);
            let np = p.intersection(&self.non_adj[v]);
            let nx = x.intersection(&self.non_adj[v]);
            self.run(r, np, nx)?;
            r.remove(v);
            p.remove(v);
            x.insert(v);
        }
        ControlFlow::Continue(())
    }
}

/// Calls `visit` on every maximal independent set of `g` disjoint from
/// `avoid`, stopping early if it breaks. Arcs are read as undirected edges.
pub fn for_each_mis_avoiding<F>(g: &DiGraph, avoid: &VertexSet, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&VertexSet) -> ControlFlow<()>,
{
    let n = g.n();
    let non_adj = (0..n)
        .map(|v| {
            let mut s = g.in_neighbours(v).union(g.out_neighbours(v));
            s.insert(v);
            s.complement()
        })
        .collect();
    let mut search = Search {
        non_adj,
        visit: &mut visit,
    };
    let p = avoid.complement();
    let x = avoid.clone();
    search.run(&mut VertexSet::empty(n), p, x)
}

/// All maximal independent sets, in discovery order.
pub fn maximal_independent_sets(g: &DiGraph) -> Vec<VertexSet> {
    let mut out = Vec::new();
    let _ = for_each_mis_avoiding(g, &VertexSet::empty(g.n()), |m| {
        out.push(m.clone());
        ControlFlow::Continue(())
    });
    out
}

/// Some maximal independent set disjoint from `avoid`, if any.
pub fn find_mis_avoiding(g: &DiGraph, avoid: &VertexSet) -> Option<VertexSet> {
    let mut found = None;
    let _ = for_each_mis_avoiding(g, avoid, |m| {
        found = Some(m.clone());
        ControlFlow::Break(())
    });
    found
}

/// Extends `start` (assumed independent) greedily in index order.
pub fn greedy_extend(g: &DiGraph, start: &VertexSet) -> VertexSet {
    let mut m = start.clone();
    for v in 0..g.n() {
        if !m.contains(v) && g.in_neighbours(v).is_disjoint(&m) && g.out_neighbours(v).is_disjoint(&m) {
            m.insert(v);
        }
    }
    m
}

pub fn is_maximal_independent(g: &DiGraph, s: &VertexSet) -> bool {
    g.is_independent(s) && greedy_extend(g, s) == *s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{family, Family};

    #[test]
    fn counts() {
        // P3: {a,c} and {b}; C5: five; Petersen: brute-force count below.
        let p3 = family(Family::Path, 3).unwrap();
        let mut m: Vec<Vec<usize>> = maximal_independent_sets(&p3).iter().map(VertexSet::to_vec).collect();
        m.sort();
        assert_eq!(m, vec![vec![0, 2], vec![1]]);
        assert_eq!(maximal_independent_sets(&family(Family::Cycle, 5).unwrap()).len(), 5);
        let pet = family(Family::Petersen, 0).unwrap();
        let brute = (0u64..1 << 10)
            .filter(|&mask| is_maximal_independent(&pet, &VertexSet::from_mask(10, mask)))
            .count();
        assert_eq!(maximal_independent_sets(&pet).len(), brute);
    }

    #[test]
    fn avoiding() {
        let p3 = family(Family::Path, 3).unwrap();
        assert_eq!(find_mis_avoiding(&p3, &VertexSet::from_vertices(3, [0, 2])).unwrap().to_vec(), vec![1]);
        assert!(find_mis_avoiding(&p3, &VertexSet::from_vertices(3, [0, 1])).is_none());
    }
}
